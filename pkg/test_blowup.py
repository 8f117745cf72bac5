#!/usr/bin/env python3
"""
Tests for subdivisions: star and ideal blow-ups, resolution, refinement, morphisms
"""

import os
import sys
from fractions import Fraction
from itertools import product

sys.path.append(os.path.dirname(__file__))

from toricchow.blowup import (MonoidIdeal, ToricMorphism, barycentric, common_refinement, compose,
                              compose_morphisms, cone_volume, ideal_blowup, identity_subdivision,
                              integralize, is_compatible, load_subdivision, make_subdivision,
                              projection_morphism, resolve, star_subdivision,
                              subdivision_to_dict, triangulate)
from toricchow.errors import BlowupError, InputError
from toricchow.fan import intersect_cones, is_complete, is_locally_free, make_cone, make_fan
from toricchow.fixtures import load_fixture, load_subdivision_fixture


def test_star_subdivision():
    print("🔄 Testing stellar subdivision of the quadrant...")
    a2 = load_fixture('a2')
    s = star_subdivision(a2, (2, 2))
    assert s.source == load_fixture('bl0a2')
    assert s.new_rays == ((1, 1),)
    ray = s.source.locate(make_cone([(1, 1)]))
    assert s.target.dims[s.cone_map[ray]] == 2
    assert not s.is_identity
    print("✅ star at (1,1) gives the blown-up quadrant")


def test_star_rejects_bad_points():
    print("\n🔄 Testing rejected subdivision points...")
    a2 = load_fixture('a2')
    for point, message in (((-1, 0), "point outside support"),
                           ((0, 0), None), ((1, 1, 1), None)):
        try:
            star_subdivision(a2, point)
            raise AssertionError(f"{point} accepted")
        except BlowupError as e:
            if message:
                assert e.message == message
    print("✅ outside and zero points raise BlowupError")


def test_subdivision_certificate():
    print("\n🔄 Testing subdivision certificates...")
    a2, bl = load_fixture('a2'), load_fixture('bl0a2')
    try:
        make_subdivision(a2, bl)
        raise AssertionError("coarser fan accepted as a refinement")
    except BlowupError:
        pass
    half = make_fan(2, [[(1, 0), (1, 1)]])
    try:
        make_subdivision(half, a2)
        raise AssertionError("partial cover accepted")
    except BlowupError as e:
        assert e.message == "supports differ"
    assert identity_subdivision(a2).is_identity
    print("✅ volume comparison certifies equal supports")


def test_ideal_blowup():
    print("\n🔄 Testing monomial ideal blow-ups...")
    a2 = load_fixture('a2')
    quadrant = make_cone([(1, 0), (0, 1)])
    s = ideal_blowup(a2, MonoidIdeal(quadrant, ((1, 0), (0, 1))))
    assert s.source == load_fixture('bl0a2')
    assert ideal_blowup(a2, MonoidIdeal(quadrant, ((1, 1),))).is_identity
    s2 = ideal_blowup(a2, MonoidIdeal(quadrant, ((2, 0), (0, 1))))
    assert (1, 2) in s2.source.rays
    for generators in ((), ((-1, 0),)):
        try:
            ideal_blowup(a2, MonoidIdeal(quadrant, generators))
            raise AssertionError(f"ideal {generators} accepted")
        except BlowupError:
            pass
    print("✅ (x, y) blows up at (1,1); (x^2, y) at (1,2)")


def test_resolution():
    print("\n🔄 Testing resolution of singularities...")
    s = resolve(load_fixture('a1_cone'))
    assert is_locally_free(s.source)
    assert s.source.rays == ((1, 0), (1, 1), (1, 2))
    assert resolve(load_fixture('p2')).is_identity
    deep = make_fan(2, [[(1, 0), (1, 5)]])
    assert is_locally_free(resolve(deep).source)
    square = make_fan(3, [[(1, 0, 0), (0, 1, 0), (1, 0, 1), (0, 1, 1)]])
    tri = triangulate(square)
    assert all(c.is_simplicial for c in tri.cone_objects)
    assert len([c for c in tri.cone_objects if c.dim == 3]) == 2
    cube = make_fan(4, [[(a, b, c, 1) for a, b, c in product((0, 1), repeat=3)]])
    tri = triangulate(cube)
    assert tri.rays == cube.rays
    assert all(c.is_simplicial for c in tri.cone_objects)
    assert len(tri.maximal_cones) == 6
    assert is_locally_free(resolve(cube).source)
    print("✅ resolutions are smooth refinements")


def test_barycentric():
    print("\n🔄 Testing barycentric subdivision...")
    s = barycentric(load_fixture('p2'))
    assert len(s.source.rays) == 6
    assert len(s.source.maximal_cones) == 6
    assert is_complete(s.source) and is_locally_free(s.source)
    assert set(s.new_rays) == {(1, 1), (-1, 0), (0, -1)}
    print("✅ barycentric P^2 has six rays")


def test_common_refinement_and_compose():
    print("\n🔄 Testing refinement and composition...")
    a2 = load_fixture('a2')
    s1, s2 = star_subdivision(a2, (1, 1)), star_subdivision(a2, (1, 2))
    meet, to_first, to_second = common_refinement(s1, s2)
    assert set(meet.rays) == {(1, 0), (0, 1), (1, 1), (1, 2)}
    assert len(meet.maximal_cones) == 3
    assert to_first.target == s1.source and to_second.target == s2.source
    step = star_subdivision(s1.source, (2, 1))
    total = compose(step, s1)
    assert total.target == a2 and total.source == step.source
    assert total.cone_map == make_subdivision(step.source, a2).cone_map
    try:
        common_refinement(s1, identity_subdivision(load_fixture('p2')))
        raise AssertionError("different bases accepted")
    except BlowupError:
        pass
    print("✅ common refinement maps to both factors")


def _meet_ray_sources(s1, s2):
    rays = set(s1.source.rays) | set(s2.source.rays)
    for a in s1.source.cone_objects:
        for b in s2.source.cone_objects:
            rays |= set(intersect_cones(a, b).rays)
    return rays


def test_common_refinement_properties():
    print("\n🔄 Testing symmetry and rays of the common refinement...")
    a2 = load_fixture('a2')
    pairs = [(star_subdivision(a2, (1, 1)), star_subdivision(a2, (1, 2))),
             (star_subdivision(a2, (2, 1)), star_subdivision(a2, (1, 3)))]
    orthant = make_fan(3, [[(1, 0, 0), (0, 1, 0), (0, 0, 1)]])
    pairs.append((star_subdivision(orthant, (1, 1, 0)), star_subdivision(orthant, (0, 1, 1))))
    for s1, s2 in pairs:
        meet, to_first, to_second = common_refinement(s1, s2)
        swapped, to_second_again, to_first_again = common_refinement(s2, s1)
        assert meet == swapped
        assert to_first == to_first_again and to_second == to_second_again
        assert set(meet.rays) <= _meet_ray_sources(s1, s2)
    meet = common_refinement(*pairs[-1])[0]
    assert set(meet.rays) == {(0, 0, 1), (0, 1, 0), (0, 1, 1), (1, 0, 0), (1, 1, 0), (1, 1, 1)}
    assert len(meet.maximal_cones) == 4
    assert len([i for i in meet.maximal_cones if not meet.cone(i).is_simplicial]) == 1
    print("✅ the meet is symmetric and only gains rays of intersections")


def test_morphisms():
    print("\n🔄 Testing toric morphisms...")
    p1 = load_fixture('p1')
    proj = projection_morphism(p1, p1)
    assert proj.source == load_fixture('p1xp1') and is_compatible(proj)
    assert proj.image((3, -2)) == (3,)
    assert proj.pull_covector((1,)) == (1, 0)
    ident = ToricMorphism(((1,),), p1, p1)
    assert compose_morphisms(ident, proj).lattice_map == proj.lattice_map
    try:
        ToricMorphism(((1, 0),), p1, p1)
        raise AssertionError("wrong shape accepted")
    except BlowupError:
        pass
    print("✅ projection onto a factor is compatible")


def test_integralize():
    print("\n🔄 Testing integralization...")
    identity = ((1, 0), (0, 1))
    m = ToricMorphism(identity, load_fixture('p1xp1'), load_fixture('p2'))
    assert not is_compatible(m)
    s = integralize(m)
    assert (-1, -1) in s.source.rays and len(s.source.rays) == 5
    assert is_compatible(m.with_fans(s.source, m.target))
    assert s.new_rays == ((-1, -1),) and len(s.source.maximal_cones) == 5
    assert s.source == star_subdivision(m.source, (-1, -1)).source
    p1 = load_fixture('p1')
    assert integralize(projection_morphism(p1, p1)).is_identity
    try:
        integralize(ToricMorphism(identity, load_fixture('p2'), load_fixture('a2')))
        raise AssertionError("escaping image accepted")
    except BlowupError as e:
        assert e.message == "image support escapes target support"
    print("✅ P^1 x P^1 -> P^2 integralizes with one new ray")


def test_subdivision_json():
    print("\n🔄 Testing subdivision JSON...")
    s = load_subdivision_fixture('blowup_square')
    assert s.source == load_fixture('bl0a2') and s.target == load_fixture('a2')
    data = subdivision_to_dict(s)
    assert load_subdivision(data) == s
    data['cone_map'] = [[0, 1]]
    try:
        load_subdivision(data)
        raise AssertionError("wrong cone map accepted")
    except InputError:
        pass
    print("✅ subdivision JSON checked against the fans")


def test_cone_volume():
    print("\n🔄 Testing normalized volumes...")
    assert cone_volume(make_cone([(1, 0), (0, 1)]), (1, 1)) == 1
    assert cone_volume(make_cone([(1, 0), (1, 2)]), (1, 0)) == Fraction(2)
    assert cone_volume(make_cone([(1, 0)], 2), (1, 1)) == 0
    print("✅ volumes are exact fractions")


def main():
    print("🚀 Starting blow-up tests")
    print("=" * 60)
    tests = [
        ("Star Subdivision", test_star_subdivision),
        ("Bad Points", test_star_rejects_bad_points),
        ("Subdivision Certificate", test_subdivision_certificate),
        ("Ideal Blow-up", test_ideal_blowup),
        ("Resolution", test_resolution),
        ("Barycentric", test_barycentric),
        ("Refinement and Compose", test_common_refinement_and_compose),
        ("Refinement Properties", test_common_refinement_properties),
        ("Morphisms", test_morphisms),
        ("Integralize", test_integralize),
        ("Subdivision JSON", test_subdivision_json),
        ("Cone Volume", test_cone_volume),
    ]
    passed = 0
    for test_name, test_func in tests:
        print(f"\n{'='*20} {test_name} {'='*20}")
        try:
            test_func()
            passed += 1
            print(f"✅ {test_name} PASSED")
        except Exception as e:
            print(f"💥 {test_name} FAILED: {e!r}")
    print("\n" + "=" * 60)
    print(f"🏁 Test Results: {passed}/{len(tests)} tests passed")
    return passed == len(tests)


if __name__ == "__main__":
    success = main()
    sys.exit(0 if success else 1)

#!/usr/bin/env python3
"""
Tests for cones, fans, stars and the fan JSON format
"""

import json
import os
import sys
import tempfile

sys.path.append(os.path.dirname(__file__))

from toricchow.errors import ConeError, FanError, InputError
from toricchow.fan import (char_stalk, cone_from_inequalities, cone_faces, fan_fingerprint,
                           fan_to_dict, hilbert_basis_2d, intersect_cones, is_complete,
                           is_locally_free, is_smooth, load_fan, make_cone, make_fan,
                           multiplicity, parallelepiped_points, product_fan, relative_generator,
                           smallest_cone_containing, star, star_with_map)
from toricchow.fixtures import fixture_names, load_fixture


def test_canonical_cones():
    print("🔄 Testing canonical cone construction...")
    c = make_cone([(2, 0), (1, 1), (0, 3)])
    assert c.rays == ((0, 1), (1, 0))
    assert c.dim == 2 and c.is_simplicial
    assert c.contains((3, 5)) and not c.contains((-1, 1))
    assert c.relative_interior_contains((1, 1)) and not c.relative_interior_contains((1, 0))
    assert make_cone([], 3).dim == 0
    try:
        make_cone([(1, 0), (-1, 0)])
        raise AssertionError("a line was accepted as a cone")
    except ConeError as e:
        assert e.message == "not strongly convex"
    print("✅ cones are primitive, extreme and sorted")


def test_dual_description():
    print("\n🔄 Testing inequalities and intersections...")
    quadrant = make_cone([(1, 0), (0, 1)])
    assert set(quadrant.facet_normals) == {(1, 0), (0, 1)}
    assert cone_from_inequalities(2, [(1, 0), (0, 1)]) == quadrant
    cut = intersect_cones(quadrant, make_cone([(1, 1), (-1, 1)]))
    assert cut.rays == ((0, 1), (1, 1))
    assert len(cone_faces(quadrant)) == 4
    steep = make_cone([(1, 0), (1, 3)])
    assert set(steep.facet_normals) == {(0, 1), (3, -1)}
    pyramid = make_cone([(1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 1), (0, 0, 1)])
    assert len(pyramid.rays) == 4 and not pyramid.is_simplicial
    assert set(pyramid.facet_normals) == {(1, 1, 1), (1, -1, 1), (-1, 1, 1), (-1, -1, 1)}
    assert cone_from_inequalities(3, pyramid.facet_normals) == pyramid
    flat = cone_from_inequalities(3, [(1, 0, 0), (0, 1, 0)], equations=[(1, -1, 0), (0, 0, 1)])
    assert flat.rays == ((1, 1, 0),) and flat.equations
    try:
        cone_from_inequalities(2, [(1, 0)])
        raise AssertionError("a half-plane was accepted as a cone")
    except ConeError as e:
        assert e.message == "not strongly convex"
    print("✅ dual description round trips")


def test_smoothness_and_multiplicity():
    print("\n🔄 Testing smoothness and multiplicity...")
    a1 = make_cone([(1, 0), (1, 2)])
    assert not is_smooth(a1)
    assert multiplicity(a1) == 2
    assert parallelepiped_points(a1) == [(1, 1)]
    assert is_smooth(make_cone([(1, 0), (1, 1)]))
    assert parallelepiped_points(make_cone([(1, 0), (1, 1)])) == []
    assert len(hilbert_basis_2d(a1)) == 3
    quad = make_cone([(-1, 2, 1), (-1, 3, -1), (2, 1, 1), (3, 0, -2)])
    assert len(quad.rays) == 4 and not quad.is_simplicial and not is_smooth(quad)
    assert not char_stalk(make_fan(3, [quad.rays]), quad).is_free
    try:
        multiplicity(quad)
        raise AssertionError("multiplicity of a non-simplicial cone")
    except ConeError as e:
        assert e.message == "cone is not simplicial"
    print("✅ A1 cone has multiplicity 2 and three dual generators")


def test_fixtures_load():
    print("\n🔄 Testing shipped fixtures...")
    expected = {
        'a2': (True, False), 'p1': (True, True), 'p2': (True, True), 'p1xp1': (True, True),
        'bl0p2': (True, True), 'a1_cone': (False, False), 'bl0a2': (True, False),
        'half_plane': (True, False),
    }
    assert fixture_names() == sorted(expected)
    for name, (free, complete) in expected.items():
        f = load_fixture(name)
        assert is_locally_free(f) == free, name
        assert is_complete(f) == complete, name
        print(f"✅ {name}: locally_free={free} complete={complete}")


def test_fan_canonical_form():
    print("\n🔄 Testing canonical fan form...")
    f = load_fixture('p2')
    assert f.rays == ((-1, -1), (0, 1), (1, 0))
    assert f.cones[0] == ()
    assert [len(c) for c in f.cones] == sorted(len(c) for c in f.cones)
    shuffled = make_fan(2, [[(0, 1), (-1, -1)], [(1, 0), (0, 1)], [(-1, -1), (1, 0)]])
    assert shuffled == f
    assert fan_fingerprint(shuffled) == fan_fingerprint(f)
    assert load_fan(fan_to_dict(f)) == f
    assert f.dim == 2 and len(f.maximal_cones) == 3
    print("✅ equal fans have equal fingerprints")


def test_overlapping_cones_rejected():
    print("\n🔄 Testing fan validation...")
    try:
        make_fan(2, [[(1, 0), (0, 1)], [(1, 1), (-1, 1)]])
        raise AssertionError("overlapping cones accepted")
    except FanError as e:
        assert e.code == 'fan'
    print("✅ overlapping cones raise FanError")


def test_star_and_stalks():
    print("\n🔄 Testing stars and characteristic stalks...")
    f = load_fixture('p2')
    ray = make_cone([(1, 0)])
    s, mapping = star_with_map(f, ray)
    assert s.rank == 1 and len(s.rays) == 2 and is_complete(s)
    assert all(f.is_face(f.locate(ray), j) for j in mapping.values())
    assert star(f, make_cone([], 2)) == f
    stalk = char_stalk(load_fixture('a1_cone'), make_cone([(1, 0), (1, 2)]))
    assert stalk.to_dict() == {'rank': 2, 'is_free': False, 'hilbert_basis_size': 3}
    try:
        star(f, make_cone([(1, 1)]))
        raise AssertionError("star of a foreign cone")
    except FanError:
        pass
    print("✅ star of a ray in P^2 is P^1")


def test_relative_generator():
    print("\n🔄 Testing relative generators...")
    sigma, tau = make_cone([(1, 0), (1, 2)]), make_cone([(1, 0)])
    n = relative_generator(sigma, tau)
    assert sigma.span_basis.coordinates(n) is not None
    assert n[1] == 1
    shifted = relative_generator(sigma, tau, second_choice=True)
    assert shifted == (n[0] + 1, n[1])
    print("✅ relative generator maps to the positive generator")


def test_support_queries():
    print("\n🔄 Testing support queries...")
    f = load_fixture('half_plane')
    assert smallest_cone_containing(f, (0, 3)) == make_cone([(0, 1)])
    assert smallest_cone_containing(f, (0, -1)) is None
    assert f.support_contains((-5, 2))
    prod = product_fan(load_fixture('p1'), load_fixture('p1'))
    assert prod == load_fixture('p1xp1')
    print("✅ support lookups and products verified")


def test_malformed_json():
    print("\n🔄 Testing malformed input...")
    with tempfile.NamedTemporaryFile('w', suffix='.json', delete=False) as handle:
        handle.write('{"rank": 2,\n "rays": [[1, 0]\n')
        path = handle.name
    try:
        load_fan(path)
        raise AssertionError("malformed JSON accepted")
    except InputError as e:
        assert e.details['line'] >= 2
    finally:
        os.unlink(path)
    try:
        load_fan(json.loads('{"rank": 2, "rays": [[1, 0, 0]], "cones": [[0]]}'))
        raise AssertionError("wrong ray length accepted")
    except InputError:
        pass
    print("✅ malformed input reports a location")


def main():
    print("🚀 Starting fan tests")
    print("=" * 60)
    tests = [
        ("Canonical Cones", test_canonical_cones),
        ("Dual Description", test_dual_description),
        ("Smoothness", test_smoothness_and_multiplicity),
        ("Fixtures", test_fixtures_load),
        ("Canonical Fans", test_fan_canonical_form),
        ("Fan Validation", test_overlapping_cones_rejected),
        ("Stars and Stalks", test_star_and_stalks),
        ("Relative Generator", test_relative_generator),
        ("Support Queries", test_support_queries),
        ("Malformed JSON", test_malformed_json),
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

#!/usr/bin/env python3
"""
Tests for log Chow classes: transport across levels, pushforward, flat pullback,
the polytope action and the built-in fixtures
"""

import os
import sys

sys.path.append(os.path.dirname(__file__))

from toricchow.blowup import (ToricMorphism, identity_subdivision, projection_morphism,
                              star_subdivision)
from toricchow.chow import degree, fundamental_class, make_cycle, orbit_class
from toricchow.errors import LogChowError, NotFlatError, NotProperError
from toricchow.fan import make_cone
from toricchow.fixtures import load_fixture
from toricchow.logchow import (LogCycleClass, act, bundle_report, class_from_cycle,
                               class_to_dict, equals, excision_report, external_product,
                               is_proper, load_class, load_polytope, log_flat_pullback,
                               log_pushforward, make_polytope, multiply, poincare_pair,
                               polytope_class, spec_point_fixture, square_fixture, transport,
                               verify_normal_cone_fixture)


def _orbit(f, *rays):
    return orbit_class(f, f.locate(make_cone(list(rays), f.rank)))


def test_transport_and_equality():
    print("🔄 Testing classes across levels...")
    p2 = load_fixture('p2')
    line = class_from_cycle(p2, _orbit(p2, (0, 1)))
    finer = transport(line, star_subdivision(p2, (1, 1)))
    assert finer.level.source == load_fixture('bl0p2')
    assert finer.level.target == p2
    assert equals(line, finer)
    assert equals(finer, class_from_cycle(p2, _orbit(p2, (1, 0))))
    assert not equals(line, class_from_cycle(p2, 2 * _orbit(p2, (1, 0))))
    assert not equals(line, class_from_cycle(p2, fundamental_class(p2)))
    print("✅ a line equals its total transform")


def test_class_validation():
    print("\n🔄 Testing class validation...")
    p2, bl = load_fixture('p2'), load_fixture('bl0p2')
    try:
        LogCycleClass(p2, identity_subdivision(p2), fundamental_class(bl))
        raise AssertionError("cycle on a foreign fan accepted")
    except LogChowError:
        pass
    a1 = load_fixture('a1_cone')
    try:
        class_from_cycle(a1, fundamental_class(a1))
        raise AssertionError("singular level accepted")
    except LogChowError as e:
        assert e.message == "level is not smooth"
    print("✅ levels must be smooth subdivisions of the base")


def test_pushforward():
    print("\n🔄 Testing proper pushforward...")
    p1 = load_fixture('p1')
    proj = projection_morphism(p1, p1)
    q = proj.source
    assert is_proper(proj)
    horizontal = log_pushforward(proj, class_from_cycle(q, _orbit(q, (0, 1))))
    assert horizontal.base == p1 and horizontal.cycle == fundamental_class(p1)
    assert log_pushforward(proj, class_from_cycle(q, _orbit(q, (1, 0)))).cycle.is_zero()
    double = ToricMorphism(((2,),), p1, p1)
    pushed = log_pushforward(double, class_from_cycle(p1, fundamental_class(p1)))
    assert pushed.cycle == 2 * fundamental_class(p1)
    try:
        log_pushforward(proj, class_from_cycle(q, fundamental_class(q)))
        raise AssertionError("dimension above the target rank")
    except LogChowError:
        pass
    a2, p2 = load_fixture('a2'), load_fixture('p2')
    inclusion = ToricMorphism(((1, 0), (0, 1)), a2, p2)
    assert not is_proper(inclusion)
    try:
        log_pushforward(inclusion, class_from_cycle(a2, fundamental_class(a2)))
        raise AssertionError("open inclusion treated as proper")
    except NotProperError as e:
        assert e.code == 'not_proper'
    print("✅ horizontal line pushes to [P^1], z -> z^2 has degree 2")


def test_flat_pullback():
    print("\n🔄 Testing flat pullback...")
    p1 = load_fixture('p1')
    proj = projection_morphism(p1, p1)
    point = class_from_cycle(p1, _orbit(p1, (1,)))
    fibre = log_flat_pullback(proj, point)
    assert fibre.dim == 1
    assert fibre.cycle == _orbit(fibre.level.source, (1, 0))
    a2, bl = load_fixture('a2'), load_fixture('bl0a2')
    blowdown = ToricMorphism(((1, 0), (0, 1)), bl, a2)
    try:
        log_flat_pullback(blowdown, class_from_cycle(a2, fundamental_class(a2)))
        raise AssertionError("blow-down treated as flat")
    except NotFlatError as e:
        assert e.message == "not log flat"
    print("✅ the fibre over a point is a ruling line")


def test_polytope_action():
    print("\n🔄 Testing the polytope action...")
    p2 = load_fixture('p2')
    triangle = make_polytope([(0, 0), (2, 0), (0, 2), (1, 1)])
    assert triangle.vertices == ((0, 0), (0, 2), (2, 0))
    unit = polytope_class(make_polytope([(0, 0), (1, 0), (0, 1)]), p2)
    line = class_from_cycle(p2, _orbit(p2, (1, 0)))
    whole = class_from_cycle(p2, fundamental_class(p2))
    assert poincare_pair(unit, line) == 1
    assert poincare_pair(polytope_class(triangle, p2), line) == 2
    assert equals(act(unit, whole), line)
    assert degree(act(unit, line).cycle) == 1
    assert poincare_pair(multiply(unit, unit), whole) == 1
    square = polytope_class(make_polytope([(0, 0), (1, 0), (0, 1), (1, 1)]), p2)
    assert poincare_pair(multiply(square, square), whole) == 2
    try:
        polytope_class(make_polytope([(0, 0), (1, 0)]), load_fixture('a2'))
        raise AssertionError("polytope class on a non-complete base")
    except LogChowError:
        pass
    print("✅ H . H = 1 and the unit square squares to 2")


def test_external_product():
    print("\n🔄 Testing external products...")
    p1 = load_fixture('p1')
    point = class_from_cycle(p1, _orbit(p1, (1,)))
    whole = class_from_cycle(p1, fundamental_class(p1))
    prod = external_product(point, whole)
    assert prod.base == load_fixture('p1xp1')
    assert prod.dim == 1
    assert prod.cycle == _orbit(prod.level.source, (1, 0))
    print("✅ point x P^1 is a ruling")


def test_reports():
    print("\n🔄 Testing excision and bundle reports...")
    p2 = load_fixture('p2')
    report = excision_report(p2, make_cone([(1, 0)], 2))
    assert report['exact'] and report['levels'] == 'base'
    assert [c['dim'] for c in report['checks']] == [0, 1, 2]
    assert all(c['surjective'] for c in report['checks'])
    assert bundle_report(p2)['pass']
    assert bundle_report(load_fixture('p1'))['pass']
    print("✅ excision sequences are exact")


def test_fixtures():
    print("\n🔄 Testing built-in fixtures...")
    point = spec_point_fixture()
    assert point['multiplicity'] == 1 and point['pass']
    square = square_fixture()
    assert square['pass'] and not square['commutes']
    normal = verify_normal_cone_fixture()
    assert normal['status'] == 'consistent'
    assert normal['normal_degree'] == -1 and normal['excess_c1'] == 1
    print("✅ exceptional curve has self-intersection -1")


def test_class_json():
    print("\n🔄 Testing class JSON...")
    p2 = load_fixture('p2')
    a = transport(class_from_cycle(p2, _orbit(p2, (0, 1))), star_subdivision(p2, (1, 1)))
    assert load_class(class_to_dict(a)) == a
    bare = load_class({'cycle': {'dim': 2, 'entries': [[0, 1]]}}, p2)
    assert bare.level.is_identity and bare.cycle == make_cycle(p2, 2, {0: 1})
    assert load_polytope({'vertices': [[0, 0], [1, 0], [0, 1]]}).vertices == ((0, 0), (0, 1), (1, 0))
    print("✅ classes round trip through JSON")


def main():
    print("🚀 Starting log Chow tests")
    print("=" * 60)
    tests = [
        ("Transport and Equality", test_transport_and_equality),
        ("Class Validation", test_class_validation),
        ("Pushforward", test_pushforward),
        ("Flat Pullback", test_flat_pullback),
        ("Polytope Action", test_polytope_action),
        ("External Product", test_external_product),
        ("Reports", test_reports),
        ("Fixtures", test_fixtures),
        ("Class JSON", test_class_json),
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

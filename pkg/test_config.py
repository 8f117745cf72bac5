#!/usr/bin/env python3
"""
Tests for the package plumbing: imports, configuration presets, error objects
and the suite registry
"""

import importlib
import os
import sys

sys.path.append(os.path.dirname(__file__))


def test_imports():
    """Every module of the package imports"""
    print("🔄 Testing imports...")
    for name in ('config', 'errors', 'lattice', 'fan', 'blowup', 'chow', 'logchow',
                 'fixtures', 'verify', 'cli'):
        importlib.import_module(f'toricchow.{name}')
        print(f"✅ toricchow.{name} imported successfully")


def test_config():
    print("\n🔄 Testing configuration...")
    from toricchow.config import CLI_CONFIG, VERIFY_CONFIG, get_preset_config, validate_config
    is_valid, errors = validate_config()
    assert is_valid, errors
    assert get_preset_config('acceptance')['depth'] == VERIFY_CONFIG['default_depth']
    assert get_preset_config('thorough')['depth'] == VERIFY_CONFIG['max_depth']
    assert get_preset_config('no-such-preset') == get_preset_config('acceptance')
    quick = get_preset_config('quick')
    quick['depth'] = 99
    assert get_preset_config('quick')['depth'] == 1
    assert (CLI_CONFIG['exit_ok'], CLI_CONFIG['exit_usage'], CLI_CONFIG['exit_domain']) == (0, 1, 2)
    print("✅ presets and exit codes")


def test_error_objects():
    print("\n🔄 Testing structured errors...")
    from toricchow.errors import BlowupError, LogChowError, NotFlatError, NotProperError, ToricError
    e = BlowupError("point outside support", point=(-1, 0))
    assert e.to_dict() == {'code': 'blowup', 'message': "point outside support",
                           'details': {'point': [-1, 0]}}
    assert str(e) == "point outside support"
    assert issubclass(NotProperError, LogChowError) and issubclass(NotFlatError, LogChowError)
    assert isinstance(NotFlatError("not log flat"), ToricError)
    print("✅ errors carry a code, a message and plain details")


def test_suite_registry():
    print("\n🔄 Testing the suite registry...")
    from toricchow.verify import list_suites, run_suite
    suites = list_suites()
    for name in ('smoothness', 'spec-point', 'fundamental-class', 'gysin-functoriality',
                 'displacement', 'projection-formula', 'excision', 'duality', 'mcmullen',
                 'square', 'normal-cone', 'commutativity', 'bundles'):
        assert name in suites, name
    assert suites[-1] == 'all'
    try:
        run_suite('no-such-suite')
        raise AssertionError("unknown suite accepted")
    except KeyError:
        pass
    report = run_suite('square', seed=7)
    assert report['seed'] == 7 and report['pass']
    print(f"✅ {len(suites) - 1} suites registered")


def main():
    print("🚀 Starting plumbing tests")
    print("=" * 60)
    tests = [
        ("Imports", test_imports),
        ("Configuration", test_config),
        ("Error Objects", test_error_objects),
        ("Suite Registry", test_suite_registry),
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

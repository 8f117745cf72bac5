#!/usr/bin/env python3
"""
toricchow configuration
Centralized settings for displacement vectors, verification suites and the CLI
"""

# Generic displacement vectors (fan displacement rule)
DISPLACEMENT_CONFIG = {
    'entry_bound': 10 ** 6,            # |entry| bound for displacement vectors
    'max_reseeds': 32,                 # attempts before "no generic displacement found"
    'independent_checks': 3,           # independent vectors used by invariance checks
}

# Verification suites
VERIFY_CONFIG = {
    'default_depth': 2,                # subdivision-tower depth
    'max_depth': 3,                    # deepest tower the suites will build
    'default_seed': 0,
    'random_cones': 60,                # smoothness-equivalence corpus size
    'towers_per_fan': 10,              # towers over each base fan
    'weight_triples': 50,              # cup associativity/commutativity samples
    'projection_instances': 50,        # projection-formula samples
    'polygons': 12,                    # lattice polygons for the degree law
    'max_coordinate': 3,               # coordinate bound for random cones/polygons
}

# Command line
CLI_CONFIG = {
    'schema_version': '1.0',
    'exit_ok': 0,
    'exit_usage': 1,
    'exit_domain': 2,
}

# Logging
LOGGING_CONFIG = {
    'level': 'WARNING',
    'verbose_level': 'DEBUG',
    'format': '%(levelname)s %(name)s: %(message)s',
}

# Fan completion
COMPLETION_CONFIG = {
    'max_rank': 3,                     # higher ranks need a user-supplied completion
}


def get_preset_config(preset_name):
    """
    Settings for the verification suites at different scales

    Args:
        preset_name (str): 'quick', 'acceptance' or 'thorough'

    Returns:
        dict: suite settings; unknown names fall back to 'acceptance'
    """

    presets = {
        'quick': {
            'depth': 1,
            'random_cones': 20,
            'towers_per_fan': 3,
            'weight_triples': 10,
            'projection_instances': 10,
            'polygons': 4,
        },
        'acceptance': {
            'depth': VERIFY_CONFIG['default_depth'],
            'random_cones': VERIFY_CONFIG['random_cones'],
            'towers_per_fan': VERIFY_CONFIG['towers_per_fan'],
            'weight_triples': VERIFY_CONFIG['weight_triples'],
            'projection_instances': VERIFY_CONFIG['projection_instances'],
            'polygons': VERIFY_CONFIG['polygons'],
        },
        'thorough': {
            'depth': VERIFY_CONFIG['max_depth'],
            'random_cones': 200,
            'towers_per_fan': 25,
            'weight_triples': 150,
            'projection_instances': 150,
            'polygons': 30,
        },
    }

    return dict(presets.get(preset_name, presets['acceptance']))


def validate_config():
    """
    Check the configuration for inconsistent values

    Returns:
        tuple: (is_valid, errors_list)
    """
    errors = []

    if DISPLACEMENT_CONFIG['entry_bound'] < 1:
        errors.append("entry_bound must be positive")

    if DISPLACEMENT_CONFIG['max_reseeds'] < 1:
        errors.append("max_reseeds must be at least 1")

    if DISPLACEMENT_CONFIG['independent_checks'] < 2:
        errors.append("independent_checks must be at least 2")

    if not (1 <= VERIFY_CONFIG['default_depth'] <= VERIFY_CONFIG['max_depth']):
        errors.append("default_depth must lie between 1 and max_depth")

    if VERIFY_CONFIG['max_coordinate'] < 1:
        errors.append("max_coordinate must be positive")

    for key in ('random_cones', 'towers_per_fan', 'weight_triples',
                'projection_instances', 'polygons'):
        if VERIFY_CONFIG[key] < 1:
            errors.append(f"{key} must be positive")

    if CLI_CONFIG['exit_usage'] == CLI_CONFIG['exit_domain']:
        errors.append("usage and domain exit codes must differ")

    return len(errors) == 0, errors


def print_current_config():
    """Print the current configuration"""
    print("🔧 toricchow configuration")
    print("=" * 50)

    print("\n🎯 Displacement:")
    for key, value in DISPLACEMENT_CONFIG.items():
        print(f"  {key}: {value}")

    print("\n🧪 Verification:")
    for key, value in VERIFY_CONFIG.items():
        print(f"  {key}: {value}")

    print("\n💻 CLI:")
    for key, value in CLI_CONFIG.items():
        print(f"  {key}: {value}")

    print("\n📝 Logging:")
    for key, value in LOGGING_CONFIG.items():
        print(f"  {key}: {value}")


if __name__ == "__main__":
    print_current_config()

    is_valid, errors = validate_config()
    if is_valid:
        print("\n✅ Configuration valid")
    else:
        print("\n❌ Configuration errors:")
        for error in errors:
            print(f"  - {error}")

    print("\n📋 Presets:")
    for preset in ['quick', 'acceptance', 'thorough']:
        config = get_preset_config(preset)
        print(f"  {preset}: depth={config['depth']}, "
              f"towers={config['towers_per_fan']}, "
              f"triples={config['weight_triples']}")

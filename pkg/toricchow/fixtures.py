#!/usr/bin/env python3
"""
Fans shipped with the package, loaded by name
"""

import logging
import os

from .blowup import Subdivision, load_subdivision
from .errors import InputError
from .fan import Fan, load_fan

logger = logging.getLogger(__name__)

FIXTURE_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'fixtures')

FAN_FIXTURES = {
    'a2': 'a2.json',                  # affine plane
    'p1': 'p1.json',
    'p2': 'p2.json',
    'p1xp1': 'p1xp1.json',
    'bl0p2': 'bl0p2.json',            # P^2 blown up at a torus-fixed point
    'a1_cone': 'a1_cone.json',        # <(1,0),(1,2)>, multiplicity 2
    'bl0a2': 'bl0a2.json',            # quadrant subdivided at (1,1)
    'half_plane': 'half_plane.json',
}

SUBDIVISION_FIXTURES = {
    'blowup_square': 'blowup_square.json',
}

# fans the verification suites build towers over
TOWER_BASES = ('p2', 'p1xp1')


def fixture_path(name):
    filename = FAN_FIXTURES.get(name) or SUBDIVISION_FIXTURES.get(name) or name
    path = os.path.join(FIXTURE_DIR, filename)
    if not os.path.exists(path):
        raise InputError("unknown fixture", name=name)
    return path


def load_fixture(name) -> Fan:
    logger.debug("loading fixture %s", name)
    return load_fan(fixture_path(name))


def load_subdivision_fixture(name) -> Subdivision:
    return load_subdivision(fixture_path(name))


def fixture_names():
    return sorted(FAN_FIXTURES)

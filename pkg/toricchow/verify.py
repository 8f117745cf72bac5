#!/usr/bin/env python3
# File name   : verify.py
# Description : Property suites checking the intersection-theory identities
# Author      : toricchow developers

"""
Verification suites.

Each suite draws its random instances from numpy.random.default_rng seeded by
(seed, suite number), so a report is a deterministic function of its inputs.
Reports are plain dicts: the suite name, seed, depth, one entry per instance
with a pass flag, and a failure count.
"""

import logging
from functools import cmp_to_key

import numpy as np

from . import lattice
from .blowup import (compose, make_subdivision, projection_morphism, resolve,
                     star_subdivision)
from .chow import (chow_presentation, chow_ranks, cup, fundamental_class, gysin_subdivision,
                   is_balanced, is_rationally_equivalent,
                   make_cycle, make_weight, minkowski_weight_basis, pair, pushforward_subdivision,
                   relation_lattice, strict_gysin_orbit, weight_pullback)
from .config import DISPLACEMENT_CONFIG, VERIFY_CONFIG, get_preset_config
from .errors import ConeError, ToricError
from .fan import (Fan, char_stalk, fan_fingerprint, hilbert_basis_2d, is_locally_free, is_smooth,
                  make_cone, make_fan, multiplicity, product_fan, star_with_map)
from .fixtures import TOWER_BASES, load_fixture
from .lattice import primitive
from .logchow import (bundle_report, class_from_cycle, excision_report, log_flat_pullback,
                      make_polytope, multiply, poincare_pair, polytope_class, spec_point_fixture,
                      square_fixture, transport, verify_normal_cone_fixture, weight_class)

logger = logging.getLogger(__name__)

SUITES = {}


def suite(name):
    def register(func):
        SUITES[name] = func
        return func
    return register


def list_suites():
    return sorted(SUITES) + ['all']


class Settings:
    """Instance counts, depth, seed and optional user fans for one run."""

    def __init__(self, seed=None, depth=None, preset='acceptance', fans=None):
        self.seed = VERIFY_CONFIG['default_seed'] if seed is None else int(seed)
        counts = get_preset_config(preset)
        self.depth = counts['depth'] if depth is None else int(depth)
        self.depth = max(1, min(self.depth, VERIFY_CONFIG['max_depth']))
        self.counts = counts
        self.fans = list(fans or [])

    def rng(self, name):
        # one independent stream per suite
        number = sorted(SUITES).index(name)
        return np.random.default_rng([self.seed, number])

    def bases(self):
        if self.fans:
            return [f if is_locally_free(f) else resolve(f).source for f in self.fans]
        return [load_fixture(name) for name in TOWER_BASES]


def _report(name, settings, instances, **extra):
    failures = sum(1 for item in instances if not item['pass'])
    report = {
        'suite': name,
        'seed': settings.seed,
        'depth': settings.depth,
        'instances': instances,
        'failures': failures,
        'pass': failures == 0,
    }
    report.update(extra)
    return report


def _guarded(check, **inputs):
    """Run one instance; a domain error counts as a failure with its error object."""
    try:
        ok, info = check()
    except ToricError as e:
        logger.warning("instance failed with %s: %s", e.code, e.message)
        return dict(inputs, **{'pass': False, 'error': e.to_dict()})
    return dict(inputs, **info, **{'pass': bool(ok)})


# Random inputs

def random_tower(base: Fan, rng, depth: int):
    """Smooth subdivisions base <- X1 <- ... <- Xdepth (stars at random interior points, resolved)."""
    steps, current = [], base
    for _ in range(depth):
        candidates = [i for i in range(len(current.cones)) if current.dims[i] >= 2]
        if not candidates:
            candidates = [i for i in range(len(current.cones)) if current.dims[i] >= 1]
        i = candidates[int(rng.integers(len(candidates)))]
        rays = current.cone(i).rays
        weights = [int(x) for x in rng.integers(1, 3, size=len(rays))]
        v = primitive(tuple(sum(w * r[k] for w, r in zip(weights, rays))
                            for k in range(current.rank)))
        star = star_subdivision(current, v)
        step = compose(resolve(star.source), star)
        steps.append(step)
        current = step.source
    return steps


def composite(steps):
    total = steps[0]
    for step in steps[1:]:
        total = compose(step, total)
    return total


def random_cycle(f: Fan, k: int, rng):
    cones = f.cones_of_dim(f.rank - k)
    values = [int(x) for x in rng.integers(-2, 3, size=len(cones))]
    return make_cycle(f, k, zip(cones, values))


def random_weight(f: Fan, p: int, rng):
    basis = minkowski_weight_basis(f, p)
    coeffs = [int(x) for x in rng.integers(-2, 3, size=len(basis))]
    values = {}
    for c, w in zip(coeffs, basis):
        for i, x in w.entries:
            values[i] = values.get(i, 0) + c * x
    return make_weight(f, p, values)


def random_cone(rng, rank, bound):
    """A strongly convex cone: generators with positive coordinate sum."""
    while True:
        count = int(rng.integers(1, rank + 2))
        gens = []
        while len(gens) < count:
            v = tuple(int(x) for x in rng.integers(-bound, bound + 1, size=rank))
            if sum(v) > 0:
                gens.append(v)
        try:
            return make_cone(gens, rank)
        except ConeError:
            continue


def _levels(steps):
    return [{'rays': len(s.source.rays), 'fingerprint': fan_fingerprint(s.source)} for s in steps]


# Suites

@suite('smoothness')
def smoothness_suite(settings):
    rng = settings.rng('smoothness')
    instances = []
    for n in range(settings.counts['random_cones']):
        rank = 2 + n % 2
        c = random_cone(rng, rank, VERIFY_CONFIG['max_coordinate'])

        def check(c=c):
            stalk = char_stalk(make_fan(c.ambient_rank, [c.rays]), c)
            smooth, free = is_smooth(c), stalk.is_free
            if not c.is_simplicial:
                return not smooth and not free, {'smooth': smooth, 'free': free,
                                                 'multiplicity': None}
            mult = multiplicity(c)
            agree = smooth == free == (mult == 1)
            if c.dim <= 2:
                agree = agree and (len(hilbert_basis_2d(c)) == c.dim) == smooth
            return agree, {'smooth': smooth, 'free': free, 'multiplicity': mult}
        instances.append(_guarded(check, rays=[list(r) for r in c.rays]))
    return _report('smoothness', settings, instances)


@suite('spec-point')
def spec_point_suite(settings):
    fixture = spec_point_fixture()
    instance = {'multiplicity': fixture['multiplicity'], 'cycle': fixture['cycle'],
                'pass': fixture['pass']}
    return _report('spec-point', settings, [instance])


@suite('fundamental-class')
def fundamental_class_suite(settings):
    rng = settings.rng('fundamental-class')
    instances = []
    for base in settings.bases():
        for _ in range(settings.counts['towers_per_fan']):
            steps = random_tower(base, rng, settings.depth)

            def check(steps=steps, base=base):
                s = composite(steps)
                pulled = gysin_subdivision(s, fundamental_class(base))
                pushed = pushforward_subdivision(s, pulled)
                return (pulled == fundamental_class(s.source) and pushed == fundamental_class(base),
                        {'levels': _levels(steps)})
            instances.append(_guarded(check, base=fan_fingerprint(base)))
    return _report('fundamental-class', settings, instances)


@suite('gysin-functoriality')
def gysin_functoriality_suite(settings):
    rng = settings.rng('gysin-functoriality')
    instances = []
    depth = max(2, settings.depth)
    for base in settings.bases():
        for _ in range(settings.counts['towers_per_fan']):
            steps = random_tower(base, rng, depth)
            k = int(rng.integers(0, base.rank + 1))
            a = random_cycle(base, k, rng)

            def check(steps=steps, a=a):
                first, rest = steps[0], composite(steps[1:])
                stepwise = gysin_subdivision(rest, gysin_subdivision(first, a))
                direct = gysin_subdivision(compose(rest, first), a)
                return (stepwise == direct or is_rationally_equivalent(stepwise, direct),
                        {'dim': a.dim, 'levels': _levels(steps)})
            instances.append(_guarded(check, base=fan_fingerprint(base)))
    return _report('gysin-functoriality', settings, instances)


def _weight_samples(settings, rng, count):
    samples = []
    for base in settings.bases():
        fans = [base] + [s.source for s in random_tower(base, rng, settings.depth)]
        for n in range(count):
            f = fans[n % len(fans)]
            samples.append((f, [random_weight(f, int(rng.integers(0, 2)), rng) for _ in range(3)]))
    return samples


@suite('displacement')
def displacement_suite(settings):
    rng = settings.rng('displacement')
    instances = []
    checks = DISPLACEMENT_CONFIG['independent_checks']
    per_base = max(1, settings.counts['weight_triples'] // max(1, len(settings.bases())))
    for f, (c1, c2, c3) in _weight_samples(settings, rng, per_base):
        def check(c1=c1, c2=c2, c3=c3):
            products = [cup(c1, c2, seed=settings.seed, stream=s) for s in range(checks)]
            independent = all(p == products[0] for p in products)
            commutative = cup(c2, c1, seed=settings.seed) == products[0]
            associative = True
            if c1.codim + c2.codim + c3.codim <= c1.fan.rank:
                left = cup(products[0], c3, seed=settings.seed)
                right = cup(c1, cup(c2, c3, seed=settings.seed), seed=settings.seed)
                associative = left == right
            balanced = is_balanced(products[0])
            return (independent and commutative and associative and balanced,
                    {'codims': [c1.codim, c2.codim, c3.codim], 'independent': independent,
                     'commutative': commutative, 'associative': associative})
        instances.append(_guarded(check, fan=fan_fingerprint(f)))

    def ring_check():
        p2 = load_fixture('p2')
        ranks = [r['free_rank'] for r in chow_ranks(p2)]
        h = minkowski_weight_basis(p2, 1)[0]
        square = cup(h, h, seed=settings.seed)
        return ranks == [1, 1, 1] and square.vector() == [1], {'ranks': ranks}
    instances.append(_guarded(ring_check, fan='p2'))
    return _report('displacement', settings, instances)


@suite('projection-formula')
def projection_formula_suite(settings):
    rng = settings.rng('projection-formula')
    instances = []
    bases = settings.bases()
    for n in range(settings.counts['projection_instances']):
        base = bases[n % len(bases)]
        s = composite(random_tower(base, rng, 1 + n % settings.depth))
        p = int(rng.integers(0, base.rank + 1))
        c = random_weight(base, p, rng)
        a = random_cycle(s.source, p, rng)

        def check(s=s, c=c, a=a):
            left = pair(weight_pullback(s, c), a)
            right = pair(c, pushforward_subdivision(s, a))
            return left == right, {'codim': c.codim, 'left': left, 'right': right}
        instances.append(_guarded(check, base=fan_fingerprint(base)))
    return _report('projection-formula', settings, instances)


@suite('excision')
def excision_suite(settings):
    if settings.fans:
        cases = [(f, f.cone(i)) for f in settings.fans for i in f.cones_of_dim(1)]
    else:
        p2, p1xp1, bl0p2 = load_fixture('p2'), load_fixture('p1xp1'), load_fixture('bl0p2')
        cases = [(p2, make_cone([(1, 0)], 2)), (p1xp1, make_cone([(1, 0)], 2)),
                 (bl0p2, make_cone([(1, 1)], 2)), (p2, make_cone([], 2))]
    instances = []
    for f, sigma in cases:
        def check(f=f, sigma=sigma):
            report = excision_report(f, sigma)
            return report['exact'], {'checks': [{'dim': c['dim'], 'exact': c['exact']}
                                                for c in report['checks']]}
        instances.append(_guarded(check, fan=fan_fingerprint(f), cone=[list(r) for r in sigma.rays]))
    return _report('excision', settings, instances)


def _free_cycle_basis(f: Fan, k: int):
    relations = relation_lattice(f, k).relation_vectors
    g = len(f.cones_of_dim(f.rank - k))
    if not relations:
        rows = [[1 if i == j else 0 for j in range(g)] for i in range(g)]
        r = 0
    else:
        d, _, _, v_inv = lattice.smith_normal_form(relations, return_inverse=True)
        r = sum(1 for i in range(min(d.shape)) if d[i, i] != 0)
        rows = lattice.to_lists(v_inv)
    gens = f.cones_of_dim(f.rank - k)
    return [make_cycle(f, k, zip(gens, row)) for row in rows[r:]]


@suite('duality')
def duality_suite(settings):
    rng = settings.rng('duality')
    instances = []
    for base in settings.bases():
        steps = random_tower(base, rng, settings.depth)
        for f in [base] + [s.source for s in steps]:
            for k in range(f.rank + 1):
                def check(f=f, k=k):
                    weights = minkowski_weight_basis(f, k)
                    cycles = _free_cycle_basis(f, k)
                    matrix = [[pair(w, a) for a in cycles] for w in weights]
                    ok = len(weights) == len(cycles) == chow_presentation(f, k).free_rank
                    ok = ok and (not matrix or lattice.is_unimodular(matrix))
                    return ok, {'rank': len(weights)}
                instances.append(_guarded(check, fan=fan_fingerprint(f), dim=k))

        def transport_check(base=base, steps=steps):
            h = minkowski_weight_basis(base, 1)[0]
            p = weight_class(base, h)
            a = class_from_cycle(base, random_cycle(base, 1, rng))
            before = poincare_pair(p, a)
            after = poincare_pair(p, transport(a, composite(steps)))
            return before == after, {'pairing': before}
        instances.append(_guarded(transport_check, fan=fan_fingerprint(base), dim='transport'))
    return _report('duality', settings, instances)


def _twice_area(vertices):
    n = len(vertices)
    sx, sy = sum(v[0] for v in vertices), sum(v[1] for v in vertices)
    centered = [(n * v[0] - sx, n * v[1] - sy) for v in vertices]

    def ccw(a, b):
        half_a = 0 if (a[1] > 0 or (a[1] == 0 and a[0] > 0)) else 1
        half_b = 0 if (b[1] > 0 or (b[1] == 0 and b[0] > 0)) else 1
        if half_a != half_b:
            return half_a - half_b
        cross = a[0] * b[1] - a[1] * b[0]
        return -1 if cross > 0 else (1 if cross < 0 else 0)
    order = sorted(range(n), key=cmp_to_key(lambda i, j: ccw(centered[i], centered[j])))
    ring = [vertices[i] for i in order]
    return abs(sum(ring[i][0] * ring[(i + 1) % n][1] - ring[(i + 1) % n][0] * ring[i][1]
                   for i in range(n)))


@suite('mcmullen')
def mcmullen_suite(settings):
    rng = settings.rng('mcmullen')
    bound = VERIFY_CONFIG['max_coordinate']
    polygons = [make_polytope([(0, 0), (1, 0), (0, 1)]),
                make_polytope([(0, 0), (1, 0), (0, 1), (1, 1)])]
    while len(polygons) < settings.counts['polygons']:
        points = [tuple(int(x) for x in rng.integers(0, bound + 1, size=2)) for _ in range(4)]
        candidate = make_polytope(points)
        if len(candidate.vertices) >= 3 and candidate not in polygons:
            polygons.append(candidate)
    base = load_fixture('p2')
    instances = []
    for polygon in polygons:
        def check(polygon=polygon):
            p = polytope_class(polygon, base)
            square = multiply(p, p, seed=settings.seed)
            deg = pair(square.weight, fundamental_class(square.level.source))
            area = _twice_area(polygon.vertices)
            return deg == area, {'degree': deg, 'twice_area': area}
        instances.append(_guarded(check, vertices=[list(v) for v in polygon.vertices]))
    return _report('mcmullen', settings, instances)


@suite('square')
def square_suite(settings):
    fixture = square_fixture()
    return _report('square', settings, [dict(fixture)])


@suite('normal-cone')
def normal_cone_suite(settings):
    return _report('normal-cone', settings, [verify_normal_cone_fixture()])


@suite('commutativity')
def commutativity_suite(settings):
    rng = settings.rng('commutativity')
    instances = []
    line = load_fixture('p1')
    for base in settings.bases():
        for _ in range(settings.counts['towers_per_fan']):
            s = composite(random_tower(base, rng, settings.depth))
            rays = base.cones_of_dim(1)
            ray = base.cone(rays[int(rng.integers(len(rays)))])
            k = int(rng.integers(1, base.rank + 1))
            a = random_cycle(base, k, rng)

            def orbit_check(s=s, ray=ray, a=a):
                fine_star, _ = star_with_map(s.source, ray)
                coarse_star, _ = star_with_map(s.target, ray)
                restricted = make_subdivision(fine_star, coarse_star)
                left = strict_gysin_orbit(s.source, ray, gysin_subdivision(s, a))
                right = gysin_subdivision(restricted, strict_gysin_orbit(s.target, ray, a))
                return is_rationally_equivalent(left, right), {'square': 'orbit', 'dim': a.dim}
            instances.append(_guarded(orbit_check, base=fan_fingerprint(base)))

            b = random_cycle(s.source, int(rng.integers(0, base.rank + 1)), rng)

            def flat_check(s=s, b=b):
                down = pushforward_subdivision(s, b)
                route_a = log_flat_pullback(projection_morphism(s.target, line),
                                            class_from_cycle(s.target, down))
                lifted = log_flat_pullback(projection_morphism(s.source, line),
                                           class_from_cycle(s.source, b))
                product = make_subdivision(product_fan(s.source, line), product_fan(s.target, line))
                route_b = pushforward_subdivision(product, lifted.cycle)
                return route_a.cycle == route_b, {'square': 'flat', 'dim': b.dim}
            instances.append(_guarded(flat_check, base=fan_fingerprint(base)))
    return _report('commutativity', settings, instances)


@suite('bundles')
def bundles_suite(settings):
    fans = settings.fans or [load_fixture(n) for n in ('a2', 'p1', 'p2', 'p1xp1')]
    instances = []
    for f in fans:
        def check(f=f):
            report = bundle_report(f)
            return report['pass'], {'checks': report['checks']}
        instances.append(_guarded(check, fan=fan_fingerprint(f)))
    return _report('bundles', settings, instances)


def run_suite(name, seed=None, depth=None, preset='acceptance', fans=None) -> dict:
    """Run one suite (or 'all') and return its report."""
    if name == 'all':
        return verify_suites(seed=seed, depth=depth, preset=preset, fans=fans)
    settings = Settings(seed=seed, depth=depth, preset=preset, fans=fans)
    if name not in SUITES:
        raise KeyError(name)
    logger.debug("running suite %s (seed %d, depth %d)", name, settings.seed, settings.depth)
    return SUITES[name](settings)


def verify_suites(seed=None, depth=None, preset='acceptance', fans=None) -> dict:
    """Every registered suite, in name order, with one aggregate failure count."""
    settings = Settings(seed=seed, depth=depth, preset=preset, fans=fans)
    reports = [SUITES[n](settings) for n in sorted(SUITES)]
    failures = sum(r['failures'] for r in reports)
    logger.debug("%d suites, %d failures", len(reports), failures)
    return {'suite': 'all', 'seed': settings.seed, 'depth': settings.depth,
            'suites': reports, 'failures': failures, 'pass': failures == 0}

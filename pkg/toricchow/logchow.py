#!/usr/bin/env python3
# File name   : logchow.py
# Description : Log Chow classes carried on smooth subdivisions
# Author      : toricchow developers

"""
Classes of the colimit theory.

A LogCycleClass is a cycle on the source of a smooth subdivision (its level)
of a fixed base fan. Classes at different levels are compared after moving
both to a common smooth refinement with Gysin pullbacks. The colimit itself is
never built.
"""

import itertools
import logging
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from . import lattice
from .blowup import (Subdivision, ToricMorphism, common_refinement, compose,
                     cone_volume, identity_subdivision, integralize, load_subdivision,
                     make_subdivision, resolve, star_subdivision, subdivision_to_dict)
from .chow import (CycleRep, MinkowskiWeight, chow_presentation, cup,
                   cycle_of_weight, cycle_to_dict, degree, divisor_cap, fundamental_class,
                   gysin_subdivision, is_rationally_equivalent, load_cycle, make_cycle, orbit_class,
                   pair, pushforward_subdivision, relation_lattice, strict_gysin_orbit, support_function,
                   weight_of_cycle, weight_of_divisor, weight_pullback, weight_to_dict)
from .errors import BlowupError, InputError, LogChowError, NotFlatError, NotProperError
from .fan import (Cone, Fan, cone_from_inequalities, fan_to_dict, intersect_cones, is_complete,
                  is_locally_free, load_fan, make_cone, make_fan, product_cone_index, product_fan,
                  star_with_map)
from .lattice import dot

logger = logging.getLogger(__name__)

Vector = Tuple[int, ...]


@dataclass(frozen=True)
class LogCycleClass:
    base: Fan
    level: Subdivision
    cycle: CycleRep

    def __post_init__(self):
        if self.level.target != self.base:
            raise LogChowError("level does not subdivide the base")
        if self.cycle.fan != self.level.source:
            raise LogChowError("cycle does not live on the level")
        if not is_locally_free(self.level.source):
            raise LogChowError("level is not smooth")

    @property
    def dim(self) -> int:
        return self.cycle.dim


@dataclass(frozen=True)
class PolytopeClass:
    base: Fan
    level: Subdivision
    weight: MinkowskiWeight

    def __post_init__(self):
        if self.level.target != self.base or self.weight.fan != self.level.source:
            raise LogChowError("weight does not live on a level of the base")
        if not (is_locally_free(self.level.source) and is_complete(self.level.source)):
            raise LogChowError("polytope classes need a smooth complete level")


@dataclass(frozen=True)
class LatticePolytope:
    ambient_rank: int
    vertices: Tuple[Vector, ...]


def make_polytope(points, ambient_rank: Optional[int] = None) -> LatticePolytope:
    """Lattice polytope spanned by points; only the vertices are kept."""
    points = [lattice.to_vector(q) for q in points]
    if not points:
        raise LogChowError("polytope without points")
    n = len(points[0]) if ambient_rank is None else ambient_rank
    if any(len(q) != n for q in points):
        raise LogChowError("polytope points of mixed length")
    homogenized = make_cone([q + (1,) for q in points], n + 1)
    return LatticePolytope(n, tuple(sorted(r[:-1] for r in homogenized.rays)))


def class_from_cycle(base: Fan, cycle: CycleRep) -> LogCycleClass:
    """The class of a cycle on a smooth base, at the identity level."""
    return LogCycleClass(base, identity_subdivision(base), cycle)


def transport(a: LogCycleClass, finer: Subdivision) -> LogCycleClass:
    """Move a to the level finer.source through the Gysin pullback along finer."""
    if finer.target != a.level.source:
        raise LogChowError("not a refinement of the class's level")
    if finer.is_identity:
        return a
    return LogCycleClass(a.base, compose(finer, a.level), gysin_subdivision(finer, a.cycle))


def common_level(base: Fan, levels: Sequence[Subdivision]) -> Subdivision:
    """A smooth subdivision of base refining every given level."""
    levels = list(levels)
    if not levels:
        return resolve(base)
    current = levels[0]
    for other in levels[1:]:
        if other.source == current.source:
            continue
        meet, _, _ = common_refinement(current, other)
        smooth = resolve(meet)
        current = compose(smooth, make_subdivision(meet, base))
    if not is_locally_free(current.source):
        current = compose(resolve(current.source), current)
    logger.debug("common level with %d rays", len(current.source.rays))
    return current


def refine_to(a: LogCycleClass, level: Subdivision) -> LogCycleClass:
    if level.source == a.level.source:
        return a
    return transport(a, make_subdivision(level.source, a.level.source))


def _weight_to(p: PolytopeClass, level: Subdivision) -> MinkowskiWeight:
    if level.source == p.level.source:
        return p.weight
    return weight_pullback(make_subdivision(level.source, p.level.source), p.weight)


def equals(a: LogCycleClass, b: LogCycleClass) -> bool:
    if a.base != b.base:
        raise LogChowError("classes over different bases")
    if a.dim != b.dim:
        return False
    level = common_level(a.base, [a.level, b.level])
    return is_rationally_equivalent(refine_to(a, level).cycle, refine_to(b, level).cycle)


# Pushforward and flat pullback

def _pulled_cones(m: ToricMorphism):
    out = []
    for t in m.target.maximal_cones:
        tau = m.target.cone(t)
        normals = [u for u in (m.pull_covector(n) for n in tau.facet_normals) if any(u)]
        equations = [u for u in (m.pull_covector(e) for e in tau.equations) if any(u)]
        out.append((normals, equations))
    return out


def is_proper(m: ToricMorphism) -> bool:
    """Support of the source equals the preimage of the target support.

    Compared orthant by orthant through normalized volumes of the full-dimensional
    pieces; cones of both sides meet only in lower-dimensional faces.
    """
    try:
        integralize(m)
    except BlowupError:
        return False
    n = m.source.rank
    pulled = _pulled_cones(m)
    for signs in itertools.product((1, -1), repeat=n):
        orthant = make_cone([tuple(s if k == j else 0 for k in range(n))
                             for j, s in enumerate(signs)], n)
        have = sum((cone_volume(intersect_cones(m.source.cone(i), orthant), signs)
                    for i in m.source.maximal_cones), Fraction(0))
        want = sum((cone_volume(cone_from_inequalities(n, list(orthant.facet_normals) + normals,
                                                       equations), signs)
                    for normals, equations in pulled), Fraction(0))
        if have != want:
            return False
    return True


def _push_index(m: ToricMorphism, i: int, j: int) -> int:
    # degree of V(sigma) -> V(tau) when dimensions match, else 0
    source, target = m.source, m.target
    if source.rank - source.dims[i] != target.rank - target.dims[j]:
        return 0
    q = lattice.quotient_projection(target.cone(j).rays, target.rank)
    composite = [[dot(row, [m.lattice_map[r][c] for r in range(target.rank)])
                  for c in range(source.rank)] for row in q]
    if not composite:
        return 1
    factors = lattice.invariant_factors(composite)
    if len(factors) < len(composite):
        return 0
    index = 1
    for d in factors:
        index *= d
    return index


def log_pushforward(m: ToricMorphism, a: LogCycleClass) -> LogCycleClass:
    """Proper pushforward: integralize against a smooth target level, resolve the
    source, transport a there and push orbit by orbit.

    Raises:
        NotProperError: support of the source is not the preimage of the target support.
    """
    if a.base != m.source:
        raise LogChowError("class does not live over the source of the morphism")
    if not is_proper(m):
        raise NotProperError("morphism is not proper")
    if a.dim > m.target.rank:
        raise LogChowError("class dimension exceeds the target rank", dim=a.dim, rank=m.target.rank)
    target_level = resolve(m.target)
    lifted = m.with_fans(a.level.source, target_level.source)
    integral = integralize(lifted)
    smooth = resolve(integral.source)
    moved = transport(a, compose(smooth, integral))
    final = m.with_fans(smooth.source, target_level.source)
    coeffs = defaultdict(int)
    for i, c in moved.cycle.entries:
        j = final.image_cone_index(i)
        index = _push_index(final, i, j)
        if index:
            coeffs[j] += index * c
    return LogCycleClass(m.target, target_level, make_cycle(target_level.source, a.dim, coeffs))


def flatness_certificate(m: ToricMorphism) -> Subdivision:
    """The integralized source, after checking that every cone maps onto a target
    cone with a surjective map on the quotient lattices.

    Raises:
        NotFlatError: "not log flat".
    """
    try:
        integral = integralize(m)
    except BlowupError:
        raise NotFlatError("not log flat", reason="image leaves the target support")
    lifted = m.with_fans(integral.source, m.target)
    for i, c in enumerate(integral.source.cone_objects):
        j = lifted.image_cone_index(i)
        tau = m.target.cone(j)
        images = [lifted.image(r) for r in c.rays]
        if make_cone(images, m.target.rank) != tau:
            raise NotFlatError("not log flat", cone=c.rays, image=tau.rays)
        q = lattice.quotient_projection(tau.rays, m.target.rank)
        composite = [[dot(row, [m.lattice_map[r][k] for r in range(m.target.rank)])
                      for k in range(m.source.rank)] for row in q]
        if composite and lattice.invariant_factors(composite) != [1] * len(composite):
            raise NotFlatError("not log flat", cone=c.rays, reason="quotient map not surjective")
    if not is_locally_free(integral.source):
        raise NotFlatError("not log flat", reason="integralized source is not smooth")
    return integral


def log_flat_pullback(m: ToricMorphism, a: LogCycleClass) -> LogCycleClass:
    """Inverse image of orbit classes, with multiplicity [N_tau : image of N_sigma]."""
    if a.base != m.target:
        raise LogChowError("class does not live over the target of the morphism")
    lifted = m.with_fans(m.source, a.level.source)
    integral = flatness_certificate(lifted)
    source = integral.source
    final = lifted.with_fans(source, a.level.source)
    preimages = defaultdict(list)
    for i in range(len(source.cones)):
        j = final.image_cone_index(i)
        if source.dims[i] == a.level.source.dims[j]:
            preimages[j].append(i)
    coeffs = defaultdict(int)
    for j, c in a.cycle.entries:
        for i in preimages[j]:
            images = [final.image(b) for b in source.cone(i).span_basis.vectors]
            index = lattice.index_in_saturation(images, m.target.rank) if images else 1
            coeffs[i] += index * c
    dim = a.dim + m.source.rank - m.target.rank
    return LogCycleClass(m.source, integral, make_cycle(source, dim, coeffs))


# Polytopes and the module structure

def polytope_class(polytope: LatticePolytope, base: Fan) -> PolytopeClass:
    """Codimension-one weight of the divisor of the polytope's support function,
    at a smooth level refining both the base and the polytope's normal fan.

    Raises:
        LogChowError: base not complete, or dimensions disagree.
    """
    if polytope.ambient_rank != base.rank:
        raise LogChowError("polytope and base live in different lattices")
    if not is_complete(base):
        raise LogChowError("polytope classes need a complete base")
    vertices = polytope.vertices
    gens = []
    for k in base.maximal_cones:
        kappa = base.cone(k)
        for a in vertices:
            inequalities = list(kappa.facet_normals)
            inequalities += [tuple(b_i - a_i for a_i, b_i in zip(a, b)) for b in vertices if b != a]
            piece = cone_from_inequalities(base.rank, inequalities, kappa.equations)
            if piece.dim == base.rank:
                gens.append(piece.rays)
    refined = make_fan(base.rank, gens, validate=False)
    level = compose(resolve(refined), make_subdivision(refined, base))
    weight = weight_of_divisor(support_function(vertices, level.source))
    return PolytopeClass(base, level, weight)


def weight_class(base: Fan, weight: MinkowskiWeight) -> PolytopeClass:
    """A Minkowski weight on a smooth complete level, viewed as a cohomology class."""
    level = make_subdivision(weight.fan, base)
    return PolytopeClass(base, level, weight)


def multiply(p1: PolytopeClass, p2: PolytopeClass, seed: int = 0) -> PolytopeClass:
    if p1.base != p2.base:
        raise LogChowError("classes over different bases")
    level = common_level(p1.base, [p1.level, p2.level])
    return PolytopeClass(p1.base, level, cup(_weight_to(p1, level), _weight_to(p2, level), seed=seed))


def act(p: PolytopeClass, a: LogCycleClass, seed: int = 0) -> LogCycleClass:
    """Cap a with the cohomology class p at a common smooth level."""
    if p.base != a.base:
        raise LogChowError("classes over different bases")
    level = common_level(a.base, [p.level, a.level])
    moved = refine_to(a, level)
    if p.weight.codim > moved.dim:
        raise LogChowError("class of too small dimension for the action",
                           dim=moved.dim, codim=p.weight.codim)
    capped = cycle_of_weight(cup(_weight_to(p, level), weight_of_cycle(moved.cycle), seed=seed))
    return LogCycleClass(a.base, level, capped)


def poincare_pair(p: PolytopeClass, a: LogCycleClass) -> int:
    """Degree of p capped with a, computed at a common level."""
    if p.base != a.base:
        raise LogChowError("classes over different bases")
    if not is_complete(a.base):
        raise LogChowError("pairing needs a complete base")
    level = common_level(a.base, [p.level, a.level])
    return pair(_weight_to(p, level), refine_to(a, level).cycle)


def external_product(a: LogCycleClass, b: LogCycleClass) -> LogCycleClass:
    base = product_fan(a.base, b.base)
    source = product_fan(a.level.source, b.level.source)
    level = make_subdivision(source, base)
    coeffs = defaultdict(int)
    for i, x in a.cycle.entries:
        for j, y in b.cycle.entries:
            coeffs[product_cone_index(source, a.level.source, b.level.source, i, j)] += x * y
    return LogCycleClass(base, level, make_cycle(source, a.dim + b.dim, coeffs))


# Reports

def _presentation_dict(f: Optional[Fan], k: int) -> dict:
    if f is None or not 0 <= k <= f.rank:
        return {'dim': k, 'generators': [], 'invariant_factors': [], 'free_rank': 0, 'torsion': []}
    return chow_presentation(f, k).to_dict()


def excision_report(base: Fan, sigma: Cone) -> dict:
    """Check A_k(V(sigma)) -> A_k(X) -> A_k(X minus V(sigma)) -> 0 at every k."""
    s = base.locate(sigma)
    star_fan, mapping = star_with_map(base, sigma)
    outside = [i for i in range(len(base.cones)) if not base.is_face(s, i)]
    opened = make_fan(base.rank, [base.cone(i).rays for i in outside], validate=False) \
        if outside else None
    checks = []
    for k in range(base.rank + 1):
        x_gens = base.cones_of_dim(base.rank - k)
        x_rel = relation_lattice(base, k).relation_vectors
        # i_*: star cones of dimension (star rank - k) to their cones in base
        pushed = []
        if 0 <= k <= star_fan.rank:
            for d in star_fan.cones_of_dim(star_fan.rank - k):
                pushed.append([1 if g == mapping[d] else 0 for g in x_gens])
        if opened is None:
            u_gens, u_rel = [], ()
        else:
            u_gens = opened.cones_of_dim(base.rank - k)
            u_rel = relation_lattice(opened, k).relation_vectors
        u_position = {base.locate(opened.cone(g)): pos for pos, g in enumerate(u_gens)} \
            if opened is not None else {}
        restrict = [[1 if u_position.get(g) == pos else 0 for g in x_gens]
                    for pos in range(len(u_gens))]
        surjective = all(any(row) for row in restrict)
        composite_zero = all(
            lattice.in_lattice(u_rel, [dot(row, v) for row in restrict], len(u_gens))
            for v in pushed) if u_gens else True
        # kernel of Z^X -> A_k(U) inside the image of A_k(D) plus the relations of X
        if u_gens:
            block = [list(row) + [-r[pos] for r in u_rel] for pos, row in enumerate(restrict)]
            kernel = lattice.kernel_basis(block, len(x_gens) + len(u_rel))
            kernel = [[int(x) for x in row[:len(x_gens)]] for row in kernel]
        else:
            kernel = [[1 if g == h else 0 for g in x_gens] for h in x_gens]
        spanning = list(pushed) + [list(r) for r in x_rel]
        exact_middle = all(lattice.in_lattice(spanning, v, len(x_gens)) for v in kernel)
        checks.append({
            'dim': k,
            'closed': _presentation_dict(star_fan, k),
            'whole': _presentation_dict(base, k),
            'open': _presentation_dict(opened, k),
            'surjective': surjective,
            'composite_zero': composite_zero,
            'exact_middle': exact_middle,
            'exact': surjective and composite_zero and exact_middle,
        })
    return {
        'cone': [list(r) for r in sigma.rays],
        'levels': 'base',
        'checks': checks,
        'exact': all(c['exact'] for c in checks),
    }


def bundle_report(f: Fan) -> dict:
    """Rank checks for the trivial P^1- and A^1-bundles over f."""
    line = make_fan(1, [[(1,)], [(-1,)]])
    ray = make_fan(1, [[(1,)]])
    proj = product_fan(line, f)
    affine = product_fan(ray, f)

    def free(g: Fan, k: int) -> int:
        return chow_presentation(g, k).free_rank if 0 <= k <= g.rank else 0

    checks = []
    for k in range(f.rank + 2):
        projective = free(proj, k) == free(f, k) + free(f, k - 1)
        affine_ok = free(affine, k) == free(f, k - 1)
        checks.append({'dim': k, 'projective_bundle': projective, 'affine_bundle': affine_ok})
    return {'checks': checks, 'pass': all(c['projective_bundle'] and c['affine_bundle']
                                          for c in checks)}


def _orthant_blowup():
    quadrant = make_fan(2, [[(1, 0), (0, 1)]])
    return quadrant, star_subdivision(quadrant, (1, 1))


def spec_point_fixture() -> dict:
    """Gysin pullback of the closed point of A^2 along the blow-up at (1,1)."""
    quadrant, s = _orthant_blowup()
    point = orbit_class(quadrant, quadrant.index_of((0, 1)))
    pulled = gysin_subdivision(s, point)
    exceptional = s.source.ray_index((1, 1))
    multiplicity = sum(c for i, c in pulled.entries if exceptional in s.source.cones[i])
    return {'cycle': cycle_to_dict(pulled), 'multiplicity': multiplicity, 'pass': multiplicity == 1}


def square_fixture() -> dict:
    """The square whose two composites differ on the exceptional curve."""
    _, s = _orthant_blowup()
    curve = orbit_class(s.source, s.source.index_of((s.source.ray_index((1, 1)),)))
    pushed = pushforward_subdivision(s, curve)
    around = gysin_subdivision(s, pushed)
    return {
        'pushforward': cycle_to_dict(pushed),
        'gysin_of_pushforward': cycle_to_dict(around),
        'identity_composite': cycle_to_dict(curve),
        'commutes': around == curve,
        'pass': pushed.is_zero() and around.is_zero() and not curve.is_zero(),
    }


def verify_normal_cone_fixture() -> dict:
    """Excess bundle on the exceptional P^1 of Bl_0 A^2 against the Gysin multiplicity."""
    _, s = _orthant_blowup()
    blown = s.source
    exceptional = blown.cone(blown.index_of((blown.ray_index((1, 1)),)))
    curve = orbit_class(blown, blown.locate(exceptional))
    normal = strict_gysin_orbit(blown, exceptional, curve)
    normal_degree = degree(normal)
    # trivial rank two bundle modulo the normal line bundle
    excess_c1 = 0 - normal_degree
    star_fan, _ = star_with_map(blown, exceptional)
    hyperplane = support_function([(0,), (1,)], star_fan)
    excess_degree = degree(divisor_cap(hyperplane, fundamental_class(star_fan)))
    multiplicity = spec_point_fixture()['multiplicity']
    consistent = excess_c1 == excess_degree == multiplicity == 1
    return {
        'normal_degree': normal_degree,
        'excess_c1': excess_c1,
        'excess_degree': excess_degree,
        'gysin_multiplicity': multiplicity,
        'status': 'consistent' if consistent else 'inconsistent',
        'pass': consistent,
    }


# JSON

def class_to_dict(a: LogCycleClass) -> dict:
    return {'base': fan_to_dict(a.base), 'level': subdivision_to_dict(a.level),
            'cycle': cycle_to_dict(a.cycle)}


def polytope_class_to_dict(p: PolytopeClass) -> dict:
    return {'base': fan_to_dict(p.base), 'level': subdivision_to_dict(p.level),
            'weight': weight_to_dict(p.weight)}


def load_class(data, base: Optional[Fan] = None) -> LogCycleClass:
    """Class from JSON: {"base", "level"?, "cycle"}; base may come from the caller."""
    from .fan import read_json
    if isinstance(data, str):
        data = read_json(data)
    try:
        if base is None:
            base = load_fan(data['base'])
        level = load_subdivision(data['level']) if data.get('level') else identity_subdivision(base)
        return LogCycleClass(base, level, load_cycle(data['cycle'], level.source))
    except (KeyError, TypeError, AttributeError) as e:
        raise InputError("malformed log cycle class", reason=repr(e))


def load_polytope(data) -> LatticePolytope:
    from .fan import read_json
    if isinstance(data, str):
        data = read_json(data)
    try:
        return make_polytope([tuple(int(x) for x in v) for v in data['vertices']])
    except (KeyError, TypeError, ValueError) as e:
        raise InputError("malformed polytope", reason=repr(e))

#!/usr/bin/env python3
# File name   : chow.py
# Description : Chow groups, Minkowski weights and divisor calculus on one fan
# Author      : toricchow developers

"""
Intersection theory on a fixed fan.

Cycles of dimension k are integer combinations of orbit closures V(sigma) with
dim sigma = rank - k, modulo the relations coming from characters on the
codimension-one orbits of each V(tau). Minkowski weights of codimension p live
on the same cones as dimension-p cycles and are the integer kernel of those
relations; on complete fans they pair with cycles by sum of products.
"""

import hashlib
import logging
from collections import defaultdict
from dataclasses import dataclass
from functools import cmp_to_key, lru_cache
from typing import Dict, List, Tuple

import numpy as np

from . import lattice
from .blowup import Subdivision, make_subdivision, resolve, identity_subdivision
from .config import COMPLETION_CONFIG, DISPLACEMENT_CONFIG
from .errors import ChowError, CompletionError, DisplacementError, InputError
from .fan import (Fan, cone_from_inequalities, fan_fingerprint, is_complete,
                  is_locally_free, make_cone, make_fan, relative_generator, star_with_map)
from .lattice import dot, primitive

logger = logging.getLogger(__name__)

Vector = Tuple[int, ...]


def _entries(f: Fan, dims: int, coeffs) -> Tuple[Tuple[int, int], ...]:
    if isinstance(coeffs, dict):
        coeffs = coeffs.items()
    total = defaultdict(int)
    for i, c in coeffs:
        i = int(i)
        if not 0 <= i < len(f.cones) or f.dims[i] != dims:
            raise ChowError("coefficient on a cone of the wrong dimension", cone=i, expected_dim=dims)
        total[i] += int(c)
    return tuple(sorted((i, c) for i, c in total.items() if c != 0))


@dataclass(frozen=True)
class CycleRep:
    """Integer combination of orbit closures V(sigma), dim sigma = rank - dim."""

    fan: Fan
    dim: int
    entries: Tuple[Tuple[int, int], ...]

    def coefficient(self, i: int) -> int:
        return dict(self.entries).get(i, 0)

    def vector(self) -> List[int]:
        coeffs = dict(self.entries)
        return [coeffs.get(i, 0) for i in self.fan.cones_of_dim(self.fan.rank - self.dim)]

    def is_zero(self) -> bool:
        return not self.entries

    def _check(self, other: 'CycleRep'):
        if self.fan != other.fan or self.dim != other.dim:
            raise ChowError("cycles live on different fans or dimensions")

    def __add__(self, other):
        self._check(other)
        return make_cycle(self.fan, self.dim, self.entries + other.entries)

    def __sub__(self, other):
        self._check(other)
        return make_cycle(self.fan, self.dim, self.entries + tuple((i, -c) for i, c in other.entries))

    def __rmul__(self, k: int):
        return make_cycle(self.fan, self.dim, [(i, k * c) for i, c in self.entries])


@dataclass(frozen=True)
class MinkowskiWeight:
    """Integer weights on the cones of dimension rank - codim."""

    fan: Fan
    codim: int
    entries: Tuple[Tuple[int, int], ...]

    def coefficient(self, i: int) -> int:
        return dict(self.entries).get(i, 0)

    def vector(self) -> List[int]:
        coeffs = dict(self.entries)
        return [coeffs.get(i, 0) for i in self.fan.cones_of_dim(self.fan.rank - self.codim)]

    def is_zero(self) -> bool:
        return not self.entries


def make_cycle(f: Fan, k: int, coeffs=()) -> CycleRep:
    if not 0 <= k <= f.rank:
        raise ChowError("cycle dimension out of range", dim=k, rank=f.rank)
    return CycleRep(f, k, _entries(f, f.rank - k, coeffs))


def make_weight(f: Fan, p: int, coeffs=()) -> MinkowskiWeight:
    if not 0 <= p <= f.rank:
        raise ChowError("weight codimension out of range", codim=p, rank=f.rank)
    return MinkowskiWeight(f, p, _entries(f, f.rank - p, coeffs))


def orbit_class(f: Fan, i: int) -> CycleRep:
    """[V(sigma)] for the cone with index i."""
    return make_cycle(f, f.rank - f.dims[i], {i: 1})


def fundamental_class(f: Fan) -> CycleRep:
    return orbit_class(f, f.index_of(()))


def fundamental_weight(f: Fan) -> MinkowskiWeight:
    return make_weight(f, 0, {i: 1 for i in f.cones_of_dim(f.rank)})


@dataclass(frozen=True)
class RelationLattice:
    fan: Fan
    dim: int
    generators: Tuple[int, ...]
    relation_vectors: Tuple[Tuple[int, ...], ...]
    sources: Tuple[Tuple[int, Vector], ...]


@dataclass(frozen=True)
class ChowPresentation:
    generators: Tuple[int, ...]
    relations: RelationLattice
    invariant_factors: Tuple[int, ...]

    @property
    def free_rank(self) -> int:
        return len(self.generators) - len(self.invariant_factors)

    @property
    def torsion(self) -> Tuple[int, ...]:
        return tuple(d for d in self.invariant_factors if d > 1)

    def to_dict(self) -> dict:
        return {
            'dim': self.relations.dim,
            'generators': list(self.generators),
            'relations': [list(r) for r in self.relations.relation_vectors],
            'invariant_factors': list(self.invariant_factors),
            'free_rank': self.free_rank,
            'torsion': list(self.torsion),
        }


@lru_cache(maxsize=512)
def relation_lattice(f: Fan, k: int, second_choice: bool = False) -> RelationLattice:
    """Relations among dimension-k orbit classes: one row per (tau, u), u in a
    basis of tau-perp, with entry <u, n_{sigma,tau}> at each sigma over tau."""
    if not 0 <= k <= f.rank:
        raise ChowError("cycle dimension out of range", dim=k, rank=f.rank)
    generators = tuple(f.cones_of_dim(f.rank - k))
    column = {g: pos for pos, g in enumerate(generators)}
    rows, sources = [], []
    if k < f.rank:
        for t in f.cones_of_dim(f.rank - k - 1):
            tau = f.cone(t)
            cofaces = f.cofaces(t)
            generators_of = {s: relative_generator(f.cone(s), tau, second_choice) for s in cofaces}
            for u in tau.equations:
                row = [0] * len(generators)
                for s in cofaces:
                    row[column[s]] = dot(u, generators_of[s])
                rows.append(tuple(row))
                sources.append((t, u))
    return RelationLattice(f, k, generators, tuple(rows), tuple(sources))


def chow_presentation(f: Fan, k: int) -> ChowPresentation:
    """Generators, relations and Smith invariant factors of A_k."""
    relations = relation_lattice(f, k)
    if relations.relation_vectors:
        factors = lattice.invariant_factors(relations.relation_vectors)
    else:
        factors = []
    return ChowPresentation(relations.generators, relations, tuple(factors))


def chow_ranks(f: Fan) -> List[dict]:
    out = []
    for k in range(f.rank + 1):
        p = chow_presentation(f, k)
        out.append({'dim': k, 'free_rank': p.free_rank, 'torsion': list(p.torsion)})
    return out


def is_rationally_equivalent(a: CycleRep, b: CycleRep) -> bool:
    if a.fan != b.fan or a.dim != b.dim:
        raise ChowError("cycles live on different fans or dimensions")
    relations = relation_lattice(a.fan, a.dim)
    difference = [x - y for x, y in zip(a.vector(), b.vector())]
    return lattice.in_lattice(relations.relation_vectors, difference, len(difference))


def degree(a: CycleRep) -> int:
    if a.dim != 0:
        raise ChowError("degree needs a zero-dimensional cycle", dim=a.dim)
    if not is_complete(a.fan):
        raise ChowError("degree needs a complete fan")
    return sum(c for _, c in a.entries)


def pair(c: MinkowskiWeight, a: CycleRep) -> int:
    """Kronecker pairing sum c(sigma) a(sigma); the degree of c capped with a."""
    if c.fan != a.fan or c.codim != a.dim:
        raise ChowError("pairing needs a weight and a cycle of matching degree on one fan")
    if not is_complete(c.fan):
        raise ChowError("pairing needs a complete fan")
    return sum(x * y for x, y in zip(c.vector(), a.vector()))


def is_balanced(w: MinkowskiWeight) -> bool:
    relations = relation_lattice(w.fan, w.codim)
    values = w.vector()
    return all(dot(row, values) == 0 for row in relations.relation_vectors)


def _assert_balanced(w: MinkowskiWeight, where: str):
    if not is_balanced(w):
        raise ChowError("weight fails the balancing condition", operation=where)


def _require_complete(f: Fan, smooth: bool = False, simplicial: bool = False):
    if not is_complete(f):
        raise ChowError("fan is not complete")
    if smooth and not is_locally_free(f):
        raise ChowError("fan is not smooth")
    if simplicial and not all(c.is_simplicial for c in f.cone_objects):
        raise ChowError("fan is not simplicial")


def minkowski_weight_basis(f: Fan, p: int) -> List[MinkowskiWeight]:
    """HNF basis of the balanced integer weights of codimension p."""
    _require_complete(f)
    relations = relation_lattice(f, p)
    basis = lattice.kernel_basis(relations.relation_vectors, len(relations.generators))
    return [make_weight(f, p, zip(relations.generators, (int(x) for x in row))) for row in basis]


# Piecewise linear functions

@dataclass(frozen=True)
class PLFunction:
    """Integer values on the rays of fan (aligned with fan.rays)."""

    fan: Fan
    values: Tuple[int, ...]

    def __call__(self, ray) -> int:
        return self.values[self.fan.ray_index(tuple(ray))]


def pl_function(f: Fan, values: Dict[Vector, int]) -> PLFunction:
    return PLFunction(f, tuple(int(values.get(r, 0)) for r in f.rays))


def courant_function(f: Fan, ray) -> PLFunction:
    """PL function of the toric divisor D_ray: -1 on ray, 0 on the other rays."""
    i = f.ray_index(lattice.to_vector(ray))
    return PLFunction(f, tuple(-1 if j == i else 0 for j in range(len(f.rays))))


def support_function(vertices, f: Fan) -> PLFunction:
    """psi_P(v) = min over the vertices m of <m, v>."""
    vertices = [lattice.to_vector(m) for m in vertices]
    if not vertices:
        raise ChowError("polytope without vertices")
    return PLFunction(f, tuple(min(dot(m, r) for m in vertices) for r in f.rays))


@lru_cache(maxsize=4096)
def linear_piece(psi: PLFunction, i: int) -> Vector:
    """The canonical integral m with <m, r> = psi(r) on the rays of cone i."""
    f = psi.fan
    rays = f.cone(i).rays
    if not rays:
        return (0,) * f.rank
    m = lattice.solve_integral(rays, [psi(r) for r in rays])
    if m is None:
        raise ChowError("PL function is not integral linear on a cone", cone=rays)
    return m


def pull_pl(s: Subdivision, psi: PLFunction) -> PLFunction:
    """psi on s.target composed with the identity map of supports."""
    if psi.fan != s.target:
        raise ChowError("PL function does not live on the subdivided fan")
    values = []
    for r in s.source.rays:
        j = s.cone_map[s.source.index_of((s.source.ray_index(r),))]
        values.append(dot(linear_piece(psi, j), r))
    return PLFunction(s.source, tuple(values))


def divisor_cap(psi: PLFunction, a: CycleRep) -> CycleRep:
    """D_psi . V(tau) = sum over sigma covering tau of <m_tau - m_sigma, n_{sigma,tau}> V(sigma).

    D_psi = -sum psi(rho) D_rho, so support functions of polytopes give
    effective divisors of positive degree.
    """
    if psi.fan != a.fan:
        raise ChowError("PL function and cycle live on different fans")
    if a.dim == 0:
        raise ChowError("cannot cap a zero-dimensional cycle with a divisor")
    f = a.fan
    out = defaultdict(int)
    for t, coeff in a.entries:
        m_tau = linear_piece(psi, t)
        tau = f.cone(t)
        for s in f.cofaces(t):
            shift = tuple(x - y for x, y in zip(m_tau, linear_piece(psi, s)))
            out[s] += coeff * dot(shift, relative_generator(f.cone(s), tau))
    return make_cycle(f, a.dim - 1, out)


def weight_of_divisor(psi: PLFunction) -> MinkowskiWeight:
    """Codimension-one weight gamma -> deg(D_psi . V(gamma))."""
    f = psi.fan
    _require_complete(f)
    values = {g: degree(divisor_cap(psi, orbit_class(f, g))) for g in f.cones_of_dim(f.rank - 1)}
    w = make_weight(f, 1, values)
    _assert_balanced(w, 'weight_of_divisor')
    return w


# Orbit restriction and Poincare duality

def _orbit_cap(f: Fan, i: int, a: CycleRep) -> CycleRep:
    result = a
    for ray in f.cone(i).rays:
        result = divisor_cap(courant_function(f, ray), result)
    return result


def strict_gysin_orbit(f: Fan, sigma, a: CycleRep) -> CycleRep:
    """Restriction of a to the orbit closure V(sigma), as a cycle on star(f, sigma)."""
    if a.fan != f:
        raise ChowError("cycle does not live on the fan")
    if not is_locally_free(f):
        raise ChowError("strict Gysin map needs a smooth fan")
    i = f.locate(sigma)
    if a.dim < f.dims[i]:
        raise ChowError("cycle dimension smaller than the orbit codimension",
                        dim=a.dim, codim=f.dims[i])
    capped = _orbit_cap(f, i, a)
    star_fan, mapping = star_with_map(f, sigma)
    inverse = {j: k for k, j in mapping.items()}
    coeffs = {}
    for t, c in capped.entries:
        if t not in inverse:
            raise ChowError("orbit restriction left the star of the cone", cone=f.cones[t])
        coeffs[inverse[t]] = c
    return make_cycle(star_fan, a.dim - f.dims[i], coeffs)


def weight_of_cycle(a: CycleRep) -> MinkowskiWeight:
    """Poincare dual weight: sigma -> deg(a . V(sigma)) for dim sigma = dim a."""
    f = a.fan
    _require_complete(f, smooth=True)
    values = {}
    for s in f.cones_of_dim(a.dim):
        values[s] = sum(c for _, c in _orbit_cap(f, s, a).entries)
    return make_weight(f, f.rank - a.dim, values)


@lru_cache(maxsize=128)
def _intersection_matrix(f: Fan, p: int):
    # rows: dimension (rank - p) orbit classes; columns: codim-p weight slots
    rows = []
    for t in f.cones_of_dim(p):
        rows.append(weight_of_cycle(orbit_class(f, t)).vector())
    return rows


def cycle_of_weight(c: MinkowskiWeight) -> CycleRep:
    """Inverse of weight_of_cycle on smooth complete fans (canonical representative)."""
    f = c.fan
    _require_complete(f, smooth=True)
    rows = _intersection_matrix(f, c.codim)
    generators = f.cones_of_dim(c.codim)
    if c.is_zero():
        return make_cycle(f, f.rank - c.codim)
    transposed = [[rows[t][s] for t in range(len(rows))] for s in range(len(c.vector()))]
    x = lattice.solve_integral(transposed, c.vector())
    if x is None:
        raise ChowError("weight is not dual to an integral cycle", codim=c.codim)
    return make_cycle(f, f.rank - c.codim, zip(generators, x))


# Fan displacement rule

class _NotGeneric(Exception):
    pass


def displacement_vector(f: Fan, stream: int = 0, attempt: int = 0, seed: int = 0) -> Vector:
    """Deterministic pseudo-random integer vector derived from the fan's fingerprint."""
    material = f"{fan_fingerprint(f)}:{stream}:{attempt}:{seed}".encode('utf-8')
    state = int.from_bytes(hashlib.sha256(material).digest()[:8], 'big')
    rng = np.random.default_rng(state)
    bound = DISPLACEMENT_CONFIG['entry_bound']
    return tuple(int(x) for x in rng.integers(-bound, bound + 1, size=f.rank))


def _cup_with(c1: MinkowskiWeight, c2: MinkowskiWeight, v: Vector) -> MinkowskiWeight:
    f = c1.fan
    p, q = c1.codim, c2.codim
    w1, w2 = dict(c1.entries), dict(c2.entries)
    values = {}
    for g in f.cones_of_dim(f.rank - p - q):
        gamma = f.cones[g]
        base = [f.rays[r] for r in gamma]
        total = 0
        for s in f.cofaces(g, q):
            if not w1.get(s):
                continue
            extra1 = [f.rays[r] for r in f.cones[s] if r not in gamma]
            for t in f.cofaces(g, p):
                if not w2.get(t):
                    continue
                extra2 = [f.rays[r] for r in f.cones[t] if r not in gamma]
                vectors = base + extra1 + extra2
                if lattice.determinant(vectors) == 0:
                    continue
                x = lattice.solve_rational(lattice.as_matrix(vectors).T, v)
                b, c = x[len(base):len(base) + len(extra1)], x[len(base) + len(extra1):]
                if any(y == 0 for y in b + c):
                    raise _NotGeneric()
                if all(y > 0 for y in b) and all(y < 0 for y in c):
                    spans = f.cone(s).span_basis.vectors + f.cone(t).span_basis.vectors
                    index = lattice.index_in_saturation(spans, f.rank) if spans else 1
                    total += index * w1[s] * w2[t]
        values[g] = total
    return make_weight(f, p + q, values)


def cup(c1: MinkowskiWeight, c2: MinkowskiWeight, seed: int = 0, stream: int = 0) -> MinkowskiWeight:
    """Cup product by the fan displacement rule (simplicial complete fans).

    Raises:
        DisplacementError: no generic displacement vector within the reseed budget.
    """
    if c1.fan != c2.fan:
        raise ChowError("weights live on different fans")
    f = c1.fan
    _require_complete(f, simplicial=True)
    if c1.codim + c2.codim > f.rank:
        raise ChowError("codimensions add up beyond the rank",
                        codim=c1.codim + c2.codim, rank=f.rank)
    attempts = DISPLACEMENT_CONFIG['max_reseeds']
    for attempt in range(attempts):
        v = displacement_vector(f, stream, attempt, seed)
        try:
            result = _cup_with(c1, c2, v)
        except _NotGeneric:
            logger.debug("displacement %s not generic, reseeding", v)
            continue
        _assert_balanced(result, 'cup')
        return result
    raise DisplacementError("no generic displacement found", attempts=attempts)


def cap(c: MinkowskiWeight, a: CycleRep, seed: int = 0) -> CycleRep:
    """c capped with a, through Poincare duality on a smooth complete fan."""
    return cycle_of_weight(cup(c, weight_of_cycle(a), seed=seed))


# Maps along one subdivision

def pushforward_subdivision(s: Subdivision, a: CycleRep) -> CycleRep:
    if a.fan != s.source:
        raise ChowError("cycle does not live on the source of the subdivision")
    coeffs = defaultdict(int)
    for i, c in a.entries:
        j = s.cone_map[i]
        if s.target.dims[j] == s.source.dims[i]:
            coeffs[j] += c
    return make_cycle(s.target, a.dim, coeffs)


def weight_pullback(s: Subdivision, c: MinkowskiWeight) -> MinkowskiWeight:
    """Pullback of a weight along a refinement of complete fans.

    A source cone of the weight's dimension contributes c of its target cone
    when the two have the same dimension and nothing otherwise; this is the
    displacement sum for a refinement, where only the carrying cone meets a
    generic translate.
    """
    if c.fan != s.target:
        raise ChowError("weight does not live on the target of the subdivision")
    _require_complete(s.source)
    values = {}
    for i in s.source.cones_of_dim(s.source.rank - c.codim):
        j = s.cone_map[i]
        if s.target.dims[j] == s.source.dims[i]:
            values[i] = c.coefficient(j)
    w = make_weight(s.source, c.codim, values)
    _assert_balanced(w, 'weight_pullback')
    return w


def local_gysin(s: Subdivision, a: CycleRep) -> CycleRep:
    """pi^! V(tau) = product of the pulled-back divisors D_rho, rho in tau, on [source]."""
    if a.fan != s.target:
        raise ChowError("cycle does not live on the target of the subdivision")
    result = make_cycle(s.source, a.dim)
    for t, c in a.entries:
        term = fundamental_class(s.source)
        for ray in s.target.cone(t).rays:
            term = divisor_cap(pull_pl(s, courant_function(s.target, ray)), term)
        result = result + c * term
    return result


def gysin_subdivision(s: Subdivision, a: CycleRep) -> CycleRep:
    """Gysin pullback pi^! along a subdivision of smooth fans."""
    if a.fan != s.target:
        raise ChowError("cycle does not live on the target of the subdivision")
    if not (is_locally_free(s.source) and is_locally_free(s.target)):
        raise ChowError("Gysin pullback needs smooth source and target")
    if is_complete(s.target):
        return cycle_of_weight(weight_pullback(s, weight_of_cycle(a)))
    return local_gysin(s, a)


# Completion

@dataclass(frozen=True)
class Completion:
    """Complete smooth fan holding a smooth resolution of the input as a subfan."""

    fan: Fan
    resolution: Subdivision
    embedding: Tuple[int, ...]


def _ccw(a: Vector, b: Vector) -> int:
    half_a = 0 if (a[1] > 0 or (a[1] == 0 and a[0] > 0)) else 1
    half_b = 0 if (b[1] > 0 or (b[1] == 0 and b[0] > 0)) else 1
    if half_a != half_b:
        return half_a - half_b
    cross = a[0] * b[1] - a[1] * b[0]
    return -1 if cross > 0 else (1 if cross < 0 else 0)


def _close_plane(base: Fan) -> Fan:
    rays = sorted(base.rays, key=cmp_to_key(_ccw))
    gens = [base.cone(i).rays for i in base.maximal_cones]
    if not rays:
        return make_fan(2, [[(1, 0), (0, 1)], [(0, 1), (-1, -1)], [(-1, -1), (1, 0)]])
    if len(rays) == 1:
        a = rays[0]
        p = (-a[1], a[0])
        q = primitive((-a[0] - p[0], -a[1] - p[1]))
        return make_fan(2, gens + [[a, p], [p, q], [q, a]], validate=False)
    two_cones = {frozenset(base.cone(i).rays) for i in base.cones_of_dim(2)}
    for k, a in enumerate(rays):
        b = rays[(k + 1) % len(rays)]
        cross = a[0] * b[1] - a[1] * b[0]
        if cross > 0:
            if frozenset((a, b)) not in two_cones:
                gens.append([a, b])
        elif cross == 0:
            p = (-a[1], a[0])
            gens += [[a, p], [p, b]]
        else:
            c = primitive((-a[0] - b[0], -a[1] - b[1]))
            gens += [[a, c], [c, b]]
    return make_fan(2, gens, validate=False)


def _slice_space(f: Fan) -> Fan:
    # chambers of the hyperplanes of f's cones inside the fan of P^3
    n = f.rank
    start = [tuple(1 if k == j else 0 for k in range(n)) for j in range(n)] + [(-1,) * n]
    cells = [make_cone([r for r in start if r != skip], n) for skip in start]
    hyperplanes = set()
    for c in f.cone_objects:
        for u in c.facet_normals + c.equations:
            u = primitive(u)
            if any(u):
                lead = next(x for x in u if x != 0)
                hyperplanes.add(u if lead > 0 else tuple(-x for x in u))
    for u in sorted(hyperplanes):
        pieces = []
        for c in cells:
            for side in (u, tuple(-x for x in u)):
                piece = cone_from_inequalities(n, list(c.facet_normals) + [side], c.equations)
                if piece.dim == n and piece not in pieces:
                    pieces.append(piece)
        cells = pieces
    return make_fan(n, [c.rays for c in cells], validate=False)


def complete_fan(f: Fan) -> Completion:
    """Smooth complete fan containing a smooth resolution of f (rank at most 3).

    Raises:
        CompletionError: f is not complete and has rank above 3.
    """
    if is_complete(f):
        if is_locally_free(f):
            s = identity_subdivision(f)
            return Completion(f, s, tuple(range(len(f.cones))))
        s = resolve(f)
        return Completion(s.source, s, tuple(range(len(s.source.cones))))
    if f.rank > COMPLETION_CONFIG['max_rank']:
        raise CompletionError("no automatic completion above rank 3; supply a complete fan",
                              rank=f.rank)
    if f.rank == 1:
        closed = make_fan(1, [[(1,)], [(-1,)]])
    elif f.rank == 2:
        closed = _close_plane(resolve(f).source)
    else:
        closed = _slice_space(f)
    total = resolve(closed).source
    inside = [i for i, c in enumerate(total.cone_objects) if f.support_contains(c.interior_point())]
    sub = make_fan(f.rank, [total.cone(i).rays for i in inside], validate=False)
    resolution = make_subdivision(sub, f)
    embedding = tuple(total.locate(c) for c in sub.cone_objects)
    logger.debug("completed %s to %s", f, total)
    return Completion(total, resolution, embedding)


# JSON

def cycle_to_dict(a: CycleRep) -> dict:
    return {'fan': fan_fingerprint(a.fan), 'dim': a.dim,
            'entries': [[i, c] for i, c in a.entries]}


def weight_to_dict(w: MinkowskiWeight) -> dict:
    return {'fan': fan_fingerprint(w.fan), 'codim': w.codim,
            'entries': [[i, c] for i, c in w.entries]}


def _parse_entries(f: Fan, raw):
    # a cone is given by its index or by its list of rays
    out = []
    try:
        for cone, coeff in raw:
            if isinstance(cone, list):
                cone = f.locate(make_cone([tuple(int(x) for x in r) for r in cone], f.rank))
            out.append((int(cone), int(coeff)))
    except (TypeError, ValueError) as e:
        raise InputError("malformed entries", reason=repr(e))
    return out


def load_cycle(data: dict, f: Fan) -> CycleRep:
    try:
        return make_cycle(f, int(data['dim']), _parse_entries(f, data.get('entries', [])))
    except (KeyError, TypeError, ValueError) as e:
        raise InputError("malformed cycle", reason=repr(e))


def load_weight(data: dict, f: Fan) -> MinkowskiWeight:
    try:
        return make_weight(f, int(data['codim']), _parse_entries(f, data.get('entries', [])))
    except (KeyError, TypeError, ValueError) as e:
        raise InputError("malformed weight", reason=repr(e))

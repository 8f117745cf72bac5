#!/usr/bin/env python3
# File name   : blowup.py
# Description : Fan subdivisions: star and ideal blow-ups, resolution, refinement
# Author      : toricchow developers

"""
Subdivisions of fans, the combinatorial form of log blow-ups.

Every Subdivision is built through make_subdivision, which computes the cone
map (each source cone to the smallest target cone containing it) and certifies
that source and target have the same support by comparing exact normalized
volumes of the pieces inside every maximal target cone.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import List, Optional, Tuple

from . import lattice
from .errors import BlowupError, InputError
from .fan import (Cone, Fan, cone_from_inequalities, fan_to_dict, intersect_cones,
                  load_fan, make_fan, multiplicity, parallelepiped_points)
from .lattice import dot, primitive

logger = logging.getLogger(__name__)

Vector = Tuple[int, ...]


@dataclass(frozen=True)
class Subdivision:
    """A refinement source -> target with cone_map[i] = smallest target cone
    containing source cone i."""

    source: Fan
    target: Fan
    cone_map: Tuple[int, ...]

    @property
    def is_identity(self) -> bool:
        return self.source == self.target

    @cached_property
    def new_rays(self) -> Tuple[Vector, ...]:
        return tuple(r for r in self.source.rays if r not in set(self.target.rays))


def _simplices(c: Cone) -> List[Tuple[Vector, ...]]:
    # pulling triangulation at the first ray
    if c.is_simplicial:
        return [c.rays]
    apex = c.rays[0]
    out = []
    for normal in c.facet_normals:
        if dot(normal, apex) != 0:
            facet = Cone(c.ambient_rank, tuple(r for r in c.rays if dot(normal, r) == 0))
            out.extend(s + (apex,) for s in _simplices(facet))
    return out


def _volume(c: Cone, basis: lattice.LatticeBasis, weight: Vector) -> Fraction:
    total = Fraction(0)
    for simplex in _simplices(c):
        coords = [basis.coordinates(r) for r in simplex]
        heights = 1
        for x in coords:
            heights *= dot(weight, x)
        total += Fraction(abs(lattice.determinant(coords)), heights)
    return total


def _covers(tau: Cone, pieces: List[Cone]) -> bool:
    """True iff same-dimensional pieces (cones of one fan inside tau) cover tau."""
    if tau.dim == 0:
        return True
    basis = tau.span_basis
    total = tuple(sum(n[k] for n in tau.facet_normals) for k in range(tau.ambient_rank))
    weight = tuple(dot(total, b) for b in basis.vectors)
    return _volume(tau, basis, weight) == sum((_volume(p, basis, weight) for p in pieces),
                                              Fraction(0))


def make_subdivision(source: Fan, target: Fan) -> Subdivision:
    """Subdivision certificate for source refining target.

    Raises:
        BlowupError: a source cone is not inside a target cone, or the supports differ.
    """
    if source.rank != target.rank:
        raise BlowupError("fans live in different lattices",
                          source_rank=source.rank, target_rank=target.rank)
    cone_map = []
    for i, c in enumerate(source.cone_objects):
        j = target.smallest_cone_index(c.interior_point())
        if j is None or not all(target.cone(j).contains(r) for r in c.rays):
            raise BlowupError("source cone outside target support", rays=c.rays)
        cone_map.append(j)
    for j in target.maximal_cones:
        pieces = [source.cone(i) for i, k in enumerate(cone_map)
                  if k == j and source.dims[i] == target.dims[j]]
        if not _covers(target.cone(j), pieces):
            raise BlowupError("supports differ", cone=target.cone(j).rays)
    return Subdivision(source, target, tuple(cone_map))


def identity_subdivision(f: Fan) -> Subdivision:
    return Subdivision(f, f, tuple(range(len(f.cones))))


def _star_fan(f: Fan, v: Vector) -> Fan:
    gens = []
    for m in f.maximal_cones:
        c = f.cone(m)
        if not c.contains(v):
            gens.append(c.rays)
            continue
        for normal in c.facet_normals:
            if dot(normal, v) != 0:
                gens.append(tuple(r for r in c.rays if dot(normal, r) == 0) + (v,))
    return make_fan(f.rank, gens, validate=False)


def _check_point(f: Fan, v) -> Vector:
    v = lattice.to_vector(v)
    if len(v) != f.rank or not any(v):
        raise BlowupError("subdivision point must be a nonzero vector of the fan's rank", point=v)
    v = primitive(v)
    if f.smallest_cone_index(v) is None:
        raise BlowupError("point outside support", point=v)
    return v


def star_subdivision(f: Fan, v) -> Subdivision:
    """Stellar subdivision of f at the primitive vector v.

    Raises:
        BlowupError: v outside the support of f.
    """
    v = _check_point(f, v)
    logger.debug("star subdivision at %s", v)
    return make_subdivision(_star_fan(f, v), f)


@dataclass(frozen=True)
class MonoidIdeal:
    """A monomial ideal of the chart of cone, given by points of its dual monoid."""

    cone: Cone
    generators: Tuple[Vector, ...]


def _linear_on(generators, rays) -> bool:
    return any(all(dot(tuple(b_k - a_k for a_k, b_k in zip(a, b)), r) >= 0
                   for b in generators for r in rays)
               for a in generators)


def ideal_blowup(f: Fan, ideal: MonoidIdeal) -> Subdivision:
    """Blow-up of a monomial ideal on the chart of ideal.cone.

    The cone is cut into the domains of linearity of u -> min <a_i, u>; every
    cone containing it is refined by joining the pieces with its remaining rays.
    The ideal must be principal on each proper face of its cone (otherwise
    blow it up on that face) and the cones around it must be simplicial.

    Raises:
        BlowupError: empty generator list, generators outside the dual cone,
            or the restrictions above.
    """
    sigma = ideal.cone
    f.locate(sigma)
    generators = [lattice.to_vector(a) for a in ideal.generators]
    if not generators:
        raise BlowupError("empty generator list")
    for a in generators:
        if len(a) != f.rank or any(dot(a, r) < 0 for r in sigma.rays):
            raise BlowupError("generator outside the dual cone", generator=a)
    for normal in sigma.facet_normals:
        facet = [r for r in sigma.rays if dot(normal, r) == 0]
        if not _linear_on(generators, facet):
            raise BlowupError("ideal is not principal on a proper face; blow it up on that face",
                              face=facet)
    domains = []
    for a in generators:
        inequalities = list(sigma.facet_normals)
        inequalities += [tuple(b_k - a_k for a_k, b_k in zip(a, b)) for b in generators if b != a]
        piece = cone_from_inequalities(f.rank, inequalities, sigma.equations)
        if piece.dim == sigma.dim and piece not in domains:
            domains.append(piece)
    if len(domains) <= 1:
        return identity_subdivision(f)
    gens = []
    for m in f.maximal_cones:
        c = f.cone(m)
        if not set(sigma.rays) <= set(c.rays):
            gens.append(c.rays)
            continue
        if c.rays != sigma.rays and not c.is_simplicial:
            raise BlowupError("ideal blow-up needs simplicial cones around the ideal's cone",
                              cone=c.rays)
        rest = tuple(r for r in c.rays if r not in sigma.rays)
        gens.extend(d.rays + rest for d in domains)
    logger.debug("ideal blow-up: %d linearity domains", len(domains))
    return make_subdivision(make_fan(f.rank, gens, validate=False), f)


def barycentric(f: Fan) -> Subdivision:
    """Stellar subdivisions at the barycenter of every cone, largest cones first."""
    current = f
    for d in range(f.dim, 1, -1):
        for i in f.cones_of_dim(d):
            current = _star_fan(current, primitive(f.cone(i).interior_point()))
    return make_subdivision(current, f)


def common_refinement(s1: Subdivision, s2: Subdivision):
    """Fan of all intersections of source cones, with its maps to both sources.

    Returns:
        (fan, subdivision to s1.source, subdivision to s2.source)
    """
    if s1.target != s2.target:
        raise BlowupError("subdivisions of different fans")
    target = s1.target
    gens = []
    for a in s1.source.maximal_cones:
        ta = set(target.cones[s1.cone_map[a]])
        for b in s2.source.maximal_cones:
            if not ta & set(target.cones[s2.cone_map[b]]) and ta:
                continue
            meet = intersect_cones(s1.source.cone(a), s2.source.cone(b))
            if meet.rays:
                gens.append(meet.rays)
    fan = make_fan(target.rank, gens or [()], validate=False)
    return fan, make_subdivision(fan, s1.source), make_subdivision(fan, s2.source)


def triangulate(f: Fan) -> Fan:
    """Pulling refinement: in lexicographic order, pull once at every ray that
    lies on a non-simplicial cone. No rays are added.

    Every cone containing a pulled ray stays a pyramid with apex at that ray.
    """
    current = f
    for ray in f.rays:
        bad = [c for c in current.cone_objects if not c.is_simplicial]
        if not bad:
            break
        if any(ray in c.rays for c in bad):
            logger.debug("pulling at %s", ray)
            current = _star_fan(current, ray)
    return current


def resolve(f: Fan) -> Subdivision:
    """Smooth refinement by stellar subdivisions.

    After triangulating, the first cone of highest multiplicity is subdivided at
    the nonzero point of its fundamental parallelepiped with the smallest
    coordinate sum (lexicographic tie-break) until every cone is smooth.
    """
    current = triangulate(f)
    while True:
        worst = None
        for i, c in enumerate(current.cone_objects):
            m = multiplicity(c)
            if m > 1 and (worst is None or m > worst[0]):
                worst = (m, i)
        if worst is None:
            break
        point = min(parallelepiped_points(current.cone(worst[1])), key=lambda p: (sum(p), p))
        logger.debug("resolve: multiplicity %d, subdividing at %s", worst[0], point)
        current = _star_fan(current, primitive(point))
    return make_subdivision(current, f)


def compose(s2: Subdivision, s1: Subdivision) -> Subdivision:
    """The composite s1 . s2 (s2 refines s1.source)."""
    if s2.target != s1.source:
        raise BlowupError("subdivisions are not composable")
    return Subdivision(s2.source, s1.target, tuple(s1.cone_map[j] for j in s2.cone_map))


@dataclass(frozen=True)
class ToricMorphism:
    """Lattice map N_source -> N_target (rows = target coordinates) between fans."""

    lattice_map: Tuple[Tuple[int, ...], ...]
    source: Fan
    target: Fan

    def __post_init__(self):
        if len(self.lattice_map) != self.target.rank or any(
                len(row) != self.source.rank for row in self.lattice_map):
            raise BlowupError("lattice map has the wrong shape",
                              source_rank=self.source.rank, target_rank=self.target.rank)

    def image(self, v) -> Vector:
        return tuple(dot(row, v) for row in self.lattice_map)

    def pull_covector(self, u) -> Vector:
        return tuple(sum(u[i] * self.lattice_map[i][j] for i in range(self.target.rank))
                     for j in range(self.source.rank))

    def image_cone_index(self, i: int) -> Optional[int]:
        """Target cone containing the image of source cone i (smallest), or None."""
        images = [self.image(r) for r in self.source.cone(i).rays]
        total = tuple(sum(x[k] for x in images) for k in range(self.target.rank))
        j = self.target.smallest_cone_index(total)
        if j is None or not all(self.target.cone(j).contains(x) for x in images):
            return None
        return j

    def image_cone(self, i: int) -> Optional[Cone]:
        j = self.image_cone_index(i)
        return None if j is None else self.target.cone(j)

    def with_fans(self, source: Fan, target: Fan) -> 'ToricMorphism':
        return ToricMorphism(self.lattice_map, source, target)


def is_compatible(m: ToricMorphism) -> bool:
    """True iff every source cone maps into some target cone."""
    return all(m.image_cone_index(i) is not None for i in m.source.maximal_cones)


def integralize(m: ToricMorphism) -> Subdivision:
    """Coarsest refinement of the source whose cones map into target cones.

    Raises:
        BlowupError: "image support escapes target support".
    """
    pulled = []
    for t in m.target.maximal_cones:
        tau = m.target.cone(t)
        pulled.append(([m.pull_covector(n) for n in tau.facet_normals],
                       [m.pull_covector(e) for e in tau.equations]))
    gens = []
    for s in m.source.maximal_cones:
        kappa = m.source.cone(s)
        if m.image_cone_index(s) is not None:
            gens.append(kappa.rays)
            continue
        for normals, equations in pulled:
            piece = cone_from_inequalities(m.source.rank,
                                           list(kappa.facet_normals) + normals,
                                           list(kappa.equations) + equations)
            if piece.rays:
                gens.append(piece.rays)
    refined = make_fan(m.source.rank, gens or [()], validate=False)
    try:
        return make_subdivision(refined, m.source)
    except BlowupError:
        raise BlowupError("image support escapes target support")


def subdivision_to_dict(s: Subdivision) -> dict:
    return {
        'source': fan_to_dict(s.source),
        'target': fan_to_dict(s.target),
        'cone_map': [[i, j] for i, j in enumerate(s.cone_map)],
    }


def load_subdivision(data) -> Subdivision:
    """Subdivision from JSON; the cone map is recomputed and must agree if given."""
    from .fan import read_json
    if isinstance(data, str):
        data = read_json(data)
    try:
        source, target = load_fan(data['source']), load_fan(data['target'])
    except (KeyError, TypeError) as e:
        raise InputError("malformed subdivision", reason=repr(e))
    s = make_subdivision(source, target)
    given = data.get('cone_map')
    if given is not None and sorted(tuple(p) for p in given) != [(i, j) for i, j in enumerate(s.cone_map)]:
        raise InputError("cone_map does not match the fans")
    return s


def load_morphism(data) -> ToricMorphism:
    from .fan import read_json
    if isinstance(data, str):
        data = read_json(data)
    try:
        matrix = tuple(tuple(int(x) for x in row) for row in data['map'])
        return ToricMorphism(matrix, load_fan(data['source']), load_fan(data['target']))
    except (KeyError, TypeError, ValueError) as e:
        raise InputError("malformed morphism", reason=repr(e))


def compose_morphisms(second: ToricMorphism, first: ToricMorphism) -> ToricMorphism:
    """second . first; first.target must be second.source."""
    if first.target != second.source:
        raise BlowupError("morphisms are not composable")
    a, b = second.lattice_map, first.lattice_map
    product = tuple(tuple(sum(a[i][k] * b[k][j] for k in range(len(b)))
                          for j in range(first.source.rank)) for i in range(len(a)))
    return ToricMorphism(product, first.source, second.target)


def projection_morphism(f1: Fan, f2: Fan, factor: int = 0) -> ToricMorphism:
    """Projection of product_fan(f1, f2) onto one factor."""
    from .fan import product_fan
    n1, n2 = f1.rank, f2.rank
    if factor == 0:
        rows = tuple(tuple(1 if j == i else 0 for j in range(n1 + n2)) for i in range(n1))
        return ToricMorphism(rows, product_fan(f1, f2), f1)
    rows = tuple(tuple(1 if j == n1 + i else 0 for j in range(n1 + n2)) for i in range(n2))
    return ToricMorphism(rows, product_fan(f1, f2), f2)


def cone_volume(c: Cone, weight) -> Fraction:
    """Normalized volume of {x in c : <weight, x> <= 1}; zero unless c is full-dimensional."""
    n = c.ambient_rank
    if c.dim < n:
        return Fraction(0)
    basis = lattice.LatticeBasis(n, tuple(tuple(1 if k == j else 0 for k in range(n))
                                          for j in range(n)))
    return _volume(c, basis, tuple(weight))

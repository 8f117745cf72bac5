#!/usr/bin/env python3
# File name   : fan.py
# Description : Rational polyhedral cones and fans over an integer lattice
# Author      : toricchow developers

"""
Cones and fans.

A Cone is stored by its canonical ray generators: primitive, extreme, sorted
lexicographically. The dual description (facet normals plus the equations of
the linear span) is derived on demand and cached per ray tuple.

A Fan stores its rays sorted lexicographically and every cone, zero cone
included, as a tuple of ray indices; cones are sorted by (number of rays,
indices). Equal fans therefore have equal representations.
"""

import hashlib
import json
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache, reduce
from itertools import combinations
from typing import Dict, List, Optional, Tuple

import cdd

from . import lattice
from .errors import ConeError, FanError, InputError
from .lattice import dot, primitive

logger = logging.getLogger(__name__)

Vector = Tuple[int, ...]

NUMBER_TYPE = 'fraction'  # exact rational arithmetic inside cdd


def _integral(row) -> Vector:
    """Primitive integer vector on the ray of a rational row."""
    row = [Fraction(x) for x in row]
    scale = reduce(lambda a, q: a * q.denominator // math.gcd(a, q.denominator), row, 1)
    return primitive(int(q * scale) for q in row)


def _cdd_matrix(rows, rep_type, width: int):
    mat = cdd.Matrix([[0] + list(r) for r in rows] or [[0] * (width + 1)], number_type=NUMBER_TYPE)
    mat.rep_type = rep_type
    return mat


def _coordinate_facets(coords, d: int) -> List[Vector]:
    """Facet normals of a full-dimensional cone in Z^d given by generators.

    cdd converts the generators (with the origin as the only vertex) to
    inequalities; rows that do not cut out a codimension-one face are dropped.
    """
    if d == 0:
        return []
    mat = _cdd_matrix(coords, cdd.RepType.GENERATOR, d)
    mat.extend([[1] + [0] * d])
    inequalities = cdd.Polyhedron(mat).get_inequalities()
    normals = set()
    for i in range(inequalities.row_size):
        normal = _integral(inequalities[i][1:])
        if not any(normal) or i in inequalities.lin_set:
            continue
        active = [g for g in coords if dot(normal, g) == 0]
        if (lattice.rank(active) if active else 0) == d - 1:
            normals.add(normal)
    return sorted(normals)


@lru_cache(maxsize=None)
def _cone_data(ambient_rank: int, rays: Tuple[Vector, ...]):
    basis = lattice.saturate(rays, ambient_rank)
    equations = lattice.kernel_basis(rays, cols=ambient_rank) if rays \
        else lattice.identity(ambient_rank)
    equations = tuple(lattice.to_vector(row) for row in equations)
    coords = [basis.coordinates(r) for r in rays]
    normals = []
    for normal in _coordinate_facets(coords, basis.dim):
        lift = lattice.solve_integral(basis.matrix(), normal)
        normals.append(lattice.reduce_modulo(lift, equations, ambient_rank))
    return basis, equations, tuple(sorted(normals))


@dataclass(frozen=True)
class Cone:
    """A strongly convex rational polyhedral cone given by canonical rays."""

    ambient_rank: int
    rays: Tuple[Vector, ...]

    @property
    def span_basis(self) -> lattice.LatticeBasis:
        return _cone_data(self.ambient_rank, self.rays)[0]

    @property
    def equations(self) -> Tuple[Vector, ...]:
        """Basis of the covectors vanishing on the span (the lineality constraints)."""
        return _cone_data(self.ambient_rank, self.rays)[1]

    @property
    def facet_normals(self) -> Tuple[Vector, ...]:
        return _cone_data(self.ambient_rank, self.rays)[2]

    @property
    def dim(self) -> int:
        return self.span_basis.dim

    @property
    def is_simplicial(self) -> bool:
        return len(self.rays) == self.dim

    def contains(self, v) -> bool:
        return (all(dot(e, v) == 0 for e in self.equations)
                and all(dot(n, v) >= 0 for n in self.facet_normals))

    def relative_interior_contains(self, v) -> bool:
        if not self.rays:
            return all(x == 0 for x in v)
        return (all(dot(e, v) == 0 for e in self.equations)
                and all(dot(n, v) > 0 for n in self.facet_normals))

    def interior_point(self) -> Vector:
        return tuple(sum(r[i] for r in self.rays) for i in range(self.ambient_rank))

    def coordinates(self, v) -> Optional[Vector]:
        return self.span_basis.coordinates(v)

    def __str__(self):
        return "<" + ", ".join(str(list(r)) for r in self.rays) + ">"


def make_cone(generators, ambient_rank: Optional[int] = None) -> Cone:
    """Canonical cone spanned by generators.

    Generators are primitivized and deduplicated, and redundant ones dropped.

    Raises:
        ConeError: "not strongly convex" if the generators span a line.
    """
    generators = [lattice.to_vector(g) for g in generators]
    if ambient_rank is None:
        if not generators:
            raise ConeError("ambient rank needed for an empty generator list")
        ambient_rank = len(generators[0])
    if any(len(g) != ambient_rank for g in generators):
        raise ConeError("generator of wrong length", ambient_rank=ambient_rank)
    gens = sorted({primitive(g) for g in generators if any(g)})
    if not gens:
        return Cone(ambient_rank, ())
    basis = lattice.saturate(gens, ambient_rank)
    d = basis.dim
    coords = [basis.coordinates(g) for g in gens]
    normals = _coordinate_facets(coords, d)
    if not normals or lattice.rank(normals) < d:
        raise ConeError("not strongly convex", generators=gens)
    extreme = []
    for g, c in zip(gens, coords):
        active = [n for n in normals if dot(n, c) == 0]
        if (lattice.rank(active) if active else 0) == d - 1:
            extreme.append(g)
    return Cone(ambient_rank, tuple(extreme))


def dual_description(c: Cone) -> List[Vector]:
    """Primitive facet normals; membership is nonnegativity against all of them
    together with vanishing of c.equations."""
    return list(c.facet_normals)


def cone_from_inequalities(ambient_rank: int, normals, equations=()) -> Cone:
    """The cone {x : <a, x> >= 0 for a in normals, <e, x> = 0 for e in equations}.

    Extreme rays come from cdd's exact double description.
    """
    normals = [lattice.to_vector(a) for a in normals]
    equations = [lattice.to_vector(e) for e in equations]
    n = ambient_rank
    eq_rank = lattice.rank(equations) if equations else 0
    if eq_rank == n:
        return Cone(n, ())
    mat = _cdd_matrix(normals, cdd.RepType.INEQUALITY, n)
    if equations:
        mat.extend([[0] + list(e) for e in equations], linear=True)
    generators = cdd.Polyhedron(mat).get_generators()
    if generators.lin_set:
        raise ConeError("not strongly convex", normals=normals)
    rays = [_integral(generators[i][1:]) for i in range(generators.row_size)
            if generators[i][0] == 0]
    logger.debug("%d inequalities -> %d rays in rank %d", len(normals), len(rays), n)
    return make_cone(sorted(rays), n)


def intersect_cones(c1: Cone, c2: Cone) -> Cone:
    return cone_from_inequalities(c1.ambient_rank,
                                  c1.facet_normals + c2.facet_normals,
                                  c1.equations + c2.equations)


@lru_cache(maxsize=None)
def _faces(ambient_rank: int, rays: Tuple[Vector, ...]) -> frozenset:
    faces = {rays}
    for normal in _cone_data(ambient_rank, rays)[2]:
        facet = tuple(r for r in rays if dot(normal, r) == 0)
        faces |= _faces(ambient_rank, facet)
    return frozenset(faces)


def cone_faces(c: Cone) -> List[Cone]:
    """All faces of c, zero cone and c included."""
    return [Cone(c.ambient_rank, rays)
            for rays in sorted(_faces(c.ambient_rank, c.rays), key=lambda r: (len(r), r))]


def is_smooth(c: Cone) -> bool:
    """True iff the rays extend to a basis of the ambient lattice."""
    if not c.rays:
        return True
    return c.is_simplicial and lattice.index_in_saturation(c.rays, c.ambient_rank) == 1


def multiplicity(c: Cone) -> int:
    """Index of the span of the rays in its saturation (simplicial cones only)."""
    if not c.is_simplicial:
        raise ConeError("cone is not simplicial", rays=c.rays)
    if not c.rays:
        return 1
    return lattice.lattice_index(c.rays, c.ambient_rank)


def relative_generator(sigma: Cone, tau: Cone, second_choice: bool = False) -> Vector:
    """A lattice point n of N_sigma mapping to the positive generator of N_sigma/N_tau.

    tau must be a facet of sigma. With second_choice the returned point is
    shifted by the sum of the rays of tau, which maps to the same generator.
    """
    n = sigma.ambient_rank
    if sigma.dim != tau.dim + 1 or not set(tau.rays) <= set(sigma.rays):
        raise ConeError("tau is not a facet of sigma", sigma=sigma.rays, tau=tau.rays)
    q = lattice.quotient_projection(tau.rays, n)
    basis = sigma.span_basis.vectors
    images = [lattice.apply(q, b) for b in basis]
    h, u = lattice.hermite_normal_form(images)
    g = lattice.to_vector(h[0])
    point = tuple(sum(int(u[0, i]) * basis[i][k] for i in range(len(basis))) for k in range(n))
    outside = next(r for r in sigma.rays if r not in tau.rays)
    if dot(lattice.apply(q, outside), g) < 0:
        point = tuple(-x for x in point)
    if second_choice:
        point = tuple(p + sum(r[k] for r in tau.rays) for k, p in enumerate(point))
    return point


def _parallelepiped_coords(gens) -> List[Vector]:
    """Lattice points of the half-open parallelepiped of full-rank gens in Z^d."""
    d, _, _, v_inv = lattice.smith_normal_form(gens, return_inverse=True)
    dim = len(gens)
    divisors = [int(d[i, i]) for i in range(dim)]
    points = []

    def walk(i, y):
        if i == dim:
            x = [sum(y[k] * int(v_inv[k, j]) for k in range(dim)) for j in range(dim)]
            lam = lattice.solve_rational(lattice.as_matrix(gens).T, x)
            frac = [c - (c.numerator // c.denominator) for c in lam]
            p = [sum(frac[k] * gens[k][j] for k in range(dim)) for j in range(dim)]
            points.append(tuple(int(c) for c in p))
            return
        for yi in range(divisors[i]):
            walk(i + 1, y + [yi])

    walk(0, [])
    return sorted(set(points))


def parallelepiped_points(c: Cone) -> List[Vector]:
    """Nonzero lattice points of the half-open fundamental parallelepiped of a
    simplicial cone (empty exactly when the cone is smooth)."""
    if not c.is_simplicial:
        raise ConeError("cone is not simplicial", rays=c.rays)
    if not c.rays:
        return []
    basis = c.span_basis.vectors
    coords = [c.coordinates(r) for r in c.rays]
    out = []
    for p in _parallelepiped_coords(coords):
        if any(p):
            out.append(tuple(sum(p[i] * basis[i][k] for i in range(len(basis)))
                             for k in range(c.ambient_rank)))
    return sorted(out)


def hilbert_basis_2d(c: Cone) -> List[Vector]:
    """Hilbert basis of the dual monoid of c modulo units, for dim c <= 2.

    Elements are given in coordinates dual to c.span_basis.
    """
    if c.dim > 2:
        raise ConeError("Hilbert basis only computed up to dimension 2", dim=c.dim)
    if c.dim == 0:
        return []
    coords = [c.coordinates(r) for r in c.rays]
    normals = _coordinate_facets(coords, c.dim)
    if c.dim == 1:
        return normals
    candidates = set(normals) | {p for p in _parallelepiped_coords(normals) if any(p)}
    dual = make_cone(normals, 2)

    def reducible(x):
        for h in candidates:
            rest = tuple(a - b for a, b in zip(x, h))
            if h != x and any(rest) and dual.contains(rest):
                return True
        return False

    return sorted(x for x in candidates if not reducible(x))


@dataclass(frozen=True)
class CharStalk:
    """Characteristic monoid of the chart of a cone."""

    rank: int
    is_free: bool
    hilbert_basis_size: Optional[int]

    def to_dict(self):
        return {
            'rank': self.rank,
            'is_free': self.is_free,
            'hilbert_basis_size': ('not computed' if self.hilbert_basis_size is None
                                   else self.hilbert_basis_size),
        }


@dataclass(frozen=True)
class Fan:
    """A fan: sorted primitive rays and every cone as a sorted ray-index tuple."""

    rank: int
    rays: Tuple[Vector, ...]
    cones: Tuple[Tuple[int, ...], ...]

    @cached_property
    def cone_objects(self) -> Tuple[Cone, ...]:
        return tuple(Cone(self.rank, tuple(self.rays[i] for i in c)) for c in self.cones)

    @cached_property
    def _index(self) -> Dict[Tuple[int, ...], int]:
        return {c: i for i, c in enumerate(self.cones)}

    @cached_property
    def _ray_index(self) -> Dict[Vector, int]:
        return {r: i for i, r in enumerate(self.rays)}

    @cached_property
    def dims(self) -> Tuple[int, ...]:
        return tuple(c.dim for c in self.cone_objects)

    @property
    def dim(self) -> int:
        return max(self.dims)

    def cone(self, i: int) -> Cone:
        return self.cone_objects[i]

    def index_of(self, ray_indices) -> int:
        key = tuple(sorted(ray_indices))
        if key not in self._index:
            raise FanError("cone not in fan", rays=[self.rays[i] for i in key])
        return self._index[key]

    def ray_index(self, ray) -> int:
        ray = lattice.to_vector(ray)
        if ray not in self._ray_index:
            raise FanError("ray not in fan", ray=ray)
        return self._ray_index[ray]

    def locate(self, c: Cone) -> int:
        """Index of cone c in this fan."""
        if c.ambient_rank != self.rank or any(r not in self._ray_index for r in c.rays):
            raise FanError("cone not in fan", rays=c.rays)
        return self.index_of(self._ray_index[r] for r in c.rays)

    def cones_of_dim(self, k: int) -> List[int]:
        return [i for i, d in enumerate(self.dims) if d == k]

    @cached_property
    def maximal_cones(self) -> Tuple[int, ...]:
        sets = [set(c) for c in self.cones]
        return tuple(i for i, s in enumerate(sets)
                     if not any(s < t for t in sets))

    def is_face(self, i: int, j: int) -> bool:
        return set(self.cones[i]) <= set(self.cones[j])

    def cofaces(self, i: int, extra: int = 1) -> List[int]:
        """Cones containing cone i whose dimension is larger by extra."""
        target = self.dims[i] + extra
        return [j for j, c in enumerate(self.cones)
                if self.dims[j] == target and set(self.cones[i]) <= set(c)]

    def smallest_cone_index(self, v) -> Optional[int]:
        v = lattice.to_vector(v)
        for i in sorted(range(len(self.cones)), key=lambda k: (self.dims[k], k)):
            if self.cone_objects[i].relative_interior_contains(v):
                return i
        return None

    def support_contains(self, v) -> bool:
        return self.smallest_cone_index(v) is not None

    def __str__(self):
        return f"Fan(rank={self.rank}, rays={len(self.rays)}, cones={len(self.cones)})"


def make_fan(rank: int, generator_lists, validate: bool = True) -> Fan:
    """Canonical fan from a list of cones given by generators; faces are completed.

    Raises:
        FanError: two cones meet outside a common face (when validate is set).
    """
    cones = [make_cone(g, rank) for g in generator_lists]
    faces = {()}
    for c in cones:
        faces |= _faces(rank, c.rays)
    rays = sorted({r for face in faces for r in face})
    index = {r: i for i, r in enumerate(rays)}
    cone_sets = sorted({tuple(sorted(index[r] for r in face)) for face in faces},
                       key=lambda c: (len(c), c))
    fan = Fan(rank, tuple(rays), tuple(cone_sets))
    if validate:
        _validate(fan)
    return fan


def _validate(f: Fan):
    maximal = f.maximal_cones
    for a, b in combinations(maximal, 2):
        c1, c2 = f.cone(a), f.cone(b)
        shared = tuple(sorted(set(c1.rays) & set(c2.rays)))
        meet = intersect_cones(c1, c2)
        if (set(meet.rays) != set(shared)
                or shared not in _faces(f.rank, c1.rays)
                or shared not in _faces(f.rank, c2.rays)):
            raise FanError("cones do not meet in a common face",
                           first=c1.rays, second=c2.rays)


def zero_fan(rank: int = 0) -> Fan:
    return Fan(rank, (), ((),))


def subfan(f: Fan, indices) -> Fan:
    """The fan generated by the given cones of f and their faces."""
    return make_fan(f.rank, [f.cone(i).rays for i in indices], validate=False)


def is_locally_free(f: Fan) -> bool:
    """True iff every cone is smooth."""
    return all(is_smooth(c) for c in f.cone_objects)


def char_stalk(f: Fan, c: Cone) -> CharStalk:
    f.locate(c)
    size = len(hilbert_basis_2d(c)) if c.dim <= 2 else None
    return CharStalk(rank=c.dim, is_free=is_smooth(c), hilbert_basis_size=size)


def star_with_map(f: Fan, c: Cone) -> Tuple[Fan, Dict[int, int]]:
    """star(f, c) together with the map star-cone index -> index in f."""
    i = f.locate(c)
    q = lattice.quotient_projection(c.rays, f.rank)
    quotient_rank = f.rank - c.dim
    images = {}
    for j, cone_set in enumerate(f.cones):
        if set(f.cones[i]) <= set(cone_set):
            gens = [lattice.apply(q, f.rays[r]) for r in cone_set if r not in f.cones[i]]
            images[j] = make_cone(gens, quotient_rank)
    star_fan = make_fan(quotient_rank, [image.rays for image in images.values()], validate=False)
    mapping = {star_fan.locate(image): j for j, image in images.items()}
    return star_fan, mapping


def star(f: Fan, c: Cone) -> Fan:
    """Fan in N/N_c whose cones are the images of the cones of f containing c."""
    return star_with_map(f, c)[0]


def smallest_cone_containing(f: Fan, v) -> Optional[Cone]:
    """The cone whose relative interior contains v, or None outside the support."""
    i = f.smallest_cone_index(v)
    if i is None:
        return None
    found = f.cone(i)
    assert found.relative_interior_contains(lattice.to_vector(v))
    return found


def is_complete(f: Fan) -> bool:
    """Completeness of a pure full-dimensional fan.

    Every codimension-one cone must lie in exactly two maximal cones and the
    maximal cones must be connected through them.
    """
    if f.rank == 0:
        return True
    maximal = f.maximal_cones
    if any(f.dims[i] != f.rank for i in maximal):
        return False
    adjacency = {i: set() for i in maximal}
    for wall in f.cones_of_dim(f.rank - 1):
        around = [m for m in maximal if set(f.cones[wall]) <= set(f.cones[m])]
        if len(around) != 2:
            return False
        adjacency[around[0]].add(around[1])
        adjacency[around[1]].add(around[0])
    seen, todo = set(), [maximal[0]]
    while todo:
        m = todo.pop()
        if m not in seen:
            seen.add(m)
            todo.extend(adjacency[m] - seen)
    return len(seen) == len(maximal)


def product_fan(f1: Fan, f2: Fan) -> Fan:
    """Fan in the direct-sum lattice with cones sigma1 x sigma2."""
    zeros1, zeros2 = (0,) * f1.rank, (0,) * f2.rank
    cones = []
    for a in f1.maximal_cones:
        for b in f2.maximal_cones:
            gens = [r + zeros2 for r in f1.cone(a).rays] + [zeros1 + s for s in f2.cone(b).rays]
            cones.append(gens)
    return make_fan(f1.rank + f2.rank, cones, validate=False)


def product_cone_index(product: Fan, f1: Fan, f2: Fan, i: int, j: int) -> int:
    """Index in product_fan(f1, f2) of the cone f1.cone(i) x f2.cone(j)."""
    zeros1, zeros2 = (0,) * f1.rank, (0,) * f2.rank
    rays = [r + zeros2 for r in f1.cone(i).rays] + [zeros1 + s for s in f2.cone(j).rays]
    return product.index_of(product.ray_index(r) for r in rays)


def fan_to_dict(f: Fan) -> dict:
    return {
        'rank': f.rank,
        'rays': [list(r) for r in f.rays],
        'cones': [list(c) for c in f.cones],
    }


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(',', ':'))


def fan_fingerprint(f: Fan) -> str:
    return hashlib.sha256(canonical_json(fan_to_dict(f)).encode('utf-8')).hexdigest()


def read_json(path: str):
    """Parse a JSON file, turning decode problems into InputError with a location."""
    try:
        with open(path, 'r', encoding='utf-8') as handle:
            return json.load(handle)
    except OSError as e:
        raise InputError("cannot read input file", path=path, reason=str(e))
    except json.JSONDecodeError as e:
        raise InputError("malformed JSON", path=path, line=e.lineno, column=e.colno,
                         reason=e.msg)


def load_fan(data, validate: bool = True) -> Fan:
    """Fan from its JSON form (a dict or a path); faces may be omitted."""
    if isinstance(data, str):
        data = read_json(data)
    try:
        rank = int(data['rank'])
        rays = [tuple(int(x) for x in r) for r in data['rays']]
        cones = [[rays[int(k)] for k in c] for c in data['cones']]
    except (KeyError, TypeError, ValueError, IndexError) as e:
        raise InputError("malformed fan", reason=repr(e))
    if rank < 0 or any(len(r) != rank for r in rays):
        raise InputError("fan rays do not match the rank", rank=rank)
    if not cones:
        cones = [[]]
    return make_fan(rank, cones, validate=validate)

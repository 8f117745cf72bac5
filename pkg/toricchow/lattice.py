#!/usr/bin/env python3
# File name   : lattice.py
# Description : Exact integer linear algebra (HNF, SNF, saturation, membership)
# Author      : toricchow developers

"""
Exact integer linear algebra on numpy object arrays.

Matrices are 2-d numpy arrays with dtype=object holding Python ints, so every
entry is an arbitrary-precision integer. The normal forms, ranks, determinants
and rational solves are computed by sympy's DomainMatrix over ZZ and QQ; this
module converts to and from it and fixes the conventions used project-wide:

* Hermite normal form is row style: h = u @ m is in row-echelon form, pivots are
  positive and the entries above each pivot lie in [0, pivot).
* Smith normal form d = u @ m @ v has a nonnegative diagonal with d1 | d2 | ...
* A list of vectors is always read as the rows of a matrix.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Optional, Sequence, Tuple

import numpy as np
from sympy.polys.domains import QQ, ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import hermite_normal_form as sympy_hermite_normal_form
from sympy.polys.matrices.normalforms import invariant_factors as sympy_invariant_factors
from sympy.polys.matrices.normalforms import smith_normal_decomp

from .errors import LatticeError

logger = logging.getLogger(__name__)


def as_matrix(rows, cols: Optional[int] = None) -> np.ndarray:
    """Integer matrix (dtype=object) from nested sequences or an array.

    Args:
        rows: nested sequence or array of integers.
        cols: column count, required to shape an empty row list.

    Returns:
        A 2-d object array of Python ints.
    """
    if isinstance(rows, np.ndarray) and rows.ndim == 2:
        out = np.empty(rows.shape, dtype=object)
        for i in range(rows.shape[0]):
            for j in range(rows.shape[1]):
                out[i, j] = int(rows[i, j])
        return out
    rows = [[int(x) for x in row] for row in rows]
    if not rows:
        return np.zeros((0, cols or 0), dtype=object)
    width = len(rows[0])
    if any(len(row) != width for row in rows):
        raise LatticeError("ragged matrix", widths=[len(row) for row in rows])
    if cols is not None and width != cols:
        raise LatticeError("dimension mismatch", expected=cols, found=width)
    out = np.zeros((len(rows), width), dtype=object)
    for i, row in enumerate(rows):
        for j, x in enumerate(row):
            out[i, j] = x
    return out


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=int).astype(object)


def to_lists(m: np.ndarray):
    return [[int(x) for x in row] for row in m]


def to_vector(v) -> Tuple[int, ...]:
    return tuple(int(x) for x in v)


def primitive(v) -> Tuple[int, ...]:
    """v divided by the gcd of its entries (the zero vector is returned as is)."""
    v = to_vector(v)
    g = reduce(math.gcd, v, 0)
    if g == 0:
        return v
    return tuple(x // g for x in v)


def dot(u, v) -> int:
    return sum(int(a) * int(b) for a, b in zip(u, v))


def to_domain_matrix(m) -> DomainMatrix:
    """The integer matrix m as a sympy DomainMatrix over ZZ."""
    m = as_matrix(m)
    return DomainMatrix([[ZZ(int(x)) for x in row] for row in m], m.shape, ZZ)


def from_domain_matrix(dm: DomainMatrix) -> np.ndarray:
    rows, cols = dm.shape
    if rows == 0:
        return np.zeros((0, cols), dtype=object)
    return as_matrix([[int(x) for x in row] for row in dm.to_list()], cols)


def hermite_normal_form(m) -> Tuple[np.ndarray, np.ndarray]:
    """Row-style Hermite normal form.

    sympy reduces columns and puts pivots at the bottom right, so the rows of
    [m | 1] are fed in as reversed columns; the transform u is read off the
    identity block of the result.

    Args:
        m: an integer matrix.

    Returns:
        (h, u) with u unimodular and u @ m == h; zero rows of h come last.
    """
    m = as_matrix(m)
    rows, cols = m.shape
    if rows == 0:
        return np.zeros((0, cols), dtype=object), identity(0)
    augmented = np.concatenate([m, identity(rows)], axis=1)
    w = from_domain_matrix(sympy_hermite_normal_form(to_domain_matrix(augmented[:, ::-1].T)))
    full = w.T[::-1, ::-1]
    if full.shape[0] != rows:
        raise LatticeError("Hermite transform lost rank", matrix=to_lists(m))
    return full[:, :cols].copy(), full[:, cols:].copy()


def _is_divisibility_chain(d: np.ndarray) -> bool:
    diagonal = [int(d[i, i]) for i in range(min(d.shape))]
    if any(x < 0 for x in diagonal):
        return False
    for a, b in zip(diagonal, diagonal[1:]):
        if (a == 0 and b != 0) or (a != 0 and b % a != 0):
            return False
    return True


def smith_normal_form(m, return_inverse: bool = False):
    """Smith normal form through sympy's smith_normal_decomp.

    Negative divisors are made positive by negating the matching row of u.

    Args:
        m: an integer matrix.
        return_inverse: if True, also return v^-1.

    Returns:
        (d, u, v) or (d, u, v, v_inv) with u, v unimodular and u @ m @ v == d.

    Raises:
        LatticeError: if the decomposition does not satisfy u @ m @ v == d with
            a divisibility chain on the diagonal.
    """
    m = as_matrix(m)
    rows, cols = m.shape
    if rows == 0 or cols == 0:
        d, u, v = np.zeros((rows, cols), dtype=object), identity(rows), identity(cols)
    else:
        smf, s, t = smith_normal_decomp(to_domain_matrix(m))
        d, u, v = from_domain_matrix(smf), from_domain_matrix(s), from_domain_matrix(t)
        for i in range(min(rows, cols)):
            if d[i, i] < 0:
                d[i, i] = -d[i, i]
                u[i] = -u[i]
        if to_lists(u.dot(m).dot(v)) != to_lists(d) or not _is_divisibility_chain(d):
            raise LatticeError("Smith decomposition failed", matrix=to_lists(m))
    if not return_inverse:
        return d, u, v
    if cols == 0:
        return d, u, v, identity(0)
    v_inv = from_domain_matrix(to_domain_matrix(v).convert_to(QQ).inv().convert_to(ZZ))
    return d, u, v, v_inv


def invariant_factors(m) -> list:
    """Nonzero Smith divisors of m, in divisibility order."""
    m = as_matrix(m)
    if 0 in m.shape:
        return []
    return [abs(int(x)) for x in sympy_invariant_factors(to_domain_matrix(m)) if x]


def rank(m) -> int:
    m = as_matrix(m)
    if 0 in m.shape:
        return 0
    return to_domain_matrix(m).convert_to(QQ).rank()


def determinant(m) -> int:
    """Exact determinant of a square integer matrix."""
    m = as_matrix(m)
    if m.shape[0] == 0:
        return 1
    if m.shape[0] != m.shape[1]:
        raise LatticeError("determinant of a non-square matrix", shape=m.shape)
    return int(to_domain_matrix(m).det())


def solve_rational(a, b) -> list:
    """Unique solution of a @ x == b for square nonsingular a, as Fractions."""
    a = as_matrix(a)
    if determinant(a) == 0:
        raise LatticeError("singular system")
    rhs = DomainMatrix([[QQ(int(x))] for x in b], (len(b), 1), QQ)
    x = to_domain_matrix(a).convert_to(QQ).lu_solve(rhs)
    return [Fraction(int(q.numerator), int(q.denominator)) for row in x.to_list() for q in row]


def solve_integral(a, b) -> Optional[Tuple[int, ...]]:
    """Canonical integer solution of a @ x == b, or None when there is none.

    The free coordinates of the Smith-transformed system are set to zero, so the
    answer is a deterministic function of (a, b).
    """
    a = as_matrix(a)
    b = [int(x) for x in b]
    if a.shape[0] != len(b):
        raise LatticeError("dimension mismatch", rows=a.shape[0], rhs=len(b))
    d, u, v = smith_normal_form(a)
    ub = [dot(row, b) for row in u]
    y = [0] * a.shape[1]
    r = 0
    while r < min(d.shape) and d[r, r] != 0:
        if ub[r] % d[r, r] != 0:
            return None
        y[r] = ub[r] // d[r, r]
        r += 1
    if any(ub[i] != 0 for i in range(r, len(ub))):
        return None
    return tuple(dot(row, y) for row in v)


def kernel_basis(m, cols: Optional[int] = None) -> np.ndarray:
    """HNF basis (as rows) of the integer kernel {x : m @ x == 0}."""
    m = as_matrix(m, cols)
    n = m.shape[1]
    if m.shape[0] == 0:
        return identity(n)
    d, _, v = smith_normal_form(m)
    r = sum(1 for i in range(min(d.shape)) if d[i, i] != 0)
    basis = v[:, r:].T
    if basis.shape[0] == 0:
        return np.zeros((0, n), dtype=object)
    h, _ = hermite_normal_form(basis)
    return h[:basis.shape[0]]


def index_in_saturation(vs, cols: Optional[int] = None) -> int:
    """Index of the span of vs in its saturation (vs may be dependent)."""
    factors = invariant_factors(as_matrix(vs, cols))
    return reduce(lambda x, y: x * y, factors, 1)


def lattice_index(vs, cols: Optional[int] = None) -> int:
    """Index of the sublattice spanned by independent vectors in its saturation."""
    m = as_matrix(vs, cols)
    if rank(m) < m.shape[0]:
        raise LatticeError("not independent", vectors=to_lists(m))
    return index_in_saturation(m)


@dataclass(frozen=True)
class LatticeBasis:
    """A basis of a sublattice of Z^ambient_rank (vectors are the rows)."""

    ambient_rank: int
    vectors: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        if any(len(v) != self.ambient_rank for v in self.vectors):
            raise LatticeError("basis vector of wrong length", ambient_rank=self.ambient_rank)
        if self.vectors and rank(self.vectors) < len(self.vectors):
            raise LatticeError("not independent", vectors=self.vectors)

    @property
    def dim(self):
        return len(self.vectors)

    def matrix(self) -> np.ndarray:
        return as_matrix(self.vectors, self.ambient_rank)

    def coordinates(self, v) -> Optional[Tuple[int, ...]]:
        """Integer coordinates of v in this basis, or None if v is not in the lattice."""
        return solve_integral(self.matrix().T, v)


def saturate(vs, ambient_rank: Optional[int] = None) -> LatticeBasis:
    """HNF basis of the saturation of the span of vs."""
    m = as_matrix(vs, ambient_rank)
    n = m.shape[1] if ambient_rank is None else ambient_rank
    if m.shape[0] == 0:
        return LatticeBasis(n, ())
    d, _, _, v_inv = smith_normal_form(m, return_inverse=True)
    r = sum(1 for i in range(min(d.shape)) if d[i, i] != 0)
    if r == 0:
        return LatticeBasis(n, ())
    h, _ = hermite_normal_form(v_inv[:r])
    return LatticeBasis(n, tuple(to_vector(row) for row in h[:r]))


def in_lattice(generators, target, cols: Optional[int] = None) -> bool:
    """True iff target is an integer combination of the generators (via HNF)."""
    target = [int(x) for x in target]
    n = len(target) if cols is None else cols
    if len(target) != n:
        raise LatticeError("dimension mismatch", expected=n, found=len(target))
    gens = as_matrix(generators, n)
    if gens.shape[0] == 0:
        return all(x == 0 for x in target)
    if gens.shape[1] != n:
        raise LatticeError("dimension mismatch", expected=gens.shape[1], found=n)
    h, _ = hermite_normal_form(gens)
    residue = list(target)
    for row in h:
        lead = next((j for j, x in enumerate(row) if x != 0), None)
        if lead is None:
            break
        if residue[lead] % row[lead] != 0:
            return False
        q = residue[lead] // row[lead]
        residue = [x - q * int(y) for x, y in zip(residue, row)]
    return all(x == 0 for x in residue)


def reduce_modulo(v, generators, cols: Optional[int] = None) -> Tuple[int, ...]:
    """Canonical representative of v modulo the lattice spanned by generators.

    Pivot coordinates are reduced into [0, pivot) against the HNF of the lattice.
    """
    v = [int(x) for x in v]
    gens = as_matrix(generators, len(v) if cols is None else cols)
    if gens.shape[0] == 0:
        return tuple(v)
    h, _ = hermite_normal_form(gens)
    for row in h:
        lead = next((j for j, x in enumerate(row) if x != 0), None)
        if lead is None:
            break
        q = v[lead] // row[lead]
        v = [x - q * int(y) for x, y in zip(v, row)]
    return tuple(v)


def quotient_projection(vs, ambient_rank: int) -> np.ndarray:
    """Surjection Z^n -> Z^(n-r) whose kernel is the saturation of span(vs).

    Returned as an (n-r) x n matrix acting on column vectors.
    """
    m = as_matrix(vs, ambient_rank)
    if m.shape[0] == 0:
        return identity(ambient_rank)
    d, _, v = smith_normal_form(m)
    r = sum(1 for i in range(min(d.shape)) if d[i, i] != 0)
    return v[:, r:].T.copy()


def apply(m: np.ndarray, vector) -> Tuple[int, ...]:
    """m @ vector as a tuple of ints."""
    return tuple(dot(row, vector) for row in m)


def is_unimodular(m) -> bool:
    m = as_matrix(m)
    return m.shape[0] == m.shape[1] and abs(determinant(m)) == 1


def row_basis(vectors: Sequence, cols: int) -> np.ndarray:
    """HNF rows (nonzero only) spanning the same lattice as vectors."""
    m = as_matrix(vectors, cols)
    if m.shape[0] == 0:
        return m
    h, _ = hermite_normal_form(m)
    keep = [i for i in range(h.shape[0]) if any(x != 0 for x in h[i])]
    return h[keep]

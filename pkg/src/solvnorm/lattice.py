"""Integer lattices inside a rational ambient lattice.

A lattice is stored by integer coordinates with respect to a fixed ambient
basis (for instance the character lattice X(T) given in root coordinates), in
row Hermite normal form, which makes the representation canonical.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Iterable, Sequence

from . import _linalg as la
from .errors import AmbientMismatch, DimensionMismatch, GeneratorOutsideAmbient, NotSublattice, RankMismatch

QVec = tuple[Fraction, ...]


@dataclass(frozen=True, eq=False)
class Ambient:
    """A lattice with a canonical rational basis, used as coordinate system.

    Coordinates are computed in integer arithmetic: the basis is stored as
    integer rows over ``_bden`` and the inverse of its pivot block as integer
    rows over ``_iden``.
    """

    basis: tuple[QVec, ...]
    dim: int  # length of the vectors (ambient space dimension)
    _pivots: tuple[int, ...]
    _inum: tuple[tuple[int, ...], ...]
    _iden: int
    _bnum: tuple[tuple[int, ...], ...]
    _bden: int

    def __eq__(self, other):
        return isinstance(other, Ambient) and (self.basis, self.dim) == (other.basis, other.dim)

    def __hash__(self):
        return hash((self.basis, self.dim))

    @property
    def rank(self) -> int:
        return len(self.basis)

    def coordinates(self, v: Sequence) -> tuple[Fraction, ...] | None:
        """Rational coordinates of v in this basis, or None if v is outside the span."""
        num, den = self._scaled(v)
        if num is None:
            return None
        return tuple(Fraction(x, den) for x in num)

    def integer_coordinates(self, v: Sequence) -> tuple[int, ...] | None:
        """Integer coordinates of v, or None if v is not a lattice vector."""
        num, den = self._scaled(v)
        if num is None or any(x % den for x in num):
            return None
        return tuple(x // den for x in num)

    def _scaled(self, v: Sequence):
        if len(v) != self.dim:
            raise DimensionMismatch(f"vector of length {len(v)} in ambient of dimension {self.dim}")
        if all(isinstance(x, int) for x in v):
            vden, vn = 1, list(v)
        else:
            q = [Fraction(x) for x in v]
            vden = lcm(*(x.denominator for x in q))
            vn = [int(x * vden) for x in q]
        k = self.rank
        # v = c B with B = bnum / bden; c = v_piv (B_piv)^-1 = v_piv inum * bden / iden
        num = [sum(vn[p] * self._inum[i][j] for i, p in enumerate(self._pivots)) * self._bden for j in range(k)]
        den = vden * self._iden
        for i in range(self.dim):
            if sum(num[j] * self._bnum[j][i] for j in range(k)) != vn[i] * self._iden * self._bden:
                return None, None
        return num, den

    def vector(self, coords: Sequence) -> QVec:
        return tuple(la.dot(coords, [b[i] for b in self.basis]) for i in range(self.dim))


@lru_cache(maxsize=None)
def _make_ambient(gens: tuple[QVec, ...], dim: int) -> Ambient:
    if gens:
        den = lcm(*(x.denominator for g in gens for x in g))
        h = la.hnf([[int(x * den) for x in g] for g in gens])
        basis = tuple(tuple(Fraction(x, den) for x in row) for row in h)
    else:
        den, h, basis = 1, [], ()
    if basis:
        _, pivots = la.rref(basis, dim)
        inv = la.inverse([[row[p] for p in pivots] for row in h])
        iden = lcm(*(x.denominator for r in inv for x in r))
        inum = tuple(tuple(int(x * iden) for x in r) for r in inv)
    else:
        pivots, inum, iden = [], (), 1
    return Ambient(basis, dim, tuple(pivots), inum, iden, tuple(map(tuple, h)), den)


def ambient(gens: Iterable[Sequence], dim: int | None = None) -> Ambient:
    gens = tuple(la.qvec(g) for g in gens)
    if dim is None:
        if not gens:
            raise DimensionMismatch("cannot infer dimension of an empty ambient")
        dim = len(gens[0])
    return _make_ambient(gens, dim)


def standard_ambient(n: int) -> Ambient:
    return ambient([[int(i == j) for j in range(n)] for i in range(n)], n)


@dataclass(frozen=True)
class IntegerLattice:
    ambient: Ambient
    coords: tuple[tuple[int, ...], ...]  # HNF rows, canonical

    @classmethod
    def from_generators(cls, amb: Ambient, gens: Iterable[Sequence]) -> "IntegerLattice":
        rows = []
        for g in gens:
            c = amb.integer_coordinates(g)
            if c is None:
                raise GeneratorOutsideAmbient(f"{tuple(str(x) for x in g)} is not in the ambient lattice")
            rows.append(list(c))
        return cls(amb, tuple(la.hnf(rows)) if rows else ())

    @classmethod
    def zero(cls, amb: Ambient) -> "IntegerLattice":
        return cls(amb, ())

    @classmethod
    def full(cls, amb: Ambient) -> "IntegerLattice":
        return cls(amb, tuple(tuple(int(i == j) for j in range(amb.rank)) for i in range(amb.rank)))

    @property
    def rank(self) -> int:
        return len(self.coords)

    @property
    def basis(self) -> tuple[QVec, ...]:
        return tuple(self.ambient.vector(c) for c in self.coords)

    def __contains__(self, v) -> bool:
        return contains(self, v)

    def __str__(self) -> str:
        vecs = ", ".join("(" + ", ".join(str(x) for x in b) + ")" for b in self.basis)
        return f"<{vecs}>"


def canonical_basis(lat: IntegerLattice) -> tuple[QVec, ...]:
    """Hermite-normal-form basis in the vector coordinates of the ambient space."""
    return lat.basis


def _saturate_coords(coords: Sequence[Sequence[int]], k: int) -> tuple[tuple[int, ...], ...]:
    if not coords:
        return ()
    null = la.nullspace(coords, k)
    if not null:
        return tuple(tuple(int(i == j) for j in range(k)) for i in range(k))
    # rows v of Z^k with v . n = 0 for every rational kernel vector n
    cols = [la.integerize(n) for n in null]
    kmat = [[cols[j][i] for j in range(len(cols))] for i in range(k)]
    return tuple(la.hnf(la.integer_left_kernel(kmat)))


def saturate(lat: IntegerLattice) -> IntegerLattice:
    """Intersection of the rational span of lat with its ambient lattice."""
    return IntegerLattice(lat.ambient, _saturate_coords(lat.coords, lat.ambient.rank))


def saturate_within(lat: IntegerLattice, container: IntegerLattice) -> IntegerLattice:
    """container intersected with the rational span of lat (same ambient)."""
    _same_ambient(lat, container)
    if container.rank == 0:
        return container
    inner = ambient(container.basis, lat.ambient.dim)
    sub = IntegerLattice.from_generators(inner, lat.basis)
    sat = saturate(sub)
    return IntegerLattice.from_generators(lat.ambient, sat.basis)


def is_primitive(lat: IntegerLattice) -> bool:
    return saturate(lat) == lat


def _same_ambient(a: IntegerLattice, b: IntegerLattice) -> None:
    if a.ambient != b.ambient:
        raise AmbientMismatch("lattices live in different ambient lattices")


def contains(lat: IntegerLattice, v: Sequence) -> bool:
    c = lat.ambient.integer_coordinates(v)
    if c is None:
        return False
    if not lat.coords:
        return all(x == 0 for x in c)
    return _solve_in_hnf(lat.coords, c) is not None


def _solve_in_hnf(h: Sequence[Sequence[int]], v: Sequence[int]) -> list[int] | None:
    """Integer x with x H = v for H in row HNF, or None."""
    rem = list(v)
    x = []
    for row in h:
        p = next(i for i, a in enumerate(row) if a)
        if rem[p] % row[p]:
            return None
        q = rem[p] // row[p]
        x.append(q)
        rem = [a - q * b for a, b in zip(rem, row)]
    return x if all(a == 0 for a in rem) else None


def is_sublattice(small: IntegerLattice, big: IntegerLattice) -> bool:
    _same_ambient(small, big)
    return all(_solve_in_hnf(big.coords, c) is not None for c in small.coords)


def quotient_invariants(big: IntegerLattice, small: IntegerLattice) -> list[int]:
    """Invariant factors > 1 of the finite group big/small."""
    _same_ambient(big, small)
    if big.rank != small.rank:
        raise RankMismatch(f"rank {big.rank} vs {small.rank}")
    rows = []
    for c in small.coords:
        x = _solve_in_hnf(big.coords, c)
        if x is None:
            raise NotSublattice("small lattice is not contained in big lattice")
        rows.append(x)
    return [d for d in la.smith_diagonal(rows) if d != 1]


def index(big: IntegerLattice, small: IntegerLattice) -> int:
    out = 1
    for d in quotient_invariants(big, small):
        out *= d
    return out


def span_intersection(u: Iterable[Sequence], v: Iterable[Sequence], dim: int) -> tuple[QVec, ...]:
    """Reduced echelon basis of span(u) intersected with span(v) over Q."""
    u = [la.qvec(x) for x in u]
    v = [la.qvec(x) for x in v]
    if not u or not v:
        return ()
    ub, _ = la.rref(u, dim)
    vb, _ = la.rref(v, dim)
    if not ub or not vb:
        return ()
    # (x, y) with x U - y V = 0
    rel = la.left_nullspace([list(r) for r in ub] + [[-a for a in r] for r in vb])
    vecs = [[la.dot(x[: len(ub)], [r[i] for r in ub]) for i in range(dim)] for x in rel]
    red, _ = la.rref(vecs, dim) if vecs else ([], [])
    return tuple(tuple(r) for r in red)


def span_basis(vs: Iterable[Sequence], dim: int) -> tuple[QVec, ...]:
    red, _ = la.rref([la.qvec(x) for x in vs], dim)
    return tuple(tuple(r) for r in red)


def spans_equal(u: Iterable[Sequence], v: Iterable[Sequence], dim: int) -> bool:
    return span_basis(u, dim) == span_basis(v, dim)


def lattice_queries(lat: IntegerLattice, v: Sequence | None = None, other: IntegerLattice | None = None) -> dict:
    out: dict = {"rank": lat.rank}
    if v is not None:
        out["contains"] = contains(lat, v)
    if other is not None:
        _same_ambient(lat, other)
        out["equal"] = lat == other
        out["span_intersection"] = span_intersection(lat.basis, other.basis, lat.ambient.dim)
    return out

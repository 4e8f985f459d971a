"""Combinatorial data (M, pi, ~) and (S, M, pi, ~), and their active roots.

The full set of active roots is recovered from the maximal ones: each pair
(alpha, pi(alpha)) determines the family F(alpha) of active roots below alpha,
with their labels. Labels of subordinate roots are found by a small
constraint search and must come out unique.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Optional, Sequence, Union

from . import _linalg as la
from .classifier import table1_check
from .errors import AmbiguousLabeling, DimensionMismatch, LabelConflict, NoConsistentLabeling
from .lattice import Ambient, IntegerLattice, ambient, contains
from .rootsys import Root, RootSystem, decompositions, positive_roots_in, support


def character_ambient(rs: RootSystem) -> Ambient:
    return ambient(rs.character_lattice, rs.rank)


def _diff(a: Sequence, b: Sequence) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


@dataclass(frozen=True)
class SphericalDatum:
    """The triple (M, pi, ~); M is kept in lexicographic order.

    ``pi[i]`` is the simple-root index labelling ``M[i]`` and ``equiv`` is a
    partition of ``range(len(M))`` into sorted blocks.
    """

    rs: RootSystem
    M: tuple[Root, ...]
    pi: tuple[int, ...]
    equiv: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = self.rs.rank
        if len(self.pi) != len(self.M):
            raise DimensionMismatch("pi must label every root of M")
        if any(len(a) != n for a in self.M):
            raise DimensionMismatch(f"roots must have length {n}")
        if len(set(self.M)) != len(self.M):
            raise ValueError("M contains a repeated root")
        if list(self.M) != sorted(self.M):
            raise ValueError("M must be sorted; use SphericalDatum.make")
        if any(not 0 <= p < n for p in self.pi):
            raise ValueError("pi label out of range")
        flat = sorted(i for b in self.equiv for i in b)
        if flat != list(range(len(self.M))) or any(not b for b in self.equiv):
            raise ValueError("equiv must be a partition of M")

    @classmethod
    def make(
        cls,
        rs: RootSystem,
        M: Iterable[Sequence[int]],
        pi: Union[Sequence[int], Mapping],
        equiv: Optional[Iterable[Iterable[int]]] = None,
    ) -> "SphericalDatum":
        """Build from roots in any order; ``equiv`` blocks index the given order."""
        M = [tuple(int(x) for x in a) for a in M]
        if isinstance(pi, Mapping):
            pi = [pi[a] for a in M]
        pi = list(pi)
        if len(pi) != len(M):
            raise DimensionMismatch("pi must label every root of M")
        order = sorted(range(len(M)), key=lambda k: M[k])
        pos = {old: new for new, old in enumerate(order)}
        blocks = [[k] for k in range(len(M))] if equiv is None else [list(b) for b in equiv]
        blocks = _canonical_blocks([[pos[k] for k in b] for b in blocks])
        return cls(rs, tuple(M[k] for k in order), tuple(pi[k] for k in order), blocks)

    @property
    def labels(self) -> dict[Root, int]:
        return dict(zip(self.M, self.pi))

    @property
    def pi0(self) -> frozenset[int]:
        return frozenset().union(*(support(a) for a in self.M))

    def block_of(self) -> dict[int, int]:
        return {i: b for b, block in enumerate(self.equiv) for i in block}

    def equivalent(self, i: int, j: int) -> bool:
        blk = self.block_of()
        return blk[i] == blk[j]

    def differences(self) -> list[tuple]:
        """alpha - beta over equivalent pairs in M (generators of L)."""
        return [_diff(self.M[i], self.M[j]) for b in self.equiv for i, j in combinations(b, 2)]

    def key(self) -> tuple:
        return (self.M, self.pi, self.equiv)


def _canonical_blocks(blocks) -> tuple[tuple[int, ...], ...]:
    return tuple(sorted(tuple(sorted(b)) for b in blocks if b))


@dataclass(frozen=True)
class FullDatum:
    """(S, M, pi, ~) with S encoded by the primitive lattice Ker tau in X(T)."""

    datum: SphericalDatum
    ker_tau: IntegerLattice

    @classmethod
    def from_torus(cls, rs: RootSystem, M, pi, ker_tau_gens: Iterable[Sequence]) -> "FullDatum":
        """Build with ~ derived from Ker tau."""
        kt = IntegerLattice.from_generators(character_ambient(rs), ker_tau_gens)
        draft = SphericalDatum.make(rs, M, pi)
        return cls(SphericalDatum(rs, draft.M, draft.pi, _equiv_from(draft.M, kt)), kt)

    @classmethod
    def with_lattice(cls, datum: SphericalDatum, ker_tau: IntegerLattice) -> "FullDatum":
        """Replace the declared ~ of ``datum`` by the one induced by ``ker_tau``."""
        return cls(SphericalDatum(datum.rs, datum.M, datum.pi, _equiv_from(datum.M, ker_tau)), ker_tau)

    @property
    def rs(self) -> RootSystem:
        return self.datum.rs

    def derived_equiv(self) -> tuple[tuple[int, ...], ...]:
        return _equiv_from(self.datum.M, self.ker_tau)

    def key(self) -> tuple:
        return (self.datum.M, self.datum.pi, self.ker_tau.coords)


def _equiv_from(roots: Sequence[Sequence], kt: IntegerLattice) -> tuple[tuple[int, ...], ...]:
    blocks: list[list[int]] = []
    for i, a in enumerate(roots):
        for b in blocks:
            if contains(kt, _diff(a, roots[b[0]])):
                b.append(i)
                break
        else:
            blocks.append([i])
    return _canonical_blocks(blocks)


# active roots ---------------------------------------------------------------

def compute_family(rs: RootSystem, alpha: Sequence[int], pa: int, check_table: bool = True) -> dict[Root, int]:
    """F(alpha) with labels, as a dict root -> simple-root index.

    The subordinate roots are forced by the decompositions of alpha; their
    labels are the unique choice making every member consistent with the
    splitting rule and (optionally) with the admissible-pair table, with labels in bijection
    with Supp alpha.
    """
    alpha = tuple(alpha)
    cache = rs._cache.setdefault("family", {})
    key = (alpha, pa, check_table)
    if key in cache:
        return dict(cache[key])

    supp = support(alpha)
    if pa not in supp:
        raise NoConsistentLabeling(f"label {pa} is outside the support of {alpha}")
    if check_table and table1_check(rs, alpha, pa) is None:
        raise NoConsistentLabeling(f"({alpha}, {pa}) is not an admissible pair")
    image = {alpha}
    for b, c in decompositions(rs, alpha):
        in_b, in_c = pa in support(b), pa in support(c)
        if in_b == in_c:
            raise NoConsistentLabeling(f"both summands {b}, {c} contain the label")
        image.add(c if in_b else b)
    if len(image) != len(supp):
        raise NoConsistentLabeling(f"|F(alpha)| = {len(image)} differs from |Supp alpha| = {len(supp)}")

    def admissible(beta: Root, d: int) -> bool:
        if check_table and table1_check(rs, beta, d) is None:
            return False
        for b, c in decompositions(rs, beta):
            in_b, in_c = d in support(b), d in support(c)
            if in_b == in_c:
                return False
            active, passive = (c, b) if in_b else (b, c)
            if active not in image or passive in image:
                return False
        return True

    if not admissible(alpha, pa):
        raise NoConsistentLabeling(f"label {pa} is inconsistent on {alpha}")
    subs = sorted(image - {alpha})
    options = {beta: [d for d in sorted(support(beta)) if d != pa and admissible(beta, d)] for beta in subs}
    solutions: list[dict] = []

    def search(k: int, used: set, chosen: dict) -> None:
        if len(solutions) > 1:
            return
        if k == len(subs):
            solutions.append(dict(chosen))
            return
        beta = subs[k]
        for d in options[beta]:
            if d not in used:
                chosen[beta] = d
                used.add(d)
                search(k + 1, used, chosen)
                used.discard(d)
                del chosen[beta]

    search(0, {pa}, {alpha: pa})
    if not solutions:
        raise NoConsistentLabeling(f"no consistent labeling of F({alpha}) with label {pa}")
    if len(solutions) > 1:
        raise AmbiguousLabeling(f"two labelings of F({alpha}) with label {pa}")
    fam = dict(sorted(solutions[0].items()))
    cache[key] = fam
    return dict(fam)


@dataclass(frozen=True, eq=False)
class ActiveSet:
    psi: tuple[Root, ...]
    labels: dict
    classes: tuple[tuple[Root, ...], ...]

    @property
    def m(self) -> int:
        return len(self.classes)

    def class_of(self, root: Root) -> tuple[Root, ...]:
        return next(c for c in self.classes if root in c)


def active_roots(datum: SphericalDatum) -> dict[Root, int]:
    """Psi with its labels, merged over the families of M."""
    return dict(_active_roots(datum))


@lru_cache(maxsize=65536)
def _active_roots(datum: SphericalDatum) -> tuple:
    labels: dict[Root, int] = {}
    for alpha, pa in zip(datum.M, datum.pi):
        for beta, d in compute_family(datum.rs, alpha, pa).items():
            if labels.setdefault(beta, d) != d:
                raise LabelConflict(f"root {beta} receives labels {labels[beta]} and {d}")
    return tuple(sorted(labels.items()))


@lru_cache(maxsize=65536)
def expand_active_set(full: FullDatum) -> ActiveSet:
    labels = active_roots(full.datum)
    psi = tuple(labels)
    kt = full.ker_tau
    classes: list[list[Root]] = []
    for beta in psi:
        for c in classes:
            if contains(kt, _diff(beta, c[0])):
                c.append(beta)
                break
        else:
            classes.append([beta])
    return ActiveSet(psi, labels, tuple(sorted(tuple(c) for c in classes)))


def regular_roots(aset: ActiveSet) -> frozenset[Root]:
    return frozenset(c[0] for c in aset.classes if len(c) == 1)


@dataclass(frozen=True)
class SphericityCertificate:
    spherical: bool
    dependency: Optional[dict] = None  # class representative -> coefficient

    def __bool__(self) -> bool:
        return self.spherical


def check_sphericity(full: FullDatum, aset: Optional[ActiveSet] = None) -> SphericityCertificate:
    """Class weights must be linearly independent modulo <Ker tau>."""
    aset = aset or expand_active_set(full)
    n = full.rs.rank
    reps = [c[0] for c in aset.classes]
    kt = [list(b) for b in full.ker_tau.basis]
    rows = [list(map(Fraction, r)) for r in reps] + kt
    if la.rank(rows, n) == len(reps) + len(kt):
        return SphericityCertificate(True)
    for y in la.left_nullspace(rows):
        coeffs = y[: len(reps)]
        if any(coeffs):
            return SphericityCertificate(False, {r: c for r, c in zip(reps, coeffs) if c})
    raise AssertionError("rank deficiency without a dependency among class weights")


def subsystem_roots(rs: RootSystem, alpha: Sequence[int]) -> tuple[Root, ...]:
    return positive_roots_in(rs, support(alpha))

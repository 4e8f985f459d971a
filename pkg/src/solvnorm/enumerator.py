"""Exhaustive generation of data (M, pi, ~) satisfying (A), (D), (E), (C)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

from .classifier import EQUIVALENT_OK, INEQUIVALENT_OK, conditions_ADEC, pair_pattern, table1_check
from .datum import FullDatum, SphericalDatum, character_ambient
from .errors import InvalidDatum
from .lattice import IntegerLattice, saturate
from .rootsys import RootSystem, support


@dataclass(frozen=True)
class EnumerationOptions:
    max_size: Optional[int] = None
    sober: bool = False
    dedupe_automorphisms: bool = False

    def __post_init__(self):
        if self.max_size is not None and self.max_size < 0:
            raise ValueError("max_size must be non-negative")


def table1_pairs(rs: RootSystem) -> list[tuple[tuple[int, ...], int]]:
    return [(a, p) for a in rs.positive_roots for p in sorted(support(a)) if table1_check(rs, a, p) is not None]


def sober_torus(datum: SphericalDatum) -> FullDatum:
    """Complete with Ker tau = saturation of L, i.e. S = A0."""
    if not conditions_ADEC(datum):
        raise InvalidDatum("datum violates one of (A), (D), (E), (C)")
    L = IntegerLattice.from_generators(character_ambient(datum.rs), datum.differences())
    full = FullDatum(datum, saturate(L))
    if full.derived_equiv() != datum.equiv:
        raise InvalidDatum("saturation of L identifies inequivalent roots")
    return full


def _partitions(k: int, must_join, may_join) -> Iterator[list[list[int]]]:
    """Set partitions of range(k) where must_join pairs share a block and
    pairs outside may_join never do."""

    def rec(i: int, blocks: list[list[int]]):
        if i == k:
            yield [list(b) for b in blocks]
            return
        for b in blocks:
            if all(may_join(i, j) for j in b) and all(not must_join(i, j) or j in b for j in range(i)):
                b.append(i)
                yield from rec(i + 1, blocks)
                b.pop()
        if all(not must_join(i, j) for j in range(i)):
            blocks.append([i])
            yield from rec(i + 1, blocks)
            blocks.pop()

    yield from rec(0, [])


def diagram_automorphisms(rs: RootSystem) -> list[tuple[int, ...]]:
    """Permutations of simple roots preserving the Cartan matrix and X(T)."""
    n = rs.rank
    out = []

    def rec(perm: list[int]):
        i = len(perm)
        if i == n:
            out.append(tuple(perm))
            return
        for j in range(n):
            if j in perm:
                continue
            if rs.cartan[i][i] != rs.cartan[j][j] or rs.gram[i][i] != rs.gram[j][j]:
                continue
            if all(rs.cartan[i][k] == rs.cartan[j][perm[k]] and rs.cartan[k][i] == rs.cartan[perm[k]][j] for k in range(i)):
                perm.append(j)
                rec(perm)
                perm.pop()

    rec([])
    amb = character_ambient(rs)
    full = IntegerLattice.full(amb)

    def keeps_lattice(p):
        imgs = []
        for b in full.basis:
            v = [0] * n
            for k in range(n):
                v[p[k]] = b[k]
            imgs.append(v)
        try:
            return IntegerLattice.from_generators(amb, imgs) == full
        except ValueError:
            return False

    return [p for p in out if keeps_lattice(p)]


def _apply_perm(datum: SphericalDatum, p) -> SphericalDatum:
    n = datum.rs.rank

    def move(a):
        v = [0] * n
        for k in range(n):
            v[p[k]] = a[k]
        return tuple(v)

    return SphericalDatum.make(datum.rs, [move(a) for a in datum.M], [p[x] for x in datum.pi], datum.equiv)


def enumerate_data(rs: RootSystem, opts: EnumerationOptions = EnumerationOptions()) -> list:
    """All data satisfying (A), (D), (E), (C), sorted deterministically.

    Returns SphericalDatum objects, or FullDatum objects with the sober torus
    when ``opts.sober`` is set.
    """
    cands = table1_pairs(rs)
    k = len(cands)
    supp = [support(a) for a, _ in cands]
    pat = {}
    for i in range(k):
        for j in range(i + 1, k):
            if cands[i][0] == cands[j][0]:
                continue
            p = pair_pattern(rs, cands[i], cands[j])
            if p is not None:
                pat[(i, j)] = p
    limit = opts.max_size if opts.max_size is not None else rs.rank

    results: list[SphericalDatum] = []

    def covered(chosen) -> bool:
        # condition (C) on the current choice
        for i in chosen:
            others = frozenset().union(*(supp[j] for j in chosen if j != i))
            if supp[i] <= others:
                return True
        return False

    def emit(chosen):
        idx = list(chosen)
        pats = {(a, b): pat[(min(idx[a], idx[b]), max(idx[a], idx[b]))] for a in range(len(idx)) for b in range(a + 1, len(idx))}
        must = lambda a, b: pats[(min(a, b), max(a, b))] in ("E1", "E2")  # noqa: E731
        may = lambda a, b: pats[(min(a, b), max(a, b))] in EQUIVALENT_OK  # noqa: E731
        for blocks in _partitions(len(idx), must, may):
            blk = {x: n for n, b in enumerate(blocks) for x in b}
            if all(pats[(a, b)] in INEQUIVALENT_OK for a in range(len(idx)) for b in range(a + 1, len(idx)) if blk[a] != blk[b]):
                results.append(SphericalDatum.make(rs, [cands[x][0] for x in idx], [cands[x][1] for x in idx], blocks))

    def rec(start: int, chosen: list[int]):
        emit(chosen)
        if len(chosen) == limit:
            return
        for x in range(start, k):
            if any(cands[x][0] == cands[y][0] or (min(x, y), max(x, y)) not in pat for y in chosen):
                continue
            chosen.append(x)
            if not covered(chosen):
                rec(x + 1, chosen)
            chosen.pop()

    rec(0, [])
    if opts.dedupe_automorphisms:
        autos = diagram_automorphisms(rs)
        seen = {}
        for d in results:
            canon = min(_apply_perm(d, p).key() for p in autos)
            seen.setdefault(canon, d)
        results = list(seen.values())
    results.sort(key=lambda d: (len(d.M), d.key()))
    if opts.sober:
        return [sober_torus(d) for d in results]
    return results

"""Shared fixtures-as-functions and independent oracles for the test suite."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from math import gcd

from solvnorm.classifier import validate
from solvnorm.datum import FullDatum, SphericalDatum
from solvnorm.enumerator import EnumerationOptions, enumerate_data
from solvnorm.rootsys import build_root_system

SMALL_TYPES = ["A1", "A2", "A3", "B2", "B3", "C3", "G2"]
RANK4_TYPES = ["A4", "B4", "C4", "D4", "F4", "A1xA1", "A1xA2", "A1xB2"]


@lru_cache(maxsize=None)
def rs(spec: str, lattice: str = "adjoint"):
    return build_root_system(spec, lattice)


@lru_cache(maxsize=None)
def catalog(spec: str, lattice: str = "adjoint", sober: bool = False):
    return tuple(enumerate_data(rs(spec, lattice), EnumerationOptions(sober=sober)))


def sl3():
    """M = {alpha1}, pi = id, Ker tau = <omega1 - omega2> in SL3."""
    A2 = rs("A2", "simply_connected")
    return FullDatum.from_torus(A2, [(1, 0)], [0], [(Fraction(1, 3), Fraction(-1, 3))])


def full_with(rsys, M, pi, ker_tau=()):
    return FullDatum.from_torus(rsys, M, pi, ker_tau)


# Euclidean realizations --------------------------------------------------------

def euclidean_simple_roots(family: str, n: int):
    """Textbook simple roots in an orthonormal basis, scaled so short roots have norm 2."""
    e = lambda i, m: [Fraction(int(k == i)) for k in range(m)]  # noqa: E731

    def sub(u, v):
        return [a - b for a, b in zip(u, v)]

    def add(u, v):
        return [a + b for a, b in zip(u, v)]

    if family == "A":
        roots = [sub(e(i, n + 1), e(i + 1, n + 1)) for i in range(n)]
        scale = 1
    elif family == "B":
        roots = [sub(e(i, n), e(i + 1, n)) for i in range(n - 1)] + [e(n - 1, n)]
        scale = 2
    elif family == "C":
        roots = [sub(e(i, n), e(i + 1, n)) for i in range(n - 1)] + [[2 * x for x in e(n - 1, n)]]
        scale = 1
    elif family == "D":
        roots = [sub(e(i, n), e(i + 1, n)) for i in range(n - 1)] + [add(e(n - 2, n), e(n - 1, n))]
        scale = 1
    elif family == "G":
        roots = [sub(e(0, 3), e(1, 3)), [Fraction(-2), Fraction(1), Fraction(1)]]
        scale = 1
    elif family == "F":
        h = Fraction(1, 2)
        roots = [sub(e(1, 4), e(2, 4)), sub(e(2, 4), e(3, 4)), e(3, 4), [h, -h, -h, -h]]
        scale = 2
    else:
        raise ValueError(family)
    # inner products are multiplied by ``scale`` to reach the normalization
    return roots, scale


def euclidean_gram(family: str, n: int) -> list[list[Fraction]]:
    roots, scale = euclidean_simple_roots(family, n)
    return [[scale * sum(a * b for a, b in zip(u, v)) for v in roots] for u in roots]


# positive roots by Weyl-orbit closure ------------------------------------------

def roots_by_weyl_orbit(rsys) -> set[tuple[int, ...]]:
    """All positive roots as the positive part of the W-orbit of the simple roots."""
    n = rsys.rank
    cartan = rsys.cartan

    def refl(d, v):
        c = sum(v[j] * cartan[j][d] for j in range(n))
        return tuple(v[k] - (c if k == d else 0) for k in range(n))

    seen = set(rsys.simple_roots)
    frontier = list(seen)
    while frontier:
        nxt = []
        for v in frontier:
            for d in range(n):
                w = refl(d, v)
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return {v for v in seen if all(x >= 0 for x in v)}


# coset enumeration oracle for finite abelian quotients -------------------------

def _det_adj(b: list[list[int]]):
    k = len(b)
    m = [[Fraction(x) for x in row] for row in b]
    # adjugate via exact inverse times determinant
    det = Fraction(1)
    a = [row[:] + [Fraction(int(i == j)) for j in range(k)] for i, row in enumerate(m)]
    for c in range(k):
        p = next(r for r in range(c, k) if a[r][c] != 0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det *= a[c][c]
        piv = a[c][c]
        a[c] = [x / piv for x in a[c]]
        for r in range(k):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    inv = [row[k:] for row in a]
    d = int(det)
    adj = [[int(x * det) for x in row] for row in inv]
    return d, adj


def coset_elementary_divisors(b: list[list[int]]) -> list[int]:
    """Invariant factors > 1 of Z^k / rowspan(b), found by listing the cosets.

    A vector v lies in the row lattice iff v adj(b) = 0 mod det(b), so
    v -> v adj(b) mod |det| embeds the quotient in (Z/det)^k. The group is
    listed by breadth-first search from the unit vectors; its invariant factors
    are then recovered from the number of elements killed by each integer.
    """
    d, adj = _det_adj(b)
    d = abs(d)
    k = len(b)
    gens = [tuple(adj[i][j] % d for j in range(k)) for i in range(k)]
    zero = tuple([0] * k)
    elems = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = tuple((a + c) % d for a, c in zip(x, g))
                if y not in elems:
                    elems.add(y)
                    nxt.append(y)
        frontier = nxt
    order = len(elems)
    assert order == d
    killed = {m: sum(1 for x in elems if all((m * a) % d == 0 for a in x)) for m in range(1, order + 1) if order % m == 0}
    for chain in _divisor_chains(order):
        if all(_prod_gcd(m, chain) == c for m, c in killed.items()):
            return chain
    raise AssertionError("no divisor chain matches the torsion counts")


def _prod_gcd(m, chain):
    out = 1
    for x in chain:
        out *= gcd(m, x)
    return out


def _divisor_chains(n: int, smallest: int = 2) -> list[list[int]]:
    """Lists d1 | d2 | ... with product n and all d_i > 1."""
    if n == 1:
        return [[]]
    out = []
    for d in range(smallest, n + 1):
        if n % d == 0:
            for rest in _divisor_chains(n // d, d):
                if not rest or rest[0] % d == 0:
                    out.append([d] + rest)
    return out


# brute-force enumerator --------------------------------------------------------

def set_partitions(items):
    items = list(items)
    if not items:
        yield []
        return
    head, rest = items[0], items[1:]
    for part in set_partitions(rest):
        yield [[head]] + part
        for i in range(len(part)):
            yield part[:i] + [[head] + part[i]] + part[i + 1:]


def brute_force_valid(rsys, max_size=None):
    """Keys of all (M, pi, ~) accepted by validate, by exhaustive listing.

    Sizes run one past the rank so that the bound coming from (C) is
    exercised rather than assumed.
    """
    roots = rsys.positive_roots
    limit = rsys.rank + 1 if max_size is None else max_size
    out = set()
    for size in range(0, limit + 1):
        for M in combinations(roots, size):
            supports = [[k for k, x in enumerate(a) if x] for a in M]
            for pi in product(*supports):
                for blocks in set_partitions(range(size)):
                    d = SphericalDatum.make(rsys, M, pi, blocks)
                    if validate(d).valid:
                        out.add(d.key())
    return out


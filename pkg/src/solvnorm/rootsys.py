"""Semisimple root systems in the simple-root basis.

Roots are integer tuples of coefficients over the simple roots; characters of
the maximal torus are tuples of ``Fraction`` in the same basis. Inner products
are normalized per simple component so that short roots have squared length 2.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import lcm
from typing import Iterable, Sequence, Union

from . import _linalg as la
from .errors import DimensionMismatch, IllegalRank, LatticeNotBetweenRootAndWeight

Root = tuple[int, ...]
Character = tuple[Fraction, ...]

_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 3}


@dataclass(frozen=True, order=True)
class SimpleComponent:
    family: str
    rank: int

    def __post_init__(self):
        f, n = self.family, self.rank
        ok = (
            (f in _MIN_RANK and n >= _MIN_RANK[f])
            or (f == "E" and n in (6, 7, 8))
            or (f == "F" and n == 4)
            or (f == "G" and n == 2)
        )
        if not ok:
            raise IllegalRank(f"no simple root system of type {f}{n}")

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"


def parse_type(text: str) -> list[SimpleComponent]:
    """Parse ``"A2"``, ``"B3xA1"`` or ``"A1+A1"`` into components."""
    parts = [p for p in re.split(r"[x+×,\s]+", text.strip()) if p]
    comps = []
    for p in parts:
        m = re.fullmatch(r"([A-Ga-g])_?(\d+)", p)
        if not m:
            raise IllegalRank(f"cannot parse root system type {p!r}")
        comps.append(SimpleComponent(m.group(1).upper(), int(m.group(2))))
    if not comps:
        raise IllegalRank("empty root system type")
    return comps


def _gram(comp: SimpleComponent) -> list[list[int]]:
    """Inner products of simple roots of one component (short roots: length 2)."""
    f, n = comp.family, comp.rank
    g = [[0] * n for _ in range(n)]

    def edge(i, j, v):
        g[i][j] = g[j][i] = v

    if f == "A":
        for i in range(n):
            g[i][i] = 2
        for i in range(n - 1):
            edge(i, i + 1, -1)
    elif f == "B":
        for i in range(n):
            g[i][i] = 4
        g[n - 1][n - 1] = 2
        for i in range(n - 1):
            edge(i, i + 1, -2)
    elif f == "C":
        for i in range(n):
            g[i][i] = 2
        g[n - 1][n - 1] = 4
        for i in range(n - 2):
            edge(i, i + 1, -1)
        edge(n - 2, n - 1, -2)
    elif f == "D":
        for i in range(n):
            g[i][i] = 2
        for i in range(n - 2):
            edge(i, i + 1, -1)
        edge(n - 3, n - 1, -1)
    elif f == "E":
        # Bourbaki: 1-3-4-5-...-n chain, node 2 attached to node 4
        for i in range(n):
            g[i][i] = 2
        edge(0, 2, -1)
        edge(1, 3, -1)
        for i in range(2, n - 1):
            edge(i, i + 1, -1)
    elif f == "F":
        g[0][0] = g[1][1] = 4
        g[2][2] = g[3][3] = 2
        edge(0, 1, -2)
        edge(1, 2, -2)
        edge(2, 3, -1)
    elif f == "G":
        g[0][0], g[1][1] = 2, 6
        edge(0, 1, -3)
    return g


LatticeChoice = Union[str, Sequence[Sequence]]


@dataclass(frozen=True, eq=False)
class RootSystem:
    components: tuple[SimpleComponent, ...]
    gram: tuple[tuple[int, ...], ...]
    cartan: tuple[tuple[int, ...], ...]
    positive_roots: tuple[Root, ...]
    character_lattice: tuple[Character, ...]
    lattice_name: str
    _cache: dict = field(default_factory=dict, repr=False)

    # identity -------------------------------------------------------------
    def _key(self):
        return (self.components, self.character_lattice)

    def __eq__(self, other):
        return isinstance(other, RootSystem) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self) -> str:
        return f"RootSystem({'x'.join(map(str, self.components))}, {self.lattice_name})"

    # basic data -----------------------------------------------------------
    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def simple_roots(self) -> tuple[Root, ...]:
        n = self.rank
        return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))

    @property
    def pairing_matrix(self) -> tuple[tuple[int, ...], ...]:
        return self.gram

    def component_of(self, i: int) -> int:
        offset = 0
        for k, c in enumerate(self.components):
            if i < offset + c.rank:
                return k
            offset += c.rank
        raise IndexError(i)

    @property
    def root_index(self) -> dict[Root, int]:
        if "index" not in self._cache:
            self._cache["index"] = {r: k for k, r in enumerate(self.positive_roots)}
        return self._cache["index"]

    def is_positive_root(self, v: Sequence) -> bool:
        return tuple(v) in self.root_index

    # diagram ----------------------------------------------------------------
    def neighbors(self, i: int) -> tuple[int, ...]:
        return tuple(j for j in range(self.rank) if j != i and self.gram[i][j] != 0)

    def edge_multiplicity(self, i: int, j: int) -> int:
        if i == j or self.gram[i][j] == 0:
            return 0
        return self.cartan[i][j] * self.cartan[j][i]

    def is_shorter(self, i: int, j: int) -> bool:
        return self.gram[i][i] < self.gram[j][j]


def weight_lattice_basis(cartan: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    """Fundamental weights in root coordinates (row i is omega_i)."""
    return la.inverse(cartan)


def _canonical_rational_basis(gens: Sequence[Sequence], n: int) -> tuple[Character, ...]:
    gens = [la.qvec(g) for g in gens]
    den = lcm(*(x.denominator for g in gens for x in g))
    h = la.hnf([[int(x * den) for x in g] for g in gens])
    return tuple(tuple(Fraction(x, den) for x in row) for row in h)


def build_root_system(spec: Union[str, Iterable[SimpleComponent]], lattice_choice: LatticeChoice = "adjoint") -> RootSystem:
    """Construct a root system with the requested character lattice X(T).

    ``lattice_choice`` is ``"adjoint"`` (root lattice), ``"simply_connected"``
    (weight lattice) or a list of rational generators in root coordinates.
    """
    comps = parse_type(spec) if isinstance(spec, str) else list(spec)
    if not comps:
        raise IllegalRank("empty root system")
    n = sum(c.rank for c in comps)
    gram = [[0] * n for _ in range(n)]
    off = 0
    for c in comps:
        g = _gram(c)
        for i in range(c.rank):
            for j in range(c.rank):
                gram[off + i][off + j] = g[i][j]
        off += c.rank
    # cartan[i][j] = <alpha_i, alpha_j^vee>
    cartan = [[2 * gram[i][j] // gram[j][j] for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            assert 2 * gram[i][j] % gram[j][j] == 0

    if isinstance(lattice_choice, str):
        if lattice_choice == "adjoint":
            gens = [[int(i == j) for j in range(n)] for i in range(n)]
        elif lattice_choice in ("simply_connected", "sc"):
            gens = weight_lattice_basis(cartan)
            lattice_choice = "simply_connected"
        else:
            raise ValueError(f"unknown lattice preset {lattice_choice!r}")
        name = lattice_choice
    else:
        gens = [la.qvec(g) for g in lattice_choice]
        name = "custom"
        if any(len(g) != n for g in gens):
            raise DimensionMismatch("lattice generators must have length equal to the rank")
        if la.rank(gens, n) != n:
            raise LatticeNotBetweenRootAndWeight("lattice generators are not of full rank")
    basis = _canonical_rational_basis(gens, n)
    _check_between_root_and_weight(basis, cartan)

    rs = RootSystem(
        components=tuple(comps),
        gram=tuple(map(tuple, gram)),
        cartan=tuple(map(tuple, cartan)),
        positive_roots=_positive_roots(cartan),
        character_lattice=basis,
        lattice_name=name,
    )
    return rs


def _check_between_root_and_weight(basis, cartan) -> None:
    n = len(cartan)
    inv = la.inverse(basis)
    for i in range(n):
        coords = inv[i]  # alpha_i = e_i; coordinates e_i * inv
        if any(x.denominator != 1 for x in coords):
            raise LatticeNotBetweenRootAndWeight(f"simple root {i} is not in the lattice")
    for b in basis:
        # omega-coordinates of v are v * cartan
        wc = [sum(b[k] * cartan[k][j] for k in range(n)) for j in range(n)]
        if any(Fraction(x).denominator != 1 for x in wc):
            raise LatticeNotBetweenRootAndWeight(f"generator {tuple(map(str, b))} is not a weight")


def _positive_roots(cartan) -> tuple[Root, ...]:
    """Close the simple roots under root strings, height by height."""
    n = len(cartan)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    roots = set(simple)
    layer = list(simple)
    while layer:
        nxt = set()
        for beta in layer:
            for i in range(n):
                # <beta, alpha_i^vee>
                pair = sum(beta[k] * cartan[k][i] for k in range(n))
                p = 0
                down = list(beta)
                while True:
                    down[i] -= 1
                    if tuple(down) in roots:
                        p += 1
                    else:
                        break
                if beta == simple[i]:
                    continue
                if p - pair > 0:
                    up = list(beta)
                    up[i] += 1
                    nxt.add(tuple(up))
        nxt -= roots
        roots |= nxt
        layer = sorted(nxt)
    return tuple(sorted(roots))


# arithmetic -----------------------------------------------------------------

def _check_len(rs: RootSystem, *vs) -> None:
    for v in vs:
        if len(v) != rs.rank:
            raise DimensionMismatch(f"expected a vector of length {rs.rank}, got {len(v)}")


def pairing(rs: RootSystem, v: Sequence, w: Sequence) -> Fraction:
    """W-invariant inner product of two vectors in simple-root coordinates."""
    _check_len(rs, v, w)
    g = rs.gram
    n = rs.rank
    return sum((Fraction(v[i]) * g[i][j] * w[j] for i in range(n) if v[i] for j in range(n) if w[j] and g[i][j]),
               Fraction(0))


def coroot_pairing(rs: RootSystem, v: Sequence, i: int) -> Fraction:
    """<v, alpha_i^vee>."""
    _check_len(rs, v)
    return sum((Fraction(v[k]) * rs.cartan[k][i] for k in range(rs.rank) if v[k]), Fraction(0))


def reflect(rs: RootSystem, delta: int, v: Sequence):
    """Simple reflection r_delta applied to v; integer input gives integer output."""
    if not 0 <= delta < rs.rank:
        raise IndexError(f"simple root index {delta} out of range")
    c = coroot_pairing(rs, v, delta)
    out = list(v)
    out[delta] = out[delta] - c
    if all(isinstance(x, int) for x in v):
        return tuple(int(x) for x in out)
    return tuple(Fraction(x) for x in out)


# supports and decompositions ------------------------------------------------

def support(alpha: Sequence) -> frozenset[int]:
    return frozenset(i for i, k in enumerate(alpha) if k > 0)


def height(alpha: Sequence) -> int:
    return sum(alpha)


def positive_roots_in(rs: RootSystem, nodes: Iterable[int]) -> tuple[Root, ...]:
    """Delta_+ restricted to the span of the given simple roots."""
    nodes = frozenset(nodes)
    return tuple(r for r in rs.positive_roots if support(r) <= nodes)


def decompositions(rs: RootSystem, alpha: Sequence) -> tuple[tuple[Root, Root], ...]:
    """All unordered splittings alpha = beta + gamma with beta, gamma positive roots."""
    alpha = tuple(alpha)
    cache = rs._cache.setdefault("decomp", {})
    if alpha in cache:
        return cache[alpha]
    idx = rs.root_index
    out = []
    for beta in rs.positive_roots:
        gamma = tuple(a - b for a, b in zip(alpha, beta))
        if gamma in idx and beta < gamma:
            out.append((beta, gamma))
    cache[alpha] = tuple(out)
    return cache[alpha]


def root_queries(rs: RootSystem, alpha: Sequence) -> dict:
    alpha = tuple(alpha)
    return {
        "is_positive_root": rs.is_positive_root(alpha),
        "support": support(alpha),
        "height": height(alpha),
        "subsystem_positive_roots": positive_roots_in(rs, support(alpha)),
        "decompositions": decompositions(rs, alpha),
    }


# subdiagrams --------------------------------------------------------------

def components_of(rs: RootSystem, subset: Iterable[int]) -> list[frozenset[int]]:
    subset = set(subset)
    comps = []
    while subset:
        start = min(subset)
        seen = {start}
        stack = [start]
        while stack:
            i = stack.pop()
            for j in rs.neighbors(i):
                if j in subset and j not in seen:
                    seen.add(j)
                    stack.append(j)
        comps.append(frozenset(seen))
        subset -= seen
    return sorted(comps, key=min)


def is_connected(rs: RootSystem, subset: Iterable[int]) -> bool:
    return len(components_of(rs, subset)) == 1


def is_terminal(rs: RootSystem, node: int, subset: Iterable[int]) -> bool:
    """Node joined by an edge to exactly one other node of subset."""
    subset = set(subset)
    return node in subset and sum(1 for j in rs.neighbors(node) if j in subset) == 1


@dataclass(frozen=True)
class Edge:
    a: int
    b: int
    multiplicity: int
    arrow_to: int | None  # endpoint holding the shorter root, None for simple edges


def subdiagram_info(rs: RootSystem, subset: Iterable[int]) -> dict:
    subset = frozenset(subset)
    comps = components_of(rs, subset)
    edges = []
    for i, j in combinations(sorted(subset), 2):
        mult = rs.edge_multiplicity(i, j)
        if mult:
            arrow = None
            if rs.is_shorter(i, j):
                arrow = i
            elif rs.is_shorter(j, i):
                arrow = j
            edges.append(Edge(i, j, mult, arrow))
    return {
        "components": comps,
        "terminal": [frozenset(k for k in c if is_terminal(rs, k, c)) for c in comps],
        "edges": edges,
    }


def chain_order(rs: RootSystem, nodes: Iterable[int]) -> list[int] | None:
    """Order the nodes along a path if Sigma(nodes) is a path, else None."""
    nodes = set(nodes)
    if len(nodes) == 1:
        return list(nodes)
    deg = {i: sum(1 for j in rs.neighbors(i) if j in nodes) for i in nodes}
    ends = sorted(i for i, d in deg.items() if d == 1)
    if len(ends) != 2 or any(d > 2 for d in deg.values()) or not is_connected(rs, nodes):
        return None
    order = [ends[0]]
    prev = None
    while len(order) < len(nodes):
        cur = order[-1]
        nxt = [j for j in rs.neighbors(cur) if j in nodes and j != prev]
        prev = cur
        order.append(nxt[0])
    return order

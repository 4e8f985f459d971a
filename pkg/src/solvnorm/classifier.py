"""Classification conditions (A), (D), (E), (C), (T) on combinatorial data.

Admissible pairs (alpha, pi(alpha)) and the pair patterns are matched
intrinsically, from the shape of the Dynkin subdiagram and the relative root
lengths, so nothing depends on a particular numbering of simple roots.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import TYPE_CHECKING, Optional, Sequence

from .lattice import span_basis, span_intersection
from .rootsys import RootSystem, chain_order, components_of, is_connected, is_terminal, support

if TYPE_CHECKING:
    from .datum import FullDatum, SphericalDatum

PATTERNS = ("D0", "D1", "E1", "D2", "E2")
INEQUIVALENT_OK = frozenset({"D0", "D1", "D2"})
EQUIVALENT_OK = frozenset({"D0", "D1", "E1", "D2", "E2"})


def table1_check(rs: RootSystem, alpha: Sequence[int], pa: int) -> Optional[int]:
    """Shape id of the admissible pair (alpha, pa), or None if it is not admissible.

    1: all coefficients 1, any label.
    2: B-type chain 1,...,1,2 ending at a short root, label off that root.
    3: C-type chain 2,...,2,1 ending at a long root, label on that root.
    4: F4 with coefficients 1,1,2,2 along long,long,short,short; label long.
    5, 6: G2 roots 2a+b and 3a+b (a short), label the long root.
    """
    alpha = tuple(alpha)
    key = (alpha, pa)
    cache = rs._cache.setdefault("table1", {})
    if key not in cache:
        cache[key] = _table1(rs, alpha, pa)
    return cache[key]


def _table1(rs: RootSystem, alpha, pa) -> Optional[int]:
    if not rs.is_positive_root(alpha):
        return None
    supp = support(alpha)
    if pa not in supp:
        return None
    if all(alpha[i] == 1 for i in supp):
        return 1
    order = chain_order(rs, supp)
    if order is None:
        return None
    n = len(order)
    mults = [rs.edge_multiplicity(order[k], order[k + 1]) for k in range(n - 1)]
    coeff = lambda: tuple(alpha[i] for i in order)  # noqa: E731

    if 3 in mults:
        if rs.is_shorter(order[1], order[0]):
            order.reverse()
        if pa != order[1]:
            return None
        return {(2, 1): 5, (3, 1): 6}.get(coeff())
    if mults.count(2) != 1:
        return None
    k = mults.index(2)
    if n == 4 and k == 1:
        # F4: put the two long roots first
        if rs.is_shorter(order[0], order[3]):
            order.reverse()
        if coeff() == (1, 1, 2, 2) and pa in order[:2]:
            return 4
        return None
    if k == 0:
        order.reverse()
    elif k != n - 2:
        return None
    if n == 2 and not rs.is_shorter(order[1], order[0]):
        order.reverse()
    last = order[-1]
    if rs.is_shorter(last, order[-2]):
        if coeff() == (1,) * (n - 1) + (2,) and pa != last:
            return 2
        return None
    if coeff() == (2,) * (n - 1) + (1,) and pa == last:
        return 3
    return None


def _tripod(rs: RootSystem, sa: frozenset, sb: frozenset) -> bool:
    """Sigma(sa | sb) is the three-armed tree with the shared arm sa & sb."""
    shared = sa & sb
    union = sa | sb
    if len(shared) < 2 or not (sa - shared) or not (sb - shared):
        return False
    deg = {i: sum(1 for j in rs.neighbors(i) if j in union) for i in union}
    if sum(deg.values()) // 2 != len(union) - 1 or not is_connected(rs, union):
        return False
    hubs = [i for i, d in deg.items() if d == 3]
    if len(hubs) != 1 or any(d > 3 for d in deg.values()):
        return False
    hub = hubs[0]
    if hub not in shared:
        return False
    arms = set(components_of(rs, union - {hub}))
    return arms == {frozenset(shared - {hub}), frozenset(sa - shared), frozenset(sb - shared)}


def _all_ones(alpha, supp) -> bool:
    return all(alpha[i] == 1 for i in supp)


def pair_pattern(rs: RootSystem, first: tuple, second: tuple) -> Optional[str]:
    """Which of D0, D1, E1, D2, E2 the two (root, label) pairs realize, or None."""
    (alpha, pa), (beta, pb) = first, second
    sa, sb = support(alpha), support(beta)
    shared = sa & sb
    if not shared:
        return "D0"
    if len(shared) == 1:
        (d,) = shared
        if not (is_terminal(rs, d, sa) and is_terminal(rs, d, sb)):
            return None
        if pa != d and pb != d:
            return "D1"
        if pa == pb == d:
            a_rest = tuple(a - int(i == d) for i, a in enumerate(alpha))
            b_rest = tuple(b - int(i == d) for i, b in enumerate(beta))
            if rs.is_positive_root(a_rest) and rs.is_positive_root(b_rest):
                return "E1"
        return None
    if _tripod(rs, sa, sb) and _all_ones(alpha, sa) and _all_ones(beta, sb):
        if pa not in shared and pb not in shared:
            return "D2"
        if pa == pb and pa in shared:
            return "E2"
    return None


def check_A(datum: "SphericalDatum") -> Optional[int]:
    """Index of the first root of M violating (A), or None."""
    for i, (alpha, pa) in enumerate(zip(datum.M, datum.pi)):
        if table1_check(datum.rs, alpha, pa) is None:
            return i
    return None


def check_C(datum: "SphericalDatum") -> bool:
    return _first_C_violation(datum) is None


def _first_C_violation(datum: "SphericalDatum") -> Optional[int]:
    supps = [support(a) for a in datum.M]
    for i, s in enumerate(supps):
        others = frozenset().union(*(t for j, t in enumerate(supps) if j != i))
        if s <= others:
            return i
    return None


def check_T(full: "FullDatum") -> bool:
    """<Ker tau> & <Pi_0> equals the span of differences of equivalent roots of M."""
    datum = full.datum
    n = datum.rs.rank
    pi0 = [tuple(int(i == j) for j in range(n)) for i in sorted(datum.pi0)]
    lhs = span_intersection(full.ker_tau.basis, pi0, n)
    return span_basis(lhs, n) == span_basis(datum.differences(), n)


@dataclass
class ValidationReport:
    conditions: dict = field(default_factory=dict)  # name -> True/False/None (skipped)
    patterns: dict = field(default_factory=dict)  # (i, j) -> pattern or None
    table_rows: dict = field(default_factory=dict)  # i -> shape id of the admissible pair
    witness: Optional[str] = None
    failed: Optional[str] = None

    @property
    def valid(self) -> bool:
        return all(v is not False for v in self.conditions.values())

    def fail(self, cond: str, witness: str) -> None:
        self.conditions[cond] = False
        if self.failed is None:
            self.failed, self.witness = cond, witness


def _name(alpha) -> str:
    return "+".join((f"{k}*" if k > 1 else "") + f"alpha{i + 1}" for i, k in enumerate(alpha) if k) or "0"


def validate(data) -> ValidationReport:
    """Check a SphericalDatum or FullDatum against all classification conditions."""
    from .datum import FullDatum

    full = data if isinstance(data, FullDatum) else None
    datum = full.datum if full is not None else data
    rs = datum.rs
    rep = ValidationReport()

    rep.conditions["structure"] = True
    for alpha in datum.M:
        if not rs.is_positive_root(alpha):
            rep.fail("structure", f"{alpha} is not a positive root")
    if full is not None:
        from .lattice import is_primitive

        if not is_primitive(full.ker_tau):
            rep.fail("structure", "Ker tau is not a primitive sublattice")
        derived = full.derived_equiv()
        if derived != datum.equiv:
            rep.fail("structure", "declared equivalence disagrees with Ker tau")
    if rep.conditions["structure"] is False:
        for c in ("A", "D", "E", "C", "T"):
            rep.conditions.setdefault(c, None)
        return rep

    rep.conditions["A"] = True
    for i, (alpha, pa) in enumerate(zip(datum.M, datum.pi)):
        row = table1_check(rs, alpha, pa)
        rep.table_rows[i] = row
        if row is None:
            rep.fail("A", f"({_name(alpha)}, alpha{pa + 1}) is not an admissible pair")

    rep.conditions["D"] = True
    rep.conditions["E"] = True
    # (C) is the cheapest test, so it supplies the witness when several fail
    bad = _first_C_violation(datum)
    rep.conditions["C"] = bad is None
    if bad is not None:
        rep.fail("C", f"support of {_name(datum.M[bad])} is covered by the other roots of M")

    block = datum.block_of()
    for i, j in combinations(range(len(datum.M)), 2):
        pat = pair_pattern(rs, (datum.M[i], datum.pi[i]), (datum.M[j], datum.pi[j]))
        rep.patterns[(i, j)] = pat
        pair = f"{_name(datum.M[i])}, {_name(datum.M[j])}"
        if block[i] == block[j]:
            if pat not in EQUIVALENT_OK:
                rep.fail("E", f"equivalent pair ({pair}) realizes none of D0, D1, E1, D2, E2")
        elif pat not in INEQUIVALENT_OK:
            rep.fail("D", f"inequivalent pair ({pair}) realizes none of D0, D1, D2")

    if full is None:
        rep.conditions["T"] = None
    else:
        rep.conditions["T"] = True
        if not check_T(full):
            rep.fail("T", "<Ker tau> & <Pi_0> differs from the span of differences of equivalent roots")
    return rep


def conditions_ADEC(datum: "SphericalDatum") -> bool:
    rep = validate(datum)
    return all(rep.conditions.get(c) for c in ("structure", "A", "D", "E", "C"))

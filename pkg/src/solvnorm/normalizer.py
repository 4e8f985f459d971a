"""Structure of N_G(H) for a connected solvable spherical subgroup H.

N_G(H) is generated by A (characters in L trivial), N, and one Weyl
representative per root of P_S. A/S is diagonalizable with character group
Ker tau / L and is reported as (torus rank, torsion invariant factors).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .classifier import validate
from .datum import (
    ActiveSet,
    FullDatum,
    SphericalDatum,
    character_ambient,
    expand_active_set,
    regular_roots,
)
from .errors import ConsistencyError, InvalidDatum
from .lattice import IntegerLattice, quotient_invariants, saturate, saturate_within
from .rootsys import is_connected, is_terminal, pairing, reflect, support


def relation_lattices(full: FullDatum, aset: Optional[ActiveSet] = None) -> tuple[IntegerLattice, IntegerLattice]:
    """(L, L0): differences of equivalent roots of M, and its saturation in X(T)."""
    amb = character_ambient(full.rs)
    L = IntegerLattice.from_generators(amb, full.datum.differences())
    aset = aset or expand_active_set(full)
    via_psi = IntegerLattice.from_generators(
        amb, [tuple(a - b for a, b in zip(c[0], x)) for c in aset.classes for x in c[1:]]
    )
    if via_psi != L:
        raise ConsistencyError(f"L from M ({L}) differs from L from Psi ({via_psi})")
    return L, saturate(L)


def compute_P_definition(full: FullDatum, aset: Optional[ActiveSet] = None) -> frozenset[int]:
    """Regular active simple roots orthogonal to every other active root."""
    rs = full.rs
    aset = aset or expand_active_set(full)
    reg = regular_roots(aset)
    out = set()
    for i, e in enumerate(rs.simple_roots):
        if e in reg and all(pairing(rs, e, b) == 0 for b in aset.psi if b != e):
            out.add(i)
    return frozenset(out)


def _disconnected(rs, alpha: int, nodes) -> bool:
    return not is_connected(rs, set(nodes) | {alpha})


def compute_P_criterion(datum: SphericalDatum) -> frozenset[int]:
    """P decided from (M, pi, ~) alone by the two-case criterion."""
    rs = datum.rs
    block = datum.block_of()
    M = datum.M
    out = set()
    for a, e in enumerate(rs.simple_roots):
        if e in M:
            i = M.index(e)
            others = [j for j in range(len(M)) if j != i]
            if all(block[j] != block[i] for j in others) and all(
                _disconnected(rs, a, support(M[j])) for j in others
            ):
                out.add(a)
            continue
        for i, beta in enumerate(M):
            sb = support(beta)
            if not (
                all(beta[k] == 1 for k in sb)
                and a in sb
                and is_terminal(rs, a, sb)
                and datum.pi[i] != a
                and any(rs.edge_multiplicity(a, k) == 2 and rs.is_shorter(a, k) for k in sb)
            ):
                continue
            if all(_disconnected(rs, a, support(M[j])) for j in range(len(M)) if j != i):
                out.add(a)
                break
    return frozenset(out)


def reflect_lattice(lat: IntegerLattice, delta: int, rs) -> IntegerLattice:
    return IntegerLattice.from_generators(lat.ambient, [reflect(rs, delta, b) for b in lat.basis])


def compute_P_S(full: FullDatum, P) -> frozenset[int]:
    return frozenset(d for d in P if reflect_lattice(full.ker_tau, d, full.rs) == full.ker_tau)


@dataclass(frozen=True)
class Quotient:
    """T^torus_rank x Z/d1 x ... x (Z/2)^two_torsion_rank."""

    torus_rank: int
    torsion: tuple[int, ...]
    two_torsion_rank: int

    def as_dict(self) -> dict:
        return {"torus_rank": self.torus_rank, "torsion": list(self.torsion), "two_torsion_rank": self.two_torsion_rank}

    def __str__(self) -> str:
        parts = []
        if self.torus_rank:
            parts.append(f"T^{self.torus_rank}")
        parts += [f"Z/{d}" for d in self.torsion]
        if self.two_torsion_rank == 1:
            parts.append("Z/2")
        elif self.two_torsion_rank > 1:
            parts.append(f"(Z/2)^{self.two_torsion_rank}")
        return " × ".join(parts) or "1"


@dataclass(frozen=True)
class NormalizerReport:
    full: FullDatum
    psi: tuple
    labels: dict
    classes: tuple
    L: IntegerLattice
    L0: IntegerLattice
    component_group_L: tuple[int, ...]
    P: frozenset[int]
    P_S: frozenset[int]
    dims: dict
    quotient_NH: Quotient
    quotient_components: Quotient
    generators: tuple[str, ...]
    regular: frozenset = field(default_factory=frozenset)

    @property
    def r(self) -> int:
        return len(self.P_S)


def normalizer_report(full: FullDatum, check: bool = True) -> NormalizerReport:
    if check:
        rep = validate(full)
        if not rep.valid:
            raise InvalidDatum(f"condition {rep.failed} fails: {rep.witness}", rep)
    rs = full.rs
    aset = expand_active_set(full)
    L, L0 = relation_lattices(full, aset)
    P = compute_P_criterion(full.datum)
    P_def = compute_P_definition(full, aset)
    if P != P_def:
        raise ConsistencyError(f"P by criterion {sorted(P)} differs from P by definition {sorted(P_def)}")
    P_S = compute_P_S(full, P)
    r = len(P_S)
    comp = tuple(quotient_invariants(L0, L))
    kt = full.ker_tau
    torsion = tuple(quotient_invariants(saturate_within(L, kt), L))
    n = rs.rank
    dims = {
        "T": n,
        "S": n - kt.rank,
        "A0": n - L.rank,
        "m": aset.m,
        "N": len(rs.positive_roots) - aset.m,
    }
    dims["H"] = dims["S"] + dims["N"]
    dims["N_G(H)0"] = dims["A0"] + dims["N"]
    return NormalizerReport(
        full=full,
        psi=aset.psi,
        labels=aset.labels,
        classes=aset.classes,
        L=L,
        L0=L0,
        component_group_L=comp,
        P=P,
        P_S=P_S,
        dims=dims,
        quotient_NH=Quotient(kt.rank - L.rank, torsion, r),
        quotient_components=Quotient(0, comp, r),
        generators=("A", "N") + tuple(f"rho_alpha{d + 1}" for d in sorted(P_S)),
        regular=regular_roots(aset),
    )


@dataclass(frozen=True)
class DoubleNormalizerReport:
    stable: bool
    identity_component: NormalizerReport  # report for N_G(H)0 = A0 N
    generators: tuple[str, ...]


def double_normalizer_report(full: FullDatum) -> DoubleNormalizerReport:
    """N_G(N_G(H)) is generated by A, N and rho_delta for delta in P."""
    base = normalizer_report(full)
    sober = FullDatum.with_lattice(full.datum, base.L0)
    inner = normalizer_report(sober)
    gens = ("A", "N") + tuple(f"rho_alpha{d + 1}" for d in sorted(base.P))
    return DoubleNormalizerReport(stable=base.P == base.P_S, identity_component=inner, generators=gens)

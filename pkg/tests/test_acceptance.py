"""Acceptance criteria, one test per criterion.

Each test prints a single ``PASS``/``FAIL`` line. Run with
``pytest tests/test_acceptance.py -v`` or directly with
``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import random
import sys
import time
from itertools import combinations_with_replacement

import pytest

from solvnorm._linalg import rank
from solvnorm.classifier import table1_check, validate
from solvnorm.datum import SphericalDatum, check_sphericity, compute_family, expand_active_set
from solvnorm.enumerator import enumerate_data, sober_torus
from solvnorm.lattice import IntegerLattice, quotient_invariants, standard_ambient
from solvnorm.normalizer import (
    compute_P_criterion,
    compute_P_definition,
    double_normalizer_report,
    normalizer_report,
    relation_lattices,
)
from solvnorm.rootsys import reflect, support
from solvnorm.transforms import elementary_transformation, legal_centers, orbit

from helpers import _det_adj, brute_force_valid, catalog, coset_elementary_divisors, rs, sl3


@pytest.fixture
def emit(capsys):
    """Print one verdict line per criterion, outside pytest's output capture."""

    def _emit(n: int, ok: bool, detail: str) -> None:
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {n}: {detail}")

    return _emit


def _irreducible_upto(rank_limit: int) -> list[str]:
    out = [f"A{n}" for n in range(1, rank_limit + 1)]
    out += [f"B{n}" for n in range(2, rank_limit + 1)]
    out += [f"C{n}" for n in range(3, rank_limit + 1)]
    out += [f"D{n}" for n in range(4, rank_limit + 1)]
    if rank_limit >= 2:
        out.append("G2")
    if rank_limit >= 4:
        out.append("F4")
    return out


def _rank(spec: str) -> int:
    return sum(int(part[1:]) for part in spec.split("x"))


def systems_up_to_rank(limit: int) -> list[str]:
    """All semisimple types of rank <= limit, up to isomorphism of components."""
    irr = _irreducible_upto(limit)
    out = []
    for k in range(1, limit + 1):
        for combo in combinations_with_replacement(irr, k):
            spec = "x".join(combo)
            if _rank(spec) <= limit:
                out.append(spec)
    return out


# 1 --------------------------------------------------------------------------------

def test_criterion_1_sl3_example(emit):
    start = time.perf_counter()
    full = sl3()
    rep = normalizer_report(full)
    dbl = double_normalizer_report(full)
    elapsed = time.perf_counter() - start
    m = full.datum.M
    checks = {
        "Psi = M = {alpha1}": set(rep.psi) == set(m) == {(1, 0)},
        "P = {alpha1}": rep.P == {0},
        "P_S empty": rep.P_S == frozenset(),
        "L = L0 = 0": rep.L.rank == 0 and rep.L0.rank == 0,
        "dim N = 2": rep.dims["N"] == 2,
        "N_G(H)/H is a 1-dim torus": (rep.quotient_NH.torus_rank, rep.quotient_NH.torsion, rep.quotient_NH.two_torsion_rank) == (1, (), 0),
        "not stable": dbl.stable is False,
        "runtime < 1 s": elapsed < 1.0,
    }
    ok = all(checks.values())
    emit(1, ok, f"SL3 example ({elapsed * 1000:.0f} ms); failing: {[k for k, v in checks.items() if not v]}")
    assert ok, checks


# 2 --------------------------------------------------------------------------------

def test_criterion_2_bn_example(emit):
    bad = []
    for n in range(2, 6):
        r = rs(f"B{n}")
        alpha = (1,) * n
        for pa in range(n):
            full = sober_torus(SphericalDatum.make(r, [alpha], [pa]))
            rep = normalizer_report(full)
            if pa == n - 1:
                if rep.P != frozenset():
                    bad.append((n, pa, sorted(rep.P)))
            else:
                q = rep.quotient_NH
                if rep.P != {n - 1} or (q.torus_rank, q.torsion, q.two_torsion_rank) != (0, (), 1):
                    bad.append((n, pa, sorted(rep.P), str(q)))
    emit(2, not bad, f"B2..B5 with M = {{alpha1+...+alphan}}; mismatches: {bad}")
    assert not bad


# 3 --------------------------------------------------------------------------------

def test_criterion_3_a1_torus(emit):
    full = sober_torus(SphericalDatum.make(rs("A1"), [(1,)], [0]))
    rep = normalizer_report(full)
    q = rep.quotient_NH
    ok = rep.P == rep.P_S == {0} and (q.torus_rank, q.torsion, q.two_torsion_rank) == (0, (), 1)
    emit(3, ok, f"A1 adjoint, H = T: P = {sorted(rep.P)}, P_S = {sorted(rep.P_S)}, N_G(H)/H = {q}")
    assert ok


# 4 --------------------------------------------------------------------------------

def test_criterion_4_P_sweep(emit):
    start = time.perf_counter()
    total, mismatches = 0, []
    for spec in ["A2", "A3", "B2", "B3", "C3", "G2"]:
        for lattice in ("adjoint", "simply_connected"):
            for full in enumerate_data(rs(spec, lattice)):
                full = sober_torus(full)
                total += 1
                crit = compute_P_criterion(full.datum)
                defn = compute_P_definition(full)
                if crit != defn:
                    mismatches.append((spec, lattice, full.key()))
    elapsed = time.perf_counter() - start
    ok = not mismatches and total > 0 and elapsed < 300
    emit(4, ok, f"{total} sober data, {len(mismatches)} mismatches, {elapsed:.1f} s")
    assert ok, mismatches[:5]


# 5 --------------------------------------------------------------------------------

def test_criterion_5_family_structure(emit):
    systems = systems_up_to_rank(4)
    pairs, violations = 0, []
    for spec in systems:
        r = rs(spec)
        for a in r.positive_roots:
            sa = support(a)
            for p in sorted(sa):
                if table1_check(r, a, p) is None:
                    continue
                pairs += 1
                fam = compute_family(r, a, p)
                if len(fam) != len(sa):
                    violations.append(("size", spec, a, p))
                if sorted(fam.values()) != sorted(sa):
                    violations.append(("bijection", spec, a, p))
                if rank([list(b) for b in fam], r.rank) != len(sa):
                    violations.append(("span", spec, a, p))
                # containment on the single-root datum {a}: roots of F(a) under b lie in F(b)
                for b, pb in fam.items():
                    sub = compute_family(r, b, pb)
                    if not set(sub) <= set(fam):
                        violations.append(("closure", spec, a, p, b))
        for d in catalog(spec):
            labels = expand_active_set(sober_torus(d)).labels
            for a, pa in labels.items():
                fam = compute_family(r, a, pa)
                for b in labels:
                    if support(b) <= support(a) and b not in fam:
                        violations.append(("containment", spec, d.key(), a, b))
    emit(5, not violations, f"{pairs} table pairs over {len(systems)} systems of rank <= 4; {len(violations)} violations")
    assert not violations, violations[:5]


# 6 --------------------------------------------------------------------------------

def test_criterion_6_classification_consistency(emit):
    problems = []
    sober_count = 0
    try:
        for spec in ["A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "F4", "G2", "A1xB2"]:
            for lattice in ("adjoint", "simply_connected"):
                for full in catalog(spec, lattice, True):
                    sober_count += 1
                    if not validate(full).valid:
                        problems.append(("invalid", spec, full.key()))
                    if not check_sphericity(full):
                        problems.append(("not spherical", spec, full.key()))
        # data outside the catalog are exactly the ones validate rejects
        brute = 0
        for spec in ["A1", "A2", "A3", "B2", "C3", "G2", "A1xA1", "A1xB2"]:
            r = rs(spec)
            accepted = brute_force_valid(r)
            brute += 1
            if accepted != {d.key() for d in catalog(spec)}:
                problems.append(("brute force differs", spec))
    except Exception as exc:  # the criterion demands zero exceptions
        problems.append(("exception", repr(exc)))
    emit(6, not problems, f"{sober_count} sober data spherical and valid; exhaustive rejection check on {brute} systems; problems: {problems[:3]}")
    assert not problems


# 7 --------------------------------------------------------------------------------

def test_criterion_7_transform_laws(emit):
    rng = random.Random(20240607)
    pool = []
    for spec in ["A3", "A4", "B3", "B4", "C3", "D4", "F4", "G2"]:
        for lattice in ("adjoint", "simply_connected"):
            pool += [f for f in catalog(spec, lattice, True) if legal_centers(f)]
    sample = rng.sample(pool, 100)
    failures = []
    for full in sample:
        r = full.rs
        quotients = {str(normalizer_report(m).quotient_NH) for m in orbit(full)}
        if len(quotients) != 1:
            failures.append(("orbit quotient", full.key(), quotients))
        psi = expand_active_set(full).psi
        for d in legal_centers(full):
            e = r.simple_roots[d]
            out = elementary_transformation(full, d)
            expected = {tuple(reflect(r, d, b)) for b in psi if b != e} | {e}
            if set(expand_active_set(out).psi) != expected:
                failures.append(("psi", full.key(), d))
            if elementary_transformation(out, d) != full:
                failures.append(("involution", full.key(), d))
    emit(7, not failures, f"100 sampled data with centers; {len(failures)} failures")
    assert not failures, failures[:5]


# 8 --------------------------------------------------------------------------------

def test_criterion_8_lattice_oracle(emit):
    rng = random.Random(8)
    Z3 = standard_ambient(3)
    full = IntegerLattice.full(Z3)
    done, mismatches, seen_indices = 0, [], set()
    while done < 200:
        b = [[rng.randint(-4, 4) for _ in range(3)] for _ in range(3)]
        if rank(b, 3) < 3:
            continue
        det, _ = _det_adj(b)
        if not 1 <= abs(det) <= 12:
            continue
        done += 1
        seen_indices.add(abs(det))
        snf = quotient_invariants(full, IntegerLattice.from_generators(Z3, b))
        brute = coset_elementary_divisors(b)
        if snf != brute:
            mismatches.append((b, snf, brute))
    emit(8, not mismatches, f"200 sublattices of Z^3, indices {sorted(seen_indices)}; {len(mismatches)} mismatches")
    assert not mismatches, mismatches[:5]


# 9 --------------------------------------------------------------------------------

def test_criterion_9_adjoint_all_ones(emit):
    checked, bad = 0, []
    for spec in systems_up_to_rank(4) + ["A5", "B5", "C5", "D5", "E6"]:
        for d in catalog(spec, "adjoint", False):
            if all(set(a) <= {0, 1} for a in d.M):
                checked += 1
                L, L0 = relation_lattices(sober_torus(d))
                if L != L0:
                    bad.append((spec, d.key()))
    ok = not bad and checked > 0
    emit(9, ok, f"{checked} adjoint data with all-ones maximal roots; L != L0 in {len(bad)}")
    assert ok, bad[:5]


# 10 -------------------------------------------------------------------------------

def test_criterion_10_sober_stability(emit):
    checked, bad = 0, []
    for spec in systems_up_to_rank(3) + ["A4", "B4", "C4", "D4", "F4"]:
        for lattice in ("adjoint", "simply_connected"):
            for full in catalog(spec, lattice, True):
                checked += 1
                rep = normalizer_report(full)
                if rep.P_S != rep.P or not double_normalizer_report(full).stable:
                    bad.append((spec, lattice, full.key()))
    emit(10, not bad, f"{checked} sober data; {len(bad)} with P_S != P or unstable")
    assert not bad, bad[:5]


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))

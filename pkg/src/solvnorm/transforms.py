"""Elementary transformations and conjugacy of standardly embedded subgroups."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional

from .datum import FullDatum, SphericalDatum, compute_family, expand_active_set, regular_roots
from .errors import CenterNotRegularSimple, ConsistencyError, RootSystemMismatch
from .normalizer import reflect_lattice
from .rootsys import reflect


@dataclass(frozen=True)
class TransformStep:
    center: int
    before: FullDatum
    after: FullDatum


def legal_centers(full: FullDatum) -> list[int]:
    """Simple roots that are regular active roots."""
    reg = regular_roots(expand_active_set(full))
    return [i for i, e in enumerate(full.rs.simple_roots) if e in reg]


def transformed_active_roots(full: FullDatum, delta: int) -> dict:
    """Psi' = r_delta(Psi minus delta) plus delta, with labels carried along."""
    rs = full.rs
    aset = expand_active_set(full)
    e = rs.simple_roots[delta]
    if e not in regular_roots(aset):
        raise CenterNotRegularSimple(f"alpha{delta + 1} is not a regular active simple root")
    labels = {e: delta}
    for beta, d in aset.labels.items():
        if beta != e:
            labels[reflect(rs, delta, beta)] = d
    return dict(sorted(labels.items()))


def elementary_transformation(full: FullDatum, delta: int) -> FullDatum:
    rs = full.rs
    labels = transformed_active_roots(full, delta)
    idx = rs.root_index
    psi = set(labels)
    maximal = [a for a in labels if not any(tuple(b - x for b, x in zip(beta, a)) in idx for beta in psi if beta != a)]
    kt = reflect_lattice(full.ker_tau, delta, rs)
    draft = SphericalDatum.make(rs, maximal, [labels[a] for a in maximal])
    out = FullDatum.with_lattice(draft, kt)
    # the new maximal roots must regenerate Psi' with the transported labels
    regen = {}
    for a in out.datum.M:
        regen.update(compute_family(rs, a, labels[a]))
    if regen != labels:
        raise ConsistencyError(f"transformed active roots are not generated by the new maximal roots (center {delta})")
    return out


def orbit(full: FullDatum, with_parents: bool = False):
    """All data reachable by chains of elementary transformations."""
    seen = {full.key(): (full, None, None)}
    queue = deque([full])
    while queue:
        cur = queue.popleft()
        for d in legal_centers(cur):
            nxt = elementary_transformation(cur, d)
            if nxt.key() not in seen:
                seen[nxt.key()] = (nxt, cur.key(), d)
                queue.append(nxt)
    if with_parents:
        return seen
    return [v[0] for v in sorted(seen.values(), key=lambda v: v[0].key())]


def conjugacy_chain(a: FullDatum, b: FullDatum) -> Optional[list[int]]:
    """Centers of a chain of elementary transformations from a to b, or None."""
    if a.rs != b.rs:
        raise RootSystemMismatch("data live in different root systems")
    seen = orbit(a, with_parents=True)
    key = b.key()
    if key not in seen:
        return None
    chain = []
    while seen[key][1] is not None:
        _, parent, d = seen[key]
        chain.append(d)
        key = parent
    return chain[::-1]


def conjugacy_test(a: FullDatum, b: FullDatum) -> bool:
    return conjugacy_chain(a, b) is not None

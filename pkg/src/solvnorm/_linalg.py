"""Exact linear algebra over Q and Z on row-tuple matrices.

Matrices are sequences of rows; vectors are tuples. Nothing here uses floats.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

QVec = tuple[Fraction, ...]
ZVec = tuple[int, ...]


def qvec(v: Sequence) -> QVec:
    return tuple(Fraction(x) for x in v)


def dot(u: Sequence, v: Sequence):
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def rref(rows: Sequence[Sequence], ncols: int | None = None) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; zero rows are dropped."""
    m = [[Fraction(x) for x in r] for r in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        m[r] = [x / p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence], ncols: int | None = None) -> int:
    return len(rref(rows, ncols)[0])


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[list[Fraction]]:
    """Basis of {x : M x = 0} as a list of vectors of length ncols."""
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(red, pivots):
            x[p] = -row[f]
        basis.append(x)
    return basis


def left_nullspace(rows: Sequence[Sequence]) -> list[list[Fraction]]:
    """Basis of {y : y M = 0}."""
    if not rows:
        return []
    ncols = len(rows[0])
    cols = [[rows[i][j] for i in range(len(rows))] for j in range(ncols)]
    return nullspace(cols, len(rows))


def integerize(v: Sequence[Fraction]) -> list[int]:
    """Scale a rational vector to a primitive integer vector."""
    den = lcm(*(Fraction(x).denominator for x in v)) if v else 1
    ints = [int(Fraction(x) * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return [x // g for x in ints] if g > 1 else ints


def inverse(mat: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(mat)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(mat)]
    red, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(red) < n:
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red]


def hnf(rows: Sequence[Sequence[int]], with_transform: bool = False):
    """Row Hermite normal form of an integer matrix.

    Pivots are positive, entries below a pivot vanish and entries above it lie
    in [0, pivot). Zero rows are dropped from H. With ``with_transform`` the
    unimodular U with U M = H' (H' = H padded with the zero rows) is returned
    too, in the same row order as H'.
    """
    m = [list(map(int, r)) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    u = [[int(i == j) for j in range(nrows)] for i in range(nrows)] if with_transform else None

    def combine(i: int, j: int, a: int, b: int, c: int, d: int) -> None:
        # (row_i, row_j) <- (a row_i + b row_j, c row_i + d row_j), ad - bc = +-1
        ri, rj = m[i], m[j]
        m[i] = [a * x + b * y for x, y in zip(ri, rj)]
        m[j] = [c * x + d * y for x, y in zip(ri, rj)]
        if u is not None:
            ui, uj = u[i], u[j]
            u[i] = [a * x + b * y for x, y in zip(ui, uj)]
            u[j] = [c * x + d * y for x, y in zip(ui, uj)]

    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        for i in range(r + 1, nrows):
            if m[i][c] == 0:
                continue
            x, y = m[r][c], m[i][c]
            g, s, t = _xgcd(x, y)
            combine(r, i, s, t, -y // g, x // g)
        if m[r][c] == 0:
            continue
        if m[r][c] < 0:
            m[r] = [-x for x in m[r]]
            if u is not None:
                u[r] = [-x for x in u[r]]
        p = m[r][c]
        for i in range(r):
            q = m[i][c] // p
            if q:
                m[i] = [a - q * b for a, b in zip(m[i], m[r])]
                if u is not None:
                    u[i] = [a - q * b for a, b in zip(u[i], u[r])]
        r += 1
    h = [tuple(row) for row in m[:r]]
    if with_transform:
        return h, [tuple(row) for row in u]
    return h


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with s a + t b = g = gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        return -a, -s0, -t0
    return a, s0, t0


def integer_left_kernel(rows: Sequence[Sequence[int]]) -> list[ZVec]:
    """Z-basis of {x in Z^m : x M = 0} for an m x k integer matrix M."""
    if not rows:
        return []
    h, u = hnf(rows, with_transform=True)
    return [tuple(row) for row in u[len(h):]]


def smith_diagonal(rows: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero invariant factors d1 | d2 | ... of an integer matrix."""
    m = [list(map(int, r)) for r in rows]
    if not m or not m[0]:
        return []
    nr, nc = len(m), len(m[0])
    diag: list[int] = []
    t = 0
    while t < min(nr, nc):
        nonzero = [(abs(m[i][j]), i, j) for i in range(t, nr) for j in range(t, nc) if m[i][j]]
        if not nonzero:
            break
        _, i, j = min(nonzero)
        m[t], m[i] = m[i], m[t]
        for row in m:
            row[t], row[j] = row[j], row[t]
        while True:
            p = m[t][t]
            dirty = False
            for i in range(t + 1, nr):
                q = m[i][t] // p
                if q:
                    m[i] = [a - q * b for a, b in zip(m[i], m[t])]
                if m[i][t]:
                    dirty = True
            for j in range(t + 1, nc):
                q = m[t][j] // p
                if q:
                    for row in m:
                        row[j] -= q * row[t]
                if m[t][j]:
                    dirty = True
            if not dirty:
                # pivot must divide the remaining block
                bad = next(((i, j) for i in range(t + 1, nr) for j in range(t + 1, nc) if m[i][j] % p), None)
                if bad is None:
                    break
                m[t] = [a + b for a, b in zip(m[t], m[bad[0]])]
                continue
            nonzero = [(abs(m[i][j]), i, j) for i in range(t, nr) for j in range(t, nc)
                       if m[i][j] and (i == t or j == t)]
            _, i, j = min(nonzero)
            m[t], m[i] = m[i], m[t]
            for row in m:
                row[t], row[j] = row[j], row[t]
        diag.append(abs(m[t][t]))
        t += 1
    return diag

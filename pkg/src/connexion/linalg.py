"""Exact linear algebra over Q and Z on plain lists of lists."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list[list[Fraction]]


def rref(rows: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the pivot columns (leftmost first)."""
    m = [[Fraction(v) for v in r] for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][col]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col] != 0:
                fac = m[i][col]
                m[i] = [a - fac * b for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def solve(a: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """Basic solution of ``a @ v = b`` (free variables zero), or None."""
    ncols = len(a[0]) if a else 0
    aug = [list(r) + [bv] for r, bv in zip(a, b)]
    red, pivots = rref(aug)
    if ncols in pivots:
        return None
    sol = [Fraction(0)] * ncols
    for row, col in zip(red, pivots):
        sol[col] = row[-1]
    return sol


def nullspace(a: Sequence[Sequence], ncols: int | None = None) -> list[list[Fraction]]:
    """Kernel basis, one vector per free column in increasing column order.

    The vector for free column ``j`` has a 1 in position ``j`` and is zero on
    every column to its right, so the basis is echelon from the right.
    """
    if ncols is None:
        ncols = len(a[0]) if a else 0
    if not a:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    red, pivots = rref(a)
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for j in free:
        v = [Fraction(0)] * ncols
        v[j] = Fraction(1)
        for row, col in zip(red, pivots):
            v[col] = -row[j]
        basis.append(v)
    return basis


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1]) if rows else 0


def hnf(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Row Hermite normal form of an integer matrix, zero rows dropped.

    Pivots are positive and the entries above each pivot lie in [0, pivot).
    Two integer row lattices are equal iff their HNFs are equal.
    """
    m = [list(map(int, r)) for r in rows if any(r)]
    if not m:
        return []
    ncols = len(m[0])
    r = 0
    for col in range(ncols):
        # Euclid down the column until a single nonzero entry remains at row r.
        while True:
            nz = [i for i in range(r, len(m)) if m[i][col] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(m[i][col]))
            m[r], m[piv] = m[piv], m[r]
            done = True
            for i in range(r + 1, len(m)):
                if m[i][col]:
                    q = m[i][col] // m[r][col]
                    m[i] = [a - q * b for a, b in zip(m[i], m[r])]
                    if m[i][col]:
                        done = False
            if done:
                break
        if r < len(m) and m[r][col] != 0:
            if m[r][col] < 0:
                m[r] = [-v for v in m[r]]
            for i in range(r):
                q = m[i][col] // m[r][col]
                if q:
                    m[i] = [a - q * b for a, b in zip(m[i], m[r])]
            r += 1
            if r == len(m):
                break
    return [row for row in m[:r] if any(row)]

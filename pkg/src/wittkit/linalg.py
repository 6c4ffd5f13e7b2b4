"""Small dense exact linear algebra over GF(p)."""

from __future__ import annotations


def rref(rows: list, p: int) -> tuple:
    """Reduced row echelon form in place semantics (returns copy, pivots)."""
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if m[i][c] % p), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = pow(m[r][c], -1, p)
        m[r] = [(v * inv) % p for v in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] % p:
                f = m[i][c]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, pivots


def kernel_basis(rows: list, p: int, ncols: int = None) -> list:
    """Basis vectors of the right kernel {v : M v = 0} over GF(p).

    Deterministic: one basis vector per free column, free-column entry 1.
    """
    if not rows:
        return [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols or 0)]
    ncols = len(rows[0]) if ncols is None else ncols
    m, pivots = rref(rows, p)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for r, pc in enumerate(pivots):
            v[pc] = (-m[r][fc]) % p
        basis.append(v)
    return basis


def rank(rows: list, p: int) -> int:
    return len(rref(rows, p)[1])

"""Exact linear algebra over the prime field F_p.

Matrices are numpy int64 arrays with entries reduced into [0, p).  Every
routine returns fresh arrays; inputs are never modified.
"""
from __future__ import annotations

import numpy as np


def reduce(a, p: int) -> np.ndarray:
    return np.mod(np.asarray(a, dtype=np.int64), p)


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.int64)


def inv(x: int, p: int) -> int:
    return pow(int(x) % p, p - 2, p)


def rref(a, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = reduce(a, p).copy()
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            m[[r, k]] = m[[k, r]]
        m[r] = (m[r] * inv(m[r, c], p)) % p
        col = m[:, c].copy()
        col[r] = 0
        hit = np.nonzero(col)[0]
        if hit.size:
            m[hit] = (m[hit] - np.outer(col[hit], m[r])) % p
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a, p: int) -> int:
    a = np.asarray(a)
    if a.size == 0:
        return 0
    return len(rref(a, p)[1])


def nullspace(a, p: int) -> np.ndarray:
    """Basis of {x : a x = 0} as the rows of the returned array."""
    a = np.asarray(a, dtype=np.int64)
    cols = a.shape[1]
    if a.shape[0] == 0:
        return np.eye(cols, dtype=np.int64)
    m, piv = rref(a, p)
    free = [c for c in range(cols) if c not in set(piv)]
    basis = zeros(len(free), cols)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for r, c in enumerate(piv):
            basis[k, c] = (-m[r, f]) % p
    return basis


def row_basis(a, p: int) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    if a.size == 0:
        return zeros(0, a.shape[1] if a.ndim == 2 else 0)
    m, piv = rref(a, p)
    return m[: len(piv)]


def solve(a, b, p: int):
    """One solution x of a x = b, or None when the system is inconsistent.

    ``b`` may be a vector or a matrix of right-hand sides (as columns).
    """
    a = reduce(a, p)
    b = reduce(b, p)
    vec = b.ndim == 1
    if vec:
        b = b[:, None]
    rows, cols = a.shape
    aug = np.concatenate([a, b], axis=1) if rows else zeros(0, cols + b.shape[1])
    m, piv = rref(aug, p)
    x = zeros(cols, b.shape[1])
    for r, c in enumerate(piv):
        if c >= cols:
            return None
        x[c] = m[r, cols:]
    return x[:, 0] if vec else x


def in_span(rows, v, p: int) -> bool:
    rows = np.asarray(rows, dtype=np.int64)
    if rows.shape[0] == 0:
        return not np.any(reduce(v, p))
    return rank(np.vstack([rows, v]), p) == rank(rows, p)


class Quotient:
    """Coordinates on a subquotient Z/B of F_p^N.

    ``z`` and ``b`` are row bases (b inside z).  ``coords`` maps a vector of z
    to its coordinates in a fixed complement of b, so two vectors are equal
    in Z/B iff their coordinates agree.
    """

    def __init__(self, z, b, p: int):
        self.p = p
        z = row_basis(np.asarray(z, dtype=np.int64).reshape(-1, _width(z, b)), p)
        b = row_basis(np.asarray(b, dtype=np.int64).reshape(-1, z.shape[1]), p)
        self.b = b
        comp = []
        span = b.copy()
        for row in z:
            if not in_span(span, row, p):
                comp.append(row)
                span = np.vstack([span, row])
        self.reps = np.array(comp, dtype=np.int64).reshape(-1, z.shape[1])
        self._basis = np.vstack([self.reps, b]) if b.size else self.reps
        self.dim = self.reps.shape[0]

    def coords(self, v):
        """Coordinates of v (which must lie in Z) on the chosen representatives."""
        if self._basis.shape[0] == 0:
            if np.any(reduce(v, self.p)):
                raise ValueError("vector not in the cycle space")
            return zeros(1, 0)[0]
        x = solve(self._basis.T, reduce(v, self.p), self.p)
        if x is None:
            raise ValueError("vector not in the cycle space")
        return x[: self.dim]

    def is_zero(self, v) -> bool:
        return not np.any(self.coords(v))


def _width(z, b) -> int:
    for a in (z, b):
        a = np.asarray(a)
        if a.ndim == 2:
            return a.shape[1]
        if a.ndim == 1 and a.size:
            return a.shape[0]
    raise ValueError("cannot infer ambient dimension")


def gf2_rank_bits(rows: list[int]) -> int:
    """Rank over F_2 of rows given as Python integers (bitsets)."""
    pivots: dict[int, int] = {}
    r = 0
    for row in rows:
        while row:
            top = row.bit_length() - 1
            if top in pivots:
                row ^= pivots[top]
            else:
                pivots[top] = row
                r += 1
                break
    return r

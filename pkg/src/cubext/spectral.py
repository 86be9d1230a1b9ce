"""Filtered complexes, their multicomplex data and a brute-force spectral sequence.

A filtered complex here is Tot = (+)_r A_r with A_r graded by an internal
degree q (total degree r + q) and a differential D that never raises r.
Writing the component of D from A_r to A_{r-k-1} as a signed h_k gives the
multicomplex: h_0 = delta and, for n >= 1,

    d h_n(i) = sum_{k=1..n} (-1)^k h_{k-1}(i-n+k-1) h_{n-k}(i)

with the Hom differential of ``_chain``.  The sign is
D x = d x + sum_k (-1)^{(k+1) q + k(k-1)/2} h_k x for x in A_r of degree q.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from . import _fp
from ._chain import Cx, HMap


def dict_sign(k: int, q: int) -> int:
    return -1 if ((k + 1) * q + k * (k - 1) // 2) % 2 else 1


@dataclass(eq=False)
class FilteredComplex:
    p: int
    labels: list[tuple[int, int]]  # (filtration r, internal degree q) per basis vector
    D: np.ndarray                  # D[y, x]

    @property
    def size(self) -> int:
        return len(self.labels)

    def total(self, k: int) -> int:
        r, q = self.labels[k]
        return r + q

    def check(self) -> list[str]:
        bad = []
        if np.any(self.D @ self.D % self.p):
            bad.append("D^2 != 0")
        for y, x in zip(*np.nonzero(self.D % self.p)):
            if self.labels[y][0] > self.labels[x][0]:
                bad.append("D raises filtration")
            if self.total(y) != self.total(x) - 1:
                bad.append("D is not of degree -1")
        return bad

    @property
    def filtrations(self) -> list[int]:
        return sorted({r for r, _ in self.labels})

    def to_json(self) -> str:
        return json.dumps({"prime": self.p, "labels": [list(l) for l in self.labels],
                           "D": (self.D % self.p).tolist()})

    @classmethod
    def from_json(cls, text: str) -> "FilteredComplex":
        data = json.loads(text)
        try:
            return cls(int(data["prime"]), [tuple(l) for l in data["labels"]],
                       np.array(data["D"], dtype=np.int64).reshape(len(data["labels"]), -1))
        except (KeyError, ValueError) as exc:
            raise ValueError(f"malformed filtered complex: {exc}") from exc


def random_filtered_complex(rng, p: int = 2, stages: int = 5, depth: int = 2,
                            max_dim: int = 2, pairs: int | None = None) -> FilteredComplex:
    """D = P D0 P^{-1}: D0 pairs off basis vectors across up to 3 filtration
    steps, P is unitriangular and filtration preserving.  Internal degrees lie
    in [-depth, 0]."""
    labels = []
    for r in range(stages):
        for q in range(-depth, 1):
            labels += [(r, q)] * int(rng.integers(0, max_dim + 1))
    n = len(labels)
    tot = [r + q for r, q in labels]
    D0 = _fp.zeros(n, n)
    free = list(rng.permutation(n))
    used = set()
    want = pairs if pairs is not None else n // 3
    made = 0
    for x in free:
        if made >= want or x in used:
            continue
        cands = [y for y in range(n) if y not in used and y != x and tot[y] == tot[x] - 1
                 and 0 <= labels[x][0] - labels[y][0] <= 3]
        if not cands:
            continue
        y = cands[int(rng.integers(0, len(cands)))]
        D0[y, x] = int(rng.integers(1, p))
        used |= {x, y}
        made += 1
    P = np.eye(n, dtype=np.int64)
    for y in range(n):
        for x in range(n):
            if labels[y][0] < labels[x][0] and tot[y] == tot[x]:
                P[y, x] = int(rng.integers(0, p))
    Pinv = _fp.solve(P, np.eye(n, dtype=np.int64), p)
    D = P @ D0 % p @ Pinv % p
    return FilteredComplex(p, labels, D)


@dataclass(eq=False)
class Multicomplex:
    """Complexes A_r and maps h[(r, k)]: A_r -> A_{r-k-1} of degree k."""
    p: int
    A: dict[int, Cx]
    h: dict[tuple[int, int], HMap]
    index: dict[tuple[int, int], list[int]]  # (r, q) -> basis positions in Tot

    def check_relations(self, n_max: int | None = None) -> list[str]:
        bad = []
        for (i, n), hn in sorted(self.h.items()):
            if n == 0 or (n_max is not None and n > n_max):
                continue
            rhs = None
            for k in range(1, n + 1):
                a = self.h.get((i - n + k - 1, k - 1))
                b = self.h.get((i, n - k))
                if a is None or b is None:
                    continue
                term = (a @ b).scale((-1) ** k)
                rhs = term if rhs is None else rhs + term
            if rhs is not None and not (hn.d() - rhs).is_zero():
                bad.append(f"relation fails for h_{n} at {i}")
        return bad


def multicomplex(fc: FilteredComplex) -> Multicomplex:
    p = fc.p
    index: dict[tuple[int, int], list[int]] = {}
    for k, lab in enumerate(fc.labels):
        index.setdefault(lab, []).append(k)
    rs = fc.filtrations
    A = {}
    for r in rs:
        qs = sorted(q for (rr, q) in index if rr == r)
        dims = {q: len(index[(r, q)]) for q in qs}
        d = {}
        for q in qs:
            if (r, q - 1) in index:
                d[q] = fc.D[np.ix_(index[(r, q - 1)], index[(r, q)])] % p
        A[r] = Cx(p, dims, d, f"A{r}")
    h = {}
    for r in rs:
        for k in range(0, r - min(rs)):
            tgt = r - k - 1
            if tgt not in A:
                continue
            blocks = {}
            for q in A[r].degrees:
                if (tgt, q + k) in index:
                    blk = fc.D[np.ix_(index[(tgt, q + k)], index[(r, q)])]
                    blocks[q] = dict_sign(k, q) * blk % p
            h[(r, k)] = HMap(A[r], A[tgt], k, blocks)
    return Multicomplex(p, A, h, index)


def from_multicomplex(mc: Multicomplex) -> FilteredComplex:
    labels, pos = [], {}
    for (r, q), idx in sorted(mc.index.items()):
        pos[(r, q)] = list(range(len(labels), len(labels) + len(idx)))
        labels += [(r, q)] * len(idx)
    n = len(labels)
    D = _fp.zeros(n, n)
    for r, X in mc.A.items():
        for q in X.degrees:
            if X.dim(q - 1):
                D[np.ix_(pos[(r, q - 1)], pos[(r, q)])] = X.diff(q)
    for (r, k), hk in mc.h.items():
        for q, blk in hk.blocks.items():
            tgt = (r - k - 1, q + k)
            if tgt in pos and blk.size:
                D[np.ix_(pos[tgt], pos[(r, q)])] = dict_sign(k, q) * blk % mc.p
    return FilteredComplex(mc.p, labels, D % mc.p)


# -- oracle ---------------------------------------------------------------------

@dataclass
class SpectralPage:
    m: int
    dims: dict[tuple[int, int], int]

    def total(self) -> int:
        return sum(self.dims.values())


def _span_dim(rows: list[np.ndarray], width: int, p: int) -> int:
    rows = [r for r in rows if r.shape[0]]
    if not rows:
        return 0
    return _fp.rank(np.vstack(rows).reshape(-1, width), p)


def ss_oracle(fc: FilteredComplex, m_max: int, dual: bool = True) -> list[SpectralPage]:
    """Pages E_0 .. E_{m_max} straight from Z_m / (Z_{m-1} + D Z_{m-1}).

    With ``dual`` the pages are those of Hom(Tot, F_p) keyed (r, s) where a
    functional on (A_r)_q sits at s = -q; differentials go (r, s) -> (r+m, s+m-1).
    Otherwise the pages of Tot itself, keyed (r, q), with d_m: r -> r - m.
    """
    p = fc.p
    if dual:
        filt = [-r for r, q in fc.labels]
        deg = [-(r + q) for r, q in fc.labels]
        D = fc.D.T % p
    else:
        filt = [r for r, q in fc.labels]
        deg = [r + q for r, q in fc.labels]
        D = fc.D % p
    n = len(filt)
    filt, deg = np.array(filt), np.array(deg)
    pmin, pmax = (int(filt.min()), int(filt.max())) if n else (0, 0)

    cache: dict = {}

    def Z(m: int, pp: int, N: int) -> np.ndarray:
        """Rows spanning {x in F_pp C_N : Dx in F_{pp-m}} in ambient coordinates."""
        key = (m, pp, N)
        if key in cache:
            return cache[key]
        cols = [k for k in range(n) if filt[k] <= pp and deg[k] == N]
        if not cols:
            out = _fp.zeros(0, n)
        elif m < 0:
            out = _fp.zeros(len(cols), n)
            for a, k in enumerate(cols):
                out[a, k] = 1
        else:
            bad_rows = [k for k in range(n) if deg[k] == N - 1 and filt[k] > pp - m]
            sub = D[np.ix_(bad_rows, cols)] if bad_rows else _fp.zeros(0, len(cols))
            ns = _fp.nullspace(sub, p) if sub.shape[0] else np.eye(len(cols), dtype=np.int64)
            out = _fp.zeros(ns.shape[0], n)
            out[:, cols] = ns
        cache[key] = out
        return out

    pages = []
    degrees = sorted(set(deg.tolist()))
    for m in range(m_max + 1):
        dims = {}
        for pp in range(pmin, pmax + 1):
            for N in degrees:
                z = Z(m, pp, N)
                if z.shape[0] == 0:
                    continue
                denom_a = Z(m - 1, pp - 1, N)
                src = Z(m - 1, pp + m - 1, N + 1)
                denom_b = (src @ D.T) % p if src.shape[0] else _fp.zeros(0, n)
                dim = z.shape[0] - _span_dim([denom_a, denom_b], n, p)
                if dim:
                    if dual:
                        r = -pp
                        s = N + r  # N = -(r + q), s = -q
                        dims[(r, s)] = dim
                    else:
                        dims[(pp, N - pp)] = dim
        pages.append(SpectralPage(m, dims))
    return pages


def total_homology(fc: FilteredComplex) -> dict[int, int]:
    p = fc.p
    tot = [fc.total(k) for k in range(fc.size)]
    out = {}
    for N in sorted(set(tot)):
        cols = [k for k in range(fc.size) if tot[k] == N]
        below = [k for k in range(fc.size) if tot[k] == N - 1]
        above = [k for k in range(fc.size) if tot[k] == N + 1]
        rk_out = _fp.rank(fc.D[np.ix_(below, cols)], p) if below else 0
        rk_in = _fp.rank(fc.D[np.ix_(cols, above)], p) if above else 0
        out[N] = len(cols) - rk_out - rk_in
    return out


def pages_tsv(pages) -> str:
    lines = [f"{pg.m}\t{r}\t{s}\t{k}" for pg in pages for (r, s), k in sorted(pg.dims.items())]
    return "\n".join(lines) + "\n"

"""Chain complexes of F_p-vector spaces and their Hom complexes.

Hom_n(X, Y) consists of families X_q -> Y_{q+n}; the differential is
d(H) = d_Y H - (-1)^n H d_X, so composition satisfies the Leibniz rule
d(GH) = d(G) H + (-1)^{|G|} G d(H).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import _fp


@dataclass(frozen=True, eq=False)
class Cx:
    """Bounded chain complex: ``dims[q]`` and ``d[q]: C_q -> C_{q-1}``."""
    p: int
    dims: dict
    d: dict = field(default_factory=dict)
    name: str = ""

    def dim(self, q: int) -> int:
        return self.dims.get(q, 0)

    @cached_property
    def degrees(self) -> list[int]:
        return sorted(q for q, n in self.dims.items() if n)

    def diff(self, q: int) -> np.ndarray:
        m = self.d.get(q)
        if m is None:
            return _fp.zeros(self.dim(q - 1), self.dim(q))
        return m

    def check(self) -> bool:
        return all(not np.any(self.diff(q - 1) @ self.diff(q) % self.p) for q in self.degrees)

    def suspend(self) -> "Cx":
        """(Sigma X)_q = X_{q-1} with differential -d."""
        return Cx(self.p, {q + 1: n for q, n in self.dims.items()},
                  {q + 1: (-m) % self.p for q, m in self.d.items()}, f"S{self.name}")

    def homology_dims(self) -> dict[int, int]:
        out = {}
        for q in self.degrees:
            z = self.dim(q) - _fp.rank(self.diff(q), self.p)
            b = _fp.rank(self.diff(q + 1), self.p)
            out[q] = z - b
        return out


def point(p: int, q: int = 0) -> Cx:
    """F_p concentrated in degree q."""
    return Cx(p, {q: 1}, {}, f"F{p}[{q}]")


@dataclass(frozen=True, eq=False)
class HMap:
    """Element of Hom_n(source, target): ``blocks[q]`` is target_{q+n} x source_q."""
    source: Cx
    target: Cx
    n: int
    blocks: dict

    @property
    def p(self) -> int:
        return self.source.p

    def block(self, q: int) -> np.ndarray:
        b = self.blocks.get(q)
        if b is None:
            return _fp.zeros(self.target.dim(q + self.n), self.source.dim(q))
        return b

    def _combine(self, other: "HMap", a: int, b: int) -> "HMap":
        if other.n != self.n or other.source is not self.source or other.target is not self.target:
            raise ValueError("adding maps from different Hom groups")
        qs = set(self.blocks) | set(other.blocks)
        return HMap(self.source, self.target, self.n,
                    {q: (a * self.block(q) + b * other.block(q)) % self.p for q in qs})

    def __add__(self, other):
        return self._combine(other, 1, 1)

    def __sub__(self, other):
        return self._combine(other, 1, -1)

    def scale(self, c: int) -> "HMap":
        return HMap(self.source, self.target, self.n, {q: (c * b) % self.p for q, b in self.blocks.items()})

    def __neg__(self):
        return self.scale(-1)

    def __matmul__(self, other: "HMap") -> "HMap":
        """self after other."""
        if other.target is not self.source:
            raise ValueError("maps are not composable")
        blocks = {}
        for q in other.source.degrees:
            blocks[q] = self.block(q + other.n) @ other.block(q) % self.p
        return HMap(other.source, self.target, self.n + other.n, blocks)

    def d(self) -> "HMap":
        s = (-1) ** self.n
        blocks = {}
        for q in self.source.degrees:
            a = self.target.diff(q + self.n) @ self.block(q)
            b = self.block(q - 1) @ self.source.diff(q)
            blocks[q] = (a - s * b) % self.p
        return HMap(self.source, self.target, self.n - 1, blocks)

    def is_zero(self) -> bool:
        return not any(np.any(b % self.p) for b in self.blocks.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, HMap):
            return NotImplemented
        return (self.n == other.n and self.source is other.source
                and self.target is other.target and (self - other).is_zero())

    __hash__ = None

    def suspend(self) -> "HMap":
        """Sigma h = (-1)^{|h|} h between suspended complexes (caller supplies them)."""
        return self.scale((-1) ** self.n)

    def retarget(self, source: Cx, target: Cx, n: int | None = None, shift: int = 0) -> "HMap":
        """Same matrices viewed between other complexes (degree shifted)."""
        return HMap(source, target, self.n if n is None else n,
                    {q + shift: b for q, b in self.blocks.items()})


def zero(source: Cx, target: Cx, n: int) -> HMap:
    return HMap(source, target, n, {})


def identity(X: Cx) -> HMap:
    return HMap(X, X, 0, {q: np.eye(X.dim(q), dtype=np.int64) for q in X.degrees})


class HomSpace:
    """Hom_n(X, Y) as F_p^N, with cycles, boundaries and homology coordinates."""

    def __init__(self, X: Cx, Y: Cx, n: int):
        self.X, self.Y, self.n, self.p = X, Y, n, X.p
        self.slots = [(q, Y.dim(q + n), X.dim(q)) for q in X.degrees if Y.dim(q + n)]
        self.size = sum(r * c for _, r, c in self.slots)

    def flatten(self, h: HMap) -> np.ndarray:
        if h.n != self.n:
            raise ValueError("degree mismatch")
        if not self.slots:
            return _fp.zeros(1, 0)[0]
        return np.concatenate([h.block(q).reshape(-1) for q, _, _ in self.slots]) % self.p

    def unflatten(self, v) -> HMap:
        v = np.asarray(v, dtype=np.int64)
        blocks, pos = {}, 0
        for q, r, c in self.slots:
            blocks[q] = v[pos:pos + r * c].reshape(r, c) % self.p
            pos += r * c
        return HMap(self.X, self.Y, self.n, blocks)

    def basis(self):
        for k in range(self.size):
            e = _fp.zeros(1, self.size)[0]
            e[k] = 1
            yield self.unflatten(e)

    def random(self, rng) -> HMap:
        return self.unflatten(rng.integers(0, self.p, self.size))

    @cached_property
    def d_matrix(self) -> np.ndarray:
        """Matrix of d: Hom_n -> Hom_{n-1}."""
        tgt = HomSpace(self.X, self.Y, self.n - 1)
        cols = [tgt.flatten(b.d()) for b in self.basis()]
        if not cols:
            return _fp.zeros(tgt.size, 0)
        return np.array(cols, dtype=np.int64).T.reshape(tgt.size, self.size)

    @cached_property
    def cycles(self) -> np.ndarray:
        if self.size == 0:
            return _fp.zeros(0, 0)
        m = self.d_matrix
        if m.shape[0] == 0:
            return np.eye(self.size, dtype=np.int64)
        return _fp.nullspace(m, self.p)

    @cached_property
    def boundaries(self) -> np.ndarray:
        up = HomSpace(self.X, self.Y, self.n + 1)
        m = up.d_matrix
        if m.size == 0:
            return _fp.zeros(0, self.size)
        return _fp.row_basis(m.T, self.p)

    @cached_property
    def homology(self) -> _fp.Quotient | None:
        if self.size == 0 or self.cycles.shape[0] == 0:
            return None
        return _fp.Quotient(self.cycles, self.boundaries.reshape(-1, self.size), self.p)

    @property
    def homology_dim(self) -> int:
        return self.homology.dim if self.homology else 0

    def is_cycle(self, h: HMap) -> bool:
        return h.d().is_zero()

    def class_of(self, h: HMap) -> np.ndarray:
        """Coordinates of the homology class of the cycle h."""
        if not self.is_cycle(h):
            raise ValueError("not a cycle")
        if self.homology is None:
            return _fp.zeros(1, 0)[0]
        return self.homology.coords(self.flatten(h))

    def representative(self, coords) -> HMap:
        if self.homology is None:
            return zero(self.X, self.Y, self.n)
        v = np.asarray(coords, dtype=np.int64) @ self.homology.reps % self.p
        return self.unflatten(v)

    def random_cycle(self, rng) -> HMap:
        z = self.cycles
        if z.shape[0] == 0:
            return zero(self.X, self.Y, self.n)
        return self.unflatten(rng.integers(0, self.p, z.shape[0]) @ z % self.p)

    def random_boundary(self, rng) -> HMap:
        b = self.boundaries
        if b.shape[0] == 0:
            return zero(self.X, self.Y, self.n)
        return self.unflatten(rng.integers(0, self.p, b.shape[0]) @ b % self.p)

    def solve_d(self, target: HMap) -> HMap | None:
        """Some H in Hom_n with d(H) = target, or None."""
        if target.n != self.n - 1:
            raise ValueError("degree mismatch")
        tgt = HomSpace(self.X, self.Y, self.n - 1)
        rhs = tgt.flatten(target)
        if self.size == 0:
            return zero(self.X, self.Y, self.n) if not np.any(rhs) else None
        if tgt.size == 0:
            return zero(self.X, self.Y, self.n)
        x = _fp.solve(self.d_matrix, rhs, self.p)
        return None if x is None else self.unflatten(x)

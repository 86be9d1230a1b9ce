"""Graded algebras over F_p, modules, minimal resolutions and Ext.

Conventions
-----------
* Algebras are connected (the unit is the only degree-0 basis element) and
  given by structure constants; ``complete`` means every product of total
  degree <= ``max_degree`` is known and nothing lives above it.
* Modules are left modules; ``act(a, t)`` is the matrix of a: M_t -> M_{t+|a|}
  acting on column vectors.
* A map of internal degree t from a free module to Y sends a generator g to
  Y_{|g| - t}.  Ext^{r,t} is the cohomology of these Hom groups, so for
  Y = F_p it counts generators of A_r in degree t when A is minimal.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from importlib import resources
from itertools import product as iproduct
from math import comb
from pathlib import Path

import numpy as np

from . import _fp


class TruncationError(ValueError):
    pass


class DegreeError(ValueError):
    pass


# -- algebras -------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class GradedAlgebra:
    p: int
    max_degree: int
    names: tuple[str, ...]
    degrees: tuple[int, ...]
    table: dict  # (a, b) -> {c: coeff}, indices into names
    complete: bool = True
    name: str = ""

    def __post_init__(self):
        if self.degrees[0] != 0 or self.degrees.count(0) != 1:
            raise ValueError("algebra must be connected with unit at index 0")

    @property
    def dim(self) -> int:
        return len(self.names)

    @cached_property
    def by_degree(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for i, d in enumerate(self.degrees):
            out.setdefault(d, []).append(i)
        return out

    @property
    def top(self) -> int:
        return max(self.degrees)

    def basis(self, t: int) -> list[int]:
        return self.by_degree.get(t, [])

    def mul(self, a: int, b: int) -> dict[int, int]:
        if a == 0:
            return {b: 1}
        if b == 0:
            return {a: 1}
        if self.degrees[a] + self.degrees[b] > self.max_degree:
            if self.complete:
                return {}
            raise TruncationError(f"product {self.names[a]}*{self.names[b]} beyond truncation")
        return self.table.get((a, b), {})

    def index(self, name: str) -> int:
        return self.names.index(name)

    def check(self) -> list[str]:
        """Unit, degree additivity and associativity on all basis triples."""
        bad = []
        n = self.dim
        for (a, b), res in self.table.items():
            for c, v in res.items():
                if v % self.p and self.degrees[c] != self.degrees[a] + self.degrees[b]:
                    bad.append(f"degree of {self.names[a]}*{self.names[b]}")
        for a, b, c in iproduct(range(1, n), repeat=3):
            if self.degrees[a] + self.degrees[b] + self.degrees[c] > self.max_degree:
                continue
            if _vec(self._mul_vec(self.mul(a, b), c, right=True), self.p) != \
                    _vec(self._mul_vec(self.mul(b, c), a, right=False), self.p):
                bad.append(f"associativity at ({self.names[a]}, {self.names[b]}, {self.names[c]})")
        return bad

    def _mul_vec(self, x: dict, c: int, right: bool) -> dict:
        out: dict[int, int] = {}
        for e, v in x.items():
            for f, w in (self.mul(e, c) if right else self.mul(c, e)).items():
                out[f] = (out.get(f, 0) + v * w) % self.p
        return out

    def to_json(self) -> str:
        prods = [[self.names[a], self.names[b], [[self.names[c], v] for c, v in sorted(r.items())]]
                 for (a, b), r in sorted(self.table.items()) if r]
        return json.dumps({
            "name": self.name, "prime": self.p, "max_degree": self.max_degree,
            "complete": self.complete,
            "basis": [[n, d] for n, d in zip(self.names, self.degrees)],
            "products": prods,
        }, indent=1)

    @classmethod
    def from_json(cls, text: str) -> "GradedAlgebra":
        data = json.loads(text)
        names = tuple(b[0] for b in data["basis"])
        degs = tuple(int(b[1]) for b in data["basis"])
        idx = {n: i for i, n in enumerate(names)}
        table: dict = {}
        for a, b, res in data.get("products", []):
            table[(idx[a], idx[b])] = {idx[c]: int(v) % data["prime"] for c, v in res}
        return cls(int(data["prime"]), int(data["max_degree"]), names, degs, table,
                   bool(data.get("complete", True)), data.get("name", ""))


def _vec(d: dict, p: int) -> dict:
    return {k: v % p for k, v in d.items() if v % p}


def exterior(p: int = 2, degree: int = 1) -> GradedAlgebra:
    """Lambda(x) with |x| = degree."""
    return GradedAlgebra(p, degree, ("1", "x"), (0, degree), {(1, 1): {}}, True, "exterior")


def truncated_polynomial(p: int = 2, degree: int = 2, height: int = 2) -> GradedAlgebra:
    """F_p[x]/x^height with |x| = degree."""
    names = tuple(["1"] + [f"x^{k}" for k in range(1, height)])
    degs = tuple(k * degree for k in range(height))
    table = {}
    for a in range(1, height):
        for b in range(1, height):
            table[(a, b)] = {a + b: 1} if a + b < height else {}
    return GradedAlgebra(p, degree * (height - 1), names, degs, table, True, "truncated_polynomial")


# Milnor basis products at p = 2 --------------------------------------------------

def milnor_product(r: tuple[int, ...], s: tuple[int, ...]) -> dict[tuple[int, ...], int]:
    """Sq(r) * Sq(s) in the Milnor basis, coefficients mod 2."""
    r, s = tuple(r), tuple(s)
    rows, cols = len(r), len(s)
    out: dict[tuple[int, ...], int] = {}

    def row_choices(ri):
        # x_{i,1..cols} with sum 2^j x_ij <= ri
        def rec(j, rem):
            if j > cols:
                yield ()
                return
            for x in range(rem // (1 << j) + 1):
                for tail in rec(j + 1, rem - x * (1 << j)):
                    yield (x,) + tail
        yield from rec(1, ri)

    for choice in iproduct(*(list(row_choices(ri)) for ri in r)):
        x = {}
        ok = True
        for i, rowc in enumerate(choice, start=1):
            x[(i, 0)] = r[i - 1] - sum(v << j for j, v in enumerate(rowc, start=1))
            for j, v in enumerate(rowc, start=1):
                x[(i, j)] = v
        for j in range(1, cols + 1):
            x0 = s[j - 1] - sum(x[(i, j)] for i in range(1, rows + 1))
            if x0 < 0:
                ok = False
                break
            x[(0, j)] = x0
        if not ok:
            continue
        t, coeff = [], 1
        for nn in range(1, rows + cols + 1):
            parts = [x.get((i, nn - i), 0) for i in range(0, nn + 1)]
            acc = 0
            for v in parts:
                if acc & v:
                    coeff = 0
                    break
                acc |= v
            t.append(acc)
            if not coeff:
                break
        if not coeff:
            continue
        while t and t[-1] == 0:
            t.pop()
        key = tuple(t)
        out[key] = out.get(key, 0) ^ 1
    return {k: v for k, v in out.items() if v}


def milnor_degree(r: tuple[int, ...]) -> int:
    return sum(v * ((1 << (i + 1)) - 1) for i, v in enumerate(r))


def adem(a: int, b: int) -> dict[tuple[int, int], int]:
    """Sq^a Sq^b for 0 < a < 2b as a sum of admissible Sq^u Sq^v (v may be 0)."""
    out: dict[tuple[int, int], int] = {}
    for c in range(a // 2 + 1):
        if b - c - 1 >= 0 and comb(b - c - 1, a - 2 * c) % 2:
            key = (a + b - c, c)
            out[key] = out.get(key, 0) ^ 1
    return {k: v for k, v in out.items() if v}


def a1_algebra() -> GradedAlgebra:
    """A(1) = <Sq1, Sq2> in the Milnor basis Sq(r1, r2), r1 < 4, r2 < 2."""
    keys = sorted(((r1, r2) for r1 in range(4) for r2 in range(2)), key=lambda k: (milnor_degree(k), k))
    norm = [tuple(k[: 2 if k[1] else (1 if k[0] else 0)]) for k in keys]
    names = tuple("1" if not k else f"Sq({','.join(map(str, k))})" for k in norm)
    idx = {k: i for i, k in enumerate(norm)}
    table = {}
    for a, ka in enumerate(norm):
        for b, kb in enumerate(norm):
            if a == 0 or b == 0:
                continue
            res = milnor_product(ka, kb)
            if any(k not in idx for k in res):
                raise ValueError("A(1) is not closed under the Milnor product")
            table[(a, b)] = {idx[k]: 1 for k in res}
    return GradedAlgebra(2, 6, names, tuple(milnor_degree(k) for k in norm), table, True, "A(1)")


def load_algebra(name_or_path: str) -> GradedAlgebra:
    """Shipped sample (``exterior``, ``truncated_polynomial``, ``a1``) or a JSON path."""
    path = Path(name_or_path)
    if path.exists():
        return GradedAlgebra.from_json(path.read_text())
    res = resources.files("cubext") / "data" / f"{name_or_path}.json"
    return GradedAlgebra.from_json(res.read_text())


# -- modules --------------------------------------------------------------------

@dataclass(eq=False)
class GradedModule:
    alg: GradedAlgebra
    dims: dict[int, int]
    action: dict = field(default_factory=dict)  # (a, t) -> matrix
    name: str = ""

    def dim(self, t: int) -> int:
        return self.dims.get(t, 0)

    @property
    def degrees(self) -> list[int]:
        return sorted(t for t, d in self.dims.items() if d)

    @property
    def top(self) -> int:
        return max(self.degrees, default=0)

    @property
    def bottom(self) -> int:
        return min(self.degrees, default=0)

    def act(self, a: int, t: int) -> np.ndarray:
        if a == 0:
            return np.eye(self.dim(t), dtype=np.int64)
        m = self.action.get((a, t))
        if m is None:
            return _fp.zeros(self.dim(t + self.alg.degrees[a]), self.dim(t))
        return m

    def check(self) -> list[str]:
        """Associativity a(bm) = (ab)m on all basis elements."""
        bad, p = [], self.alg.p
        for t in self.degrees:
            for a in range(1, self.alg.dim):
                for b in range(1, self.alg.dim):
                    lhs = self.act(a, t + self.alg.degrees[b]) @ self.act(b, t) % p
                    rhs = _fp.zeros(*lhs.shape)
                    for c, v in self.alg.mul(a, b).items():
                        rhs = (rhs + v * self.act(c, t)) % p
                    if not np.array_equal(lhs, rhs):
                        bad.append(f"action not associative for {self.alg.names[a]}, {self.alg.names[b]} at {t}")
        return bad


def trivial_module(alg: GradedAlgebra, degree: int = 0) -> GradedModule:
    return GradedModule(alg, {degree: 1}, {}, f"F{alg.p}[{degree}]")


def zero_module(alg: GradedAlgebra) -> GradedModule:
    return GradedModule(alg, {}, {}, "0")


@dataclass(frozen=True, eq=False)
class FreeModule:
    alg: GradedAlgebra
    gens: tuple[int, ...]

    def basis(self, t: int) -> list[tuple[int, int]]:
        return [(j, b) for j, g in enumerate(self.gens) for b in self.alg.basis(t - g)]

    def dim(self, t: int) -> int:
        return len(self.basis(t))

    def index(self, t: int) -> dict[tuple[int, int], int]:
        return {x: k for k, x in enumerate(self.basis(t))}

    def act(self, a: int, t: int) -> np.ndarray:
        src, tgt = self.basis(t), self.index(t + self.alg.degrees[a])
        m = _fp.zeros(len(tgt), len(src))
        for col, (j, b) in enumerate(src):
            for c, v in self.alg.mul(a, b).items():
                m[tgt[(j, c)], col] = (m[tgt[(j, c)], col] + v) % self.alg.p
        return m

    def generator(self, j: int) -> np.ndarray:
        v = _fp.zeros(1, self.dim(self.gens[j]))[0]
        v[self.index(self.gens[j])[(j, 0)]] = 1
        return v

    def as_module(self, t_max: int) -> GradedModule:
        dims = {t: self.dim(t) for t in range(min(self.gens, default=0), t_max + 1)}
        action = {(a, t): self.act(a, t) for t in dims for a in range(1, self.alg.dim)
                  if t + self.alg.degrees[a] <= t_max}
        return GradedModule(self.alg, dims, action, "free")


def _act(M, a: int, t: int) -> np.ndarray:
    return M.act(a, t)


@dataclass(frozen=True, eq=False)
class FreeMap:
    """A-linear map from a free module, given on generators."""
    source: FreeModule
    target: object  # FreeModule or GradedModule
    images: tuple[np.ndarray, ...]

    def matrix(self, t: int) -> np.ndarray:
        p = self.source.alg.p
        src = self.source.basis(t)
        m = _fp.zeros(self.target.dim(t), len(src))
        for col, (j, b) in enumerate(src):
            g = self.source.gens[j]
            m[:, col] = self.target.act(b, g) @ self.images[j] % p
        return m


@dataclass(eq=False)
class FreeResolution:
    alg: GradedAlgebra
    module: GradedModule
    stages: list[FreeModule]
    maps: list[FreeMap]  # maps[r]: A_r -> A_{r-1} (A_{-1} = module)
    t_max: int

    @property
    def r_max(self) -> int:
        return len(self.stages) - 1

    def generator_degrees(self, r: int) -> tuple[int, ...]:
        return self.stages[r].gens

    def check_dd(self) -> bool:
        p = self.alg.p
        for r in range(1, len(self.maps)):
            for t in range(self.t_max + 1):
                a, b = self.maps[r - 1].matrix(t), self.maps[r].matrix(t)
                if a.size and b.size and np.any(a @ b % p):
                    return False
        return True

    def check_exact(self) -> bool:
        """A_r -> A_{r-1} -> ... -> M -> 0 exact in every degree <= t_max."""
        p = self.alg.p
        for t in range(self.t_max + 1):
            if _fp.rank(self.maps[0].matrix(t), p) != self.module.dim(t):
                return False
            for r in range(1, len(self.maps)):
                prev = self.maps[r - 1].matrix(t)
                ker = self.stages[r - 1].dim(t) - _fp.rank(prev, p)
                if _fp.rank(self.maps[r].matrix(t), p) != ker:
                    return False
        return True

    def is_minimal(self) -> bool:
        for r in range(1, len(self.maps)):
            tgt = self.stages[r - 1]
            for j, g in enumerate(self.stages[r].gens):
                idx = tgt.index(g)
                for i, gi in enumerate(tgt.gens):
                    if gi == g and self.maps[r].images[j][idx[(i, 0)]] % self.alg.p:
                        return False
        return True


def _cover(target, kernel_rows_by_t, t_max: int, p: int, alg: GradedAlgebra):
    """Minimal generators covering the given subspaces of ``target``."""
    gens: list[int] = []
    images: list[np.ndarray] = []
    for t in range(t_max + 1):
        want = kernel_rows_by_t(t)
        if want.shape[0] == 0:
            continue
        src = FreeModule(alg, tuple(gens))
        img = FreeMap(src, target, tuple(images)).matrix(t)
        span = _fp.row_basis(img.T, p) if img.size else _fp.zeros(0, target.dim(t))
        for row in _fp.row_basis(want, p):
            if not _fp.in_span(span, row, p):
                gens.append(t)
                images.append(row.copy())
                span = np.vstack([span, row])
    return FreeModule(alg, tuple(gens)), tuple(images)


def minimal_resolution(alg: GradedAlgebra, M: GradedModule, r_max: int, t_max: int) -> FreeResolution:
    if M.degrees and M.bottom < 0:
        raise DegreeError("modules must live in degrees >= 0")
    if M.degrees and M.top > t_max:
        raise DegreeError("module exceeds the degree window")
    if not alg.complete and t_max > alg.max_degree:
        raise TruncationError(
            f"truncation at {alg.max_degree} too small: degree {alg.max_degree + 1} is ambiguous")
    p = alg.p
    stage, images = _cover(M, lambda t: np.eye(M.dim(t), dtype=np.int64), t_max, p, alg)
    stages, maps = [stage], [FreeMap(stage, M, images)]
    for _ in range(1, r_max + 1):
        prev = maps[-1]
        stage, images = _cover(
            prev.source,
            lambda t, prev=prev: _fp.nullspace(prev.matrix(t), p) if prev.source.dim(t) else _fp.zeros(0, 0),
            t_max, p, alg)
        stages.append(stage)
        maps.append(FreeMap(stage, prev.source, images))
    return FreeResolution(alg, M, stages, maps, t_max)


def free_resolution(alg: GradedAlgebra, gens, r_max: int = 0, t_max: int = 10) -> FreeResolution:
    """A free module is its own resolution (length 0)."""
    F = FreeModule(alg, tuple(gens))
    M = F.as_module(t_max)
    return minimal_resolution(alg, M, r_max, t_max)


# -- suspension -----------------------------------------------------------------

def suspend(M, k: int = 1, t_max: int | None = None):
    """Shift internal degrees up by k (GradedModule, FreeModule or FreeResolution)."""
    if isinstance(M, FreeModule):
        out = FreeModule(M.alg, tuple(g + k for g in M.gens))
        if t_max is not None and any(g > t_max for g in out.gens):
            raise TruncationError("shift exceeds truncation")
        return out
    if isinstance(M, GradedModule):
        if t_max is not None and M.degrees and M.top + k > t_max:
            raise TruncationError("shift exceeds truncation")
        return GradedModule(M.alg, {t + k: d for t, d in M.dims.items()},
                            {(a, t + k): m for (a, t), m in M.action.items()}, f"S{k}{M.name}")
    if isinstance(M, FreeResolution):
        mod = suspend(M.module, k)
        stages = [suspend(s, k) for s in M.stages]
        maps = []
        for r, f in enumerate(M.maps):
            tgt = mod if r == 0 else stages[r - 1]
            maps.append(FreeMap(stages[r], tgt, f.images))
        return FreeResolution(M.alg, mod, stages, maps, M.t_max + k)
    raise TypeError(f"cannot suspend {type(M).__name__}")


# -- maps, kernels, Ext ---------------------------------------------------------

@dataclass(eq=False)
class ModuleMap:
    source: GradedModule
    target: GradedModule
    mats: dict[int, np.ndarray]  # t -> matrix M_t -> N_{t+degree}
    degree: int = 0

    def matrix(self, t: int) -> np.ndarray:
        m = self.mats.get(t)
        if m is None:
            return _fp.zeros(self.target.dim(t + self.degree), self.source.dim(t))
        if m.shape != (self.target.dim(t + self.degree), self.source.dim(t)):
            raise DegreeError(f"matrix in degree {t} has shape {m.shape}")
        return m


def hom_and_kernels(f: ModuleMap) -> dict[int, dict]:
    """Degreewise kernel and image bases (rows) and cokernel dimension."""
    p = f.source.alg.p
    out = {}
    degs = sorted(set(f.source.degrees) | {t - f.degree for t in f.target.degrees})
    for t in degs:
        m = f.matrix(t)
        n_src, n_tgt = f.source.dim(t), f.target.dim(t + f.degree)
        ker = _fp.nullspace(m, p) if n_src else _fp.zeros(0, 0)
        img = _fp.row_basis(m.T, p) if n_src and n_tgt else _fp.zeros(0, n_tgt)
        out[t] = {"kernel": ker, "image": img, "coker_dim": n_tgt - img.shape[0],
                  "rank": img.shape[0]}
        if ker.shape[0] + img.shape[0] != n_src:
            raise ArithmeticError("rank-nullity violated")
    return out


def multiplication_map(M: GradedModule, a: int) -> ModuleMap:
    mats = {t: M.act(a, t) for t in M.degrees}
    return ModuleMap(M, M, mats, M.alg.degrees[a])


def module_from_algebra(alg: GradedAlgebra) -> GradedModule:
    return FreeModule(alg, (0,)).as_module(alg.top)


@dataclass
class ExtChart:
    p: int
    ranks: dict[tuple[int, int], int]
    reps: dict[tuple[int, int], np.ndarray]
    r_max: int
    t_max: int

    def rank(self, r: int, t: int) -> int:
        return self.ranks.get((r, t), 0)

    def to_tsv(self, rendering: str = "s") -> str:
        """``r s rank`` lines; s is the internal degree (``s``) or t - r (``stem``)."""
        lines = []
        for (r, t), k in sorted(self.ranks.items()):
            s = t if rendering == "s" else t - r
            lines.append(f"{r}\t{s}\t{k}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return json.dumps({
            "prime": self.p, "window": {"r_max": self.r_max, "t_max": self.t_max},
            "ranks": [[r, t, k] for (r, t), k in sorted(self.ranks.items())],
            "representatives": {f"{r},{t}": v.tolist() for (r, t), v in sorted(self.reps.items()) if v.size},
        })


def hom_basis(F: FreeModule, Y: GradedModule, t: int) -> list[tuple[int, int]]:
    """Basis of Hom^t(F, Y): pairs (generator j, basis vector of Y_{|g_j| - t})."""
    return [(j, k) for j, g in enumerate(F.gens) for k in range(Y.dim(g - t))]


def coboundary(res: FreeResolution, Y: GradedModule, r: int, t: int) -> np.ndarray:
    """delta*: Hom^t(A_r, Y) -> Hom^t(A_{r+1}, Y), phi -> phi o delta_{r+1}."""
    p = res.alg.p
    A, B = res.stages[r], res.stages[r + 1]
    src, tgt = hom_basis(A, Y, t), hom_basis(B, Y, t)
    sidx = {x: k for k, x in enumerate(src)}
    tidx = {x: k for k, x in enumerate(tgt)}
    m = _fp.zeros(len(tgt), len(src))
    f = res.maps[r + 1]
    for h, gh in enumerate(B.gens):
        img = f.images[h]
        basis = A.basis(gh)
        for pos, (j, b) in enumerate(basis):
            c = img[pos] % p
            if not c:
                continue
            gj = A.gens[j]
            act = Y.act(b, gj - t)  # Y_{gj-t} -> Y_{gh-t}
            for k in range(Y.dim(gj - t)):
                col = sidx[(j, k)]
                for row_k in range(Y.dim(gh - t)):
                    if act[row_k, k] % p:
                        m[tidx[(h, row_k)], col] = (m[tidx[(h, row_k)], col] + c * act[row_k, k]) % p
    return m


def ext_chart(res: FreeResolution, Y: GradedModule, r_max: int | None = None,
              t_max: int | None = None) -> ExtChart:
    p = res.alg.p
    r_max = res.r_max - 1 if r_max is None else r_max
    if r_max + 1 > res.r_max:
        raise TruncationError("resolution must cover r_max + 1")
    span = Y.top if Y.degrees else 0
    limit = res.t_max - span
    t_max = limit if t_max is None else t_max
    if t_max > limit:
        raise TruncationError(f"window t <= {t_max} exceeds the truncation t <= {limit}")
    low = -Y.top if Y.degrees else 0
    ranks, reps = {}, {}
    for r in range(r_max + 1):
        for t in range(low, t_max + 1):
            n = len(hom_basis(res.stages[r], Y, t))
            if n == 0:
                ranks[(r, t)] = 0 if t >= 0 else ranks.get((r, t), 0)
                continue
            d_out = coboundary(res, Y, r, t)
            z = _fp.nullspace(d_out, p) if d_out.shape[0] else np.eye(n, dtype=np.int64)
            if r > 0:
                d_in = coboundary(res, Y, r - 1, t)
                b = _fp.row_basis(d_in.T, p) if d_in.size else _fp.zeros(0, n)
            else:
                b = _fp.zeros(0, n)
            q = _fp.Quotient(z, b, p) if z.shape[0] else None
            ranks[(r, t)] = q.dim if q else 0
            if q and q.dim:
                reps[(r, t)] = q.reps
    ranks = {k: v for k, v in ranks.items() if k[1] >= 0 or v}
    return ExtChart(p, ranks, reps, r_max, t_max)


# -- oracle: normalized bar complex --------------------------------------------

def bar_ext_ranks(alg: GradedAlgebra, r_max: int, t_max: int) -> dict[tuple[int, int], int]:
    """dim Ext^{r,t}_A(F_p, F_p) from the normalized bar complex (dual to cobar).

    B_r is spanned by r-fold tensors of positive-degree basis elements and
    d(a_1|...|a_r) = sum_i (-1)^i a_1|...|a_i a_{i+1}|...|a_r.
    """
    p = alg.p
    pos = [i for i in range(alg.dim) if alg.degrees[i] > 0]

    def tensors(r, t):
        if r == 0:
            return [()] if t == 0 else []
        out = []
        for a in pos:
            d = alg.degrees[a]
            if d <= t - (r - 1):
                out.extend((a,) + rest for rest in tensors(r - 1, t - d))
        return out

    cache: dict = {}

    def basis(r, t):
        if (r, t) not in cache:
            cache[(r, t)] = tensors(r, t)
        return cache[(r, t)]

    def drank(r, t):
        """rank of d: B_r -> B_{r-1} in degree t."""
        if r <= 1:
            return 0
        src, tgt = basis(r, t), basis(r - 1, t)
        if not src or not tgt:
            return 0
        idx = {x: k for k, x in enumerate(tgt)}
        if p == 2:
            rows = []
            for x in src:
                bits = 0
                for i in range(r - 1):
                    for c, v in alg.mul(x[i], x[i + 1]).items():
                        if v % 2:
                            bits ^= 1 << idx[x[:i] + (c,) + x[i + 2:]]
                rows.append(bits)
            return _fp.gf2_rank_bits(rows)
        m = _fp.zeros(len(src), len(tgt))
        for k, x in enumerate(src):
            for i in range(r - 1):
                for c, v in alg.mul(x[i], x[i + 1]).items():
                    j = idx[x[:i] + (c,) + x[i + 2:]]
                    m[k, j] = (m[k, j] + (-1) ** (i + 1) * v) % p
        return _fp.rank(m, p)

    out = {}
    for r in range(r_max + 1):
        for t in range(t_max + 1):
            n = len(basis(r, t))
            out[(r, t)] = n - drank(r, t) - drank(r + 1, t)
    return out

"""A chain-level track algebra and the computations built on it.

Two concrete models are used.

* Chain model: objects are chain complexes of F_p-vector spaces (``_chain``).
  An n-track is a top element H of Hom_n together with its 0-faces, subject
  to d(H) = sum_k (-1)^k top(face_k); its 1-faces are trivial.  The
  obstruction of a tuple on a ball B is the homology class of
  sum_c eps_c H_c with eps from ``balls.orientation_signs``.
* Split model: objects are the free modules of a minimal resolution with zero
  differential, so tracks are plain A-linear maps of internal degree n, a
  cube is valid when its face sum vanishes and obstruction classes are exact
  elements.  Lifting a resolution to higher order happens here.
"""
from __future__ import annotations

import logging
import os
from dataclasses import dataclass, field

import numpy as np

from . import _fp
from . import balls as B
from . import homalg as HA
from . import obstruction as OB
from . import words as W
from ._chain import Cx, HMap, HomSpace, point, zero
from .spectral import (FilteredComplex, Multicomplex, SpectralPage, multicomplex,
                       random_filtered_complex)

log = logging.getLogger(__name__)


class TrackError(ValueError):
    pass


class LiftError(RuntimeError):
    pass


class BracketUndefined(ValueError):
    pass


class EnumerationLimit(ValueError):
    """Raised by brute-force oracles when an instance is too large."""


def threads() -> int:
    try:
        return max(1, int(os.environ.get("CUBEXT_THREADS", "1")))
    except ValueError:
        return 1


# -- tracks in the chain model --------------------------------------------------

@dataclass(frozen=True, eq=False)
class Track:
    dim: int
    top: HMap
    faces: tuple["Track", ...] = ()

    def face(self, k: int) -> "Track":
        return self.faces[k - 1]

    def face_sum(self) -> HMap:
        out = zero(self.top.source, self.top.target, self.dim - 1)
        for k, f in enumerate(self.faces, start=1):
            out = out + f.top.scale((-1) ** k)
        return out

    def problems(self) -> list[str]:
        bad = []
        if self.top.n < 0 or len(self.faces) != self.dim:
            return ["malformed track"]
        if self.dim and not (self.top.d() - self.face_sum()).is_zero():
            bad.append(f"d(top) differs from the face sum in dimension {self.dim}")
        for i in range(1, self.dim + 1):
            for j in range(i + 1, self.dim + 1):
                if not same_track(self.face(i).face(j - 1), self.face(j).face(i)):
                    bad.append(f"face identity fails for ({i}, {j})")
        for f in self.faces:
            bad += f.problems()
        return bad

    def valid(self) -> bool:
        return not self.problems()

    def plus(self, alpha: HMap) -> "Track":
        """Act by alpha in D_n: same faces, top + alpha (alpha must be a cycle)."""
        return Track(self.dim, self.top + alpha, self.faces)


def same_track(a: Track, b: Track) -> bool:
    if a.dim != b.dim or a.top != b.top:
        return False
    return all(same_track(x, y) for x, y in zip(a.faces, b.faces))


def compose(f: Track, g: Track) -> Track:
    """f after g; coordinates of f come first."""
    top = f.top @ g.top
    faces = [compose(f.face(k), g) for k in range(1, f.dim + 1)]
    faces += [compose(f, g.face(k)) for k in range(1, g.dim + 1)]
    return Track(f.dim + g.dim, top, tuple(faces))


def map_track(h: HMap) -> Track:
    return Track(0, h, ())


@dataclass(frozen=True)
class ObstructionValue:
    space: HomSpace
    chain: HMap
    coords: np.ndarray

    @property
    def is_zero(self) -> bool:
        return not np.any(self.coords % self.space.p)

    def __eq__(self, other) -> bool:
        return np.array_equal(self.coords % self.space.p, other.coords % other.space.p)

    __hash__ = None


def obstruction_class(ball: B.Ball, tracks, signs=None) -> ObstructionValue:
    """Class of sum eps_c H_c.  ``signs`` overrides the orientation (tests only)."""
    tracks = list(tracks)
    if len(tracks) != ball.cells:
        raise TrackError("one track per cell required")
    n = ball.dim
    for t in tracks:
        if t.dim != n:
            raise TrackError("track dimension differs from the ball")
    for i, (k,), j, (l,) in ball.gluings:
        if not same_track(tracks[i].face(k), tracks[j].face(l)):
            raise TrackError(f"gluing violation between cells {i} and {j}")
    eps = B.orientation_signs(ball) if signs is None else list(signs)
    total = zero(tracks[0].top.source, tracks[0].top.target, n)
    for e, t in zip(eps, tracks):
        total = total + t.top.scale(e)
    space = HomSpace(total.source, total.target, n)
    if not space.is_cycle(total):
        raise TrackError("signed sum is not a cycle; the tuple is not closed")
    return ObstructionValue(space, total, space.class_of(total))


# -- higher chain complexes in the chain model -------------------------------------

@dataclass(eq=False)
class HigherChain:
    """Objects A[i] with generator tracks K[(i, k)]: A_i -> A_{i-k-1} of degree k
    (K[(i, 0)] is delta_i).  Words evaluate to composites."""
    A: dict[int, Cx]
    K: dict[tuple[int, int], HMap]

    @classmethod
    def from_multicomplex(cls, mc: Multicomplex, max_order: int | None = None) -> "HigherChain":
        A = dict(mc.A)
        lo, hi = min(A), max(A)
        for r in range(lo, hi + 1):  # empty stages become zero complexes
            A.setdefault(r, Cx(mc.p, {}, {}, f"A{r}"))
        K = {}
        for r in range(lo, hi + 1):
            for k in range(0, r - lo):
                if max_order is not None and k > max_order:
                    continue
                h = mc.h.get((r, k))
                K[(r, k)] = h if h is not None else zero(A[r], A[r - k - 1], k)
        return cls(A, K)

    def copy(self) -> "HigherChain":
        return HigherChain(dict(self.A), dict(self.K))

    def has(self, i: int, word: str) -> bool:
        src = i
        for piece in reversed(word.split("s")):
            if (src, len(piece)) not in self.K:
                return False
            src -= len(piece) + 1
        return True

    def value(self, i: int, word: str) -> HMap:
        out = None
        src = i
        for piece in reversed(word.split("s")):
            k = len(piece)
            h = self.K.get((src, k))
            if h is None:
                raise TrackError(f"no generator track K({src}, I_{k})")
            out = h if out is None else h @ out
            src -= k + 1
        return out

    def track(self, i: int, word: str) -> Track:
        faces = tuple(self.track(i, W.face(word, q)) for q in range(1, W.dim(word) + 1))
        return Track(W.dim(word), self.value(i, word), faces)

    def cube_problems(self, i: int, k: int) -> list[str]:
        return self.track(i, W.I(k)).problems()

    def obstruction(self, e: OB.ObsExpression, signs=None) -> ObstructionValue:
        ball = e.ball
        return obstruction_class(ball, [self.track(e.source, w) for w in e.labels], signs)

    def chain_sum(self, e: OB.ObsExpression) -> HMap:
        eps = B.orientation_signs(e.ball)
        vals = [self.value(e.source, w).scale(s) for s, w in zip(eps, e.labels)]
        out = vals[0]
        for v in vals[1:]:
            out = out + v
        return out

    def perturb(self, rng, order: int, scale: int = 1) -> "HigherChain":
        """Add random cycles to the top generator tracks (cubes stay valid)."""
        out = self.copy()
        for (i, k), h in self.K.items():
            if k == order:
                out.K[(i, k)] = h + HomSpace(h.source, h.target, k).random_cycle(rng).scale(scale)
        return out


# -- split model: lifting a minimal resolution --------------------------------------

@dataclass(eq=False)
class HigherResolution:
    """Split-model n-th order resolution: generator images K[(i, k)][j] in
    A_{i-k-1} of internal degree |g_j| + k, for generators inside the window."""
    base: HA.FreeResolution
    n: int
    K: dict
    window: int
    i_max: int
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def p(self) -> int:
        return self.base.alg.p

    def obj(self, i: int):
        return self.base.module if i == -1 else self.base.stages[i]

    def gens(self, i: int) -> list[int]:
        return [j for j, g in enumerate(self.base.stages[i].gens) if g <= self.window]

    def _matrix(self, i: int, k: int, t: int) -> np.ndarray:
        key = (i, k, t)
        if key not in self._cache:
            src, tgt = self.base.stages[i], self.obj(i - k - 1)
            imgs = self.K[(i, k)]
            basis = src.basis(t)
            m = _fp.zeros(tgt.dim(t + k), len(basis))
            for col, (j, b) in enumerate(basis):
                m[:, col] = tgt.act(b, src.gens[j] + k) @ imgs[j] % self.p
            self._cache[key] = m
        return self._cache[key]

    def set_images(self, i: int, k: int, imgs) -> None:
        self.K[(i, k)] = list(imgs)
        for key in [key for key in self._cache if key[:2] == (i, k)]:
            del self._cache[key]

    def value(self, i: int, word: str, j: int) -> np.ndarray:
        """Value of the word on generator j of A_i."""
        t = self.base.stages[i].gens[j]
        v = self.base.stages[i].generator(j)
        src = i
        for piece in reversed(word.split("s")):
            k = len(piece)
            if (src, k) not in self.K:
                raise TrackError(f"no generator track K({src}, I_{k})")
            v = self._matrix(src, k, t) @ v % self.p
            t += k
            src -= k + 1
        return v

    def face_sum(self, i: int, k: int, j: int) -> np.ndarray:
        w = W.I(k)
        out = None
        for q in range(1, k + 1):
            v = self.value(i, W.face(w, q), j) * (-1) ** q
            out = v if out is None else out + v
        return out % self.p

    def cube_ok(self, i: int, k: int) -> bool:
        return all(not np.any(self.face_sum(i, k, j)) for j in self.gens(i))

    def obstruction(self, i: int, order: int | None = None) -> dict[int, np.ndarray]:
        """xi_i = O_{T0^order}(K(i, dI_{order+1})) per window generator."""
        order = self.n if order is None else order
        eps = B.orientation_signs(B.make_T0(order))
        words = W.boundary_words(order)
        out = {}
        for j in self.gens(i):
            acc = None
            for e, w in zip(eps, words):
                v = self.value(i, w, j) * e
                acc = v if acc is None else acc + v
            out[j] = acc % self.p
        return out

    def obstruction_is_zero(self, i: int, order: int | None = None) -> bool:
        return all(not np.any(v) for v in self.obstruction(i, order).values())

    def check_obstruction_property(self) -> bool:
        return all(self.obstruction_is_zero(i, k)
                   for k in range(1, self.n + 1) for i in range(k + 1, self.i_max + 1))

    def check_inclusion(self, max_len: int = 8) -> bool:
        """value(V) equals the restriction of the cube on W for V in the boundary of W."""
        for i in range(0, self.i_max + 1):
            for L in range(0, min(max_len, i + 1) + 1):
                for m in W.enumerate_morphisms(i, i - L - 1, self.n):
                    w = m.word
                    if not self._defined(i, w):
                        continue
                    for v in _boundary_words_of(w):
                        inc = W.boundary_inclusion(v, w)
                        restricted = w
                        for pos in sorted(inc.positions, reverse=True):
                            restricted = W.face(restricted, pos)
                        if restricted != v:
                            return False
                        for j in self.gens(i):
                            if not np.array_equal(self.value(i, restricted, j), self.value(i, v, j)):
                                return False
        return True

    def _defined(self, i: int, w: str) -> bool:
        src = i
        for piece in reversed(w.split("s")):
            if (src, len(piece)) not in self.K:
                return False
            src -= len(piece) + 1
        return src >= -1 and i - len(w) - 1 >= -1


def _boundary_words_of(w: str) -> list[str]:
    js = W.j_positions(w)
    out = []
    for mask in range(1, 1 << len(js)):
        v = list(w)
        for b, pos in enumerate(js):
            if mask >> b & 1:
                v[pos] = "s"
        out.append("".join(v))
    return out


def lift_resolution(base: HA.FreeResolution, n: int, i_max: int, seed: int = 0,
                    window: int | None = None) -> HigherResolution:
    """Lift a minimal resolution to an n-th order resolution in the split model.

    Order by order, top tracks start random and are corrected: at each i the
    generator cubes feeding xi_i are validated, then alpha_i is solved from
    delta alpha_i = -eps_0 xi_i (xi_i computed with the already corrected
    K(i-1, I_n)), one generator at a time.
    """
    if n < 1:
        raise LiftError("order must be >= 1")
    if i_max > base.r_max:
        raise LiftError(f"resolution only reaches stage {base.r_max}")
    p = base.alg.p
    window = base.t_max - n if window is None else window
    if window < 0:
        raise LiftError("truncation too small for this order")
    rng = np.random.default_rng(seed)
    K: dict = {}
    for i in range(0, base.r_max + 1):
        K[(i, 0)] = list(base.maps[i].images)
    hr = HigherResolution(base, n, K, window, i_max)
    for k in range(1, n + 1):
        eps = B.orientation_signs(B.make_T0(k))
        for i in range(k, i_max + 1):
            src, tgt = base.stages[i], hr.obj(i - k - 1)
            imgs = []
            for j, g in enumerate(src.gens):
                size = tgt.dim(g + k)
                v = rng.integers(0, p, size) if g <= window else np.zeros(size, dtype=np.int64)
                imgs.append(v.astype(np.int64))
            hr.set_images(i, k, imgs)
        for i in range(k + 1, i_max + 1):
            for i2 in (i - 1, i):
                for k2 in range(1, k + 1):
                    if i2 >= k2 and not hr.cube_ok(i2, k2):
                        raise LiftError(
                            f"xi solve at i={i}, order {k}: cube K({i2}, I_{k2}) has nonzero face sum")
            xi = hr.obstruction(i, k)
            delta = base.maps[i - k - 1]
            imgs = list(hr.K[(i, k)])
            for j, v in xi.items():
                if not np.any(v):
                    continue
                src_deg = base.stages[i].gens[j] + k
                dm = delta.matrix(src_deg)
                rhs = (-eps[0] * v) % p
                # delta_* xi = 0 must hold before solving
                if i - k - 2 >= 0:
                    low = base.maps[i - k - 2].matrix(src_deg)
                    if low.size and np.any(low @ rhs % p):
                        raise LiftError(f"xi solve at i={i}, order {k}: delta_* xi != 0")
                sol = _fp.solve(dm, rhs, p) if dm.size else None
                if sol is None:
                    raise LiftError(f"xi solve at i={i}, order {k}: no alpha for generator {j}")
                imgs[j] = (imgs[j] + sol) % p
            hr.set_images(i, k, imgs)
            if not hr.obstruction_is_zero(i, k):
                raise LiftError(f"xi solve at i={i}, order {k} left a nonzero obstruction")
    return hr


def inject_dd_error(base: HA.FreeResolution, r: int = 2) -> HA.FreeResolution:
    """Copy of ``base`` with delta_r changed so that delta_{r-1} delta_r != 0."""
    p = base.alg.p
    src, tgt = base.stages[r], base.stages[r - 1]
    prev = base.maps[r - 1]
    images = list(base.maps[r].images)
    for j, g in enumerate(src.gens):
        m = prev.matrix(g)
        for col in range(tgt.dim(g)):
            if np.any(m[:, col] % p):
                e = np.zeros(tgt.dim(g), dtype=np.int64)
                e[col] = 1
                images[j] = (images[j] + e) % p
                maps = list(base.maps)
                maps[r] = HA.FreeMap(src, tgt, tuple(images))
                return HA.FreeResolution(base.alg, base.module, list(base.stages), maps, base.t_max)
    raise ValueError("could not inject an error at this stage")


# -- higher differentials on E_1 = H_s Hom(A_r, Y) ------------------------------------

class _Affine:
    """Variables laid out as consecutive blocks of HomSpace coordinates."""

    def __init__(self, spaces):
        self.spaces = spaces
        self.offsets = np.cumsum([0] + [sp.size for sp in spaces]).tolist()
        self.size = self.offsets[-1]

    def split(self, v) -> list[HMap]:
        return [sp.unflatten(v[a:b]) for sp, a, b in zip(self.spaces, self.offsets, self.offsets[1:])]


class ChainSpectralSequence:
    """Spectral sequence of Hom(Tot, Y) computed through generator tracks.

    E_1^{r,s} = H_s Hom(A_r, Y); d_m: (r, s) -> (r+m, s+m-1) is read off a
    pre-chain complex L_0 = beta + d(gamma), L_1, ..., L_{m-1} solving
    d L_k = -omega_k, and equals the class of omega_m, where
    omega_k = sum_t (-1)^t L_t K'(r+k, I_{k-1-t}) and K' = (-1)^{s j} K on I_j.
    """

    def __init__(self, chain: HigherChain, Y: Cx | None = None):
        self.chain = chain
        self.p = next(iter(chain.A.values())).p
        self.Y = point(self.p, 0) if Y is None else Y
        self._hom: dict = {}
        self._Z: dict = {}
        self._B: dict = {}

    @classmethod
    def from_filtered(cls, fc: FilteredComplex) -> "ChainSpectralSequence":
        return cls(HigherChain.from_multicomplex(multicomplex(fc)))

    def hom(self, r: int, s: int) -> HomSpace | None:
        if r not in self.chain.A:
            return None
        key = (r, s)
        if key not in self._hom:
            self._hom[key] = HomSpace(self.chain.A[r], self.Y, s)
        return self._hom[key]

    def e1_dim(self, r: int, s: int) -> int:
        h = self.hom(r, s)
        return h.homology_dim if h else 0

    def bidegrees(self) -> list[tuple[int, int]]:
        out = []
        for r, X in sorted(self.chain.A.items()):
            for q in X.degrees:
                s = -q + min(self.Y.degrees)
                if self.e1_dim(r, s):
                    out.append((r, s))
        return sorted(set(out))

    # the linear system -------------------------------------------------------

    def _system(self, r: int, s: int, m: int, free_beta: bool):
        """Variables (beta coords, gamma, L_1..L_{m-1}); returns (layout, constraint
        function, omega_m function) as maps on the variable vector."""
        E = self.hom(r, s)
        Q = E.homology
        nb = Q.dim if (free_beta and Q) else 0
        spaces = [HomSpace(E.X, self.Y, s + 1)]
        present = [k for k in range(1, m) if r + k in self.chain.A]  # empty stages carry no L_k
        spaces += [HomSpace(self.chain.A[r + k], self.Y, s + k) for k in present]
        lay = _Affine(spaces)

        def Ls(v, beta0):
            beta = beta0
            if nb:
                beta = beta + E.unflatten(v[:nb] @ Q.reps % self.p)
            parts = lay.split(v[nb:])
            L = [beta + parts[0].d()] + [None] * (m - 1)
            for k, h in zip(present, parts[1:]):
                L[k] = h
            return L

        def omega(L, k):
            tgt = r + k
            if tgt not in self.chain.A:
                return None
            out = zero(self.chain.A[tgt], self.Y, s + k - 1)
            for t in range(0, min(k, len(L))):
                j = k - 1 - t
                h = self.chain.K.get((tgt, j))
                if h is None or L[t] is None:
                    continue
                out = out + (L[t] @ h).scale((-1) ** t * (-1) ** (s * j))
            return out

        def residual(v, beta0):
            L = Ls(v, beta0)
            res = []
            for k in present:
                res.append(HomSpace(L[k].source, self.Y, s + k - 1).flatten(L[k].d() + omega(L, k)))
            return np.concatenate(res) % self.p if res else _fp.zeros(1, 0)[0]

        def top(v, beta0):
            return omega(Ls(v, beta0), m)

        return nb + lay.size, residual, top

    def _linear(self, f, nvar: int, base):
        b = f(np.zeros(nvar, dtype=np.int64), base)
        cols = []
        for k in range(nvar):
            e = np.zeros(nvar, dtype=np.int64)
            e[k] = 1
            cols.append((f(e, base) - b) % self.p)
        M = np.array(cols, dtype=np.int64).T.reshape(len(b), nvar) if nvar else _fp.zeros(len(b), 0)
        return M, b

    def d(self, m: int, r: int, s: int, coords, rng=None) -> np.ndarray | None:
        """d_m of the E_1 class ``coords``; None if it does not survive to E_m.
        The answer lies in E_1^{r+m, s+m-1} and is well defined modulo B_m."""
        E = self.hom(r, s)
        return self.d_rep(m, r, s, E.representative(coords), rng)

    def d_rep(self, m: int, r: int, s: int, beta: HMap, rng=None) -> np.ndarray | None:
        """As ``d`` but starting from a cycle beta; ``rng`` picks random fillers."""
        tgt = self.hom(r + m, s + m - 1)
        nvar, residual, top = self._system(r, s, m, free_beta=False)
        M, b = self._linear(lambda v, _b: residual(v, beta), nvar, None)
        if M.shape[0]:
            sol = _fp.solve(M, (-b) % self.p, self.p)
            if sol is None:
                return None
            if rng is not None and nvar:
                ns = _fp.nullspace(M, self.p)
                if ns.shape[0]:
                    sol = (sol + rng.integers(0, self.p, ns.shape[0]) @ ns) % self.p
        else:
            sol = np.zeros(nvar, dtype=np.int64) if rng is None else rng.integers(0, self.p, nvar)
        if tgt is None or tgt.homology is None:
            return _fp.zeros(1, 0)[0]
        w = top(sol, beta)
        if not tgt.is_cycle(w):
            raise TrackError(f"omega_{m} is not a cycle at ({r}, {s})")
        return tgt.class_of(w)

    def Z(self, m: int, r: int, s: int) -> np.ndarray:
        """Rows spanning Z_m in E_1^{r,s} coordinates (classes surviving to E_m)."""
        key = (m, r, s)
        if key not in self._Z:
            E = self.hom(r, s)
            Q = E.homology if E else None
            if Q is None:
                out = _fp.zeros(0, 0)
            elif m == 1:
                out = np.eye(Q.dim, dtype=np.int64)
            else:
                nvar, residual, _ = self._system(r, s, m, free_beta=True)
                zb = zero(E.X, self.Y, s)
                M, b = self._linear(lambda v, _b: residual(v, zb), nvar, None)
                ns = _fp.nullspace(M, self.p) if M.shape[0] else np.eye(nvar, dtype=np.int64)
                out = _fp.row_basis(ns[:, :Q.dim], self.p) if ns.size else _fp.zeros(0, Q.dim)
            self._Z[key] = out.reshape(-1, Q.dim if Q else 0)
        return self._Z[key]

    def B(self, m: int, r: int, s: int) -> np.ndarray:
        """Rows spanning B_m in E_1^{r,s}: images of d_1 .. d_{m-1}."""
        key = (m, r, s)
        if key not in self._B:
            E = self.hom(r, s)
            width = E.homology.dim if E and E.homology else 0
            rows = []
            for mm in range(1, m):
                src = self.hom(r - mm, s - mm + 1)
                if src is None or src.homology is None or width == 0:
                    continue
                nvar, residual, top = self._system(r - mm, s - mm + 1, mm, free_beta=True)
                zb = zero(src.X, self.Y, s - mm + 1)
                M, b = self._linear(lambda v, _b: residual(v, zb), nvar, None)
                ns = _fp.nullspace(M, self.p) if M.shape[0] else np.eye(nvar, dtype=np.int64)
                for v in ns:
                    rows.append(E.class_of(top(v, zb)))
            out = _fp.row_basis(np.array(rows, dtype=np.int64).reshape(-1, width), self.p) if rows \
                else _fp.zeros(0, width)
            self._B[key] = out
        return self._B[key]

    def page_dims(self, m: int) -> dict[tuple[int, int], int]:
        out = {}
        for r, s in self._support():
            z, b = self.Z(m, r, s), self.B(m, r, s)
            dim = z.shape[0] - b.shape[0]
            if dim:
                out[(r, s)] = dim
        return out

    def _support(self):
        out = set()
        for r, X in self.chain.A.items():
            for q in X.degrees:
                for y in self.Y.degrees:
                    s = y - q
                    if self.e1_dim(r, s):
                        out.add((r, s))
        return sorted(out)

    def pages(self, m_max: int) -> list[SpectralPage]:
        return [SpectralPage(m, self.page_dims(m)) for m in range(1, m_max + 1)]

    def same_mod_B(self, m: int, r: int, s: int, x, y) -> bool:
        return _fp.in_span(self.B(m, r, s), (np.asarray(x) - np.asarray(y)) % self.p, self.p)

    def check_dd(self, m: int) -> bool:
        """d_m d_m = 0 on E_m and d_m lands in Z_m."""
        for r, s in self._support():
            for x in self.Z(m, r, s):
                y = self.d(m, r, s, x)
                if y is None:
                    return False
                r2, s2 = r + m, s + m - 1
                if not y.size or not np.any(y):
                    continue
                if not _fp.in_span(np.vstack([self.Z(m, r2, s2), self.B(m, r2, s2)]), y, self.p):
                    return False
                # move y to a representative that survives, then apply d_m again
                zrows = self.Z(m, r2, s2)
                c = _fp.solve(zrows.T, y, self.p) if zrows.shape[0] else None
                if c is None:
                    return False
                y2 = self.d(m, r2, s2, c @ zrows % self.p)
                if y2 is None:
                    return False
                if y2.size and not _fp.in_span(self.B(m, r2 + m, s2 + m - 1), y2, self.p):
                    return False
        return True


def d2_invariance(ss: ChainSpectralSequence, r: int, s: int, coords, rng, trials: int = 10) -> bool:
    """d_2 of a class does not depend on the filler H, on beta + d(gamma), or on
    beta + gamma' delta_r (which moves the class inside B_2)."""
    E = ss.hom(r, s)
    beta = E.representative(coords)
    ref = ss.d_rep(2, r, s, beta)
    if ref is None:
        return True
    tr, ts = r + 2, s + 1
    variants = [beta]
    gspace = HomSpace(E.X, ss.Y, s + 1)
    variants += [beta + gspace.random(rng).d() for _ in range(3)]
    if r - 1 in ss.chain.A and (r, 0) in ss.chain.K:
        low = HomSpace(ss.chain.A[r - 1], ss.Y, s)
        variants += [beta + low.random_cycle(rng) @ ss.chain.K[(r, 0)] for _ in range(3)]
    for v in variants:
        for _ in range(trials):
            got = ss.d_rep(2, r, s, v, rng)
            if got is None or not ss.same_mod_B(2, tr, ts, got, ref):
                return False
    return True


# -- Toda brackets ---------------------------------------------------------------------

def random_complex(rng, p: int, degrees=range(0, 3), max_dim: int = 2, name: str = "") -> Cx:
    degrees = list(degrees)
    dims = {q: int(rng.integers(0, max_dim + 1)) for q in degrees}
    d = {}
    # d_q = P_{q-1} E P_q^{-1} with E a partial identity; ranks chosen so d^2 = 0
    used_top = {q: 0 for q in degrees}
    for q in degrees[1:]:
        free_src = dims[q]
        free_tgt = dims[q - 1] - used_top[q - 1] if q - 1 in dims else 0
        k = int(rng.integers(0, min(free_src, max(free_tgt, 0)) + 1))
        E = _fp.zeros(dims[q - 1], dims[q])
        for a in range(k):
            E[used_top[q - 1] + a, a] = 1
        used_top[q] = k
        d[q] = E
    # d[q] maps the first k basis vectors of degree q onto fresh vectors of degree q-1;
    # the vectors hit are never sources, so d^2 = 0; now change bases randomly
    P = {}
    for q in degrees:
        n = dims[q]
        while True:
            m = rng.integers(0, p, (n, n))
            if _fp.rank(m, p) == n:
                break
        P[q] = m.astype(np.int64)
    out = {}
    for q, E in d.items():
        Pinv = _fp.solve(P[q], np.eye(dims[q], dtype=np.int64), p) if dims[q] else _fp.zeros(0, 0)
        out[q] = P[q - 1] @ E @ Pinv % p if E.size else E
    X = Cx(p, dims, out, name)
    assert X.check()
    return X


@dataclass
class TodaBracket:
    space: HomSpace
    value: np.ndarray            # class of one element
    indeterminacy: np.ndarray    # rows spanning the indeterminacy subgroup

    def contains(self, coords) -> bool:
        return _fp.in_span(self.indeterminacy, (np.asarray(coords) - self.value) % self.space.p,
                           self.space.p)

    def contains_zero(self) -> bool:
        return self.contains(np.zeros_like(self.value))

    def elements(self) -> set[tuple[int, ...]]:
        p = self.space.p
        rows = _fp.row_basis(self.indeterminacy, p) if self.indeterminacy.size else self.indeterminacy
        out = set()
        for mult in np.ndindex(*([p] * rows.shape[0])):
            v = (self.value + (np.array(mult, dtype=np.int64) @ rows if rows.shape[0] else 0)) % p
            out.add(tuple(int(x) for x in v))
        return out


def toda_bracket(a: HMap, b: HMap, c: HMap) -> TodaBracket:
    """<a, b, c> for chain maps X3 -c-> X2 -b-> X1 -a-> X0 with ab ~ 0, bc ~ 0.

    One element is aG - Hc with dH = -ab, dG = -bc (the value of the 1-ball
    glued from the two 1-tracks); the indeterminacy is a H_1(X3, X1) + H_1(X2, X0) c.
    """
    X3, X0 = c.source, a.target
    H = HomSpace(b.source, a.target, 1).solve_d(-(a @ b))
    G = HomSpace(c.source, b.target, 1).solve_d(-(b @ c))
    if H is None or G is None:
        raise BracketUndefined("a composite is not null-homotopic")
    space = HomSpace(X3, X0, 1)
    val = a @ G - H @ c
    rows = []
    left = HomSpace(X3, a.source, 1)
    for z in left.cycles:
        rows.append(space.class_of(a @ left.unflatten(z)))
    right = HomSpace(b.source, X0, 1)
    for z in right.cycles:
        rows.append(space.class_of(right.unflatten(z) @ c))
    width = space.homology_dim
    ind = np.array(rows, dtype=np.int64).reshape(-1, width) if rows and width else _fp.zeros(0, width)
    return TodaBracket(space, space.class_of(val), ind % space.p)


def massey_oracle(a: HMap, b: HMap, c: HMap, limit: int = 4096) -> set[tuple[int, ...]]:
    """All classes s c - a t with ds = ab, dt = bc, by enumeration."""
    p = a.p
    S1 = HomSpace(b.source, a.target, 1)
    T1 = HomSpace(c.source, b.target, 1)
    s0, t0 = S1.solve_d(a @ b), T1.solve_d(b @ c)
    if s0 is None or t0 is None:
        raise BracketUndefined("a composite is not null-homotopic")
    zs, zt = S1.cycles, T1.cycles
    if p ** (zs.shape[0] + zt.shape[0]) > limit:
        raise EnumerationLimit("instance too large for enumeration")
    space = HomSpace(c.source, a.target, 1)
    out = set()
    for ms in np.ndindex(*([p] * zs.shape[0])):
        s = s0 + S1.unflatten(np.array(ms, dtype=np.int64) @ zs % p) if zs.shape[0] else s0
        for mt in np.ndindex(*([p] * zt.shape[0])):
            t = t0 + T1.unflatten(np.array(mt, dtype=np.int64) @ zt % p) if zt.shape[0] else t0
            out.add(tuple(int(x) for x in space.class_of(s @ c - a @ t)))
    return out


def _null_composite_map(rng, left: HMap | None, X: Cx, Y: Cx, tries: int = 200) -> HMap:
    """Random chain map X -> Y whose composite with ``left`` is a boundary."""
    hom = HomSpace(X, Y, 0)
    for _ in range(tries):
        f = hom.random_cycle(rng)
        if left is None:
            return f
        comp = left @ f
        if HomSpace(X, left.target, 0).homology is None or \
                not np.any(HomSpace(X, left.target, 0).class_of(comp)):
            return f
    return zero(X, Y, 0)


def random_toda_instance(rng, p: int = 3, max_dim: int = 2):
    Xs = [random_complex(rng, p, range(0, 3), max_dim, f"X{k}") for k in range(4)]
    a = _null_composite_map(rng, None, Xs[1], Xs[0])
    b = _null_composite_map(rng, a, Xs[2], Xs[1])
    c = _null_composite_map(rng, b, Xs[3], Xs[2])
    return a, b, c


def resolution_bracket_contains_zero(hr: HigherResolution, i: int) -> bool:
    """In a lifted resolution, the order-n bracket of consecutive deltas ending at
    A_i (top tracks K(i, I_n), K(i-1, I_n) free) contains 0."""
    n, p = hr.n, hr.p
    if i < n + 1:
        raise ValueError("bracket needs i >= n + 1")
    scratch = HigherResolution(hr.base, n, dict(hr.K), hr.window, hr.i_max)
    top_i, top_prev = list(hr.K[(i, n)]), list(hr.K[(i - 1, n)])
    zero_i = [np.zeros_like(v) for v in top_i]
    zero_prev = [np.zeros_like(v) for v in top_prev]
    scratch.set_images(i, n, zero_i)
    scratch.set_images(i - 1, n, zero_prev)
    gens = scratch.gens(i)
    base = np.concatenate([scratch.obstruction(i, n)[j] for j in gens]) if gens else _fp.zeros(1, 0)[0]
    cols = []
    # alpha on generators of A_i enters through delta alpha
    for j in gens:
        for e in np.eye(len(top_i[j]), dtype=np.int64):
            imgs = list(zero_i)
            imgs[j] = e
            scratch.set_images(i, n, imgs)
            cols.append(np.concatenate([scratch.obstruction(i, n)[g] for g in gens]) - base)
    scratch.set_images(i, n, zero_i)
    # alpha' on generators of A_{i-1} enters through alpha' delta_i
    for j in range(len(top_prev)):
        for e in np.eye(len(top_prev[j]), dtype=np.int64):
            imgs = list(zero_prev)
            imgs[j] = e
            scratch.set_images(i - 1, n, imgs)
            cols.append(np.concatenate([scratch.obstruction(i, n)[g] for g in gens]) - base)
    scratch.set_images(i - 1, n, zero_prev)
    if not cols:
        return not np.any(base)
    M = np.array(cols, dtype=np.int64).T % p
    return _fp.solve(M, (-base) % p, p) is not None


# -- axiom suite -------------------------------------------------------------------------

@dataclass
class AxiomReport:
    seed: int
    p: int
    trials: int
    corrupt: bool
    results: dict = field(default_factory=dict)  # name -> [passed, attempted]

    def record(self, name: str, ok: bool) -> None:
        cell = self.results.setdefault(name, [0, 0])
        cell[0] += bool(ok)
        cell[1] += 1

    @property
    def ok(self) -> bool:
        return all(a == b and b > 0 for a, b in self.results.values())

    def to_tsv(self) -> str:
        lines = ["check\tpassed\tattempted"]
        lines += [f"{k}\t{a}\t{b}" for k, (a, b) in sorted(self.results.items())]
        return "\n".join(lines) + "\n"


def _safe(fn) -> bool:
    try:
        return bool(fn())
    except (TrackError, ValueError):
        return False


def _signs(ball: B.Ball, corrupt: bool):
    return [1] * ball.cells if corrupt else None


def _word_tuple(chain: HigherChain, i: int, labels) -> list[Track] | None:
    if not all(chain.has(i, w) for w in labels):
        return None
    return [chain.track(i, w) for w in labels]


def _sources(chain: HigherChain, length: int, order: int) -> list[int]:
    """Sources i from which every word of this length and J-order is defined."""
    out = []
    for i in sorted(chain.A):
        if all(chain.has(i, w) for w in W._words(length, order)):
            out.append(i)
    return out


def _check_enrichment(rng, chain: HigherChain, order: int) -> bool:
    srcs = [i for i in chain.A if chain.has(i, "J") and chain.has(i - 2, "J")]
    if not srcs:
        return True
    i = srcs[int(rng.integers(0, len(srcs)))]
    for w1, w2 in (("J", "J"), ("", "J"), ("J", "")):
        if not (chain.has(i - len(w2) - 1, w1) and chain.has(i, w2)):
            continue
        f, g = chain.track(i - len(w2) - 1, w1), chain.track(i, w2)
        fg = compose(f, g)
        if not fg.valid() or not same_track(fg, chain.track(i, W.otimes(w1, w2))):
            return False
    # Leibniz rule and zero law on random elements
    objs = list(chain.A.values())
    X, Y, Z = (objs[int(k)] for k in rng.integers(0, len(objs), 3))
    f = HomSpace(Y, Z, 1).random(rng)
    g = HomSpace(X, Y, 2).random(rng)
    if not ((f @ g).d() - (f.d() @ g - f @ g.d())).is_zero():
        return False
    t = chain.track(i, "J")
    z = map_track(zero(t.top.target, t.top.target, 0))
    zt = compose(z, t)
    return zt.valid() and zt.top.is_zero()


def _check_boundary_dim1(rng, chain: HigherChain, corrupt: bool) -> bool:
    srcs = [i for i in chain.A if chain.has(i, "J")]
    i = srcs[int(rng.integers(0, len(srcs)))]
    a = chain.track(i, "J")
    space = HomSpace(a.top.source, a.top.target, 1)
    alpha = space.random_cycle(rng)
    ball = B.make_double(1)
    got = obstruction_class(ball, [a.plus(alpha), a], _signs(ball, corrupt))
    if not np.array_equal(got.coords, space.class_of(alpha)):
        return False
    # two 1-tracks with equal boundary differ by a cycle
    other = a.plus(alpha + HomSpace(a.top.source, a.top.target, 2).random(rng).d())
    return space.is_cycle(other.top - a.top)


def _check_double_and_action(rng, chain: HigherChain, order: int, corrupt: bool) -> tuple[bool, bool]:
    n = int(rng.integers(1, order + 1))
    srcs = [i for i in chain.A if all(chain.has(i, w) for w in W.boundary_words(n))]
    if not srcs:
        return True, True
    i = srcs[int(rng.integers(0, len(srcs)))]
    t = chain.track(i, W.I(n))
    dbl = B.make_double(n)
    double_ok = _safe(lambda: obstruction_class(dbl, [t, t], _signs(dbl, corrupt)).is_zero)
    ball = B.make_T0(n)
    tup = [chain.track(i, w) for w in W.boundary_words(n)]
    eps = B.orientation_signs(ball)
    j = int(rng.integers(0, ball.cells))
    space = HomSpace(tup[j].top.source, tup[j].top.target, n)
    alpha = space.random_cycle(rng)

    def action():
        before = obstruction_class(ball, tup, _signs(ball, corrupt))
        moved = list(tup)
        moved[j] = tup[j].plus(alpha)
        after = obstruction_class(ball, moved, _signs(ball, corrupt))
        want = (before.coords + eps[j] * space.class_of(alpha)) % chain_p(chain)
        return np.array_equal(after.coords % chain_p(chain), want)

    return double_ok, _safe(action)


def chain_p(chain: HigherChain) -> int:
    return next(iter(chain.A.values())).p


def _expr_sum(chain: HigherChain, e: OB.ObsExpression, corrupt: bool) -> HMap | None:
    if not all(chain.has(e.source, w) for w in e.labels):
        return None
    eps = [1] * len(e.labels) if corrupt else B.orientation_signs(e.ball)
    out = None
    for s, w in zip(eps, e.labels):
        v = chain.value(e.source, w).scale(s)
        out = v if out is None else out + v
    return out


def _lift_expr(e: OB.ObsExpression, source: int) -> OB.ObsExpression:
    """Rewrite an expression at another source by naturality in delta: the
    labels w evaluated at source+1 become w + 's'."""
    if e.source == source:
        return e
    shift = source - e.source
    labels = list(e.labels)
    for _ in range(shift):
        labels = [w + "s" for w in labels]
    return OB.expression(source, labels)


def _check_complement(chain: HigherChain, n: int, corrupt: bool) -> bool | None:
    """Along a Hauptlemma derivation, each complement step is an identity of chains
    sum_E = lam sum_R + sig sum_D for signs lam, sig."""
    srcs = [i for i in chain.A if chain.has(i, W.I(n) + "s") and
            all(chain.has(i, w) for w in W._words(n + 2, n))]
    if not srcs:
        return None
    i = max(srcs)
    d = OB.prove_hauptlemma(n, i)
    current = d.start
    for st in d.steps:
        if st.rule == "COMPLEMENT":
            rel = d.hyps[st.relation]
            src = max(current.source, rel.source, st.result.source)
            sums = [_expr_sum(chain, _lift_expr(x, src), corrupt) for x in (current, rel, st.result)]
            if any(s is None for s in sums):
                return None
            e, r, res = sums
            if not any((e - r.scale(lam) - res.scale(sig)).is_zero()
                       for lam in (1, -1) for sig in (1, -1)):
                return False
        current = st.result
    return True


def _check_naturality(rng, chain: HigherChain, order: int, corrupt: bool) -> bool:
    n = int(rng.integers(1, order + 1))
    srcs = [i for i in chain.A if all(chain.has(i, w) for w in W.boundary_words(n))]
    if not srcs:
        return True
    i = srcs[int(rng.integers(0, len(srcs)))]
    ball = B.make_T0(n)
    tup = [chain.track(i, w) for w in W.boundary_words(n)]
    X = tup[0].top.source
    lo, hi = (min(X.degrees), max(X.degrees)) if X.degrees else (0, 0)
    Z = random_complex(rng, chain_p(chain), range(lo - 1, hi + 1), 2)
    f = HomSpace(Z, X, 0).random_cycle(rng)
    tgt = tup[0].top.target
    g = HomSpace(tgt, tgt, 0).random_cycle(rng)
    base = obstruction_class(ball, tup, _signs(ball, corrupt))
    right = obstruction_class(ball, [compose(t, map_track(f)) for t in tup], _signs(ball, corrupt))
    left = obstruction_class(ball, [compose(map_track(g), t) for t in tup], _signs(ball, corrupt))
    ok_r = np.array_equal(right.coords, right.space.class_of(base.chain @ f))
    ok_l = np.array_equal(left.coords, left.space.class_of(g @ base.chain))
    return ok_r and ok_l


def _check_triviality(rng, chain: HigherChain, order: int, corrupt: bool) -> bool | None:
    cands = []
    for r in range(1, order + 1):
        for s in range(1, order + 1):
            if r + s > order + 1:
                continue
            for i in chain.A:
                e = OB.triviality_instance(i, r, s)
                if all(chain.has(i, w) for w in e.labels):
                    cands.append(e)
    if not cands:
        return None
    e = cands[int(rng.integers(0, len(cands)))]
    return _safe(lambda: chain.obstruction(e, _signs(e.ball, corrupt)).is_zero)


def _check_fg(rng, chain: HigherChain) -> bool:
    srcs = [i for i in chain.A if chain.has(i, "J")]
    i = srcs[int(rng.integers(0, len(srcs)))]
    F = chain.track(i, "J")
    space = HomSpace(F.top.source, F.top.target, 1)
    G = F.plus(space.random_cycle(rng))
    loop = F.top - G.top
    o = obstruction_class(B.make_double(1), [F, G])
    return space.is_cycle(loop) and np.array_equal(o.coords, space.class_of(loop)) \
        and same_track(G.plus(loop), F)


def _check_product(rng, chain: HigherChain, corrupt: bool) -> bool | None:
    """O_{B x C}(x_i y_j) = O_B(x) O_C(y) for 1-balls B, C (T0^1 or doubles)."""
    kinds = {"T0": 2, "double": 1}  # word length of the cells
    opts = []
    for kb, lb in kinds.items():
        for kc, lc in kinds.items():
            for i1 in chain.A:
                i2 = i1 + lc + 1
                if i2 in chain.A and i1 - lb - 1 in chain.A:
                    opts.append((kb, i1, kc, i2))
    if not opts:
        return None
    kb, i1, kc, i2 = opts[int(rng.integers(0, len(opts)))]

    def make(kind, i):
        if kind == "T0":
            return B.make_T0(1), [chain.track(i, w) for w in W.boundary_words(1)]
        t = chain.track(i, "J")
        return B.make_double(1), [t.plus(HomSpace(t.top.source, t.top.target, 1).random_cycle(rng)), t]

    (bB, x), (bC, y) = make(kb, i1), make(kc, i2)
    prod = B.product(bB, bC)
    tup = [compose(xi, yj) for xi in x for yj in y]

    def run():
        ob = obstruction_class(prod, tup, _signs(prod, corrupt))
        oB = obstruction_class(bB, x, _signs(bB, corrupt))
        oC = obstruction_class(bC, y, _signs(bC, corrupt))
        want = oB.chain @ oC.chain
        return any((ob.chain - want.scale(c)).is_zero() for c in (1, -1))

    return _safe(run)


def _pre_chain_ok(L: list, K: dict, src_of, s: int) -> bool:
    """d L_k = -sum_t (-1)^t L_t K'(src_of(k), I_{k-1-t}) for k >= 1, K' = (-1)^{s j} K."""
    for k in range(1, len(L)):
        rhs = None
        for t in range(k):
            j = k - 1 - t
            h = K.get((src_of(k), j))
            if h is None or L[t] is None:
                continue
            term = (L[t] @ h).scale((-1) ** t * (-1) ** (s * j))
            rhs = term if rhs is None else rhs + term
        lhs = L[k].d()
        if rhs is not None:
            lhs = lhs + rhs
        if not lhs.is_zero():
            return False
    return True


def _check_sum_rule(rng, chain: HigherChain, m: int = 2) -> bool | None:
    """L'' = L + tau L' for pre-chain complexes into Y = A_0."""
    p = chain_p(chain)
    if any(k not in chain.A for k in range(0, m + 2)):
        return None
    Y = chain.A[0]
    K = chain.K
    L = [K[(k + 1, k)] for k in range(m + 1)]  # L_k: A_{k+1} -> Y, the cube I_k at k+1
    src = lambda k: k + 1
    if not _pre_chain_ok(L, K, src, 0):
        return False
    # M: M_0 = 0, M_1 a random cycle, M_k solved in turn (resample on failure)
    for _ in range(20):
        M = [zero(chain.A[1], Y, 0), HomSpace(chain.A[2], Y, 1).random_cycle(rng)]
        for k in range(2, m + 1):
            omega = zero(chain.A[k + 1], Y, k - 1)
            for t in range(k):
                omega = omega + (M[t] @ K[(k + 1, k - 1 - t)]).scale((-1) ** t)
            space = HomSpace(chain.A[k + 1], Y, k)
            sol = space.solve_d(-omega)
            if sol is None:
                break
            M.append(sol + space.random_cycle(rng))
        if len(M) == m + 1:
            break
    else:
        return None
    # L'_u on the suspended objects, related to M by M_{u+1} = (-1)^u tau L'_u
    SA = {k: X.suspend() for k, X in chain.A.items()}
    SK = {key: HMap(SA[key[0]], SA[key[0] - key[1] - 1], h.n,
                    {q + 1: ((-1) ** h.n * b) % p for q, b in h.blocks.items()})
          for key, h in K.items()}
    Lp = [HMap(SA[u + 2], Y, u, {q + 1: ((-1) ** u * b) % p for q, b in M[u + 1].blocks.items()})
          for u in range(m)]
    if not _pre_chain_ok(Lp, SK, lambda k: k + 2, 0):
        return False
    L2 = [L[k] + M[k] for k in range(m + 1)]
    if not _pre_chain_ok(L2, K, src, 0):
        return False
    # obstructions: O(L'') = O(L) - tau O(L')
    def obs(Ls, KK, src_k, k):
        out = None
        for t in range(k + 1):
            h = KK.get((src_k, k - t))
            if h is None:
                continue
            term = (Ls[t] @ h).scale((-1) ** t)
            out = term if out is None else out + term
        return out
    if m + 2 not in chain.A:
        return True
    o_l2, o_l = obs(L2, K, m + 2, m), obs(L, K, m + 2, m)
    o_lp = obs(Lp, SK, m + 2, m - 1)
    tau = HMap(chain.A[m + 2], Y, o_lp.n + 1, {q - 1: b for q, b in o_lp.blocks.items()})
    return (o_l2 - o_l + tau.scale((-1) ** (m - 1))).is_zero()


def axiom_suite(seed: int = 0, trials: int = 100, p: int = 3, corrupt: bool = False,
                order: int = 2) -> AxiomReport:
    """Randomized checks of the track-algebra laws in the chain model.

    Each trial draws a random filtered complex, reads off its generator tracks
    (a higher chain complex of every order) and perturbs the top tracks by
    random cycles.  ``corrupt`` replaces every orientation by +1, which must
    make the sign-sensitive checks fail.
    """
    rep = AxiomReport(seed, p, trials, corrupt)
    rng = np.random.default_rng(seed)
    done = 0
    while done < trials:
        fc = random_filtered_complex(rng, p=p, stages=6, depth=2, max_dim=2)
        chain = HigherChain.from_multicomplex(multicomplex(fc), max_order=order + 1)
        if not any(chain.has(i, "J") for i in chain.A):
            continue
        done += 1
        pert = chain.perturb(rng, order)
        rep.record("enrichment", _safe(lambda: _check_enrichment(rng, pert, order)))
        rep.record("boundary_dim1", _safe(lambda: _check_boundary_dim1(rng, pert, corrupt)))
        dbl, act = _check_double_and_action(rng, pert, order, corrupt)
        rep.record("double", dbl)
        rep.record("action", act)
        rep.record("naturality", _safe(lambda: _check_naturality(rng, pert, order, corrupt)))
        rep.record("fg_inverse", _safe(lambda: _check_fg(rng, pert)))
        for name, fn in (("triviality", lambda: _check_triviality(rng, pert, order, corrupt)),
                         ("complement", lambda: _check_complement(chain, 1 + done % 2, corrupt)),
                         ("product_rule", lambda: _check_product(rng, pert, corrupt)),
                         ("sum_rule", lambda: _check_sum_rule(rng, chain))):
            try:
                res = fn()
            except (TrackError, ValueError):
                res = False
            if res is not None:
                rep.record(name, res)
    return rep


def resolution_d2(hr: HigherResolution, r: int, t: int, beta) -> np.ndarray:
    """d_2 in the split model: beta is an A-linear cocycle A_r -> F_p of internal
    degree t, given on the degree-t generators; returns the values of
    omega = beta K(r+2, I_1) on the generators of A_{r+2} of degree t - 1.
    With zero differentials H = 0, so omega is the whole obstruction."""
    if hr.n < 1 or r + 2 > hr.i_max:
        raise ValueError("need order >= 1 and r + 2 within the lifted range")
    p = hr.p
    gens_r = hr.base.stages[r].gens
    src = [j for j, g in enumerate(gens_r) if g == t]
    beta = np.asarray(beta, dtype=np.int64) % p
    if len(beta) != len(src):
        raise ValueError("beta must give one value per degree-t generator")
    Ar = hr.base.stages[r]
    out = []
    for j, g in enumerate(hr.base.stages[r + 2].gens):
        if g != t - 1 or g > hr.window:
            continue
        v = hr.K[(r + 2, 1)][j]  # element of (A_r)_t
        basis = Ar.basis(t)
        val = 0
        for coeff, (gj, b) in zip(v, basis):
            if b == 0 and gj in src:  # unit times generator
                val += coeff * beta[src.index(gj)]
        out.append(val % p)
    return np.array(out, dtype=np.int64)

"""Left cubical balls as combinatorial cell complexes.

A ball of dimension n is a list of n-cubes that all contain the vertex 0.
Cubes are glued along 0-faces: a gluing ``(i, (k,), j, (l,))`` identifies the
k-th 0-face of cell i with the l-th 0-face of cell j through the order
preserving bijection of the remaining coordinates.  A left cubical ball has
every 0-face glued exactly once, so its boundary is the union of the 1-faces.
Sub-balls and complements additionally carry ``cut`` faces: 0-faces left free
because the neighbouring cell was removed.
"""
from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field
from itertools import combinations, permutations

import networkx as nx

from . import words as W


class BallError(ValueError):
    pass


class OrientationError(BallError):
    pass


Gluing = tuple[int, tuple[int, ...], int, tuple[int, ...]]


@dataclass(frozen=True)
class Ball:
    dim: int
    cells: int
    gluings: tuple[Gluing, ...]
    cut: tuple[tuple[int, int], ...] = ()
    labels: tuple[str, ...] | None = None

    def to_json(self) -> str:
        data = {
            "dim": self.dim,
            "cells": self.cells,
            "gluings": [[i, list(a), j, list(b)] for i, a, j, b in self.gluings],
        }
        if self.cut:
            data["cut"] = [list(c) for c in self.cut]
        if self.labels is not None:
            data["labels"] = list(self.labels)
        return json.dumps(data, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "Ball":
        data = json.loads(text)
        try:
            glue = tuple((int(g[0]), tuple(g[1]), int(g[2]), tuple(g[3])) for g in data["gluings"])
            cut = tuple(tuple(c) for c in data.get("cut", []))
            labels = tuple(data["labels"]) if "labels" in data else None
            return cls(int(data["dim"]), int(data["cells"]), glue, cut, labels)
        except (KeyError, TypeError, IndexError) as exc:
            raise BallError(f"malformed ball JSON: {exc}") from exc

    @property
    def left_cubical(self) -> bool:
        return not self.cut

    def face_partner(self) -> dict[tuple[int, int], tuple[int, int]]:
        out = {}
        for i, (k,), j, (l,) in self.gluings:
            out[(i, k)] = (j, l)
            out[(j, l)] = (i, k)
        return out


@dataclass
class BallReport:
    problems: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.problems

    def __bool__(self) -> bool:
        return self.ok


# -- face identifications -------------------------------------------------------

def _coord_map(n: int, k: int, l: int) -> dict[int, int]:
    src = [c for c in range(1, n + 1) if c != k]
    dst = [c for c in range(1, n + 1) if c != l]
    return dict(zip(src, dst))


def _face_classes(b: Ball) -> dict[tuple[int, frozenset], tuple[int, frozenset]]:
    """Union-find over faces (cell, Z) through 0, Z = coordinates fixed at 0."""
    n = b.dim
    parent: dict = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)

    subsets = [frozenset(z) for r in range(1, n + 1) for z in combinations(range(1, n + 1), r)]
    for c in range(b.cells):
        for z in subsets:
            find((c, z))
    for i, (k,), j, (l,) in b.gluings:
        phi = _coord_map(n, k, l)
        for z in subsets:
            if k in z:
                image = frozenset({l} | {phi[c] for c in z if c != k})
                union((i, z), (j, image))
    return {x: find(x) for x in list(parent)}


def validate_ball(b: Ball) -> BallReport:
    rep = BallReport()
    n, k = b.dim, b.cells
    if n < 1 or k < 1:
        rep.problems.append("dimension and cell count must be positive")
        return rep
    seen: dict[tuple[int, int], int] = {}
    for g in b.gluings:
        i, a, j, c = g
        if not (0 <= i < k and 0 <= j < k):
            rep.problems.append(f"gluing {g} names a missing cell")
            continue
        if len(a) != 1 or len(c) != 1 or not (1 <= a[0] <= n and 1 <= c[0] <= n):
            rep.problems.append(f"gluing {g} is not along 0-faces of codimension 1")
            continue
        if (i, a[0]) == (j, c[0]):
            rep.problems.append(f"gluing {g} glues a face to itself")
        for f in ((i, a[0]), (j, c[0])):
            seen[f] = seen.get(f, 0) + 1
    for f in b.cut:
        seen[tuple(f)] = seen.get(tuple(f), 0) + 1
    if rep.problems:
        return rep
    for c in range(k):
        for q in range(1, n + 1):
            cnt = seen.get((c, q), 0)
            if cnt == 0:
                rep.problems.append(
                    f"boundary coverage: 0-face {q} of cell {c} is free, so the boundary "
                    "is not the union of the 1-faces")
            elif cnt > 1:
                rep.problems.append(f"0-face {q} of cell {c} is glued {cnt} times")
    if rep.problems:
        return rep

    g = nx.Graph()
    g.add_nodes_from(range(k))
    g.add_edges_from((i, j) for i, _, j, _ in b.gluings)
    if not nx.is_connected(g):
        rep.problems.append("cells are not connected through interior faces")
        return rep

    cls = _face_classes(b)
    groups: dict = {}
    for (c, z), r in cls.items():
        groups.setdefault(r, []).append((c, z))
    for r, members in groups.items():
        cs = [c for c, _ in members]
        if len(cs) != len(set(cs)):
            rep.problems.append(f"charts do not commute: a cell meets itself in face class {members[0]}")
            return rep

    if n <= 3:
        _check_link(b, cls, rep)
    else:
        rep.notes.append("link of 0 not checked for n >= 4")
        warnings.warn("sphere recognition for the link of 0 is skipped for n >= 4", stacklevel=2)
    return rep


def _check_link(b: Ball, cls, rep: BallReport) -> None:
    """The link of 0 must be a sphere (closed ball) or a disc (ball with cut)."""
    n = b.dim
    closed = not b.cut
    reps = {r for (c, z), r in cls.items() if len(z) < n}
    chi = sum((-1) ** (n - len(z) - 1) for (c, z) in reps)
    chi += (-1) ** (n - 1) * b.cells  # top simplices, one per cell
    want = (1 + (-1) ** (n - 1)) if closed else 1
    if chi != want:
        rep.problems.append(f"link of 0 has Euler characteristic {chi}, expected {want}")
        return
    if n == 3:
        partner = b.face_partner()
        edges: dict = {}
        for c in range(b.cells):
            for x in range(1, n + 1):
                z = frozenset(set(range(1, n + 1)) - {x})
                edges.setdefault(cls[(c, z)], []).append((c, x))
        for e, inc in edges.items():
            g = nx.MultiGraph()
            g.add_nodes_from(inc)
            index = {(c, x): (c, x) for c, x in inc}
            for c, x in inc:
                for kf in range(1, n + 1):
                    if kf == x or (c, kf) not in partner:
                        continue
                    d, l = partner[(c, kf)]
                    if (d, l) < (c, kf):
                        continue
                    phi = _coord_map(n, kf, l)
                    node = (d, phi[x])
                    if node in index:
                        g.add_edge((c, x), node)
            if not nx.is_connected(g):
                rep.problems.append("link of 0 is not a manifold at some vertex")
                return
            degs = {deg for _, deg in g.degree()}
            if closed and degs != {2}:
                rep.problems.append("link of 0 is not a closed surface")
                return


# -- constructors ---------------------------------------------------------------

def ball_from_words(labels, require_closed: bool = False) -> Ball:
    """The ball whose cells are the given words, glued along equal 0-face words."""
    labels = tuple(labels)
    if not labels:
        raise BallError("no cells")
    n = W.dim(labels[0])
    if any(W.dim(w) != n or len(w) != len(labels[0]) for w in labels):
        raise BallError("labels must share length and dimension")
    where: dict[str, list[tuple[int, int]]] = {}
    for c, w in enumerate(labels):
        for q in range(1, n + 1):
            where.setdefault(W.face(w, q), []).append((c, q))
    glue, cut = [], []
    for f, occ in sorted(where.items()):
        if len(occ) == 2:
            (i, a), (j, c) = occ
            glue.append((i, (a,), j, (c,)))
        elif len(occ) == 1:
            cut.append(occ[0])
        else:
            raise BallError(f"face {f} is shared by {len(occ)} cells")
    if require_closed and cut:
        raise BallError("labels do not close up into a left cubical ball")
    return Ball(n, len(labels), tuple(glue), tuple(sorted(cut)), labels)


def make_T0(n: int) -> Ball:
    """T_0^n: the n+1 faces {x_i = 0} of I^{n+1}; cell i is labelled by 0 (x) ... (x) 0."""
    if n < 1:
        raise BallError("n >= 1 required")
    return ball_from_words(W.boundary_words(n), require_closed=True)


def make_double(n: int) -> Ball:
    if n < 1:
        raise BallError("n >= 1 required")
    glue = tuple((0, (q,), 1, (q,)) for q in range(1, n + 1))
    return Ball(n, 2, glue, (), (W.I(n), W.I(n)))


def single_cell(n: int) -> Ball:
    return Ball(n, 1, (), tuple((0, q) for q in range(1, n + 1)), (W.I(n),))


def restrict(b: Ball, keep) -> tuple[Ball, list[int]]:
    """Sub-complex on the given cells; faces glued to dropped cells become cut."""
    keep = sorted(set(keep))
    new = {c: t for t, c in enumerate(keep)}
    glue, cut = [], [(new[c], q) for c, q in b.cut if c in new]
    for i, a, j, c in b.gluings:
        if i in new and j in new:
            glue.append((new[i], a, new[j], c))
        elif i in new:
            cut.append((new[i], a[0]))
        elif j in new:
            cut.append((new[j], c[0]))
    labels = tuple(b.labels[c] for c in keep) if b.labels is not None else None
    return Ball(b.dim, len(keep), tuple(glue), tuple(sorted(cut)), labels), keep


def is_sub_ball(b: Ball, cells) -> bool:
    cells = set(cells)
    if not cells or not cells <= set(range(b.cells)):
        return False
    if not validate_ball(restrict(b, cells)[0]).ok:
        return False
    if len(cells) < b.cells:
        return validate_ball(restrict(b, set(range(b.cells)) - cells)[0]).ok
    return True


def complement(b: Ball, cells) -> Ball:
    """A_B: the closure of the complement of the sub-ball on ``cells``."""
    cells = set(cells)
    if len(cells) >= b.cells:
        raise BallError("a complement needs t < k")
    if not is_sub_ball(b, cells):
        raise BallError(f"cells {sorted(cells)} do not form a sub-ball")
    return restrict(b, set(range(b.cells)) - cells)[0]


def union_of_complements(aB: Ball, aC: Ball, shared) -> Ball:
    """A_B glued to A_C along S; ``shared`` pairs cut faces (cellB, q, cellC, l)."""
    if aB.dim != aC.dim:
        raise BallError("dimension mismatch")
    off = aB.cells
    cutB, cutC = set(aB.cut), set(aC.cut)
    glue = list(aB.gluings) + [(i + off, a, j + off, c) for i, a, j, c in aC.gluings]
    for cb, q, cc, l in shared:
        if (cb, q) not in cutB or (cc, l) not in cutC:
            raise BallError(f"shared face ({cb},{q})~({cc},{l}) is not on both cuts")
        cutB.discard((cb, q))
        cutC.discard((cc, l))
        glue.append((cb, (q,), cc + off, (l,)))
    cut = sorted(cutB) + sorted((c + off, q) for c, q in cutC)
    labels = None
    if aB.labels is not None and aC.labels is not None:
        labels = aB.labels + aC.labels
    out = Ball(aB.dim, aB.cells + aC.cells, tuple(glue), tuple(cut), labels)
    rep = validate_ball(out)
    if not rep.ok:
        raise BallError("union of complements is not a ball: " + "; ".join(rep.problems))
    return out


def product(b: Ball, c: Ball) -> Ball:
    """B x C with cells B_i x C_j (index i * |C| + j); B's coordinates come first."""
    n, m, kc = b.dim, c.dim, c.cells
    glue = []
    for i, a, i2, a2 in b.gluings:
        for j in range(kc):
            glue.append((i * kc + j, a, i2 * kc + j, a2))
    for j, a, j2, a2 in c.gluings:
        for i in range(b.cells):
            glue.append((i * kc + j, (a[0] + n,), i * kc + j2, (a2[0] + n,)))
    cut = [(i * kc + j, q) for i, q in b.cut for j in range(kc)]
    cut += [(i * kc + j, q + n) for j, q in c.cut for i in range(b.cells)]
    labels = None
    if b.labels is not None and c.labels is not None:
        labels = tuple(f"{x}x{y}" for x in b.labels for y in c.labels)
    return Ball(n + m, b.cells * kc, tuple(glue), tuple(sorted(cut)), labels)


# -- orientation ----------------------------------------------------------------

def orientation_signs(b: Ball) -> list[int]:
    """Signs relative to cell 0 (which gets +1).

    Across an interior face glued as (i, k) ~ (j, l), the two cells induce
    opposite orientations on the face: eps_i (-1)^k = -eps_j (-1)^l.
    """
    eps: dict[int, int] = {0: 1}
    adj: dict[int, list] = {}
    for i, (k,), j, (l,) in b.gluings:
        s = -((-1) ** (k + l))
        adj.setdefault(i, []).append((j, s))
        adj.setdefault(j, []).append((i, s))
    stack = [0]
    while stack:
        i = stack.pop()
        for j, s in adj.get(i, []):
            want = eps[i] * s
            if j not in eps:
                eps[j] = want
                stack.append(j)
            elif eps[j] != want:
                raise OrientationError("orientation propagation is path dependent")
    if len(eps) != b.cells:
        raise BallError("ball is not connected")
    return [eps[c] for c in range(b.cells)]


# -- equivalence and search -----------------------------------------------------

def _gluing_maps(b: Ball) -> dict[tuple[int, int], tuple[int, int, dict]]:
    out = {}
    for i, (k,), j, (l,) in b.gluings:
        out[(i, k)] = (j, l, _coord_map(b.dim, k, l))
        out[(j, l)] = (i, k, _coord_map(b.dim, l, k))
    return out


def equivalent(b1: Ball, b2: Ball, use_labels: bool = False, coord_perms: bool = True) -> bool:
    """Cellular isomorphism fixing 0: a cell bijection plus a coordinate
    permutation of each cube carrying gluings to gluings."""
    if (b1.dim, b1.cells, len(b1.gluings), len(b1.cut)) != (b2.dim, b2.cells, len(b2.gluings), len(b2.cut)):
        return False
    n = b1.dim
    g1, g2 = _gluing_maps(b1), _gluing_maps(b2)
    cut2 = set(b2.cut)
    perms = list(permutations(range(1, n + 1))) if coord_perms and not use_labels else [tuple(range(1, n + 1))]
    perms = [dict(zip(range(1, n + 1), p)) for p in perms]
    cells = list(range(b1.cells))

    def ok_cell(c, pc, sig, cmap, smap):
        for q in range(1, n + 1):
            if (c, q) in g1:
                d, l, phi = g1[(c, q)]
                if d in cmap:
                    tgt = g2.get((pc, sig[q]))
                    if tgt is None or tgt[0] != cmap[d] or tgt[1] != smap[d][l]:
                        return False
                    # coordinate maps must be conjugate
                    psi = tgt[2]
                    for x, y in phi.items():
                        if psi[sig[x]] != smap[d][y]:
                            return False
            elif (pc, sig[q]) not in cut2:
                return False
        return True

    def rec(t, cmap, smap, used):
        if t == len(cells):
            return True
        c = cells[t]
        for pc in range(b2.cells):
            if pc in used:
                continue
            if use_labels and b1.labels[c] != b2.labels[pc]:
                continue
            for sig in perms:
                if ok_cell(c, pc, sig, cmap, smap):
                    cmap[c] = pc
                    smap[c] = sig
                    used.add(pc)
                    if rec(t + 1, cmap, smap, used):
                        return True
                    used.discard(pc)
                    del cmap[c], smap[c]
        return False

    return rec(0, {}, {}, set())


def _matchings(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for t in range(len(rest)):
        for m in _matchings(rest[:t] + rest[t + 1:]):
            yield [(first, rest[t])] + m


def search_balls(n: int, k: int) -> list[Ball]:
    """All left cubical balls of dimension n with k cells, up to equivalence.

    Exhaustive over perfect matchings of the k*n 0-faces.
    """
    if n < 1 or k < 1:
        raise BallError("n, k >= 1")
    if n * k > 12 or n > 3:
        raise BallError("parameters too large for exhaustive search (need n <= 3, n*k <= 12)")
    faces = [(c, q) for c in range(k) for q in range(1, n + 1)]
    classes: list[Ball] = []
    if len(faces) % 2:
        return classes
    for m in _matchings(faces):
        glue = tuple((a[0], (a[1],), b[0], (b[1],)) for a, b in m)
        ball = Ball(n, k, glue)
        if not validate_ball(ball).ok:
            continue
        if not any(equivalent(ball, other) for other in classes):
            classes.append(ball)
    return classes

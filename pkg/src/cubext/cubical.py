"""Left cubical sets, the enrichment law, and the pointed W-construction on Gamma.

Left cubical sets only have the 0-face operators d^i = (d_0^i)^*.  Under the
identification of the left cubical category with finite ordered sets and
order preserving injections, d^i corresponds to omitting i, which forces

    d^i d^j = d^{j-1} d^i   for i < j.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Union

from . import words as W

BASE = "*"


@dataclass
class LeftCubicalSet:
    """Finite, dimension-bounded left cubical set.

    ``cells[m]`` lists the names of the m-cells (the base point ``*`` is
    implicit in every dimension).  ``faces[(m, i)]`` maps an m-cell name to the
    name of its i-th face (an (m-1)-cell or ``*``).
    """

    dim_bound: int
    cells: list[list[str]]
    faces: dict[tuple[int, int], dict[str, str]] = field(default_factory=dict)

    def face(self, m: int, i: int, x: str) -> str:
        if x == BASE:
            return BASE
        return self.faces[(m, i)][x]

    def to_json(self) -> str:
        data = {
            "dim_bound": self.dim_bound,
            "cells": self.cells,
            "faces": {f"{m},{i}": mp for (m, i), mp in sorted(self.faces.items())},
        }
        return json.dumps(data, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "LeftCubicalSet":
        data = json.loads(text)
        faces = {}
        for key, mp in data["faces"].items():
            m, i = (int(t) for t in key.split(","))
            faces[(m, i)] = dict(mp)
        return cls(int(data["dim_bound"]), [list(c) for c in data["cells"]], faces)


def validate(K: LeftCubicalSet) -> list[str]:
    """Every violated face identity or base point condition; empty means valid."""
    problems: list[str] = []
    for m in range(1, K.dim_bound + 1):
        lower = set(K.cells[m - 1]) | {BASE}
        for i in range(1, m + 1):
            mp = K.faces.get((m, i), {})
            if mp.get(BASE, BASE) != BASE:
                problems.append(f"d^{i} does not fix the base point in dim {m}")
            for x in K.cells[m]:
                if x not in mp:
                    problems.append(f"d^{i} undefined on {x}")
                elif mp[x] not in lower:
                    problems.append(f"d^{i}({x}) = {mp[x]} is not an ({m - 1})-cell")
    if problems:
        return problems
    for m in range(2, K.dim_bound + 1):
        for x in K.cells[m]:
            for j in range(2, m + 1):
                for i in range(1, j):
                    lhs = K.face(m - 1, i, K.face(m, j, x))
                    rhs = K.face(m - 1, j - 1, K.face(m, i, x))
                    if lhs != rhs:
                        problems.append(
                            f"d^{i}d^{j}({x}) = {lhs} but d^{j - 1}d^{i}({x}) = {rhs}")
    return problems


def representable_cube(n: int) -> LeftCubicalSet:
    """The free left cubical set on one n-cube, truncated at dimension n.

    Its m-cells are the m-subsets of {1..n} (order preserving injections).
    """
    def name(s: tuple[int, ...]) -> str:
        return "{" + ",".join(map(str, s)) + "}"

    cells = [[name(s) for s in combinations(range(1, n + 1), m)] for m in range(n + 1)]
    faces: dict[tuple[int, int], dict[str, str]] = {}
    for m in range(1, n + 1):
        for i in range(1, m + 1):
            faces[(m, i)] = {
                name(s): name(s[: i - 1] + s[i:]) for s in combinations(range(1, n + 1), m)
            }
    return LeftCubicalSet(n, cells, faces)


# -- the pointed W-construction on Gamma --------------------------------------

@dataclass(frozen=True)
class WCube:
    """The indecomposable cube I^n on the chain (d_source, ..., d_{source-n}).

    It runs from ``source`` to ``source - n - 1``.
    """

    source: int
    dim: int

    @property
    def target(self) -> int:
        return self.source - self.dim - 1

    @property
    def sequence(self) -> tuple[str, ...]:
        return tuple(f"d{self.source - k}" for k in range(self.dim + 1))


@dataclass(frozen=True)
class Composite:
    """A smash composite c_1 ^ ... ^ c_r of indecomposable cubes, c_1 applied last."""

    cubes: tuple[WCube, ...]

    def __post_init__(self):
        for later, first in zip(self.cubes, self.cubes[1:]):
            if first.target != later.source:
                raise ValueError("cubes are not composable")

    @property
    def source(self) -> int:
        return self.cubes[-1].source

    @property
    def target(self) -> int:
        return self.cubes[0].target

    @property
    def dim(self) -> int:
        return sum(c.dim for c in self.cubes)


class ZeroCube:
    """The zero cube o^t."""

    def __init__(self, dim: int):
        self.dim = dim

    def __eq__(self, other):
        return isinstance(other, ZeroCube) and other.dim == self.dim

    def __hash__(self):
        return hash(("zero", self.dim))

    def __repr__(self):
        return f"ZeroCube({self.dim})"


WMorphism = Union[Composite, ZeroCube]


def w_cubes(i: int, j: int, dim_bound: int) -> list[WCube]:
    """Indecomposable nondegenerate cubes i -> j of dimension <= dim_bound."""
    n = i - j - 1
    if n < 0 or n > dim_bound:
        return []
    return [WCube(i, n)]


def w_face(c: WCube, i: int, eps: int) -> WMorphism:
    if not 1 <= i <= c.dim:
        raise IndexError(f"face index {i} out of range for a {c.dim}-cube")
    if eps == 1:
        # composing two consecutive arrows of Gamma gives o
        return ZeroCube(c.dim - 1)
    later = WCube(c.source - (c.dim - i) - 1, i - 1)
    first = WCube(c.source, c.dim - i)
    return Composite((later, first))


def smash(f: WMorphism, g: WMorphism) -> WMorphism:
    """f ^ g (g applied first), with zero absorption."""
    if isinstance(f, ZeroCube) or isinstance(g, ZeroCube):
        return ZeroCube(f.dim + g.dim)
    return Composite(f.cubes + g.cubes)


def composite_face(f: WMorphism, i: int) -> WMorphism:
    """0-face of a composite by the enrichment law."""
    if isinstance(f, ZeroCube):
        return ZeroCube(f.dim - 1)
    if not 1 <= i <= f.dim:
        raise IndexError("face index out of range")
    head, *tail = f.cubes
    if i <= head.dim:
        return smash(w_face(head, i, 0), Composite(tuple(tail)) if tail else _unit())
    rest = composite_face(Composite(tuple(tail)), i - head.dim)
    return smash(Composite((head,)), rest)


class _Unit:
    cubes: tuple = ()
    dim = 0


def _unit():
    return _Unit()


def phi(m: W.ChainMorphism) -> Composite:
    """The functor from the chain category to W*Gamma on a morphism (i, V)."""
    return Composite(tuple(WCube(g.source, W.dim(g.word)) for g in W.generators(m)))


def phi_inverse(c: Composite) -> W.ChainMorphism:
    return W.ChainMorphism(c.source, "s".join("J" * q.dim for q in c.cubes))


def w_morphisms(i: int, j: int, dim_bound: int) -> list[Composite]:
    """Nonzero nondegenerate morphisms i -> j: composites of indecomposables.

    Enumerated on the W side only, by choosing the lengths of the cubes.
    """
    out: list[Composite] = []

    def rec(src: int, acc: tuple[WCube, ...], d: int):
        if src == j:
            return
        for n in range(0, src - j):
            if d + n > dim_bound:
                break
            cube = WCube(src, n)
            chain = (cube,) + acc
            if cube.target == j:
                out.append(Composite(chain))
            else:
                rec(cube.target, chain, d + n)

    rec(i, (), 0)
    return out


def verify_w_iso(lo: int, hi: int, dim_bound: int, perturb: bool = False) -> list[str]:
    """Compare the chain category with W*Gamma on objects lo..hi.

    Checks, for every hom-set, that the map on words is a dimension preserving
    bijection onto nonzero nondegenerate W-cubes with C(L, k) elements of
    dimension k, and that 0-faces of words (a J turned into s) match the
    W-side faces computed by the enrichment law; every 1-face is zero.
    ``perturb`` deliberately corrupts the face comparison (negative control).
    """
    if dim_bound > 6:
        raise ValueError("dim_bound must be <= 6")
    report: list[str] = []
    for i in range(lo, hi + 1):
        for j in range(lo, i):
            zw = W.enumerate_morphisms(i, j, dim_bound)
            ww = w_morphisms(i, j, dim_bound)
            images = [phi(m) for m in zw]
            if len(set(images)) != len(images):
                report.append(f"{i}->{j}: map is not injective")
            if set(images) != set(ww):
                report.append(f"{i}->{j}: map is not onto the W-side cubes")
            L = i - j - 1
            for k in range(dim_bound + 1):
                nz = sum(1 for m in zw if m.dim == k)
                nw = sum(1 for c in ww if c.dim == k)
                if not nz == nw == comb(L, k):
                    report.append(f"{i}->{j} dim {k}: {nz} words, {nw} cubes, C={comb(L, k)}")
            for m, c in zip(zw, images):
                if c.dim != m.dim:
                    report.append(f"{m}: dimension changed")
                for p in range(1, m.dim + 1):
                    want = phi(W.ChainMorphism(i, W.face(m.word, p)))
                    got = composite_face(c, p)
                    if perturb and p == 1:
                        got = composite_face(c, m.dim)
                    if got != want:
                        report.append(f"{m}: face {p} mismatch")
                for cube in c.cubes:
                    for p in range(1, cube.dim + 1):
                        if w_face(cube, p, 1) != ZeroCube(cube.dim - 1):
                            report.append(f"{m}: nonzero 1-face")
    return report

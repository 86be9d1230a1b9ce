"""Words over {s, J}, the operation V (x) W = V s W, and the chain category.

A word is a plain ``str`` over the letters ``s`` and ``J``; the empty string
is the empty word.  ``I_k`` is stored as ``"J" * k``, so the relation
I_n I_m = I_{n+m} holds by concatenation.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator

LETTERS = ("s", "J")


class WordError(ValueError):
    pass


def check_word(w: str) -> str:
    if any(c not in LETTERS for c in w):
        raise WordError(f"not a word over {{s, J}}: {w!r}")
    return w


def I(k: int) -> str:
    """The generator I_k (k >= 1) as J^k; I(0) is the empty word."""
    if k < 0:
        raise WordError("I_k needs k >= 0")
    return "J" * k


def deg(w: str) -> int:
    return len(check_word(w))


def dim(w: str) -> int:
    return check_word(w).count("J")


def otimes(v: str, w: str, *rest: str) -> str:
    """V (x) W = V s W; associative and without unit."""
    out = check_word(v) + "s" + check_word(w)
    for u in rest:
        out = out + "s" + check_word(u)
    return out


def j_positions(w: str) -> list[int]:
    return [k for k, c in enumerate(w) if c == "J"]


def in_boundary(v: str, w: str) -> bool:
    """True iff v is in the boundary of w (same length, J's of v among J's of w)."""
    check_word(v)
    check_word(w)
    if len(v) != len(w):
        return False
    return all(b == "J" for a, b in zip(v, w) if a == "J")


@dataclass(frozen=True)
class BoundaryInclusion:
    """Composite of the 0-face inclusions d_0^i of the left cubical category.

    ``positions`` are the 1-based cube coordinates of the larger cube that are
    *not* hit by the smaller cube, in increasing order; ``source_dim`` is the
    dimension of the smaller cube.
    """

    source_dim: int
    positions: tuple[int, ...]

    @property
    def target_dim(self) -> int:
        return self.source_dim + len(self.positions)

    def image(self) -> tuple[int, ...]:
        """Coordinates of the target cube hit by the source coordinates 1..m."""
        gaps = set(self.positions)
        return tuple(c for c in range(1, self.target_dim + 1) if c not in gaps)

    def then(self, other: "BoundaryInclusion") -> "BoundaryInclusion":
        """Composite: first ``self`` then ``other`` (other.source_dim == self.target_dim)."""
        if other.source_dim != self.target_dim:
            raise WordError("inclusions are not composable")
        img = other.image()
        hit = {img[c - 1] for c in self.image()}
        gaps = tuple(c for c in range(1, other.target_dim + 1) if c not in hit)
        return BoundaryInclusion(self.source_dim, gaps)


def boundary_inclusion(v: str, w: str) -> BoundaryInclusion:
    if not in_boundary(v, w):
        raise WordError(f"{v!r} is not in the boundary of {w!r}")
    jw = j_positions(w)
    jv = set(j_positions(v))
    gaps = tuple(k + 1 for k, pos in enumerate(jw) if pos not in jv)
    return BoundaryInclusion(dim(v), gaps)


def face(w: str, k: int) -> str:
    """The k-th 0-face of w (1-based among its J's): that J becomes s."""
    js = j_positions(w)
    if not 1 <= k <= len(js):
        raise WordError(f"face index {k} out of range for {w!r}")
    pos = js[k - 1]
    return w[:pos] + "s" + w[pos + 1:]


def split(w: str) -> list[str]:
    """Factor w = V_1 (x) ... (x) V_r into s-free words (I_k or empty)."""
    return check_word(w).split("s")


@dataclass(frozen=True)
class ChainMorphism:
    """A non-identity morphism (i, V): i -> i - deg V - 1 of the chain category."""

    source: int
    word: str

    def __post_init__(self):
        check_word(self.word)

    @property
    def target(self) -> int:
        return self.source - len(self.word) - 1

    @property
    def dim(self) -> int:
        return dim(self.word)

    def __str__(self) -> str:
        return f"{self.source}:{self.word}"

    @classmethod
    def parse(cls, text: str) -> "ChainMorphism":
        src, _, word = text.partition(":")
        try:
            return cls(int(src), word)
        except ValueError as exc:
            raise WordError(f"cannot parse chain morphism {text!r}") from exc


def compose_chain(g: ChainMorphism, f: ChainMorphism) -> ChainMorphism:
    """g after f."""
    if f.target != g.source:
        raise WordError(f"cannot compose {g} after {f}: {f.target} != {g.source}")
    return ChainMorphism(f.source, otimes(g.word, f.word))


def generators(m: ChainMorphism) -> list[ChainMorphism]:
    """The unique factorization into generators (i, empty) and (i, I_k), first map last."""
    parts = split(m.word)
    out: list[ChainMorphism] = []
    src = m.source
    for part in reversed(parts):
        out.append(ChainMorphism(src, part))
        src = src - len(part) - 1
    return list(reversed(out))


def _words(length: int, dim_bound: int) -> Iterator[str]:
    for letters in product(LETTERS, repeat=length):
        w = "".join(letters)
        if w.count("J") <= dim_bound:
            yield w


def enumerate_morphisms(i: int, j: int, dim_bound: int) -> list[ChainMorphism]:
    """All morphisms i -> j of dim <= dim_bound, words in lexicographic order (s < J)."""
    if i <= j:
        return []
    return [ChainMorphism(i, w) for w in _words(i - j - 1, dim_bound)]


def boundary_tuple(i: int, n: int) -> list[ChainMorphism]:
    """(i, d I_{n+1}) = ((i, 0 (x) I_n), (i, I_1 (x) I_{n-1}), ..., (i, I_n (x) 0))."""
    if n < 1:
        raise WordError("boundary_tuple needs n >= 1")
    return [ChainMorphism(i, otimes(I(r), I(n - r))) for r in range(n + 1)]


def boundary_words(n: int) -> list[str]:
    """Words of d I_{n+1}; for n = 0 this is the single word s = 0 (x) 0."""
    return [otimes(I(r), I(n - r)) for r in range(n + 1)]

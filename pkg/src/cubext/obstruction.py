"""Formal obstruction calculus over words and a prover for the lifting lemma.

An expression is a multiset of words of equal length and dimension, placed
at a source object i.  Its ball is the word ball: cells are the words and two
cells are glued along a 0-face when the face words agree.  The calculus never
needs actual track values, only which words occur.

Relations asserted to vanish:

* triviality ``d(r, s) = ((dI_r) (x) I_s, I_r (x) (dI_s))``, r + s = n + 1;
* the hypothesis ``dI_{n+1}`` at i - 1, moved to i by naturality as
  ``Y = (dI_{n+1}) (x) 0``;
* the goal is ``X = 0 (x) (dI_{n+1})`` at i.

(Here 0 stands for the empty word, and V (x) W = V s W.)
"""
from __future__ import annotations

import hashlib
from collections import Counter, deque
from dataclasses import dataclass, field

from . import balls as B
from . import words as W


class DerivationError(ValueError):
    pass


def dI(r: int) -> list[str]:
    """Words of the boundary tuple dI_r (r >= 1); dI_1 = 0 (x) 0."""
    if r < 1:
        raise DerivationError("dI_r needs r >= 1")
    return W.boundary_words(r - 1)


@dataclass(frozen=True)
class ObsExpression:
    source: int
    labels: tuple[str, ...]

    def __post_init__(self):
        labs = tuple(sorted(W.check_word(w) for w in self.labels))
        if not labs:
            raise DerivationError("empty expression")
        if len({(len(w), W.dim(w)) for w in labs}) != 1:
            raise DerivationError("labels must share length and dimension")
        object.__setattr__(self, "labels", labs)

    @property
    def dim(self) -> int:
        return W.dim(self.labels[0])

    @property
    def cells(self) -> int:
        return len(self.labels)

    @property
    def ball(self) -> B.Ball:
        return B.ball_from_words(self.labels)

    def digest(self) -> str:
        return hashlib.sha256(self.ball.to_json().encode()).hexdigest()[:12]

    def __str__(self) -> str:
        return f"{self.source}:(" + ", ".join(w or "0" for w in self.labels) + ")"


def expression(source: int, labels) -> ObsExpression:
    return ObsExpression(source, tuple(labels))


def triviality_instance(i: int, r: int, s: int) -> ObsExpression:
    if r < 1 or s < 1:
        raise DerivationError("r, s >= 1 required")
    left = [W.otimes(w, W.I(s)) for w in dI(r)]
    right = [W.otimes(W.I(r), w) for w in dI(s)]
    return expression(i, left + right)


def hypothesis(i: int, n: int) -> ObsExpression:
    """dI_{n+1} at i, the assumed vanishing one object down."""
    return expression(i, dI(n + 1))


def naturality(e: ObsExpression, prefix: bool) -> ObsExpression:
    """Compose with the 0-dimensional map 0: ``0 (x) e`` (later map) or
    ``e (x) 0`` (precomposition, which moves the source up by one)."""
    if prefix:
        return expression(e.source, [W.otimes("", w) for w in e.labels])
    return expression(e.source + 1, [W.otimes(w, "") for w in e.labels])


def goal(i: int, n: int) -> ObsExpression:
    return expression(i, [W.otimes("", w) for w in dI(n + 1)])


def cell_bound(n: int) -> int:
    return (n // 2) * (n - 1) + n + 1


def complement_rewrite(x: ObsExpression, rel: ObsExpression) -> ObsExpression:
    """Complement rule: replace the shared sub-ball A of x by the rest of rel.

    A is the multiset intersection of the labels; it must be a proper, nonempty
    sub-ball of both balls.  The result is built with
    ``balls.union_of_complements`` and must coincide with the word ball of
    the new labels.
    """
    if x.source != rel.source:
        raise DerivationError("relation lives at a different source")
    if (x.dim, len(x.labels[0])) != (rel.dim, len(rel.labels[0])):
        raise DerivationError("relation has a different shape")
    cx, cr = Counter(x.labels), Counter(rel.labels)
    shared = cx & cr
    if not shared:
        raise DerivationError("relation shares no cells with the expression")
    if shared == cx or shared == cr:
        raise DerivationError("shared part must be a proper sub-ball of both")

    def pick(labels):
        left, idx = Counter(shared), []
        for c, w in enumerate(labels):
            if left[w] > 0:
                left[w] -= 1
                idx.append(c)
        return idx

    try:
        bx, br = B.ball_from_words(x.labels), B.ball_from_words(rel.labels)
        ax = B.complement(bx, pick(x.labels))
        ar = B.complement(br, pick(rel.labels))
    except B.BallError as exc:
        raise DerivationError(f"sub-ball mismatch: {exc}") from exc
    # interface faces: new cut faces on each side, matched by face word
    old_x = {w for w in _cut_words(bx)}
    old_r = {w for w in _cut_words(br)}
    fx = {W.face(ax.labels[c], q): (c, q) for c, q in ax.cut if W.face(ax.labels[c], q) not in old_x}
    fr = {W.face(ar.labels[c], q): (c, q) for c, q in ar.cut if W.face(ar.labels[c], q) not in old_r}
    if set(fx) != set(fr):
        raise DerivationError("sub-ball mismatch: interfaces differ")
    glue = [(fx[f][0], fx[f][1], fr[f][0], fr[f][1]) for f in sorted(fx)]
    try:
        union = B.union_of_complements(ax, ar, glue)
        out = expression(x.source, union.labels)
        direct = out.ball
    except (B.BallError, DerivationError) as exc:
        raise DerivationError(f"complement union is not a word ball: {exc}") from exc
    if not B.equivalent(union, direct, use_labels=True):
        raise DerivationError("union of complements disagrees with the word ball")
    return out


def _cut_words(b: B.Ball) -> list[str]:
    return [W.face(b.labels[c], q) for c, q in b.cut]


# -- derivations ----------------------------------------------------------------

RULES = ("COMPLEMENT", "TRIVIALITY", "ASSUMPTION", "MEET", "DOUBLE")


@dataclass(frozen=True)
class Step:
    rule: str
    side: str  # "X" or "Y"
    relation: str | None
    result: ObsExpression


@dataclass
class Derivation:
    """Relations ``hyps`` (name -> expression asserted ~ 0) plus a rewriting
    of the goal; the Y chain starts from the relation named ``"Y"``."""
    n: int
    source: int
    start: ObsExpression
    hyps: dict[str, ObsExpression]
    steps: list[Step] = field(default_factory=list)
    kinds: dict[str, str] = field(default_factory=dict)
    bound: int | None = None

    def balls(self) -> list[ObsExpression]:
        return [self.start, *self.hyps.values(), *(s.result for s in self.steps)]

    def max_cells(self) -> int:
        return max(e.cells for e in self.balls())

    def relations_used(self) -> list[str]:
        return [s.relation for s in self.steps if s.relation]

    def certificate(self) -> str:
        lines = [f"N {self.n} {self.source}"]
        if self.bound is not None:
            lines.append(f"BOUND {self.bound}")
        lines.append(_line("GOAL", self.start))
        for name, e in self.hyps.items():
            lines.append(_line(f"HYP/{self.kinds.get(name, 'GIVEN')}/{name}", e))
        for s in self.steps:
            tag = "/".join(x for x in (s.rule, s.side, s.relation or "") if x)
            lines.append(_line(tag, s.result))
        return "\n".join(lines) + "\n"


def _line(rule: str, e: ObsExpression) -> str:
    return " ".join([rule, e.digest(), str(e.source), *(w or "0" for w in e.labels)])


def parse_certificate(text: str) -> Derivation:
    n = src = None
    bound = None
    start = None
    hyps, kinds, steps = {}, {}, []
    for raw in text.splitlines():
        tok = raw.split()
        if not tok:
            continue
        if tok[0] == "N":
            n, src = int(tok[1]), int(tok[2])
            continue
        if tok[0] == "BOUND":
            bound = int(tok[1])
            continue
        rule, digest, s, labels = tok[0], tok[1], int(tok[2]), [w.replace("0", "") for w in tok[3:]]
        e = expression(s, labels)
        if e.digest() != digest:
            raise DerivationError(f"ball hash mismatch on line: {raw}")
        parts = rule.split("/")
        if parts[0] == "GOAL":
            start = e
        elif parts[0] == "HYP":
            hyps[parts[2]] = e
            kinds[parts[2]] = parts[1]
        else:
            side = parts[1] if len(parts) > 1 else "X"
            rel = parts[2] if len(parts) > 2 else None
            steps.append(Step(parts[0], side, rel, e))
    if n is None or start is None:
        raise DerivationError("certificate lacks header or goal")
    return Derivation(n, src, start, hyps, steps, kinds, bound)


def _expected_hyp(kind: str, name: str, d: Derivation) -> ObsExpression | None:
    i, n = d.source, d.n
    if kind == "TRIVIALITY":
        r, s = (int(t) for t in name[1:].split(","))
        return triviality_instance(i, r, s)
    if kind == "NATURALITY":  # Y: the hypothesis at i - 1 precomposed with 0
        return naturality(hypothesis(i - 1, n), prefix=False)
    if kind == "RESOLUTION":  # dI_{n+1} at i, postcomposed with 0
        return naturality(hypothesis(i, n), prefix=True)
    return None


def check_derivation(d: Derivation, require_goal: bool = True) -> bool:
    try:
        _check(d, require_goal)
    except (DerivationError, B.BallError, ValueError):
        return False
    return True


def explain_derivation(d: Derivation, require_goal: bool = True) -> str | None:
    try:
        _check(d, require_goal)
    except (DerivationError, B.BallError, ValueError) as exc:
        return str(exc)
    return None


def _check(d: Derivation, require_goal: bool) -> None:
    if require_goal and d.start != goal(d.source, d.n):
        raise DerivationError("derivation does not start from the goal")
    for name, e in d.hyps.items():
        want = _expected_hyp(d.kinds.get(name, "GIVEN"), name, d)
        if want is None or want != e:
            raise DerivationError(f"relation {name} is not a valid instance")
    for e in d.balls():
        rep = B.validate_ball(e.ball)
        if not rep.ok:
            raise DerivationError(f"invalid ball {e}: {rep.problems}")
        if d.bound is not None and e.cells > d.bound:
            raise DerivationError(f"ball {e} exceeds {d.bound} cells")
    cur = {"X": d.start, "Y": d.hyps.get("Y")}
    closed = False
    for st in d.steps:
        if closed:
            raise DerivationError("steps after the derivation closed")
        if st.rule == "COMPLEMENT":
            if cur.get(st.side) is None or st.relation not in d.hyps:
                raise DerivationError(f"complement on unknown side or relation {st.relation}")
            got = complement_rewrite(cur[st.side], d.hyps[st.relation])
            if got != st.result:
                raise DerivationError(f"complement gives {got}, certificate says {st.result}")
            cur[st.side] = got
        elif st.rule in ("TRIVIALITY", "ASSUMPTION"):
            rel = d.hyps.get(st.relation or "")
            if rel is None or rel != cur["X"] or st.result != cur["X"]:
                raise DerivationError(f"{st.rule} does not apply to {cur['X']}")
            closed = True
        elif st.rule == "MEET":
            if cur["Y"] is None or cur["X"] != cur["Y"] or st.result != cur["X"]:
                raise DerivationError("the two chains do not meet")
            closed = True
        elif st.rule == "DOUBLE":
            e = cur["X"]
            if e.cells != 2 or e.labels[0] != e.labels[1] or st.result != e:
                raise DerivationError("double rule needs (a, a)")
            closed = True
        else:
            raise DerivationError(f"unknown rule {st.rule}")
    if not closed:
        raise DerivationError("derivation never reaches 0")


def _relations(i: int, n: int) -> tuple[dict, dict]:
    hyps, kinds = {}, {}
    for r in range(1, n + 1):
        name = f"d{r},{n + 1 - r}"
        hyps[name] = triviality_instance(i, r, n + 1 - r)
        kinds[name] = "TRIVIALITY"
    hyps["Y"] = naturality(hypothesis(i - 1, n), prefix=False)
    kinds["Y"] = "NATURALITY"
    return hyps, kinds


def _scheme(n: int, i: int) -> Derivation:
    """X side with d(r, n+1-r), r <= n/2; Y side with d(n+1-s, s), s <= n/2;
    then either the chains meet or the middle relation bridges them."""
    hyps, kinds = _relations(i, n)
    d = Derivation(n, i, goal(i, n), hyps, [], kinds, cell_bound(n))
    x, y = d.start, hyps["Y"]
    for r in range(1, n // 2 + 1):
        name = f"d{r},{n + 1 - r}"
        x = complement_rewrite(x, hyps[name])
        d.steps.append(Step("COMPLEMENT", "X", name, x))
    for s in range(1, n // 2 + 1):
        name = f"d{n + 1 - s},{s}"
        y = complement_rewrite(y, hyps[name])
        d.steps.append(Step("COMPLEMENT", "Y", name, y))
    if n % 2:
        m = n // 2 + 1
        name = f"d{m},{m}"
        x = complement_rewrite(x, hyps[name])
        d.steps.append(Step("COMPLEMENT", "X", name, x))
    if n // 2 == 0:
        d.steps.append(Step("ASSUMPTION", "X", "Y", x))
    else:
        d.steps.append(Step("MEET", "X", None, x))
    return d


def _search(n: int, i: int) -> Derivation:
    """Breadth-first search over complement rewrites, capped one cell above
    the bound; ties broken by relation order."""
    hyps, kinds = _relations(i, n)
    cap = cell_bound(n) + 1
    start = goal(i, n)
    targets = {e: name for name, e in hyps.items()}
    prev: dict[ObsExpression, tuple | None] = {start: None}
    queue = deque([start])
    names = sorted(k for k in hyps if kinds[k] == "TRIVIALITY")
    found = None
    while queue:
        e = queue.popleft()
        if e in targets:
            found = e
            break
        for name in names:
            try:
                nxt = complement_rewrite(e, hyps[name])
            except DerivationError:
                continue
            if nxt.cells > cap or nxt in prev:
                continue
            prev[nxt] = (e, name)
            queue.append(nxt)
    if found is None:
        raise DerivationError(f"search exhausted for n = {n}")
    path = []
    e = found
    while prev[e] is not None:
        p, name = prev[e]
        path.append(Step("COMPLEMENT", "X", name, e))
        e = p
    path.reverse()
    name = targets[found]
    rule = "ASSUMPTION" if kinds[name] == "NATURALITY" else "TRIVIALITY"
    path.append(Step(rule, "X", name, found))
    return Derivation(n, i, start, hyps, path, kinds, cell_bound(n))


def prove_hauptlemma(n: int, i: int | None = None, method: str | None = None) -> Derivation:
    """Derive 0 (x) dI_{n+1} ~ 0 at i from dI_{n+1} ~ 0 at i - 1.

    ``method`` is ``"scheme"`` (the hand proof pattern, default for n <= 2) or
    ``"search"`` (default for n = 3, 4).
    """
    if not 1 <= n <= 4:
        raise DerivationError("supported for 1 <= n <= 4")
    i = n + 2 if i is None else i
    method = method or ("scheme" if n <= 2 else "search")
    d = _scheme(n, i) if method == "scheme" else _search(n, i)
    err = explain_derivation(d)
    if err:
        raise DerivationError(f"generated derivation fails its own check: {err}")
    return d


def d2d2_symbolic(i: int = 4, with_resolution: bool = True) -> Derivation:
    """The vanishing of the product obstruction on T0^1 x T0^1."""
    start = expression(i, ["JsJs", "sJJs", "JssJ", "sJsJ"])
    hyps, kinds = {}, {}
    if with_resolution:
        hyps["R"] = naturality(hypothesis(i, 2), prefix=True)
        kinds["R"] = "RESOLUTION"
    hyps["d1,2"] = triviality_instance(i, 1, 2)
    kinds["d1,2"] = "TRIVIALITY"
    d = Derivation(2, i, start, hyps, [], kinds)
    x = start
    if with_resolution:
        x = complement_rewrite(x, hyps["R"])
        d.steps.append(Step("COMPLEMENT", "X", "R", x))
    d.steps.append(Step("TRIVIALITY", "X", "d1,2", x))
    return d


def d2d2_start_is_product() -> bool:
    e = expression(4, ["JsJs", "sJJs", "JssJ", "sJsJ"])
    return B.equivalent(e.ball, B.product(B.make_T0(1), B.make_T0(1)))


def action_sign(e: ObsExpression, j: int) -> int:
    """Changing the j-th cell value by alpha moves O by eps_j * alpha."""
    return B.orientation_signs(e.ball)[j]

"""Command line entry point: ``cubext <subcommand> [flags]``.

Every subcommand writes a deterministic report (TSV or JSON) and exits 0
exactly when all checks it ran passed.  Failures are reported as records
``FAIL<TAB>check<TAB>detail`` (or a ``failures`` list in JSON).
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import balls as B
from . import cubical
from . import homalg as HA
from . import obstruction as OB
from . import spectral as S
from . import tracks as T


class Report:
    def __init__(self, command: str, window: dict | None = None):
        self.command = command
        self.window = window or {}
        self.rows: list[dict] = []
        self.failures: list[tuple[str, str]] = []
        self.text: str | None = None  # verbatim payload (certificates)

    def check(self, name: str, ok: bool, detail: str = "") -> bool:
        if not ok:
            self.failures.append((name, detail))
        return ok

    def add(self, **row) -> None:
        self.rows.append(row)

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps({"command": self.command, "window": self.window, "rows": self.rows,
                               "text": self.text,
                               "failures": [{"check": c, "detail": d} for c, d in self.failures],
                               "ok": not self.failures}, indent=2, sort_keys=True) + "\n"
        out = []
        if self.window:
            out.append("# window " + " ".join(f"{k}={v}" for k, v in sorted(self.window.items())))
        if self.text is not None:
            out.append(self.text.rstrip("\n"))
        if self.rows:
            keys = list(self.rows[0])
            out.append("\t".join(keys))
            out += ["\t".join(str(r.get(k, "")) for k in keys) for r in self.rows]
        out += [f"FAIL\t{c}\t{d}" for c, d in self.failures]
        return "\n".join(out) + "\n"


def _payload(text: str) -> str:
    """Strip a saved report down to its payload, so ``--out`` files can be fed back."""
    try:
        data = json.loads(text)
    except ValueError:
        data = None
    if isinstance(data, dict) and "command" in data and "text" in data:
        return data["text"] or ""
    lines = [l for l in text.splitlines()
             if not l.startswith("# window") and not l.startswith("FAIL\t")]
    return "\n".join(lines) + "\n"


def _algebra(spec: str | None) -> HA.GradedAlgebra:
    name = spec or "exterior"
    if not Path(name).exists():
        name = name.lower()
    try:
        return HA.load_algebra(name)
    except (OSError, ValueError, KeyError) as exc:
        raise SystemExit(f"cubext: cannot load algebra {spec!r}: {exc}")


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise SystemExit(f"cubext: cannot read {path}: {exc}")


# -- subcommands ---------------------------------------------------------------------

def cmd_resolve(a) -> Report:
    alg = _algebra(a.input)
    rep = Report("resolve", {"algebra": alg.name, "r_max": a.rmax, "t_max": a.tmax})
    res = HA.minimal_resolution(alg, HA.trivial_module(alg), a.rmax, a.tmax)
    rep.check("dd", res.check_dd())
    rep.check("exact", res.check_exact())
    rep.check("minimal", res.is_minimal())
    chart = HA.ext_chart(res, HA.trivial_module(alg))
    for (r, t), k in sorted(chart.ranks.items()):
        if k:
            rep.add(r=r, t=t, stem=t - r, rank=k)
    return rep


def cmd_lift(a) -> Report:
    alg = _algebra(a.input)
    n = a.order
    i_max = min(a.rmax, 10)
    rep = Report("lift", {"algebra": alg.name, "order": n, "i_max": i_max, "t_max": a.tmax,
                          "window": a.tmax - n})
    res = HA.minimal_resolution(alg, HA.trivial_module(alg), a.rmax, a.tmax)
    try:
        hr = T.lift_resolution(res, n, i_max, seed=a.seed)
    except T.LiftError as exc:
        rep.check("lift", False, str(exc))
        return rep
    for k in range(1, n + 1):
        for i in range(k + 1, i_max + 1):
            ok = hr.obstruction_is_zero(i, k)
            rep.add(order=k, i=i, obstruction="0" if ok else "nonzero")
            rep.check(f"obstruction[{k},{i}]", ok)
    for i in range(n + 1, i_max + 1):
        rep.check(f"bracket_contains_zero[{i}]", T.resolution_bracket_contains_zero(hr, i))
    return rep


def _filtered(a) -> S.FilteredComplex:
    if a.input:
        try:
            return S.FilteredComplex.from_json(_read(a.input))
        except ValueError as exc:
            raise SystemExit(f"cubext: {a.input}: {exc}")
    return S.random_filtered_complex(np.random.default_rng(a.seed), p=a.prime, stages=6, depth=2)


def _compare_pages(a, rep: Report, m_max: int) -> T.ChainSpectralSequence:
    fc = _filtered(a)
    bad = fc.check()
    if bad:
        raise SystemExit(f"cubext: filtered complex invalid: {'; '.join(bad)}")
    ss = T.ChainSpectralSequence.from_filtered(fc)
    ours = ss.pages(m_max)
    oracle = S.ss_oracle(fc, m_max + 1)
    for pg in ours:
        keys = sorted(set(pg.dims) | set(oracle[pg.m].dims))
        for r, s in keys:
            x, y = pg.dims.get((r, s), 0), oracle[pg.m].dims.get((r, s), 0)
            rep.add(m=pg.m, r=r, s=s, rank=x, oracle=y)
        rep.check(f"page_E{pg.m}", pg.dims == oracle[pg.m].dims)
    for m in range(1, m_max):
        rep.check(f"dd_{m}", ss.check_dd(m))
    return ss


def cmd_d2(a) -> Report:
    rep = Report("d2", {"seed": a.seed, "pages": "E1..E3"})
    ss = _compare_pages(a, rep, 3)
    rng = np.random.default_rng(a.seed)
    ok = all(T.d2_invariance(ss, r, s, x, rng) for r, s in ss._support() for x in ss.Z(2, r, s))
    rep.check("d2_invariance", ok)
    return rep


def cmd_dm(a) -> Report:
    m_max = a.order + 1
    rep = Report("dm", {"seed": a.seed, "pages": f"E1..E{m_max}"})
    _compare_pages(a, rep, m_max)
    return rep


def cmd_hauptlemma(a) -> Report:
    rep = Report("hauptlemma", {"n": a.n})
    if a.input:
        d = OB.parse_certificate(_payload(_read(a.input)))
    else:
        d = OB.prove_hauptlemma(a.n)
    rep.window["n"] = d.n
    why = OB.explain_derivation(d)
    rep.check("derivation", why is None, why or "")
    rep.check("cell_bound", d.max_cells() <= OB.cell_bound(d.n), f"{d.max_cells()} cells")
    rep.text = d.certificate()
    return rep


def cmd_balls(a) -> Report:
    rep = Report("balls", {"action": a.action})
    if a.action == "validate":
        if not a.input:
            raise SystemExit("cubext: balls validate needs --input")
        try:
            ball = B.Ball.from_json(_payload(_read(a.input)))
        except (ValueError, KeyError) as exc:
            raise SystemExit(f"cubext: {a.input}: {exc}")
        r = B.validate_ball(ball)
        for msg in r.problems:
            rep.check("ball", False, msg)
        for msg in r.notes:
            rep.add(note=msg)
        rep.add(note=f"cells={ball.cells} dim={ball.dim} signs={B.orientation_signs(ball) if r.ok else '-'}")
    elif a.action == "make":
        maker = {"t0": B.make_T0, "double": B.make_double, "cube": B.single_cell}[a.shape]
        ball = maker(a.dim)
        rep.check("valid", B.validate_ball(ball).ok)
        rep.text = ball.to_json()
    else:
        found = B.search_balls(a.dim, a.cells)
        for k, ball in enumerate(found):
            t0 = a.cells == a.dim + 1 and B.equivalent(ball, B.make_T0(a.dim))
            rep.add(index=k, cells=ball.cells, equivalent_to_T0=t0,
                    signs=",".join(map(str, B.orientation_signs(ball))))
        rep.add(index="total", cells=len(found), equivalent_to_T0="", signs="")
    return rep


def cmd_wcheck(a) -> Report:
    hi = a.rmax
    rep = Report("wcheck", {"objects": f"0..{hi}", "dim_bound": a.n})
    for msg in cubical.verify_w_iso(0, hi, a.n):
        rep.check("w_iso", False, msg)
    return rep


def cmd_axioms(a) -> Report:
    trials = a.n
    chunk = 25
    seeds = [(a.seed * 1000 + k, min(chunk, trials - k * chunk)) for k in range((trials + chunk - 1) // chunk)]
    rep = Report("axioms", {"seed": a.seed, "trials": trials, "prime": a.prime})
    with ThreadPoolExecutor(T.threads()) as pool:
        parts = list(pool.map(lambda st: T.axiom_suite(st[0], st[1], p=a.prime, corrupt=a.corrupt), seeds))
    total: dict = {}
    for part in parts:
        for name, (ok, n) in part.results.items():
            cell = total.setdefault(name, [0, 0])
            cell[0] += ok
            cell[1] += n
    for name, (ok, n) in sorted(total.items()):
        rep.add(check=name, passed=ok, attempted=n)
        rep.check(name, ok == n and n > 0, f"{n - ok} of {n} failed")
    return rep


COMMANDS = {"resolve": cmd_resolve, "lift": cmd_lift, "d2": cmd_d2, "dm": cmd_dm,
            "hauptlemma": cmd_hauptlemma, "balls": cmd_balls, "wcheck": cmd_wcheck,
            "axioms": cmd_axioms}


def _positive(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cubext", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, **defaults):
        p.add_argument("--input", help="input file (algebra name or JSON path where relevant)")
        p.add_argument("--out", help="write the report here instead of stdout")
        p.add_argument("--format", choices=("tsv", "json"), default="tsv")
        p.add_argument("--seed", type=int, default=defaults.get("seed", 0))
        p.add_argument("--rmax", type=_positive, default=defaults.get("rmax", 8))
        p.add_argument("--tmax", type=_positive, default=defaults.get("tmax", 14))
        p.add_argument("--order", type=_positive, default=defaults.get("order", 2))
        p.add_argument("--n", type=_positive, default=defaults.get("n", 2))
        p.add_argument("--prime", type=int, choices=(2, 3, 5, 7), default=defaults.get("prime", 3))
        return p

    common(sub.add_parser("resolve", help="minimal resolution and Ext chart"))
    common(sub.add_parser("lift", help="lift a resolution to higher order"), rmax=10, tmax=16)
    common(sub.add_parser("d2", help="d2 on a filtered complex against the oracle"))
    common(sub.add_parser("dm", help="d_m through E_{order+1} against the oracle"), order=3)
    common(sub.add_parser("hauptlemma", help="derivation certificate for order n"))
    pb = common(sub.add_parser("balls", help="validate, make or search left cubical balls"))
    pb.add_argument("action", choices=("validate", "make", "search"))
    pb.add_argument("--dim", type=_positive, default=2)
    pb.add_argument("--cells", type=_positive, default=3)
    pb.add_argument("--shape", choices=("t0", "double", "cube"), default="t0")
    common(sub.add_parser("wcheck", help="chain category versus the cubical thickening"), rmax=8, n=6)
    pa = common(sub.add_parser("axioms", help="randomized track axiom suite"), n=100)
    pa.add_argument("--corrupt", action="store_true", help="use wrong orientations (must fail)")
    return ap


def main(argv: list[str] | None = None) -> int:
    a = build_parser().parse_args(argv)
    try:
        rep = COMMANDS[a.command](a)
    except (ValueError, HA.TruncationError, T.TrackError, OB.DerivationError) as exc:
        rep = Report(a.command)
        rep.check("input", False, str(exc))
    text = rep.render(a.format)
    if a.out:
        Path(a.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0 if not rep.failures else 1


if __name__ == "__main__":
    sys.exit(main())

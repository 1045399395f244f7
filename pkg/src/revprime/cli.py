"""Command-line entry point.

Every invocation is captured in a :class:`RunConfig`; the emitted document
embeds that config so a run can be replayed with ``--config``.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Callable

import numpy as np

from ._config import EnumerationCapError, enum_cap
from .census import ApQuery, census, predict, reversed_prime_count
from .circle import arc_split_report, dissect, desk_arc_parameters, remainder_exact_all, remainder_spectral_all, sn_ratio_report
from .constants import alpha_g_mp, record, threshold_scan
from .digits import GnWindow
from .ineq import SampleGrid, run_checks, violations

SCHEMA = 1
COMMANDS = ("constants", "census", "predict", "verify", "arcs", "remainder", "scan")
AGREE_TOL = 1e-6


class UsageError(ValueError):
    """Malformed parameters for an otherwise valid command."""


@dataclass
class RunConfig:
    command: str
    params: dict[str, Any] = field(default_factory=dict)
    seed: int = 0
    format: str = "json"
    out: str | None = None

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, raw: dict) -> "RunConfig":
        raw = raw.get("config", raw)
        if raw.get("command") not in COMMANDS:
            raise UsageError(f"unknown command {raw.get('command')!r}")
        return cls(
            command=raw["command"],
            params=dict(raw.get("params", {})),
            seed=int(raw.get("seed", 0)),
            format=raw.get("format", "json"),
            out=raw.get("out"),
        )


@dataclass
class Result:
    rows: list[dict]
    summary: dict = field(default_factory=dict)
    status: int = 0


# ---------------------------------------------------------------------------
# command implementations


def _window(p: dict) -> GnWindow:
    try:
        return GnWindow(int(p["g"]), int(p["N"]))
    except (KeyError, TypeError) as exc:
        raise UsageError("--g and --N are required") from exc


def _residues(p: dict, q: int) -> list[int]:
    return [int(p["a"]) % q] if p.get("a") is not None else list(range(q))


def cmd_constants(cfg: RunConfig) -> Result:
    gs = cfg.params.get("g") or []
    if not gs:
        raise UsageError("constants needs at least one --g")
    return Result([record(int(g)).as_row() for g in gs])


def cmd_census(cfg: RunConfig) -> Result:
    p = cfg.params
    w = _window(p)
    q = int(p.get("q") or 1)
    rows = [census(w, ApQuery(a, q)).as_row() for a in _residues(p, q)]
    return Result(rows, {"total": sum(r["count"] for r in rows)})


def cmd_predict(cfg: RunConfig) -> Result:
    p = cfg.params
    w = _window(p)
    q = int(p.get("q") or 1)
    rows = []
    for a in _residues(p, q):
        query = ApQuery(a, q)
        pred = predict(w, query)
        row = {"g": w.base, "N": w.length, "a": a, "q": q, "prediction": pred}
        if p.get("compare"):
            count = reversed_prime_count(w, query)
            row["count"] = count
            row["ratio"] = count / pred if pred else None
        rows.append(row)
    return Result(rows)


def _verify_grid(p: dict) -> SampleGrid | None:
    grid = p.get("grid") or "default"
    overrides = {k: p.get(k) for k in ("g", "M", "samples")}
    if Path(grid).suffix == ".json" or Path(grid).is_file():
        try:
            base = SampleGrid.from_file(grid)
        except (OSError, KeyError, ValueError) as exc:
            raise UsageError(f"cannot read grid file {grid!r}: {exc}") from exc
    elif any(v for v in overrides.values()):
        base = SampleGrid(g_list=(2, 10), N_list=(3,), samples=100, max_size=enum_cap())
    else:
        return None
    return SampleGrid(
        g_list=tuple(overrides["g"] or base.g_list),
        N_list=tuple(overrides["M"] or base.N_list),
        samples=int(overrides["samples"] or base.samples),
        seed=base.seed,
        max_size=base.max_size,
        extra=dict(base.extra),
    )


def cmd_verify(cfg: RunConfig) -> Result:
    p = cfg.params
    grid = _verify_grid(p)
    preset = "default" if grid is not None else (p.get("grid") or "default")
    try:
        records = run_checks(p.get("lemma") or "all", preset=preset, seed=cfg.seed, grid=grid)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from exc
    bad = violations(records)
    ratios = [r.slack for r in records if r.mode == "ratio"]
    summary = {
        "records": len(records),
        "exact": sum(r.mode == "exact" for r in records),
        "violations": len(bad),
        "ratio_records": len(ratios),
        "ratio_max": max(ratios) if ratios else None,
    }
    return Result([r.as_row() for r in records], summary, 1 if bad else 0)


def cmd_remainder(cfg: RunConfig) -> Result:
    p = cfg.params
    w = _window(p)
    q = int(p.get("q") or 1)
    spectral = remainder_spectral_all(w, q, int(p.get("threads") or 1))
    exact = remainder_exact_all(w, q)
    rows = []
    status = 0
    for a in _residues(p, q):
        z = spectral[a]
        rem = exact[a]
        count = reversed_prime_count(w, ApQuery(a, q))
        diff = abs(float(z.real) - float(rem))
        agree = bool(diff < AGREE_TOL and abs(z.imag) < AGREE_TOL)
        status |= 0 if agree else 1
        rows.append(
            {
                "g": w.base,
                "N": w.length,
                "a": a,
                "q": q,
                "count": count,
                "main_term": str(count - rem),
                "remainder_exact": str(rem),
                "remainder_spectral": float(z.real),
                "imag": float(z.imag),
                "abs_diff": diff,
                "agree": agree,
            }
        )
    return Result(rows, {"max_abs_diff": max(r["abs_diff"] for r in rows)}, status)


def cmd_arcs(cfg: RunConfig) -> Result:
    p = cfg.params
    w = _window(p)
    P, Q = desk_arc_parameters(w)
    P = float(p["P"]) if p.get("P") is not None else P
    Q = float(p["Q"]) if p.get("Q") is not None else Q
    try:
        part = dissect(w, P, Q, strict=bool(p.get("strict")))
    except ValueError as exc:
        if isinstance(exc, EnumerationCapError):
            raise
        raise UsageError(str(exc)) from exc
    summary = part.summary()
    status = 0
    if p.get("q"):
        rep = arc_split_report(part, ApQuery(0, int(p["q"])), int(p.get("threads") or 1))
        summary["split"] = rep.as_row()
        status = 0 if rep.triangle_ok else 1
    if p.get("sn"):
        rng = np.random.default_rng(cfg.seed)
        summary["sn_ratios"] = [r.as_row() for r in sn_ratio_report(w, rng=rng, r_max=int(p.get("r_max") or 20))]
    rows = []
    if p.get("full"):
        rows = [
            {"h": pt.h, "b": pt.b, "r": pt.r, "eta": str(pt.eta), "arc": pt.arc}
            for pt in part.points()
        ]
    return Result(rows, summary, status)


def cmd_scan(cfg: RunConfig) -> Result:
    p = cfg.params
    lo, hi = int(p.get("lo") or 2), int(p.get("hi") or 10**5)
    bound = float(p.get("bound") if p.get("bound") is not None else 0.2)
    if lo < 2:
        raise UsageError("--lo must be at least 2")
    t = threshold_scan(lo, hi, bound)
    if t is None:
        return Result([], {"threshold": None, "message": f"no g in [{lo}, {hi}] with alpha_g < {bound}"})
    table = [
        {"g": g, "alpha_g": str(alpha_g_mp(g))[:22], "below": bool(alpha_g_mp(g) < bound)}
        for g in range(max(lo, t - 3), min(hi, t + 3) + 1)
    ]
    return Result(table, {"threshold": t, "bound": bound})


HANDLERS: dict[str, Callable[[RunConfig], Result]] = {
    "constants": cmd_constants,
    "census": cmd_census,
    "predict": cmd_predict,
    "verify": cmd_verify,
    "arcs": cmd_arcs,
    "remainder": cmd_remainder,
    "scan": cmd_scan,
}


# ---------------------------------------------------------------------------
# output


def _cell(v: Any) -> Any:
    return json.dumps(v, sort_keys=True) if isinstance(v, (dict, list)) else v


def render(cfg: RunConfig, res: Result) -> str:
    if cfg.format == "csv":
        buf = io.StringIO()
        cols: list[str] = []
        for row in res.rows:
            cols.extend(k for k in row if k not in cols)
        writer = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        writer.writeheader()
        for row in res.rows:
            writer.writerow({k: _cell(v) for k, v in row.items()})
        if not res.rows:
            buf.write(f"# {json.dumps(res.summary, sort_keys=True)}\n")
        return buf.getvalue()
    # the output path is left out so the bytes do not depend on where they land
    config = {k: v for k, v in cfg.to_dict().items() if k != "out"}
    doc = {"schema": SCHEMA, "config": config, "summary": res.summary, "results": res.rows}
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def run(cfg: RunConfig) -> int:
    """Execute ``cfg``, write its output and return the exit status."""
    if cfg.command not in HANDLERS:
        raise UsageError(f"unknown command {cfg.command!r}")
    if cfg.format not in ("json", "csv"):
        raise UsageError(f"unknown format {cfg.format!r}")
    res = HANDLERS[cfg.command](cfg)
    text = render(cfg, res)
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        sys.stdout.write(text)
    return res.status


# ---------------------------------------------------------------------------
# argument parsing


def _int_list(s: str) -> list[int]:
    try:
        return [int(x) for x in s.split(",") if x]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {s!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("json", "csv"), default=None)
    common.add_argument("--out", default=None, help="output path (stdout if omitted)")

    parser = argparse.ArgumentParser(prog="revprime", description=__doc__.splitlines()[0])
    parser.add_argument("--config", help="replay a saved RunConfig (or a previous JSON output)")
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("constants", parents=[common], help="C_g and alpha_g")
    p.add_argument("--g", type=int, action="append", required=True)

    for name, helptext in (("census", "reversed-prime census"), ("predict", "asymptotic prediction")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("--g", type=int, required=True)
        p.add_argument("--N", type=int, required=True)
        p.add_argument("--q", type=int, default=1)
        p.add_argument("--a", type=int)
        if name == "predict":
            p.add_argument("--compare", action="store_true", help="also report the census count")

    p = sub.add_parser("verify", parents=[common], help="run inequality checkers")
    p.add_argument("--lemma", default="all")
    p.add_argument("--grid", default="default", help="preset name (default, quick) or JSON grid file")
    p.add_argument("--g", type=_int_list, help="comma-separated bases overriding the grid")
    p.add_argument("--M", type=_int_list, help="comma-separated digit counts overriding the grid")
    p.add_argument("--samples", type=int)

    p = sub.add_parser("arcs", parents=[common], help="Farey dissection summary")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--P", type=float)
    p.add_argument("--Q", type=float)
    p.add_argument("--q", type=int, help="also split the remainder sum over the arcs")
    p.add_argument("--strict", action="store_true", help="require P >= 4g^8")
    p.add_argument("--sn", action="store_true", help="include prime-sum envelope ratios")
    p.add_argument("--r-max", dest="r_max", type=int)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--full", action="store_true", help="list every grid point")

    p = sub.add_parser("remainder", parents=[common], help="spectral vs census remainder")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--a", type=int)
    p.add_argument("--threads", type=int, default=1)

    p = sub.add_parser("scan", parents=[common], help="first g with alpha_g below a bound")
    p.add_argument("--bound", type=float, default=0.2)
    p.add_argument("--lo", type=int, default=2)
    p.add_argument("--hi", type=int, default=10**5)
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    params = {k: v for k, v in vars(ns).items() if k not in ("command", "config", "seed", "format", "out")}
    fmt = ns.format
    if fmt is None:
        fmt = "csv" if ns.out and ns.out.endswith(".csv") else "json"
    return RunConfig(ns.command, params, ns.seed, fmt, ns.out)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        if ns.config:
            try:
                cfg = RunConfig.from_dict(json.loads(Path(ns.config).read_text()))
            except (OSError, json.JSONDecodeError) as exc:
                raise UsageError(f"cannot read config {ns.config!r}: {exc}") from exc
        elif ns.command is None:
            parser.print_usage(sys.stderr)
            print("revprime: error: a command is required", file=sys.stderr)
            return 2
        else:
            cfg = config_from_args(ns)
        return run(cfg)
    except EnumerationCapError as exc:
        print(f"revprime: enumeration cap exceeded: {exc}", file=sys.stderr)
        return 2
    except UsageError as exc:
        print(f"revprime: usage error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"revprime: invalid parameter: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

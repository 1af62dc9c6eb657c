"""Command-line front end.

    gravbounds sweep --figure1
    gravbounds sweep --n-list 2,3,4 --mode rescaled --grid 0:1.4:71 --kinds l,u --format json --out fig.json
    gravbounds eval -N 5 --coupling 0.2 --kind l
    gravbounds verify --level full

Exit status: 0 success, 1 domain or compute error, 2 usage error.

A config file (``--config PATH``) holds flat ``key = value`` lines using the
long flag names without dashes (``n-list = 2,3``, ``mass = 1``, ...).  Values
given on the command line win over the file, and the file wins over a preset.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from .bounds import CouplingMode, SystemParams, evaluate
from .errors import BoundsError, DomainError, NoMinimumError
from .sweep import (
    CSV_COLUMNS,
    FIGURE1,
    FIGURE2,
    Grid,
    Row,
    SweepSpec,
    parse_kind,
    row_to_record,
    run_sweep,
    to_csv,
    to_json,
)
from .verify import run_suite

SWEEP_KEYS = ("n-list", "mass", "mode", "grid", "kinds", "format", "out", "jobs")


class UsageError(Exception):
    pass


def read_config(path: str) -> dict[str, str]:
    values = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key = value")
        key, value = (part.strip() for part in line.split("=", 1))
        key = key.replace("_", "-")
        if key not in SWEEP_KEYS:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        values[key] = value
    return values


def _parse_n_list(text: str) -> tuple[int, ...]:
    out = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = part.split("..")
            out.extend(range(int(lo), int(hi) + 1))
        elif part:
            out.append(int(part))
    return tuple(out)


def _parse_kinds(text: str):
    return tuple(parse_kind(k) for k in text.split(",") if k.strip())


def build_sweep_spec(args: argparse.Namespace) -> tuple[SweepSpec, str | None, int]:
    if args.figure1 and args.figure2:
        raise UsageError("--figure1 and --figure2 are mutually exclusive")
    preset = FIGURE1 if args.figure1 else FIGURE2 if args.figure2 else None
    settings: dict[str, str] = {}
    if preset is not None:
        settings.update(
            {
                "n-list": ",".join(str(n) for n in preset.N_list),
                "mass": repr(preset.m),
                "mode": preset.coupling_mode.value,
                "grid": str(preset.grid),
                "kinds": ",".join(k.value for k in preset.outputs),
            }
        )
    if args.config:
        settings.update(read_config(args.config))
    for key in SWEEP_KEYS:
        value = getattr(args, key.replace("-", "_"))
        if value is not None:
            settings[key] = str(value)

    if "n-list" not in settings or "grid" not in settings:
        raise UsageError("sweep needs --n-list and --grid (or a --figure1/--figure2 preset)")
    try:
        spec = SweepSpec(
            N_list=_parse_n_list(settings["n-list"]),
            grid=Grid.parse(settings["grid"]),
            m=float(settings.get("mass", "1")),
            coupling_mode=CouplingMode(settings.get("mode", "raw")),
            outputs=_parse_kinds(settings.get("kinds", "sl,l,u")),
            format=settings.get("format", "csv"),
        )
        jobs = int(settings.get("jobs", "1"))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return spec, settings.get("out"), jobs


def cmd_sweep(args: argparse.Namespace) -> int:
    spec, out, jobs = build_sweep_spec(args)
    try:
        rows = run_sweep(spec, jobs=jobs)
    except BoundsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    text = to_csv(rows) if spec.format == "csv" else to_json(rows, spec)
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def cmd_eval(args: argparse.Namespace) -> int:
    try:
        kind = parse_kind(args.kind)
        mode = CouplingMode(args.mode)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    base = dict(N=args.n, coupling_mode=mode.value, coupling=args.coupling, kind=kind.value)
    try:
        b = evaluate(SystemParams(args.n, args.mass, args.coupling, mode), kind)
    except (DomainError, NoMinimumError) as exc:
        err = {
            "error": "domain",
            **base,
            "constraint": exc.constraint,
            "margin": exc.margin if math.isfinite(exc.margin) else None,
        }
        print(json.dumps(err, ensure_ascii=False), file=sys.stderr)
        return 1
    except BoundsError as exc:
        print(json.dumps({"error": "compute", **base, "message": str(exc)}, ensure_ascii=False), file=sys.stderr)
        return 1
    row = Row(**base, value=b.value, valid=b.valid, margin=b.constraint_margin, mu_star=b.mu_star)
    if args.format == "csv":
        sys.stdout.write(to_csv([row]))
    else:
        rec = row_to_record(row)
        print(json.dumps({k: rec[k] for k in CSV_COLUMNS if k != "reason"}, ensure_ascii=False))
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    results = run_suite(args.level, g_perturbation=args.perturb_g)
    for res in results:
        print(res.line())
    failed = [r for r in results if not r.passed]
    if failed:
        print(f"FAILED: {failed[0].name}", file=sys.stderr)
        return 1
    print(f"all {len(results)} checks passed")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gravbounds", description="Energy bounds for gravitating semirelativistic N-boson systems."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sw = sub.add_parser("sweep", help="evaluate bounds over a coupling grid")
    sw.add_argument("--n-list", help="comma list of N; ranges like 2..6 allowed")
    sw.add_argument("--mass", type=float)
    sw.add_argument("--mode", choices=[m.value for m in CouplingMode])
    sw.add_argument("--grid", help="start:stop:steps over v (raw) or c (rescaled)")
    sw.add_argument("--kinds", help="comma list of sl, l, u (default all three)")
    sw.add_argument("--format", choices=["csv", "json"])
    sw.add_argument("--out", help="output path (default stdout)")
    sw.add_argument("--jobs", type=int, help="worker processes for grid points")
    sw.add_argument("--config", help="flat key = value file with defaults")
    sw.add_argument("--figure1", action="store_true", help="preset: N = 5, m = 1, raw v in [0, 0.6]")
    sw.add_argument("--figure2", action="store_true", help="preset: N = 2..6, m = 1, rescaled c in [0, 1.4]")
    sw.set_defaults(func=cmd_sweep)

    ev = sub.add_parser("eval", help="evaluate a single bound")
    ev.add_argument("-N", "--n", type=int, required=True)
    ev.add_argument("--mass", type=float, default=1.0)
    ev.add_argument("--coupling", type=float, required=True, help="v (raw) or c (rescaled)")
    ev.add_argument("--mode", choices=[m.value for m in CouplingMode], default="raw")
    ev.add_argument("--kind", required=True, help="sl, l, u, herbst, mr, u1, small-lower, small-upper")
    ev.add_argument("--format", choices=["csv", "json"], default="json")
    ev.set_defaults(func=cmd_eval)

    ve = sub.add_parser("verify", help="run the numerical verification suite")
    ve.add_argument("--level", choices=["quick", "full"], default="quick")
    ve.add_argument("--perturb-g", type=float, default=0.0, help=argparse.SUPPRESS)
    ve.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"gravbounds: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

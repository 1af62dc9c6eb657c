"""Coupling sweeps and their CSV/JSON serialization.

Every (N, coupling, kind) grid point produces exactly one row.  Points outside
a bound's domain are kept as rows with ``valid = false``, an empty value and
the violated constraint in ``reason``.
"""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from . import __version__
from .bounds import BoundKind, CouplingMode, SystemParams, evaluate
from .errors import DomainError, NoMinimumError

CSV_COLUMNS = ["N", "coupling_mode", "coupling", "kind", "value", "valid", "margin", "mu_star", "reason"]

KIND_ALIASES = {
    "sl": BoundKind.SIMPLE_LOWER,
    "l": BoundKind.IMPROVED_LOWER,
    "u": BoundKind.GAUSSIAN_UPPER,
    "herbst": BoundKind.HERBST_ONE_BODY,
    "mr": BoundKind.MARTIN_ROY_ONE_BODY,
    "u1": BoundKind.GAUSSIAN_UPPER_ONE_BODY,
    "small-lower": BoundKind.SMALL_COUPLING_LOWER,
    "small-upper": BoundKind.SMALL_COUPLING_UPPER,
}


def parse_kind(text: str) -> BoundKind:
    key = text.strip().lower()
    if key in KIND_ALIASES:
        return KIND_ALIASES[key]
    return BoundKind(key)


@dataclass(frozen=True)
class Grid:
    start: float
    stop: float
    steps: int

    def __post_init__(self):
        if not self.start >= 0:
            raise ValueError(f"grid start must be >= 0, got {self.start}")
        if not self.stop > self.start:
            raise ValueError(f"grid stop must exceed start, got {self.start}:{self.stop}")
        if self.steps < 2:
            raise ValueError(f"grid needs at least 2 steps, got {self.steps}")

    @classmethod
    def parse(cls, text: str) -> "Grid":
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"grid must be start:stop:steps, got {text!r}")
        return cls(float(parts[0]), float(parts[1]), int(parts[2]))

    def points(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.steps)

    def __str__(self) -> str:
        return f"{self.start:g}:{self.stop:g}:{self.steps}"


@dataclass(frozen=True)
class SweepSpec:
    N_list: tuple[int, ...]
    grid: Grid
    m: float = 1.0
    coupling_mode: CouplingMode = CouplingMode.RAW
    outputs: tuple[BoundKind, ...] = (BoundKind.SIMPLE_LOWER, BoundKind.IMPROVED_LOWER, BoundKind.GAUSSIAN_UPPER)
    format: str = "csv"

    def __post_init__(self):
        if not self.N_list:
            raise ValueError("N list is empty")
        if any(n < 2 for n in self.N_list):
            raise ValueError(f"every N must be >= 2, got {list(self.N_list)}")
        if not self.m > 0:
            raise ValueError(f"mass must be > 0, got {self.m}")
        if not self.outputs:
            raise ValueError("no bound kinds requested")
        if self.format not in ("csv", "json"):
            raise ValueError(f"format must be csv or json, got {self.format!r}")

    def echo(self) -> dict:
        return {
            "N_list": list(self.N_list),
            "m": self.m,
            "coupling_mode": CouplingMode(self.coupling_mode).value,
            "grid": str(self.grid),
            "outputs": [k.value for k in self.outputs],
            "format": self.format,
        }


FIGURE1 = SweepSpec(N_list=(5,), grid=Grid(0.0, 0.6, 61), m=1.0, coupling_mode=CouplingMode.RAW)
FIGURE2 = SweepSpec(N_list=(2, 3, 4, 5, 6), grid=Grid(0.0, 1.4, 71), m=1.0, coupling_mode=CouplingMode.RESCALED)


@dataclass(frozen=True)
class Row:
    N: int
    coupling_mode: str
    coupling: float
    kind: str
    value: float | None
    valid: bool
    margin: float | None
    mu_star: float | None
    reason: str = ""


def evaluate_point(N: int, m: float, mode: CouplingMode, coupling: float, kinds) -> list[Row]:
    mode = CouplingMode(mode)
    rows = []
    for kind in kinds:
        kind = BoundKind(kind)
        base = dict(N=N, coupling_mode=mode.value, coupling=float(coupling), kind=kind.value)
        if not coupling > 0:
            rows.append(Row(**base, value=None, valid=False, margin=None, mu_star=None, reason="coupling must be > 0"))
            continue
        try:
            b = evaluate(SystemParams(N, m, float(coupling), mode), kind)
        except (DomainError, NoMinimumError) as exc:
            margin = exc.margin if math.isfinite(exc.margin) else None
            rows.append(Row(**base, value=None, valid=False, margin=margin, mu_star=None, reason=exc.constraint))
            continue
        rows.append(Row(**base, value=b.value, valid=b.valid, margin=b.constraint_margin, mu_star=b.mu_star))
    return rows


def _point_task(args):
    return evaluate_point(*args)


def run_sweep(spec: SweepSpec, jobs: int = 1) -> list[Row]:
    """Evaluate the sweep; rows come out ordered by N, then coupling, then kind."""
    tasks = [
        (N, spec.m, spec.coupling_mode, float(c), tuple(spec.outputs)) for N in spec.N_list for c in spec.grid.points()
    ]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_point_task, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    else:
        chunks = [_point_task(t) for t in tasks]
    return [row for chunk in chunks for row in chunk]


def _fmt(x: float | None) -> str:
    if x is None:
        return ""
    return f"{x:.12g}"


def _round(x: float | None):
    if x is None or not math.isfinite(x):
        return None if x is None else str(x)
    return float(f"{x:.12g}")


def row_to_record(row: Row) -> dict:
    rec = asdict(row)
    for key in ("coupling", "value", "margin", "mu_star"):
        rec[key] = _round(rec[key])
    return rec


def to_csv(rows: list[Row]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in rows:
        writer.writerow(
            [
                r.N,
                r.coupling_mode,
                _fmt(r.coupling),
                r.kind,
                _fmt(r.value),
                "true" if r.valid else "false",
                _fmt(r.margin),
                _fmt(r.mu_star),
                r.reason,
            ]
        )
    return buf.getvalue()


def to_json(rows: list[Row], spec: SweepSpec) -> str:
    doc = {
        "metadata": {"artifact": "gravbounds", "version": __version__, "spec": spec.echo(), "columns": CSV_COLUMNS},
        "rows": [row_to_record(r) for r in rows],
    }
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def read_csv(text: str) -> list[dict]:
    """Parse sweep CSV back into typed records (used by the test suite)."""
    out = []
    for rec in csv.DictReader(io.StringIO(text)):
        out.append(
            {
                "N": int(rec["N"]),
                "coupling_mode": rec["coupling_mode"],
                "coupling": float(rec["coupling"]),
                "kind": rec["kind"],
                "value": float(rec["value"]) if rec["value"] else None,
                "valid": rec["valid"] == "true",
                "margin": float(rec["margin"]) if rec["margin"] else None,
                "mu_star": float(rec["mu_star"]) if rec["mu_star"] else None,
                "reason": rec["reason"],
            }
        )
    return out

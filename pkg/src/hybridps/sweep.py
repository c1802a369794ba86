"""Single-point evaluation and parameter sweeps with deterministic output."""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .detection import phase_sensitivity
from .errors import AnnihilatedStateError, UsageError
from .model.params import PARAM_FIELDS, Params
from .photon_number import internal_photon_number
from .qfi_ideal import qfi_ideal
from .qfi_lossy import qfi_lossy

__all__ = [
    "QUANTITIES",
    "STATUSES",
    "Axis",
    "SweepSpec",
    "ResultRow",
    "run_point",
    "run_sweep",
    "grid_points",
    "format_number",
    "render",
    "write_rows",
]

QUANTITIES = ("delta_phi", "F", "F_lossy", "qcrb", "qcrb_lossy", "n_total", "sql", "hl")
STATUSES = ("ok", "infinite", "annihilated")
SIG_DIGITS = 12


@dataclass(frozen=True)
class Axis:
    name: str
    start: float
    stop: float
    count: int

    def __post_init__(self):
        if self.name not in PARAM_FIELDS:
            raise UsageError(f"axis: unknown parameter {self.name!r}")
        if self.count < 2:
            raise UsageError(f"axis {self.name}: count must be >= 2")

    @classmethod
    def parse(cls, text):
        """``name:start:stop:count``."""
        parts = text.split(":")
        if len(parts) != 4:
            raise UsageError(f"axis: expected name:start:stop:count, got {text!r}")
        name, start, stop, count = parts
        try:
            return cls(name, float(start), float(stop), int(count))
        except ValueError as exc:
            raise UsageError(f"axis {name}: {exc}") from None

    def values(self):
        vals = np.linspace(self.start, self.stop, self.count)
        if self.name == "m":
            if not all(float(v).is_integer() for v in vals):
                raise UsageError("axis m: grid values must be integers")
            return [int(v) for v in vals]
        return [float(v) for v in vals]


@dataclass(frozen=True)
class SweepSpec:
    axes: tuple
    fixed: Params = field(default_factory=Params)
    quantities: tuple = ("delta_phi", "F", "qcrb")
    output: str | None = None
    format: str = "csv"
    overridden: frozenset = frozenset()

    def __post_init__(self):
        if not 1 <= len(self.axes) <= 2:
            raise UsageError("sweep: expected 1 or 2 axes")
        names = [a.name for a in self.axes]
        if len(set(names)) != len(names):
            raise UsageError("sweep: axis parameters repeated")
        clash = set(names) & set(self.overridden)
        if clash:
            raise UsageError(f"sweep: {sorted(clash)[0]} is both an axis and a fixed override")
        _check_quantities(self.quantities)
        if self.format not in ("csv", "json"):
            raise UsageError(f"format: expected csv or json, got {self.format!r}")


@dataclass
class ResultRow:
    params: Params
    values: dict
    status: str = "ok"

    def as_dict(self):
        out = self.params.as_dict()
        out.update(self.values)
        out["status"] = self.status
        return out


def _check_quantities(quantities):
    if not quantities:
        raise UsageError("quantities: at least one is required")
    for q in quantities:
        if q not in QUANTITIES:
            raise UsageError(f"quantities: unknown {q!r} (choose from {', '.join(QUANTITIES)})")


def _analytic(p, name, cache):
    if name == "delta_phi":
        return phase_sensitivity(p)
    if name in ("F", "qcrb"):
        if "F" not in cache:
            cache["F"] = qfi_ideal(p).F
        F = cache["F"]
        return F if name == "F" else (1.0 / math.sqrt(F) if F > 0 else math.inf)
    if name in ("F_lossy", "qcrb_lossy"):
        if "F_lossy" not in cache:
            cache["F_lossy"] = qfi_lossy(p)
        F = cache["F_lossy"]
        return F if name == "F_lossy" else (1.0 / math.sqrt(F) if F > 0 else math.inf)
    if "n" not in cache:
        cache["n"] = internal_photon_number(p)
    res = cache["n"]
    return {"n_total": res.n_total, "sql": res.sql, "hl": res.hl}[name]


def _oracle(p, name, cache, cutoff):
    from .oracle import (
        oracle_internal_photon_number,
        oracle_phase_sensitivity,
        oracle_qfi_ideal,
        oracle_qfi_lossy,
    )

    if name == "delta_phi":
        return oracle_phase_sensitivity(p, cutoff)
    if name in ("F", "qcrb"):
        if "F" not in cache:
            cache["F"] = oracle_qfi_ideal(p, cutoff)
        F = cache["F"]
        return F if name == "F" else (1.0 / math.sqrt(F) if F > 0 else math.inf)
    if name in ("F_lossy", "qcrb_lossy"):
        if "F_lossy" not in cache:
            cache["F_lossy"] = oracle_qfi_lossy(p, cutoff)
        F = cache["F_lossy"]
        return F if name == "F_lossy" else (1.0 / math.sqrt(F) if F > 0 else math.inf)
    if "n" not in cache:
        cache["n"] = oracle_internal_photon_number(p, cutoff)
    n = cache["n"]
    if n <= 0:
        return {"n_total": n, "sql": math.inf, "hl": math.inf}[name]
    return {"n_total": n, "sql": 1.0 / math.sqrt(n), "hl": 1.0 / n}[name]


def run_point(p, quantities=("delta_phi", "F", "qcrb"), oracle=False, cutoff=40):
    """Evaluate the requested quantities at one parameter point.

    Physics failures become status flags.  A non-finite value is stored as
    ``None`` and flags the row ``infinite``; an annihilated state nulls
    every quantity.
    """
    if not isinstance(p, Params):
        raise UsageError("run_point: expected a Params instance")
    quantities = tuple(quantities)
    _check_quantities(quantities)
    cache = {}
    values = {}
    status = "ok"
    try:
        for q in quantities:
            v = _oracle(p, q, cache, cutoff) if oracle else _analytic(p, q, cache)
            v = float(v)
            if math.isfinite(v):
                values[q] = v
            else:
                values[q] = None
                status = "infinite"
    except AnnihilatedStateError:
        return ResultRow(p, {q: None for q in quantities}, "annihilated")
    return ResultRow(p, values, status)


def grid_points(spec):
    """Params of the sweep in row-major order (first axis outermost)."""
    grids = [a.values() for a in spec.axes]
    points = []
    if len(grids) == 1:
        for v in grids[0]:
            points.append(spec.fixed.replace(**{spec.axes[0].name: v}))
    else:
        for v0 in grids[0]:
            for v1 in grids[1]:
                points.append(spec.fixed.replace(**{spec.axes[0].name: v0, spec.axes[1].name: v1}))
    return points


def _point_job(args):
    p, quantities = args
    return run_point(p, quantities)


def run_sweep(spec, jobs=1):
    """Evaluate every grid point; writes ``spec.output`` when set."""
    points = grid_points(spec)
    work = [(p, spec.quantities) for p in points]
    if jobs > 1 and len(points) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_point_job, work, chunksize=max(1, len(work) // (4 * jobs))))
    else:
        rows = [_point_job(w) for w in work]
    if spec.output:
        write_rows(rows, spec.quantities, spec.output, spec.format)
    return rows


def format_number(x):
    """Twelve significant digits, shortest stable spelling."""
    if isinstance(x, (bool, np.bool_)):
        return str(x)
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), f".{SIG_DIGITS}g")


def _columns(quantities):
    return list(PARAM_FIELDS) + list(quantities) + ["status"]


def render(rows, quantities, fmt="csv"):
    """Serialize rows to a CSV or JSON string."""
    cols = _columns(quantities)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(cols)
        for row in rows:
            d = row.as_dict()
            writer.writerow(["" if d.get(c) is None else (d[c] if c == "status" else format_number(d[c])) for c in cols])
        return buf.getvalue()
    if fmt == "json":
        out = []
        for row in rows:
            d = row.as_dict()
            rec = {}
            for c in cols:
                v = d.get(c)
                if c == "status" or v is None:
                    rec[c] = v
                elif c == "m":
                    rec[c] = int(v)
                else:
                    rec[c] = float(format_number(v))
            out.append(rec)
        return json.dumps(out, indent=1) + "\n"
    raise UsageError(f"format: expected csv or json, got {fmt!r}")


def write_rows(rows, quantities, path, fmt="csv"):
    text = render(rows, quantities, fmt)
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"output: cannot write {path}: {exc.strerror}") from None
    return path

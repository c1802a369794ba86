"""``hybridps`` command-line interface.

Exit codes: 0 success, 1 usage error, 2 validation failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from .errors import HybridPSError, UsageError
from .model.params import PARAM_FIELDS, Params
from .sweep import QUANTITIES, Axis, SweepSpec, render, run_point, run_sweep

EXIT_OK, EXIT_USAGE, EXIT_VALIDATION = 0, 1, 2

POINT_QUANTITIES = {
    "sensitivity": ("delta_phi", "qcrb", "n_total", "sql", "hl"),
    "qfi": ("F", "qcrb"),
    "qfi-lossy": ("F_lossy", "qcrb_lossy"),
    "nphoton": ("n_total", "sql", "hl"),
}

_FLOAT_FIELDS = ("alpha", "beta", "g", "theta", "phi", "tau", "T", "eta")
_CONFIG_KEYS = set(PARAM_FIELDS) | {"scheme", "cutoff", "output", "format", "axis", "quantities", "jobs", "oracle"}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _add_common(sp):
    sp.add_argument("--config", help="JSON file with the same keys as the flags")
    sp.add_argument("--scheme", type=str.upper, choices=("A", "B"))
    for name in _FLOAT_FIELDS:
        sp.add_argument(f"--{name}", type=float, default=None)
    sp.add_argument("--m", type=int, default=None)
    sp.add_argument("--cutoff", type=int, default=None, help="starting Fock cutoff for the oracle (default 40)")
    sp.add_argument("--output", "-o", default=None)
    sp.add_argument("--format", choices=("csv", "json"), default=None)


def build_parser():
    parser = _Parser(prog="hybridps", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, quantities in POINT_QUANTITIES.items():
        sp = sub.add_parser(name, help=f"evaluate {', '.join(quantities)} at one point")
        _add_common(sp)
        sp.add_argument("--oracle", action="store_true", default=None, help="use the Fock-space oracle")
    sp = sub.add_parser("sweep", help="evaluate a 1- or 2-axis parameter grid")
    _add_common(sp)
    sp.add_argument("--axis", action="append", default=None, metavar="NAME:START:STOP:COUNT")
    sp.add_argument("--quantities", default=None, help=f"comma list from {','.join(QUANTITIES)}")
    sp.add_argument("--jobs", type=int, default=None)
    sp = sub.add_parser("validate", help="run the self-check suite")
    sp.add_argument("level", nargs="?", choices=("quick", "full"), default="quick")
    sp.add_argument("--cutoff", type=int, default=40)
    sp.add_argument("--output", "-o", default=None)
    return parser


def _load_config(path):
    if not path:
        return {}
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise UsageError(f"config: cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"config: invalid JSON in {path}: {exc.msg}") from None
    if not isinstance(data, dict):
        raise UsageError("config: top level must be an object")
    unknown = set(data) - _CONFIG_KEYS
    if unknown:
        raise UsageError(f"config: unknown key {sorted(unknown)[0]!r}")
    return data


def _merged(args):
    """Config values overlaid by explicit flags."""
    settings = _load_config(getattr(args, "config", None))
    for key, value in vars(args).items():
        if key in ("config", "command") or value is None:
            continue
        settings[key] = value
    return settings


def _params(settings):
    """Params from merged settings; returns ``(params, explicitly_set_fields)``."""
    values = {}
    scheme = settings.get("scheme")
    if scheme is not None:
        scheme = str(scheme).upper()
        if scheme not in ("A", "B"):
            raise UsageError(f"scheme: expected A or B, got {scheme!r}")
        values["alpha"], values["beta"] = (1.0, 0.0) if scheme == "A" else (0.0, 1.0)
    explicit = set()
    for name in PARAM_FIELDS:
        if name in settings and settings[name] is not None:
            values[name] = settings[name]
            explicit.add(name)
    return Params(**values), frozenset(explicit)


def _emit(text, output):
    if output:
        try:
            with open(output, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            raise UsageError(f"output: cannot write {output}: {exc.strerror}") from None
    else:
        sys.stdout.write(text)


def _cmd_point(args):
    settings = _merged(args)
    p, _ = _params(settings)
    quantities = POINT_QUANTITIES[args.command]
    row = run_point(p, quantities, oracle=bool(settings.get("oracle")), cutoff=int(settings.get("cutoff", 40)))
    _emit(render([row], quantities, settings.get("format", "json")), settings.get("output"))
    return EXIT_OK


def _cmd_sweep(args):
    settings = _merged(args)
    p, explicit = _params(settings)
    axes = settings.get("axis")
    if not axes:
        raise UsageError("sweep: at least one --axis is required")
    if isinstance(axes, str):
        axes = [axes]
    quantities = settings.get("quantities", "delta_phi,F,qcrb")
    if isinstance(quantities, str):
        quantities = [q.strip() for q in quantities.split(",") if q.strip()]
    spec = SweepSpec(
        axes=tuple(Axis.parse(a) for a in axes),
        fixed=p,
        quantities=tuple(quantities),
        output=settings.get("output"),
        format=settings.get("format", "csv"),
        overridden=explicit,
    )
    jobs = int(settings.get("jobs", 1))
    rows = run_sweep(spec, jobs=jobs)
    if not spec.output:
        sys.stdout.write(render(rows, spec.quantities, spec.format))
    return EXIT_OK


def _cmd_validate(args):
    from .validate import timed

    result = timed(args.level, args.cutoff)
    text = json.dumps(result, indent=1, allow_nan=False, default=_json_default) + "\n"
    _emit(text, args.output)
    return EXIT_OK if result["passed"] else EXIT_VALIDATION


def _json_default(x):
    if isinstance(x, float) and not math.isfinite(x):
        return None
    raise TypeError(type(x).__name__)


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "sweep":
            return _cmd_sweep(args)
        if args.command == "validate":
            return _cmd_validate(args)
        return _cmd_point(args)
    except UsageError as exc:
        print(f"hybridps: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except HybridPSError as exc:
        print(f"hybridps: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())

"""Command-line interface: ``coulomb1d <subcommand> [--flags]``.

Subcommands are ``scatter``, ``sweep``, ``bound-states``, ``correction``
and ``verify``.  Data goes to stdout as JSON (``schema: "coulomb1d/1"``) or
CSV, diagnostics to stderr.  Exit status is 0 on success, 1 when a check
fails and 2 on usage errors.

Settings are resolved as defaults < config file < flags.  The config file
holds ``key = value`` lines (``#`` starts a comment) and is selected by
``--config`` or the ``COULOMB1D_CONFIG`` environment variable.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import math
import os
import sys
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import __version__
from .errors import Coulomb1DError, DomainError
from .extensions import delta_correction, real_extension_params
from .oracle import continuation_group_error, continued_evaluator, identity_suite, ode_residual
from .scattering import (
    ExtensionParams,
    PhysicalParams,
    fundamental_solution,
    scattering_report,
    solve_boundary_numeric,
)
from .specfun import DEFAULT_POLICY, EvalPolicy
from .spectrum import bound_spectrum

SCHEMA = "coulomb1d/1"
CONFIG_ENV = "COULOMB1D_CONFIG"
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

SWEEP_COLUMNS = ("alpha", "k", "re_R", "im_R", "re_T", "im_T", "abs2R", "abs2T", "unitarity_residual")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    """Settings shared by all subcommands."""

    unitarity_tol: float = 1e-10
    residual_tol: float = 1e-6
    format: str = "json"
    digits: int = 17
    policy: EvalPolicy = DEFAULT_POLICY

    def __post_init__(self):
        if not (self.unitarity_tol > 0 and self.residual_tol > 0):
            raise UsageError("tolerances must be positive")
        if self.format not in ("json", "csv"):
            raise UsageError("format must be json or csv")
        if not 1 <= self.digits <= 17:
            raise UsageError("digits must be between 1 and 17")


_POLICY_KEYS = {f.name: f.type for f in dataclasses.fields(EvalPolicy)}
_CONFIG_KEYS = {"unitarity_tol": float, "residual_tol": float, "format": str, "digits": int}


def _coerce(key: str, raw: str):
    if key in _CONFIG_KEYS:
        return _CONFIG_KEYS[key](raw)
    kind = _POLICY_KEYS[key]
    return int(raw) if kind in ("int", int) else float(raw)


def read_config(path: str) -> dict:
    """Parse a ``key = value`` file into a dict of typed settings."""
    out = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc.strerror}") from None
    for lineno, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key = value")
        key, raw = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in _CONFIG_KEYS and key not in _POLICY_KEYS:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            out[key] = _coerce(key, raw)
        except ValueError:
            raise UsageError(f"{path}:{lineno}: bad value for {key}: {raw!r}") from None
    return out


def resolve_config(args: argparse.Namespace, default_format: str = "json") -> RunConfig:
    settings: dict = {"format": default_format}
    path = args.config or os.environ.get(CONFIG_ENV)
    if path:
        settings.update(read_config(path))
    for key in list(_CONFIG_KEYS) + list(_POLICY_KEYS):
        val = getattr(args, key, None)
        if val is not None:
            settings[key] = val
    policy_kw = {k: settings.pop(k) for k in list(settings) if k in _POLICY_KEYS}
    try:
        policy = dataclasses.replace(DEFAULT_POLICY, **policy_kw)
    except (ValueError, DomainError) as exc:
        raise UsageError(f"invalid evaluation policy: {exc}") from None
    return RunConfig(policy=policy, **settings)


# ---------------------------------------------------------------------------
# serialization


def _fmt_float(x: float, digits: int) -> str:
    if math.isnan(x):
        return '"nan"'
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    s = format(x, f".{digits}g")
    if "e" not in s and "." not in s and "inf" not in s:
        s += ".0"
    return s


def dumps(obj, digits: int = 17, indent: int = 0) -> str:
    """Deterministic JSON with ``digits`` significant digits for floats.

    Complex numbers become ``{"re": ..., "im": ...}``; non-finite floats
    are emitted as the strings "inf", "-inf", "nan".
    """
    pad = "  " * (indent + 1)
    end = "  " * indent
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt_float(float(obj), digits)
    if isinstance(obj, complex):
        return dumps({"re": obj.real, "im": obj.imag}, digits, indent)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, digits, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [pad + dumps(v, digits, indent + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def envelope(command: str, data, options: dict) -> dict:
    return {"schema": SCHEMA, "header": {"command": command, "version": __version__, "options": options},
            "data": data}


def write_csv(rows: Sequence[dict], columns: Sequence[str], digits: int) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_fmt_float(float(row[c]), digits).strip('"') if isinstance(row[c], float) else row[c]
                         for c in columns])
    return buf.getvalue()


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


# ---------------------------------------------------------------------------
# commands


def _solution_dict(sol) -> dict:
    return {"A_R": sol.A_R, "B_R": sol.B_R, "R": sol.R, "T": sol.T, "abs2R": sol.abs2R,
            "abs2T": sol.abs2T, "current": sol.current, "unitarity_residual": sol.unitarity_residual,
            "regime": sol.regime, "reflection_infinite": sol.reflection_infinite}


def cmd_scatter(args, cfg: RunConfig) -> int:
    params = PhysicalParams.scattering(args.alpha, args.k)
    custom = args.v_plus_minus_v is not None or args.v_plus_plus_w is not None
    if custom and args.real_extension:
        raise UsageError("--real-extension conflicts with explicit --v-plus-* values")
    if custom:
        ext = ExtensionParams(complex(args.v_plus_minus_v or 0.0), complex(args.v_plus_plus_w or 0.0))
    else:
        ext = "real"
    sol = scattering_report(ext, params)
    data = _solution_dict(sol)
    if args.numeric and params.alpha != 0 and sol.regime == "regular":
        e = ext if custom else real_extension_params(params)
        num = solve_boundary_numeric(e.v_plus_minus_V, e.v_plus_plus_W, params)
        data["numeric"] = {"A_R": num.A_R, "B_R": num.B_R, "v_minus_minus_V": num.v_minus_minus_V,
                           "A1": num.A1, "B1": num.B1, "condition_number": num.condition_number}
    if not custom and params.alpha != 0:
        t = math.pi * params.alpha / (2 * params.k.real)
        data["closed_form"] = {"abs2T": 1 / math.cosh(t) ** 2, "abs2R": math.tanh(t) ** 2}
    options = {"alpha": args.alpha, "k": args.k, "extension": "custom" if custom else "real"}
    if cfg.format == "csv":
        row = _sweep_row(args.alpha, args.k, sol)
        _emit(write_csv([row], SWEEP_COLUMNS, cfg.digits))
    else:
        _emit(dumps(envelope("scatter", data, options), cfg.digits))
    # only the real extension is guaranteed to conserve the current; generic
    # v-values are reported without a unitarity verdict
    if not custom and sol.regime == "regular" and sol.unitarity_residual > cfg.unitarity_tol:
        print(f"unitarity residual {sol.unitarity_residual:.3e} exceeds {cfg.unitarity_tol:g}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def _sweep_row(alpha: float, k: float, sol) -> dict:
    return {"alpha": float(alpha), "k": float(k), "re_R": sol.R.real, "im_R": sol.R.imag,
            "re_T": sol.T.real, "im_T": sol.T.imag, "abs2R": sol.abs2R, "abs2T": sol.abs2T,
            "unitarity_residual": sol.unitarity_residual}


def _grid(explicit, lo, hi, num, log: bool) -> list[float]:
    if explicit is not None:
        values = [float(v) for v in explicit]
    else:
        if num < 1:
            raise UsageError("empty range: the number of points must be >= 1")
        values = (np.logspace(math.log10(lo), math.log10(hi), num) if log
                  else np.linspace(lo, hi, num)).tolist()
    if not values:
        raise UsageError("empty range")
    return values


def cmd_sweep(args, cfg: RunConfig) -> int:
    if args.k_log and min(args.k_min, args.k_max) <= 0:
        raise UsageError("logarithmic k range needs positive bounds")
    alphas = _grid(args.alphas, args.alpha_min, args.alpha_max, args.alpha_num, False)
    ks = _grid(args.ks, args.k_min, args.k_max, args.k_num, args.k_log)
    if any(k <= 0 for k in ks):
        raise UsageError("k values must be positive")
    if any(a == 0 for a in alphas) and not args.free_limit:
        raise UsageError("alpha = 0 is in the range; pass --free-limit to include the free particle")
    rows = []
    for a in alphas:
        for k in ks:
            rows.append(_sweep_row(a, k, scattering_report("real", PhysicalParams.scattering(a, k))))
    if cfg.format == "csv":
        _emit(write_csv(rows, SWEEP_COLUMNS, cfg.digits))
    else:
        options = {"alphas": alphas, "ks": ks, "free_limit": args.free_limit}
        _emit(dumps(envelope("sweep", rows, options), cfg.digits))
    worst = max(r["unitarity_residual"] for r in rows)
    if worst > cfg.unitarity_tol:
        print(f"max unitarity residual {worst:.3e} exceeds {cfg.unitarity_tol:g}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_bound_states(args, cfg: RunConfig) -> int:
    states = bound_spectrum(args.alpha, args.n_max)
    rows = [{"n": s.n, "kappa": s.kappa, "E": s.E, "E_exact": -args.alpha ** 2 / (4 * s.n ** 2),
             "residual": s.residual} for s in states]
    note = None if states else "no bound states for alpha >= 0"
    if note:
        print(note, file=sys.stderr)
    if cfg.format == "csv":
        _emit(write_csv(rows, ("n", "kappa", "E", "E_exact", "residual"), cfg.digits))
    else:
        data = {"states": rows}
        if note:
            data["note"] = note
        _emit(dumps(envelope("bound-states", data, {"alpha": args.alpha, "n_max": args.n_max}), cfg.digits))
    return EXIT_OK


def cmd_correction(args, cfg: RunConfig) -> int:
    params = PhysicalParams.scattering(args.alpha, args.k)
    forms = ("closed", "series", "asymptotic") if args.form == "all" else (args.form,)
    rows = []
    for form in forms:
        if form == "asymptotic" and args.form == "all" and params.alpha / (2 * args.k) < 5:
            continue
        d = delta_correction(params, args.x, form, args.terms)
        rows.append({"form": d.form, "coefficient": d.coefficient, "terms": d.terms, "tail_bound": d.tail_bound})
    if cfg.format == "csv":
        _emit(write_csv(rows, ("form", "coefficient", "terms", "tail_bound"), cfg.digits))
    else:
        options = {"alpha": args.alpha, "k": args.k, "x": args.x, "form": args.form, "terms": args.terms}
        _emit(dumps(envelope("correction", rows, options), cfg.digits))
    return EXIT_OK


RESIDUAL_POINTS = (0.5, 1.0, 5.0)
UNITARITY_ALPHAS = (-5.0, -2.0, -1.0, -0.5, 0.5, 1.0, 2.0, 5.0)
UNITARITY_KS = (0.1, 0.3, 1.0, 3.0, 10.0)


def _suite_identities(cfg):
    report = identity_suite()
    return {name: {**s, "passed": s["passed"]} for name, s in report.summary().items()}


def _suite_residuals(cfg):
    params = PhysicalParams.scattering(1.0, 1.0)
    out = {}
    for sid in ("plusW", "plusV", "minusW", "minusV"):
        sign = 1 if sid.startswith("plus") else -1
        ev = lambda x, sid=sid: fundamental_solution(sid, params, x, cfg.policy)  # noqa: E731
        r = ode_residual(ev, params, [sign * x for x in RESIDUAL_POINTS])
        out[sid] = {"passed": r.max_relative_residual < cfg.residual_tol, "worst_error": r.max_relative_residual,
                    "tolerance": cfg.residual_tol}
    r = ode_residual(continued_evaluator(params, 1), params, RESIDUAL_POINTS)
    out["continued_s1"] = {"passed": r.max_relative_residual < cfg.residual_tol,
                           "worst_error": r.max_relative_residual, "tolerance": cfg.residual_tol}
    return out


def _suite_continuation(cfg):
    err = continuation_group_error()
    return {"group_property": {"passed": err < 1e-10, "worst_error": err, "tolerance": 1e-10}}


def _suite_unitarity(cfg):
    worst = 0.0
    for a in UNITARITY_ALPHAS:
        for k in UNITARITY_KS:
            worst = max(worst, scattering_report("real", PhysicalParams.scattering(a, k)).unitarity_residual)
    return {"real_extension": {"passed": worst < cfg.unitarity_tol, "worst_error": worst,
                               "tolerance": cfg.unitarity_tol}}


SUITES = {
    "identities": _suite_identities,
    "residuals": _suite_residuals,
    "continuation": _suite_continuation,
    "unitarity": _suite_unitarity,
}


def cmd_verify(args, cfg: RunConfig) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    results = {name: SUITES[name](cfg) for name in names}
    passed = all(c["passed"] for suite in results.values() for c in suite.values())
    if cfg.format == "csv":
        rows = [{"suite": s, "check": c, "passed": str(v["passed"]).lower(), "worst_error": v["worst_error"],
                 "tolerance": v["tolerance"]} for s, checks in results.items() for c, v in checks.items()]
        _emit(write_csv(rows, ("suite", "check", "passed", "worst_error", "tolerance"), cfg.digits))
    else:
        _emit(dumps(envelope("verify", {"passed": passed, "suites": results}, {"suite": args.suite}), cfg.digits))
    for s, checks in results.items():
        for c, v in checks.items():
            if not v["passed"]:
                print(f"FAIL {s}/{c}: {v['worst_error']:.3e} > {v['tolerance']:g}", file=sys.stderr)
    return EXIT_OK if passed else EXIT_FAIL


# ---------------------------------------------------------------------------
# parser


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help=f"key = value settings file (default: ${CONFIG_ENV})")
    common.add_argument("--format", choices=("json", "csv"))
    common.add_argument("--digits", type=int, help="significant digits of floats (max 17)")
    common.add_argument("--unitarity-tol", dest="unitarity_tol", type=float)
    common.add_argument("--residual-tol", dest="residual_tol", type=float)
    common.add_argument("--asymptotic-threshold", dest="asymptotic_threshold", type=float)
    common.add_argument("--log-expansion-threshold", dest="log_expansion_threshold", type=float)
    common.add_argument("--series-max-terms", dest="series_max_terms", type=int)
    common.add_argument("--series-rel-tol", dest="series_rel_tol", type=float)

    parser = _Parser(prog="coulomb1d", description="Scattering on the one-dimensional Coulomb potential.",
                     allow_abbrev=False)
    parser.add_argument("--version", action="version", version=f"coulomb1d {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("scatter", parents=[common], help="one (alpha, k) point", allow_abbrev=False)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--k", type=float, required=True)
    p.add_argument("--real-extension", action="store_true", help="use the real extension (default)")
    p.add_argument("--v-plus-minus-v", dest="v_plus_minus_v", type=float)
    p.add_argument("--v-plus-plus-w", dest="v_plus_plus_w", type=float)
    p.add_argument("--numeric", action="store_true", help="also solve the matching system numerically")
    p.set_defaults(func=cmd_scatter, default_format="json")

    p = sub.add_parser("sweep", parents=[common], help="grid of (alpha, k) for the real extension",
                       allow_abbrev=False)
    p.add_argument("--alphas", type=float, nargs="+")
    p.add_argument("--alpha-min", type=float, default=0.5)
    p.add_argument("--alpha-max", type=float, default=5.5)
    p.add_argument("--alpha-num", type=int, default=11)
    p.add_argument("--ks", type=float, nargs="+")
    p.add_argument("--k-min", type=float, default=0.1)
    p.add_argument("--k-max", type=float, default=10.0)
    p.add_argument("--k-num", type=int, default=11)
    p.add_argument("--k-linear", dest="k_log", action="store_false", help="linear instead of log spacing in k")
    p.add_argument("--free-limit", action="store_true", help="allow alpha = 0 (free particle)")
    p.set_defaults(func=cmd_sweep, default_format="csv")

    p = sub.add_parser("bound-states", parents=[common], help="bound-state table", allow_abbrev=False)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--n-max", type=int, default=5)
    p.set_defaults(func=cmd_bound_states, default_format="json")

    p = sub.add_parser("correction", parents=[common], help="delta-correction coefficient", allow_abbrev=False)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--k", type=float, required=True)
    p.add_argument("--x", type=float, default=1.0)
    p.add_argument("--form", choices=("closed", "series", "asymptotic", "all"), default="all")
    p.add_argument("--terms", type=int, default=100_000)
    p.set_defaults(func=cmd_correction, default_format="json")

    p = sub.add_parser("verify", parents=[common], help="run verification suites", allow_abbrev=False)
    p.add_argument("--suite", choices=("all",) + tuple(SUITES), default="all")
    p.set_defaults(func=cmd_verify, default_format="json")
    return parser


def run_command(argv: Sequence[str] | None = None) -> int:
    """Parse ``argv`` and run the subcommand; returns the exit status."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = resolve_config(args, args.default_format)
        return args.func(args, cfg)
    except UsageError as exc:
        print(f"coulomb1d: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, ValueError) as exc:
        print(f"coulomb1d: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Coulomb1DError as exc:
        print(f"coulomb1d: failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


def main(argv: Sequence[str] | None = None) -> int:
    return run_command(argv)


if __name__ == "__main__":
    sys.exit(main())

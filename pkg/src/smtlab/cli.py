"""Command line front end: scenario files in, CSV or JSON reports out.

Each subcommand loads one scenario, runs the matching library routine,
and writes a single report to --output (stdout when omitted).  Exit code
0 means the run completed with nothing falsified, 2 flags a falsified
inequality or a broken defect relation, and 1 covers every error,
including bad usage.  Reports are deterministic: the same scenario and
seed produce byte-identical output.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import replace
from fractions import Fraction
from typing import Any, Dict, List, Tuple

from .errors import CertificationError, DegenerateInputError, ValidationError
from .exact_algebra import WeightVector
from .nevanlinna import build_profile, fmt_residual
from .position_geometry import distributive_constant
from .scenario import Scenario, load_scenario
from .smt_verifier import (
    SMTConstants,
    constants_fixed,
    constants_moving,
    constants_plane,
    constants_theoremB,
    defect_relation_report,
    verify_main_inequality,
)
from .weights import check_evertse_ferretti, chow_weight_estimate

# L is echoed verbatim only when any JSON consumer can hold it exactly;
# the magnitude always travels as log10_L
_JSON_L_BITS = 63

Report = Tuple[Dict[str, Any], List[List[Any]], int]


def _constants_to_dict(c: SMTConstants) -> Dict[str, Any]:
    out: Dict[str, Any] = {"variant": c.variant, "u": c.u}
    if c.L is not None and c.L.bit_length() <= _JSON_L_BITS:
        out["L"] = c.L
    out["log10_L"] = c.log10_L
    out["n"] = c.n
    out["deg_V"] = c.deg_V
    out["d"] = c.d
    out["q"] = c.q
    out["delta_V"] = str(c.delta_V)
    out["epsilon"] = str(c.epsilon)
    if c.note:
        out["note"] = c.note
    return out


def _select_constants(scenario: Scenario, n: int, deg_V: int, d: int,
                      q: int, delta: Fraction) -> SMTConstants:
    if math.isinf(scenario.domain_radius):
        return constants_plane(n, deg_V, d, q, delta, scenario.epsilon,
                               scenario.family.is_moving)
    if scenario.family.is_moving:
        return constants_moving(n, deg_V, d, q, delta, scenario.epsilon)
    return constants_fixed(n, deg_V, d, delta, scenario.epsilon, q=q)


def _cmd_constants(scenario: Scenario, args: argparse.Namespace) -> Report:
    """Truncation constants for the scenario's variant, with the slower
    bound alongside for comparison."""
    n, deg_V = scenario.variety.dim_degree()
    q = len(scenario.family)
    d = scenario.family.common_degree
    delta = distributive_constant(scenario.variety, scenario.family,
                                  samples=args.samples,
                                  seed=scenario.seed).value
    primary = _select_constants(scenario, n, deg_V, d, q, delta)
    other = constants_theoremB(n, deg_V, d, q, delta, scenario.epsilon)
    improvement = other.log10_L - primary.log10_L
    payload = {
        "constants": _constants_to_dict(primary),
        "theorem_b": _constants_to_dict(other),
        "log10_improvement": improvement,
    }
    rows: List[List[Any]] = [["field", "value"]]
    for prefix, c in (("", primary), ("theorem_b.", other)):
        for key, value in _constants_to_dict(c).items():
            rows.append([prefix + key, value])
    rows.append(["log10_improvement", improvement])
    return payload, rows, 0


def _cmd_distributive(scenario: Scenario, args: argparse.Namespace) -> Report:
    report = distributive_constant(scenario.variety, scenario.family,
                                   samples=args.samples,
                                   seed=scenario.seed)
    payload = {
        "value": str(report.value),
        "witness": list(report.witness),
        "sample_points": len(report.sample_points),
        "table": [{"subset": list(subset), "dim": dim, "ratio": str(ratio)}
                  for subset, dim, ratio in report.table],
    }
    rows: List[List[Any]] = [["subset", "dim", "ratio"]]
    for subset, dim, ratio in report.table:
        rows.append([" ".join(str(i) for i in subset), dim, str(ratio)])
    return payload, rows, 0


def _cmd_weights(scenario: Scenario, args: argparse.Namespace) -> Report:
    """Weight ladder s_u and its limit for the scenario's variety.

    The weight vector is the deterministic ladder (1, 2, ..., N+1); the
    randomized sweeps live in the test suite, not here.
    """
    X = scenario.variety
    c = WeightVector(range(1, X.num_vars + 1))
    estimate = chow_weight_estimate(X, c, u_max=args.max_u)
    u_last = estimate.sequence[-1][0]
    margin = check_evertse_ferretti(X, u_last, c, estimate)
    k, delta = X.dim_degree()
    payload = {
        "dim": k,
        "degree": delta,
        "weights": [str(w) for w in c],
        "estimate": estimate.value,
        "error_bound": estimate.error_bound,
        "ef_margin": margin,
        "sequence": [[u, s] for u, s in estimate.sequence],
    }
    rows: List[List[Any]] = [["u", "s_u"]]
    rows.extend([u, s] for u, s in estimate.sequence)
    return payload, rows, 0


def _cmd_nevanlinna(scenario: Scenario, args: argparse.Namespace) -> Report:
    """Grid profile of T with per-hypersurface m, N, truncated N, and the
    residual d T - m - N; truncation level comes from the scenario and
    defaults to 1."""
    trunc = scenario.truncation if scenario.truncation is not None else 1
    profile = build_profile(scenario.curve, scenario.family, scenario.grid,
                            trunc, tol=args.quad_tol,
                            strict_origin=args.strict_jensen)
    degrees = [Q.degree for Q in scenario.family]
    data = profile.rows(degrees)
    header = ["r", "T"]
    for j in range(len(degrees)):
        header.extend([f"m_{j}", f"N_{j}", f"N_trunc_{j}", f"residual_{j}"])
    payload = {
        "truncations": list(profile.truncations),
        "columns": header,
        "rows": data,
    }
    return payload, [header] + data, 0


def _cmd_fmt_check(scenario: Scenario, args: argparse.Namespace) -> Report:
    residual_rows: List[List[Any]] = [[r] for r in scenario.grid.values]
    spreads = []
    for Q in scenario.family:
        residuals, spread = fmt_residual(scenario.curve, Q, scenario.grid,
                                         tol=args.quad_tol)
        spreads.append(spread)
        for row, value in zip(residual_rows, residuals):
            row.append(value)
    header = ["r"] + [f"residual_{j}" for j in range(len(scenario.family))]
    payload = {"spreads": spreads, "columns": header, "rows": residual_rows}
    return payload, [header] + residual_rows, 0


def _cmd_verify(scenario: Scenario, args: argparse.Namespace) -> Report:
    report = verify_main_inequality(scenario, quad_tol=args.quad_tol,
                                    strict_origin=args.strict_jensen)
    payload = {
        "constants": _constants_to_dict(report.constants),
        "columns": ["r", "lhs", "rhs", "margin"],
        "rows": [list(row) for row in report.rows],
        "rhs_terms": [list(t) for t in report.rhs_terms],
        "defects": [{"index": j, "value": v} for j, v in report.defects],
        "comparison": report.comparison,
        "flags": list(report.flags),
        "falsified": report.falsified,
    }
    rows: List[List[Any]] = [["r", "lhs", "rhs", "margin"]]
    rows.extend(list(row) for row in report.rows)
    return payload, rows, 2 if report.falsified else 0


def _cmd_defects(scenario: Scenario, args: argparse.Namespace) -> Report:
    report = defect_relation_report(scenario, quad_tol=args.quad_tol)
    payload = {
        "constants": _constants_to_dict(report.constants),
        "u_bound": report.u_bound,
        "defects": [{"index": j, "value": v} for j, v in report.defects],
        "total": report.total,
        "bound": report.bound,
        "holds": report.holds,
        "flags": list(report.flags),
    }
    rows: List[List[Any]] = [["index", "defect"]]
    rows.extend([j, v] for j, v in report.defects)
    rows.append(["total", report.total])
    rows.append(["bound", report.bound])
    return payload, rows, 0 if report.holds else 2


_HANDLERS = {
    "constants": _cmd_constants,
    "distributive": _cmd_distributive,
    "weights": _cmd_weights,
    "nevanlinna": _cmd_nevanlinna,
    "fmt-check": _cmd_fmt_check,
    "verify": _cmd_verify,
    "defects": _cmd_defects,
}

_HELP = {
    "constants": "truncation constants for the scenario's theorem variant",
    "distributive": "distributive constant with its witness subset",
    "weights": "Hilbert weight ladder and Chow weight estimate",
    "nevanlinna": "characteristic, proximity, and counting profile",
    "fmt-check": "first-main-theorem residuals per hypersurface",
    "verify": "evaluate the main inequality over the radial grid",
    "defects": "truncated defect totals against the explicit bound",
}


def _scrub(x: Any) -> Any:
    """Strict-JSON form: infinities become the string "inf", matching the
    scenario grammar."""
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    if isinstance(x, (list, tuple)):
        return [_scrub(v) for v in x]
    if isinstance(x, dict):
        return {k: _scrub(v) for k, v in x.items()}
    return x


def _write(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
        return
    with open(output, "w", encoding="utf-8") as fh:
        fh.write(text)


def _emit(payload: Dict[str, Any], rows: List[List[Any]],
          args: argparse.Namespace) -> None:
    if args.format == "json":
        text = json.dumps(_scrub(payload), indent=2, allow_nan=False) + "\n"
    else:
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(rows)
        text = buf.getvalue()
    _write(text, args.output)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="smtlab",
        description="scenario-driven reports for holomorphic-curve "
                    "value distribution on discs")
    sub = parser.add_subparsers(dest="command", required=True,
                                metavar="command")
    for name in _HANDLERS:
        p = sub.add_parser(name, help=_HELP[name])
        p.add_argument("--scenario", required=True,
                       help="path to a scenario JSON file")
        p.add_argument("--output", default=None,
                       help="write the report here instead of stdout")
        p.add_argument("--format", choices=("csv", "json"), default="json")
        p.add_argument("--quad-tol", type=float, default=1e-8,
                       help="circle quadrature tolerance")
        p.add_argument("--max-u", type=int, default=40,
                       help="top of the weight ladder")
        p.add_argument("--samples", type=int, default=3,
                       help="generic evaluation points per moving scan")
        p.add_argument("--seed", type=int, default=None,
                       help="override the scenario's seed")
        p.add_argument("--strict-jensen", action="store_true",
                       help="count origin zeros instead of dropping them")
    return parser


def main(argv: List[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad usage; 2 is reserved for falsification
        return 0 if exc.code in (0, None) else 1
    try:
        scenario = load_scenario(args.scenario)
        if args.seed is not None:
            scenario = replace(scenario, seed=args.seed)
        payload, rows, code = _HANDLERS[args.command](scenario, args)
        _emit(payload, rows, args)
    except (ValidationError, DegenerateInputError, CertificationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return code


if __name__ == "__main__":
    raise SystemExit(main())

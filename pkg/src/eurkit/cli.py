"""Command-line front end.

Subcommands:

* ``sweep``      evaluate a state family over a parameter grid and emit
                 one row per point (CSV or JSON), optionally a figure.
* ``bound``      evaluate one state file under a measurement partition
                 and print the full report as JSON.
* ``verify``     run the randomized inequality and identity suite.
* ``constants``  print the measurement-only complementarity constants.

Exit codes: 0 success, 1 usage or contract error, 2 inequality
violation beyond tolerance, 3 I/O failure. Output files and reports are
byte-stable for fixed inputs: floats are written with shortest
round-trip formatting and rows always end with a bare newline.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .bounds import (
    MeasurementScenario,
    bound_report,
    chain_overlap_constant,
    max_overlap_constant,
    weighted_chain_values,
)
from .entropy import DensityOperator
from .errors import (
    ContractError,
    DimensionError,
    DomainError,
    NumericalError,
    PositivityError,
)
from .states import StateFamily, pauli_bases
from .stateio import load_bases, load_state
from .verification import run_verification, worker_count

CSV_HEADER = (
    "param,U,L1,L2,delta,delta_prime,S_AB,S_AC,I_AB,I_AC,"
    "holevo_sum,slack_L1,slack_L2"
)
ROW_KEYS = CSV_HEADER.split(",")
NAMED_BASES = ("pauli-xyz", "pauli-xy", "pauli-xz", "pauli-yz")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VIOLATION = 2
EXIT_IO = 3


class _Parser(argparse.ArgumentParser):
    """argparse variant whose usage failures exit with code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _fmt(value) -> str:
    if value is None:
        return ""
    return repr(float(value))


def _write_text(path, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _resolve_bases(spec: str):
    if spec in NAMED_BASES:
        px, py, pz = pauli_bases()
        picked = {"x": px, "y": py, "z": pz}
        if spec == "pauli-xyz":
            return (px, py, pz)
        return tuple(picked[ch] for ch in spec.split("-")[1])
    return load_bases(spec)


def _parse_partition(text: str, bases) -> MeasurementScenario:
    by_label = {b.label: b for b in bases}
    clauses = [c for c in text.split(";") if c.strip()]
    picked = {}
    for clause in clauses:
        head, sep, tail = clause.partition(":")
        name = head.strip().upper()
        if not sep or name not in ("B", "C"):
            raise ContractError(f"malformed partition clause {clause!r}")
        if name in picked:
            raise ContractError(f"memory {name} listed twice in {text!r}")
        labels = [t.strip() for t in tail.split(",") if t.strip()]
        if not labels:
            raise ContractError(f"memory {name} lists no bases in {text!r}")
        picked[name] = labels
    for name in ("B", "C"):
        if name not in picked:
            raise ContractError(f"partition {text!r} is missing memory {name}")
    ordered = picked["B"] + picked["C"]
    seen = set()
    for label in ordered:
        if label not in by_label:
            raise ContractError(
                f"unknown basis label {label!r}; have {sorted(by_label)}"
            )
        if label in seen:
            raise ContractError(f"basis label {label!r} assigned twice")
        seen.add(label)
    return MeasurementScenario(
        tuple(by_label[label] for label in ordered), split=len(picked["B"])
    )


def _parse_dims(text: str) -> tuple:
    try:
        dims = tuple(int(tok) for tok in text.split(","))
    except ValueError:
        raise ContractError(f"dims must be comma-separated integers, got {text!r}")
    return dims


def _report_row(param: float, rep) -> dict:
    row = {
        "param": float(param),
        "U": rep.uncertainty,
        "L1": rep.bound_split,
        "L2": rep.bound_mub,
        "delta": rep.delta,
        "delta_prime": rep.delta_prime,
        "S_AB": rep.s_a_given_b,
        "S_AC": rep.s_a_given_c,
        "I_AB": rep.i_ab,
        "I_AC": rep.i_ac,
        "holevo_sum": rep.holevo_sum,
        "slack_L1": rep.slack_split,
        "slack_L2": rep.slack_mub,
    }
    row["_S_A"] = rep.s_a
    return row


def cmd_sweep(args) -> int:
    family = StateFamily(args.family, phi=args.phi)
    start = args.param_start
    end = args.param_end
    if start is None:
        start = family.parameter_range[0]
    if end is None:
        end = family.parameter_range[1]
    if args.steps < 1:
        raise ContractError("steps must be at least 1")
    split = 2 if args.case == 1 else 1
    scenario = MeasurementScenario(pauli_bases(), split=split)
    values = [float(v) for v in np.linspace(start, end, args.steps)]

    def eval_one(value: float) -> dict:
        return _report_row(value, bound_report(family.build(value), scenario))

    threads = min(worker_count(), len(values))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(eval_one, values))
    else:
        rows = [eval_one(v) for v in values]

    violated = False
    tight = 0
    for row in rows:
        if row["slack_L1"] < -args.tol:
            violated = True
        if row["slack_L2"] is not None and row["slack_L2"] < -args.tol:
            violated = True
        if (
            row["delta"] > 0
            and row["L2"] is not None
            and abs((row["L2"] - row["L1"]) - (1.0 - row["_S_A"])) <= 1e-9
        ):
            tight += 1

    public = [{k: row[k] for k in ROW_KEYS} for row in rows]
    if args.format == "csv":
        lines = [CSV_HEADER]
        lines.extend(",".join(_fmt(row[k]) for k in ROW_KEYS) for row in public)
        _write_text(args.output, "\n".join(lines) + "\n")
    else:
        _write_text(args.output, json.dumps(public, indent=2) + "\n")

    if args.figure is not None:
        from .plotting import render_sweep_figure

        render_sweep_figure(
            public,
            family.parameter_name,
            args.figure,
            title=f"{family.name} case {args.case}",
        )

    def series(key):
        vals = [row[key] for row in rows if row[key] is not None]
        return (min(vals), max(vals)) if vals else (math.nan, math.nan)

    lo1, hi1 = series("slack_L1")
    lo2, hi2 = series("slack_L2")
    print(
        f"rows={len(rows)} slack_L1[min={lo1:.3e}, max={hi1:.3e}] "
        f"slack_L2[min={lo2:.3e}, max={hi2:.3e}] tight_rows={tight}/{len(rows)}",
        file=sys.stderr,
    )
    return EXIT_VIOLATION if violated else EXIT_OK


def cmd_bound(args) -> int:
    rho = load_state(args.state)
    bases = _resolve_bases(args.measurements)
    scenario = _parse_partition(args.partition, bases)
    rep = bound_report(rho, scenario)
    _write_text(args.output, json.dumps(rep.to_dict(), indent=2) + "\n")
    slack = rep.slack_split
    if rep.slack_mub is not None:
        slack = min(slack, rep.slack_mub)
    return EXIT_VIOLATION if slack < -args.tol else EXIT_OK


def cmd_verify(args) -> int:
    report = run_verification(
        count=args.count,
        seed=args.seed,
        dims=_parse_dims(args.dims),
        tol=args.tol,
    )
    _write_text(args.output, json.dumps(report.to_dict(), indent=2) + "\n")
    print(
        f"checked={report.checked} violations={report.violations} "
        f"worst_margin={report.worst_margin!r} seed={report.seed}",
        file=sys.stderr,
    )
    shown = report.failures[:20]
    for failure in shown:
        print(
            f"violation: {failure.name} at index {failure.index} "
            f"margin {failure.margin!r} (replay: --seed {report.seed}, "
            f"state stream {2 * failure.index})",
            file=sys.stderr,
        )
    hidden = len(report.failures) - len(shown)
    if hidden > 0:
        print(f"... and {hidden} more", file=sys.stderr)
    return EXIT_VIOLATION if report.violations else EXIT_OK


def cmd_constants(args) -> int:
    bases = _resolve_bases(args.measurements)
    if len(bases) < 2:
        raise ContractError("constants need at least two bases")
    labels = [b.label for b in bases]
    dim = bases[0].dim
    pairs = []
    for i in range(len(bases)):
        for j in range(i + 1, len(bases)):
            c, q = max_overlap_constant(bases[i], bases[j])
            pairs.append(
                {"pair": [labels[i], labels[j]], "c": c, "q_mu": q}
            )
    b, neg_log_b = chain_overlap_constant(bases)
    rho_a = DensityOperator(np.eye(dim) / dim, (dim,))
    orderings = [
        {"order": list(order), "value": value}
        for order, value in weighted_chain_values(bases, rho_a)
    ]
    payload = {
        "labels": labels,
        "dim": dim,
        "pairs": pairs,
        "b": b,
        "neg_log2_b": neg_log_b,
        "weighted_orderings": orderings,
        "weighted_max": max(o["value"] for o in orderings),
    }
    _write_text(args.output, json.dumps(payload, indent=2) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="eur",
        description="Split-memory entropic uncertainty bounds toolkit.",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sweep = sub.add_parser("sweep", help="evaluate a state family over a grid")
    sweep.add_argument("--family", choices=("werner", "wstate"), required=True)
    sweep.add_argument("--param-start", type=float, default=None)
    sweep.add_argument("--param-end", type=float, default=None)
    sweep.add_argument("--steps", type=int, default=101)
    sweep.add_argument("--case", type=int, choices=(1, 2), default=1)
    sweep.add_argument("--phi", type=float, default=math.pi / 4)
    sweep.add_argument("--output", default=None)
    sweep.add_argument("--format", choices=("csv", "json"), default="csv")
    sweep.add_argument("--figure", default=None, help="also render a plot file")
    sweep.add_argument("--tol", type=float, default=1e-8)
    sweep.set_defaults(func=cmd_sweep)

    bound = sub.add_parser("bound", help="evaluate one state file")
    bound.add_argument("--state", required=True)
    bound.add_argument("--measurements", default="pauli-xyz")
    bound.add_argument("--partition", default="B:x,y;C:z")
    bound.add_argument("--output", default=None)
    bound.add_argument("--tol", type=float, default=1e-8)
    bound.set_defaults(func=cmd_bound)

    verify = sub.add_parser("verify", help="run the randomized check suite")
    verify.add_argument("--count", type=int, default=1000)
    verify.add_argument("--seed", type=int, default=42)
    verify.add_argument("--dims", default="2,2,2")
    verify.add_argument("--tol", type=float, default=1e-8)
    verify.add_argument("--output", default=None)
    verify.set_defaults(func=cmd_verify)

    constants = sub.add_parser("constants", help="print measurement constants")
    constants.add_argument("--measurements", default="pauli-xyz")
    constants.add_argument("--output", default=None)
    constants.set_defaults(func=cmd_constants)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        if code is None:
            return EXIT_OK
        return code if isinstance(code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except (ContractError, DomainError, PositivityError, DimensionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())

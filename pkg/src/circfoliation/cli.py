"""Command-line interface.

    circfoliation count --family gp:2 --n 5
    circfoliation table --family gp:1 --from 3 --to 10 --format csv
    circfoliation qpoly --spec ig.json
    circfoliation asymptotics --family circulant:1,2 --samples 50,100,200

Errors go to stderr as a single ``error[<code>]: <kind>: <message>`` line.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import errors
from .arithmetic import decompose_tau, q_minus_one, square_free_part
from .asymptotics import check_asymptotics
from .chebyshev import check_lemma1
from .counting import (
    DEFAULT_BITS,
    invariants,
    tau_exact,
    tau_spectral_eps,
    tau_spectral_roots,
    tau_via_oracle,
)
from .model import FoliationSpec, is_cover_connected, parse_family, require_valid, theorem_domain_issue

EXIT_OK = 0
EXIT_SPEC = 2
EXIT_DISCONNECTED = 3
EXIT_DOMAIN = 4
EXIT_INTERNAL = 5
EXIT_HYPOTHESIS = 6

_EXIT_CODES = [
    (errors.DisconnectedCover, EXIT_DISCONNECTED),
    (errors.TheoremDomain, EXIT_DOMAIN),
    (errors.DegenerateJump, EXIT_DOMAIN),
    (errors.HypothesisViolated, EXIT_HYPOTHESIS),
    (errors.InvalidSpec, EXIT_SPEC),
]


class CliError(Exception):
    def __init__(self, code: int, kind: str, message: str):
        super().__init__(message)
        self.code = code
        self.kind = kind


def load_spec(args) -> FoliationSpec:
    if args.family:
        spec = parse_family(args.family)
    else:
        try:
            text = Path(args.spec).read_text(encoding="utf-8")
        except OSError as exc:
            raise errors.InvalidSpec(f"cannot read {args.spec}: {exc.strerror}") from exc
        spec = FoliationSpec.from_json(text)
    require_valid(spec)
    return spec


def _write_rows(rows: list[dict], columns: list[str], fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(rows, indent=2) + "\n")
        return
    buf = io.StringIO()
    writer = csv.writer(buf, delimiter="\t" if fmt == "tsv" else ",", lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([row[c] for c in columns])
    out.write(buf.getvalue())


# -- commands -----------------------------------------------------------


def cmd_count(args, out) -> int:
    spec = load_spec(args)
    n = args.n
    if args.oracle:
        out.write(f"{tau_via_oracle(spec, n).tau}\n")
        return EXIT_OK
    issue = theorem_domain_issue(spec, n)
    if issue is not None:
        raise errors.TheoremDomain(f"{issue}; the cover would contain a loop")
    result = tau_exact(spec, n)
    out.write(f"{result.tau}\n")
    if not args.verify:
        return EXIT_OK
    routes = [
        result,
        tau_spectral_roots(spec, n, args.precision),
        tau_spectral_eps(spec, n, args.precision),
    ]
    if spec.m * n <= args.oracle_max_vertices:
        routes.append(tau_via_oracle(spec, n))
    else:
        out.write(f"route=oracle skipped (m*n={spec.m * n} > {args.oracle_max_vertices})\n")
    for r in routes:
        line = f"route={r.route} tau={r.tau}"
        if "residual" in r.diagnostics:
            line += f" residual={r.diagnostics['residual']:.3e} bits={r.diagnostics['bits']}"
        out.write(line + "\n")
    agree = len({r.tau for r in routes}) == 1
    out.write(f"agree={'true' if agree else 'false'}\n")
    if not agree:
        raise CliError(EXIT_INTERNAL, "RouteDisagreement", "routes disagree")
    return EXIT_OK


TABLE_COLUMNS = ["n", "tau", "parity", "p", "a", "connected"]


def table_rows(spec: FoliationSpec, n_from: int, n_to: int, oracle_max_vertices: int) -> list[dict]:
    rows = []
    for n in range(n_from, n_to + 1):
        row = {"n": n, "tau": "", "parity": "odd" if n % 2 else "even", "p": "", "a": "", "connected": "true"}
        if not is_cover_connected(spec, n):
            row["connected"] = "false"
            if spec.m * n <= oracle_max_vertices and theorem_domain_issue(spec, n) is None:
                row["tau"] = str(tau_via_oracle(spec, n).tau)
        elif theorem_domain_issue(spec, n) is None:
            d = decompose_tau(spec, n)
            row.update(tau=str(d.tau), p=str(d.p), a=str(d.a))
        rows.append(row)
    return rows


def cmd_table(args, out) -> int:
    spec = load_spec(args)
    if args.n_from > args.n_to:
        raise errors.InvalidSpec("empty range")
    if args.n_from < 3:
        raise errors.InvalidSpec("--from must be at least 3")
    rows = table_rows(spec, args.n_from, args.n_to, args.oracle_max_vertices)
    _write_rows(rows, TABLE_COLUMNS, args.format, out)
    return EXIT_OK


def qpoly_report(spec: FoliationSpec) -> dict:
    inv = invariants(spec)
    q_neg = q_minus_one(spec)
    lemma = check_lemma1(spec)
    return {
        "Q": str(inv.Q),
        "Q_coeffs": inv.Q.to_json(),
        "P": str(inv.P),
        "P_coeffs": inv.P.to_json(),
        "g": str(inv.g).replace("w", "zeta"),
        "g_coeffs": inv.g.to_json(),
        "s": inv.s,
        "q": inv.q,
        "tau_H": inv.tau_H,
        "Q(-1)": str(q_neg),
        "p": square_free_part(q_neg)[0],
        "lemma1": {
            "Q(1)": str(lemma.q_at_1),
            "Q'(1)": str(lemma.derivative_at_1),
            "expected_Q'(1)": str(-2 * lemma.q * lemma.tau_H),
            "degree": lemma.degree,
            "lead": str(lemma.lead),
            "expected_lead": str(lemma.expected_lead),
            "lead_equals_(-1)^m*2^s": lemma.uniform_lead_holds,
            "ok": lemma.ok,
        },
    }


def cmd_qpoly(args, out) -> int:
    spec = load_spec(args)
    report = qpoly_report(spec)
    if args.format == "json":
        out.write(json.dumps(report, indent=2) + "\n")
    else:
        for key in ("Q", "P", "g", "s", "q", "tau_H", "Q(-1)", "p"):
            out.write(f"{key} = {report[key]}\n")
        for key, value in report["lemma1"].items():
            out.write(f"lemma1.{key} = {value}\n")
    if not report["lemma1"]["ok"]:
        raise CliError(EXIT_INTERNAL, "Lemma1Failure", "polynomial identities failed")
    return EXIT_OK


def cmd_asymptotics(args, out) -> int:
    spec = load_spec(args)
    try:
        samples = [int(tok) for tok in args.samples.split(",") if tok.strip()]
    except ValueError as exc:
        raise errors.InvalidSpec(f"bad --samples {args.samples!r}") from exc
    if any(n < 3 for n in samples):
        raise errors.InvalidSpec("sample sizes must be at least 3")
    report = check_asymptotics(spec, samples, args.precision)
    data = report.to_json()
    data["discrepancy_decreasing"] = report.discrepancy_decreasing
    out.write(json.dumps(data, indent=2) + "\n")
    return EXIT_OK


# -- parser -------------------------------------------------------------


def _add_spec_source(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--family", help='built-in family, e.g. "gp:2", "torus:4", "circulant:1,2"')
    src.add_argument("--spec", help="path to a FoliationSpec JSON file")
    p.add_argument("--precision", type=int, default=DEFAULT_BITS, help="bits for floating routes")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="circfoliation",
        description="Spanning-tree counts of circulant foliations over a graph.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="tau(n) for one n")
    _add_spec_source(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--verify", action="store_true", help="also run the spectral routes and the oracle")
    p.add_argument("--oracle", action="store_true", help="count with the matrix-tree oracle only")
    p.add_argument("--oracle-max-vertices", type=int, default=400)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("table", help="tau(n) and its square decomposition over a range")
    _add_spec_source(p)
    p.add_argument("--from", dest="n_from", type=int, required=True)
    p.add_argument("--to", dest="n_to", type=int, required=True)
    p.add_argument("--format", choices=("csv", "tsv", "json"), default="csv")
    p.add_argument("--oracle-max-vertices", type=int, default=400)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("qpoly", help="Q(w), P(z), g, q, Q(-1) and the identities Q(1)=0, Q'(1)=-2q tau(H)")
    _add_spec_source(p)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_qpoly)

    p = sub.add_parser("asymptotics", help="growth constant and tau(n) q / (n A^n)")
    _add_spec_source(p)
    p.add_argument("--samples", default="25,50,100,200")
    p.set_defaults(func=cmd_asymptotics)
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        if getattr(args, "n", 3) < 3:
            raise errors.InvalidSpec("n must be at least 3")
        return args.func(args, out)
    except CliError as exc:
        err.write(f"error[{exc.code}]: {exc.kind}: {exc}\n")
        return exc.code
    except errors.FoliationError as exc:
        code = next((c for cls, c in _EXIT_CODES if isinstance(exc, cls)), EXIT_INTERNAL)
        err.write(f"error[{code}]: {type(exc).__name__}: {exc}\n")
        return code
    except AssertionError as exc:
        err.write(f"error[{EXIT_INTERNAL}]: InternalAssertion: {exc}\n")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())

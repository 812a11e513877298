"""Command-line front end.

    condcompat check   A.json B.json [--format text|json] [--csv] [--renormalize]
    condcompat dmatrix A.json B.json [--cmatrix] [--format text|json] [--csv]
    condcompat lp      A.json B.json [--space joint|eta] [--format text|json] [--csv]

Matrix files hold ``{"matrix": [[...], ...]}`` with entries given as
fraction strings ("3/8"), decimal strings or numbers, or integers.  With
``--csv`` each line is one comma-separated row.  Exit status: 0 compatible,
1 incompatible, 2 error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .engine import CompatReport, InternalInconsistency, classify
from .exactlin import ZERO, RatMatrix, rational
from .lpcore import LPResult, eta_lp, joint_lp
from .specmodel import ConditionalPair, SpecError, build_C, build_D, validate_pair

EXIT_COMPATIBLE = 0
EXIT_INCOMPATIBLE = 1
EXIT_ERROR = 2

DECIMAL_PLACES = 7


class InputError(Exception):
    """Unreadable or malformed input file."""


@dataclass
class InputDocument:
    matrix: list
    path: str
    row_labels: list | None = None
    col_labels: list | None = None


def fmt_exact(x) -> str:
    return str(rational(x))


def fmt_decimal(x, places: int = DECIMAL_PLACES) -> str:
    """Round half-to-even at ``places`` decimals, e.g. -2/9 -> '-0.2222222'."""
    q = rational(x)
    f = Fraction(int(q.numerator), int(q.denominator))
    scaled = round(f * 10**places)
    sign = "-" if scaled < 0 else ""
    whole, frac = divmod(abs(scaled), 10**places)
    return f"{sign}{whole}.{frac:0{places}d}"


def _parse_entry(value, path: str, i: int, j: int):
    try:
        return rational(value)
    except (TypeError, ValueError) as exc:
        raise InputError(f"{path}: row {i + 1}, column {j + 1}: cannot read entry {value!r}") from exc


def read_matrix(path: str | Path, use_csv: bool = False) -> InputDocument:
    p = str(path)
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{p}: {exc.strerror or exc}") from exc
    labels = {}
    if use_csv:
        raw = [row for row in csv.reader(text.splitlines()) if any(c.strip() for c in row)]
        raw = [[c.strip() for c in row] for row in raw]
    else:
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"{p}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
        if not isinstance(doc, dict) or "matrix" not in doc:
            raise InputError(f'{p}: expected an object with a "matrix" key')
        raw = doc["matrix"]
        labels = {k: doc.get(k) for k in ("row_labels", "col_labels")}
    if not isinstance(raw, list) or not raw or not all(isinstance(r, list) for r in raw):
        raise InputError(f"{p}: matrix must be a nonempty list of rows")
    width = len(raw[0])
    for i, row in enumerate(raw):
        if len(row) != width:
            raise InputError(f"{p}: row {i + 1} has {len(row)} entries, expected {width}")
    rows = [[_parse_entry(v, p, i, j) for j, v in enumerate(row)] for i, row in enumerate(raw)]
    return InputDocument(rows, p, labels.get("row_labels"), labels.get("col_labels"))


def renormalize(A: list, B: list, tol) -> tuple[list, list, list]:
    """Rescale columns of A and rows of B to sum to one exactly.

    Lines whose sum is off by more than ``tol`` are left alone so that
    validation reports them.
    """
    notes = []
    A = [list(r) for r in A]
    B = [list(r) for r in B]
    for j in range(len(A[0])):
        s = sum((A[i][j] for i in range(len(A))), ZERO)
        if s != 1 and s != 0 and abs(s - 1) <= tol:
            for i in range(len(A)):
                A[i][j] = A[i][j] / s
            notes.append({"matrix": "A", "axis": "column", "index": j, "sum": fmt_exact(s), "factor": fmt_exact(1 / s)})
    for i, row in enumerate(B):
        s = sum(row, ZERO)
        if s != 1 and s != 0 and abs(s - 1) <= tol:
            B[i] = [x / s for x in row]
            notes.append({"matrix": "B", "axis": "row", "index": i, "sum": fmt_exact(s), "factor": fmt_exact(1 / s)})
    return A, B, notes


def _exact_vec(values) -> list:
    return [fmt_exact(v) for v in values]


def _decimal_vec(values) -> list:
    return [fmt_decimal(v) for v in values]


def report_document(report: CompatReport, renorm: list | None = None, elapsed_ms: float | None = None) -> dict:
    joint = report.joint.P.rows if report.joint is not None else None
    doc = {
        "verdict": report.verdict.value,
        "compatible": report.compatible,
        "I": report.I,
        "J": report.J,
        "rank_D": report.rank_D,
        "eta": _exact_vec(report.eta.values) if report.eta else None,
        "eta_decimal": _decimal_vec(report.eta.values) if report.eta else None,
        "tau": _exact_vec(report.tau.values) if report.tau else None,
        "tau_decimal": _decimal_vec(report.tau.values) if report.tau else None,
        "joint": [_exact_vec(r) for r in joint] if joint else None,
        "joint_decimal": [_decimal_vec(r) for r in joint] if joint else None,
        "nullspace_basis_D": [_exact_vec(v.col(0)) for v in report.nullspace_basis_D],
        "methods": {
            m.name: {
                "compatible": m.compatible,
                "value": fmt_exact(m.value) if m.value is not None else None,
                "detail": m.detail,
            }
            for m in report.method_results
        },
        "degenerate": report.degenerate,
        "renormalization": renorm or [],
    }
    if elapsed_ms is not None:
        doc["timing_ms"] = round(elapsed_ms, 3)
    return doc


def render_json(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _grid_lines(m: RatMatrix, row_names: list[str]) -> list[str]:
    exact = [[fmt_exact(x) for x in r] for r in m.rows]
    dec = [[fmt_decimal(x) for x in r] for r in m.rows]
    we = max((len(s) for r in exact for s in r), default=1)
    wd = max((len(s) for r in dec for s in r), default=1)
    wn = max((len(s) for s in row_names), default=0)
    lines = []
    for name, er, dr in zip(row_names, exact, dec):
        left = " ".join(s.rjust(we) for s in er)
        right = " ".join(s.rjust(wd) for s in dr)
        lines.append(f"{name.ljust(wn)}  {left}   | {right}")
    return lines


def render_text(doc: dict, labels: InputDocument | None = None) -> str:
    out = [
        f"verdict: {doc['verdict']}",
        f"rank(D) = {doc['rank_D']} (I = {doc['I']}, J = {doc['J']})",
    ]
    xs = (labels.row_labels if labels and labels.row_labels else None) or [str(i + 1) for i in range(doc["I"])]
    ys = (labels.col_labels if labels and labels.col_labels else None) or [str(j + 1) for j in range(doc["J"])]
    if doc["eta"] is not None:
        out.append("eta (X marginal): " + ", ".join(f"{x}: {e} ({d})" for x, e, d in zip(xs, doc["eta"], doc["eta_decimal"])))
        out.append("tau (Y marginal): " + ", ".join(f"{y}: {e} ({d})" for y, e, d in zip(ys, doc["tau"], doc["tau_decimal"])))
        out.append("joint P:")
        joint = RatMatrix(doc["joint"])
        out.extend("  " + line for line in _grid_lines(joint, [str(x) for x in xs]))
    if doc["verdict"] == "compatible-nonunique":
        out.append("nullspace basis of D:")
        out.extend("  (" + ", ".join(v) + ")" for v in doc["nullspace_basis_D"])
    if doc["degenerate"]:
        out.append("warning: a recovered marginal has a zero entry")
    out.append("methods:")
    for name in sorted(doc["methods"]):
        m = doc["methods"][name]
        verdict = "compatible" if m["compatible"] else "incompatible"
        value = f" value={m['value']}" if m["value"] is not None else ""
        out.append(f"  {name:15s} {verdict:12s}{value}  [{m['detail']}]")
    for note in doc["renormalization"]:
        out.append(
            f"renormalized {note['matrix']} {note['axis']} {note['index']}: sum {note['sum']}, factor {note['factor']}"
        )
    return "\n".join(out) + "\n"


def _load_pair(args) -> tuple[ConditionalPair, InputDocument, list]:
    docA = read_matrix(args.A, args.csv)
    docB = read_matrix(args.B, args.csv)
    A, B = docA.matrix, docB.matrix
    notes = []
    if getattr(args, "renormalize", False):
        A, B, notes = renormalize(A, B, rational(args.renormalize_tol))
    try:
        pair = validate_pair(A, B)
    except SpecError as exc:
        raise InputError(f"{args.A}, {args.B}: {type(exc).__name__}: {exc}") from exc
    labels = InputDocument(A, docA.path, docA.row_labels or docB.row_labels, docA.col_labels or docB.col_labels)
    return pair, labels, notes


def cmd_check(args, out=sys.stdout) -> int:
    pair, labels, notes = _load_pair(args)
    t0 = time.perf_counter()
    report = classify(pair)
    elapsed = (time.perf_counter() - t0) * 1000
    doc = report_document(report, notes, elapsed)
    out.write(render_json(doc) if args.format == "json" else render_text(doc, labels))
    return EXIT_COMPATIBLE if report.compatible else EXIT_INCOMPATIBLE


def cmd_dmatrix(args, out=sys.stdout) -> int:
    pair, _, _ = _load_pair(args)
    D = build_D(pair)
    names = [f"({i + 1},{j + 1})" for i in range(pair.I) for j in range(pair.J)]
    mats = [("D", D)]
    if args.cmatrix:
        mats.append(("C", build_C(pair)))
    if args.format == "json":
        doc = {
            name: {
                "exact": [[fmt_exact(x) for x in r] for r in m.rows],
                "decimal": [[fmt_decimal(x) for x in r] for r in m.rows],
            }
            for name, m in mats
        }
        out.write(render_json(doc))
    else:
        for name, m in mats:
            out.write(f"{name} ({m.nrows} x {m.ncols}), rows in (i,j) order:\n")
            out.write("\n".join(_grid_lines(m, names)) + "\n")
    return 0


def _lp_document(space: str, res: LPResult) -> dict:
    doc = {
        "space": space,
        "status": res.status.value,
        "optimum": fmt_exact(res.optimum) if res.optimum is not None else None,
        "optimum_decimal": fmt_decimal(res.optimum) if res.optimum is not None else None,
        "optimizer": _exact_vec(res.solution),
        "iterations": res.iterations,
        "verdict": "compatible" if res.positive else "incompatible",
    }
    if space == "eta" and res.positive:
        total = sum(res.solution, ZERO)
        eta = [x / total for x in res.solution]
        doc["eta"] = _exact_vec(eta)
        doc["eta_decimal"] = _decimal_vec(eta)
    return doc


def cmd_lp(args, out=sys.stdout) -> int:
    pair, _, _ = _load_pair(args)
    res = eta_lp(pair) if args.space == "eta" else joint_lp(pair)
    doc = _lp_document(args.space, res)
    if args.format == "json":
        out.write(render_json(doc))
    else:
        lines = [
            f"{args.space} LP: {doc['status']}",
            f"optimum: {doc['optimum']} ({doc['optimum_decimal']})",
            "optimizer: (" + ", ".join(doc["optimizer"]) + ")",
        ]
        if "eta" in doc:
            lines.append("normalized eta: (" + ", ".join(doc["eta_decimal"]) + ")")
        lines.append(f"verdict: {doc['verdict']}")
        out.write("\n".join(lines) + "\n")
    return EXIT_COMPATIBLE if res.positive else EXIT_INCOMPATIBLE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="condcompat",
        description="Decide whether P(X|Y) and P(Y|X) matrices come from one joint distribution.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("A", help="matrix file for P(X|Y); columns sum to 1")
        p.add_argument("B", help="matrix file for P(Y|X); rows sum to 1")
        p.add_argument("--csv", action="store_true", help="read comma-separated rows instead of JSON")
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("check", help="full compatibility report")
    common(p)
    p.add_argument("--renormalize", action="store_true", help="rescale near-stochastic lines exactly to sum 1")
    p.add_argument("--renormalize-tol", default="0.01", help="largest |sum - 1| that --renormalize will fix")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("dmatrix", help="print the D matrix (and C with --cmatrix)")
    common(p)
    p.add_argument("--cmatrix", action="store_true")
    p.set_defaults(func=cmd_dmatrix)

    p = sub.add_parser("lp", help="solve the joint-space or eta-space LP")
    common(p)
    p.add_argument("--space", choices=("joint", "eta"), default="joint")
    p.set_defaults(func=cmd_lp)
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except InputError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_ERROR
    except InternalInconsistency as exc:
        err.write(f"internal error: {exc}\n")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())

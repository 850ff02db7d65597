"""Command-line front end: ``braidkit <command> [options]``.

Exit codes: 0 on success, 2 on malformed input or unmet preconditions,
3 when a search budget (groupoid points, words per block) runs out.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

from .braiding import (
    DEFAULT_MAX_POINTS,
    BraidingMatrix,
    cartan_label,
    cartan_type,
    dynkin_diagram,
    enumerate_rank2,
    is_standard,
    load_braiding,
    m_matrix,
    positive_roots,
    root_order,
    root_scalar,
)
from .errors import BraidkitError, ResourceOverflow
from .lifting import YDDatum, lifting_table, realize, scan_liftable
from .relations import INFINITE, SCHEMA_VERSION, verify_presentation
from .tensoralgebra import nichols_algebra

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_OVERFLOW = 3

FORMATS = ("text", "json", "dot", "csv")


class UsageError(BraidkitError):
    pass


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="braidkit", description="Diagonal braidings, Nichols algebras and liftings.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_input=True):
        if needs_input:
            p.add_argument("input", nargs="?", help="braiding document {rank: n, q: [[\"k/N\", ...], ...]}")
            p.add_argument("--q", dest="inline", help='inline braiding, rows separated by ";" e.g. "1/3,2/3;1,1/3"')
        p.add_argument("--format", choices=FORMATS, default=None)
        p.add_argument("--max-points", type=_positive, default=None, help="cap on Weyl groupoid points")
        return p

    common(sub.add_parser("analyze", help="diagram, m-matrix, standardness, roots and dimension"))
    p = common(sub.add_parser("nichols", help="Hilbert series of the Nichols algebra up to a degree"))
    p.add_argument("--degree", type=_positive, required=True)
    p = common(sub.add_parser("relations", help="check the defining relations against the Nichols ideal"))
    p.add_argument("--degree", type=_positive, required=True)
    p = common(sub.add_parser("lift", help="which quantum Serre relations can lift"))
    p.add_argument("--datum", help="Yetter-Drinfeld datum {factors: [...], g: [[...]], chi: [[...]]}")
    p = common(sub.add_parser("scan", help="rank-2 liftability scan"), needs_input=False)
    p.add_argument("--nmax", type=_positive, required=True)
    p = common(sub.add_parser("enumerate", help="rank-2 diagrams over G_N"), needs_input=False)
    p.add_argument("--order", type=_positive, required=True)
    p.add_argument("--filter", choices=("standard", "standard-A2"), default=None)
    return parser


def _max_points(args) -> int:
    if args.max_points is not None:
        return args.max_points
    env = os.environ.get("BRAIDKIT_MAX_POINTS")
    if env:
        try:
            v = int(env)
        except ValueError:
            raise UsageError(f"BRAIDKIT_MAX_POINTS must be a positive integer, got {env!r}") from None
        if v < 1:
            raise UsageError(f"BRAIDKIT_MAX_POINTS must be a positive integer, got {v}")
        return v
    return DEFAULT_MAX_POINTS


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _braiding(args, required: bool = True) -> Optional[BraidingMatrix]:
    if args.input and args.inline:
        raise UsageError("give either a braiding file or --q, not both")
    if args.inline:
        return BraidingMatrix.parse_inline(args.inline)
    if args.input:
        return load_braiding(_read(args.input))
    if required:
        raise UsageError("no braiding given; pass a file or --q")
    return None


def _format(args, default: str, allowed: Sequence[str]) -> str:
    fmt = args.format or default
    if fmt not in allowed:
        raise UsageError(f"--format {fmt} is not available for {args.command}; choose from {', '.join(allowed)}")
    return fmt


def _dump(data: dict) -> str:
    return json.dumps({"schema_version": SCHEMA_VERSION, **data}, indent=2, ensure_ascii=False)


def _yes_no(v: Optional[bool]) -> str:
    return "Indeterminate" if v is None else ("yes" if v else "no")


# ---------------------------------------------------------------------------
# commands; each returns (output text, exit code)
# ---------------------------------------------------------------------------


def cmd_analyze(args) -> tuple[str, int]:
    fmt = _format(args, "text", ("text", "json", "dot"))
    B = _braiding(args)
    diagram = dynkin_diagram(B)
    if fmt == "dot":
        return diagram.to_dot(), EXIT_OK
    mm = m_matrix(B)
    std, C = is_standard(B, _max_points(args))
    ctype = cartan_type(C) if std else None
    roots = []
    dim = None
    if ctype and ctype != "NotFinite":
        dim = 1
        for a in positive_roots(C):
            qa = root_scalar(B, a)
            n = None if qa.is_one() else root_order(B, a)
            roots.append((a, qa, n))
            dim = INFINITE if n is None or dim == INFINITE else dim * n
    code = EXIT_OVERFLOW if std is None else EXIT_OK
    if fmt == "json":
        data = {
            "braiding": B.to_strings(),
            "diagram": diagram.render_text(),
            "m_matrix": [list(r) for r in mm],
            "standard": std,
            "cartan_matrix": [list(r) for r in C] if C else None,
            "cartan_type": ctype,
            "positive_roots": [{"root": list(a), "q": str(q), "N": n} for a, q, n in roots],
            "dimension": None if dim is None else ("infinite" if dim == INFINITE else dim),
        }
        return _dump(data), code
    cart = "n/a" if ctype is None else ("not finite" if ctype == "NotFinite" else cartan_label(ctype))
    dim_s = "unknown" if dim is None else ("infinite" if dim == INFINITE else str(dim))
    lines = [
        f"braiding: {B.to_inline()}",
        f"diagram: {diagram.render_text()}",
        "m-matrix: " + "; ".join(" ".join("-" if x is None else str(x) for x in row) for row in mm),
        f"standard: {_yes_no(std)}, Cartan: {cart}, |Δ_+|={len(roots) if ctype and ctype != 'NotFinite' else '?'}, dim={dim_s}",
    ]
    for a, q, n in roots:
        lines.append(f"  alpha=({','.join(map(str, a))})  q_alpha={q}  N_alpha={'inf' if n is None else n}")
    return "\n".join(lines), code


def cmd_nichols(args) -> tuple[str, int]:
    fmt = _format(args, "text", ("text", "json", "csv"))
    B = _braiding(args)
    dims = nichols_algebra(B).hilbert_series(args.degree)
    if fmt == "json":
        return _dump({"braiding": B.to_strings(), "max_degree": args.degree, "dims": dims}), EXIT_OK
    if fmt == "csv":
        return "degree,dim\n" + "".join(f"{n},{d}\n" for n, d in enumerate(dims)).rstrip("\n"), EXIT_OK
    return f"braiding: {B.to_inline()}\nhilbert series (degree 0..{args.degree}): {','.join(map(str, dims))}", EXIT_OK


def cmd_relations(args) -> tuple[str, int]:
    fmt = _format(args, "text", ("text", "json"))
    B = _braiding(args)
    report = verify_presentation(B, args.degree, _max_points(args))
    code = EXIT_OVERFLOW if report.overflow else EXIT_OK
    return (json.dumps(report.to_json(), indent=2, ensure_ascii=False) if fmt == "json" else report.to_text()), code


def cmd_lift(args) -> tuple[str, int]:
    fmt = _format(args, "text", ("text", "json", "csv"))
    B = _braiding(args, required=args.datum is None)
    if args.datum:
        D = YDDatum.parse(_read(args.datum))
        if B is not None and B != D.braiding():
            raise UsageError("the datum does not realize the given braiding")
    else:
        D = realize(B)
    B = D.braiding()
    table = lifting_table(D)
    if fmt == "json":
        return _dump({"braiding": B.to_strings(), "datum": D.to_json(), "verdicts": [v.to_json() for v in table]}), EXIT_OK
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["i", "j", "m", "verdict", "case_id", "reason"])
        for v in table:
            w.writerow([v.i + 1, v.j + 1, v.m, v.status, v.case_id or "", v.reason])
        return buf.getvalue().rstrip("\n"), EXIT_OK
    lines = [f"braiding: {B.to_inline()}"]
    for v in table:
        case = f" case {v.case_id}" if v.case_id else ""
        lines.append(f"  ({v.i + 1},{v.j + 1})  m={'-' if v.m is None else v.m}  {v.status}{case}  [{v.reason}]")
    return "\n".join(lines), EXIT_OK


def cmd_scan(args) -> tuple[str, int]:
    fmt = _format(args, "csv", ("text", "json", "csv"))
    res = scan_liftable(args.nmax)
    if fmt == "csv":
        return res.to_csv().rstrip("\n"), EXIT_OK
    counts: dict[str, int] = {}
    for r in res.liftable:
        counts[r.verdict.case_id] = counts.get(r.verdict.case_id, 0) + 1
    summary = {
        "n_max": res.n_max,
        "diagrams": res.diagrams,
        "standard_diagrams": res.standard_diagrams,
        "braidings": res.braidings,
        "pairs": res.pairs,
        "rows": len(res.rows),
        "liftable_by_case": dict(sorted(counts.items())),
        "mismatches": len(res.mismatches),
        "lemma_checked": res.lemma_checked,
        "lemma_failures": len(res.lemma_failures),
    }
    if fmt == "json":
        rows = [dict(zip(["q11", "q12", "q21", "q22", "i", "j", "m", "verdict", "case_id"], r.csv_fields())) for r in res.rows]
        return _dump({**summary, "table": rows}), EXIT_OK
    return "\n".join(f"{k}: {v}" for k, v in summary.items()), EXIT_OK


def cmd_enumerate(args) -> tuple[str, int]:
    fmt = _format(args, "text", ("text", "json", "csv", "dot"))
    items = enumerate_rank2(args.order, _max_points(args))
    if args.filter == "standard":
        items = [x for x in items if x.standard]
    elif args.filter == "standard-A2":
        items = [x for x in items if x.standard and x.cartan == "A2"]
    code = EXIT_OVERFLOW if any(x.standard is None for x in items) else EXIT_OK

    def cart(x):
        return "" if not x.cartan else cartan_label(x.cartan)

    if fmt == "json":
        data = [
            {
                "diagram": x.diagram.render_text(),
                "braiding": x.braiding.to_strings(),
                "standard": x.standard,
                "cartan_type": x.cartan,
                "family": x.family,
            }
            for x in items
        ]
        return _dump({"order": args.order, "filter": args.filter, "diagrams": data}), code
    if fmt == "dot":
        return "\n".join(x.diagram.to_dot(f"D{n + 1}") for n, x in enumerate(items)), code
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["braiding", "standard", "cartan", "family"])
        for x in items:
            w.writerow([x.braiding.to_inline(), _yes_no(x.standard), cart(x), x.family or ""])
        return buf.getvalue().rstrip("\n"), code
    lines = []
    for x in items:
        fam = f"  [{x.family}]" if x.family and x.cartan == "A2" else ""
        lines.append(f"{x.diagram.render_text():<28} standard: {_yes_no(x.standard):<13} {cart(x)}{fam}".rstrip())
    lines.append(f"{len(items)} diagram(s)")
    return "\n".join(lines), code


COMMANDS = {
    "analyze": cmd_analyze,
    "nichols": cmd_nichols,
    "relations": cmd_relations,
    "lift": cmd_lift,
    "scan": cmd_scan,
    "enumerate": cmd_enumerate,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        out, code = COMMANDS[args.command](args)
    except ResourceOverflow as exc:
        print(f"Indeterminate: {exc}")
        return EXIT_OVERFLOW
    except BraidkitError as exc:
        print(f"braidkit: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(out)
    return code


if __name__ == "__main__":
    sys.exit(main())

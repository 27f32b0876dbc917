"""Command line interface.

Exit codes: 0 success or embeddable, 1 not embeddable, 2 invalid input,
3 a precondition of the requested procedure failed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from itertools import combinations
from typing import Optional, Sequence

from graphext.decide import EMBEDDABLE, NOT_EMBEDDABLE, PRECONDITION_FAILED, BaseMismatch, Decision, decide
from graphext.extension import InvalidExtension, analyze, block_decomposition, inessential_part
from graphext.graph import GraphError, condition_K, condition_L, vertex_matrix
from graphext.intlinalg import coker_invariants, smith_normal_form
from graphext.io import (
    IntMatrix,
    ProblemError,
    check_problem,
    jsonable,
    load_matrix,
    matrix_to_dict,
    parse_problem,
)
from graphext.tails import maximal_tails

EXIT_OK = 0
EXIT_NOT_EMBEDDABLE = 1
EXIT_INVALID = 2
EXIT_PRECONDITION = 3

VERDICT_EXIT = {EMBEDDABLE: EXIT_OK, NOT_EMBEDDABLE: EXIT_NOT_EMBEDDABLE, PRECONDITION_FAILED: EXIT_PRECONDITION}


def _emit(report: dict, fmt: str, text_lines: Sequence[str], out) -> None:
    if fmt == "json":
        out.write(json.dumps(jsonable(report), indent=2) + "\n")
    else:
        out.write("\n".join(text_lines) + "\n")


def _fmt_vec(d: dict) -> str:
    return "{" + ", ".join(f"{k}: {v}" for k, v in d.items()) + "}"


def cmd_validate(args, out) -> int:
    base, results = check_problem(args.file)
    exts = []
    lines = [f"base graph: {len(base.vertices)} vertices, {len(base.edges)} edges"]
    for spec, violations in results:
        exts.append({"label": spec.label, "valid": not violations, "violations": [v.as_dict() for v in violations]})
        if violations:
            lines.append(f"{spec.label}: INVALID")
            lines.extend(f"  [{v.axiom}] {v.message}; witness: {v.as_dict()['witness']}" for v in violations)
        else:
            lines.append(f"{spec.label}: valid")
    ok = all(e["valid"] for e in exts)
    _emit({"command": "validate", "valid": ok, "extensions": exts}, args.format, lines, out)
    return EXIT_OK if ok else EXIT_INVALID


def _graph_report(g) -> dict:
    cond_l, cond_k = condition_L(g), condition_K(g)
    return {
        "vertices": list(g.vertices),
        "edges": len(g.edges),
        "condition_L": {"holds": cond_l.holds, "witness": cond_l.witness},
        "condition_K": {"holds": cond_k.holds, "witness": cond_k.witness},
        "maximal_tails": [[v for v in g.vertices if v in t] for t in maximal_tails(g)],
    }


def cmd_analyze(args, out) -> int:
    problem = parse_problem(args.file)
    g = problem.base
    greport = _graph_report(g)
    lines = [
        f"base vertices: {', '.join(g.vertices)}",
        f"condition (L): {greport['condition_L']['holds']}"
        + ("" if greport["condition_L"]["holds"] else f" (exitless loop {list(greport['condition_L']['witness'])})"),
        f"condition (K): {greport['condition_K']['holds']}"
        + ("" if greport["condition_K"]["holds"] else f" (witness {greport['condition_K']['witness']})"),
        f"maximal tails: {greport['maximal_tails']}",
    ]
    exts = []
    for e in problem.extensions:
        a = analyze(e)
        rep = {
            "label": e.label,
            "sink": e.sink,
            "wojciech_vector": a.wojciech,
            "boundary_edges": list(a.boundary.edges),
            "boundary_vertices": list(a.boundary.vertices),
            "closure_of_sink": list(a.closure),
            "inessential_part": list(a.inessential),
            "n_vector": a.n,
            "essential": a.essential,
            "totally_inessential": a.totally_inessential,
            "sink_path_space_finite": a.sink_paths_finite,
            "checks": a.checks,
        }
        exts.append(rep)
        lines += [
            f"{e.label} (sink {e.sink}):",
            f"  wojciech vector: {_fmt_vec(a.wojciech)}",
            f"  boundary vertices: {list(a.boundary.vertices)}",
            f"  closure of sink: {list(a.closure)}",
            f"  inessential part: {list(a.inessential)}",
            f"  n vector: {_fmt_vec(a.n)}",
            f"  essential: {a.essential}; totally inessential: {a.totally_inessential}",
        ]
    _emit({"command": "analyze", "base": greport, "extensions": exts}, args.format, lines, out)
    return EXIT_OK


def cmd_coker(args, out) -> int:
    problem = parse_problem(args.file)
    g = problem.base
    inv = coker_invariants(vertex_matrix(g).minus_identity().tolist()) if g.vertices else None
    report = {"command": "coker", "A_G_minus_I": inv}
    lines = [f"coker(A_G - I) = {inv if inv is not None else '0'}"]
    if condition_K(g).holds and problem.extensions:
        parts = {inessential_part(e) for e in problem.extensions}
        if len(parts) == 1:
            h = parts.pop()
            blocks = block_decomposition(g, [v for v in g.vertices if v not in h])
            if blocks.closure:
                inv_f = coker_invariants(blocks.A_F.minus_identity().tolist())
            else:
                inv_f = None
            report["quotient_vertices"] = list(blocks.closure)
            report["A_F_minus_I"] = inv_f
            lines.append(f"coker(A_F - I) over {list(blocks.closure)} = {inv_f if inv_f is not None else '0'}")
        else:
            lines.append("inessential parts differ across extensions; no common quotient")
    _emit(report, args.format, lines, out)
    return EXIT_OK


def _decision_report(d: Decision, labels) -> dict:
    return {
        "extensions": list(labels),
        "verdict": d.verdict,
        "mode": d.mode,
        "preconditions": d.preconditions,
        "evidence": d.evidence,
        "verified": d.verify(),
        "note": d.note,
    }


def _decision_lines(d: Decision, labels) -> list[str]:
    lines = [f"{labels[0]} vs {labels[1]}: {d.verdict} (mode: {d.mode})"]
    ev = d.evidence
    if d.verdict == EMBEDDABLE and "certificate" in ev:
        lines.append(f"  certificate z = {ev['certificate']}")
    elif d.verdict == NOT_EMBEDDABLE:
        if "obstruction" in ev:
            lines.append(f"  obstruction: {ev['obstruction'].describe()}")
        else:
            lines.append(f"  closures differ: {ev['closures'][0]} vs {ev['closures'][1]}")
    elif d.verdict == PRECONDITION_FAILED:
        lines.append(f"  failed: {ev.get('failed')}; witness: {ev.get('witness')}")
    return lines


def cmd_decide(args, out) -> int:
    problem = parse_problem(args.file)
    g = problem.base
    if args.all_pairs:
        pairs = list(combinations(problem.extensions, 2))
        with ThreadPoolExecutor() as pool:
            decisions = list(pool.map(lambda p: decide(g, p[0], p[1], args.mode), pairs))
        reports, lines = [], []
        for (e1, e2), d in zip(pairs, decisions):
            labels = (e1.label, e2.label)
            reports.append(_decision_report(d, labels))
            lines += _decision_lines(d, labels)
        _emit({"command": "decide", "pairs": reports}, args.format, lines, out)
        return EXIT_OK
    if not args.ext or len(args.ext) != 2:
        raise ProblemError("decide needs exactly two --ext arguments (or --all-pairs)")
    e1, e2 = (problem.find(k) for k in args.ext)
    d = decide(g, e1, e2, args.mode)
    labels = (e1.label, e2.label)
    _emit({"command": "decide", **_decision_report(d, labels)}, args.format, _decision_lines(d, labels), out)
    return VERDICT_EXIT[d.verdict]


def cmd_snf(args, out) -> int:
    m = load_matrix(args.matrix)
    snf = smith_normal_form(m)
    snf.verify(m)
    inv = coker_invariants(m, snf)
    r, c = m.rows, m.cols
    report = {
        "command": "snf",
        "U": matrix_to_dict(IntMatrix(r, r, snf.U)),
        "D": matrix_to_dict(IntMatrix(r, c, snf.D)),
        "V": matrix_to_dict(IntMatrix(c, c, snf.V)),
        "diagonal": snf.diagonal,
        "rank": snf.rank,
        "cokernel": inv,
    }
    lines = [f"diagonal: {snf.diagonal}", f"rank: {snf.rank}", f"cokernel: {inv}"]
    _emit(report, args.format, lines, out)
    return EXIT_OK


def to_dot(problem) -> str:
    lines = ["digraph G {"]
    for v in problem.base.vertices:
        lines.append(f'  "{v}";')
    for e in problem.base.edges:
        lines.append(f'  "{e.src}" -> "{e.dst}" [label="{e.id}"];')
    for i, ext in enumerate(problem.extensions):
        lines.append(f'  subgraph "cluster_{i}" {{ label="{ext.label}";')
        for v in ext.added:
            shape = "doublecircle" if v == ext.sink else "circle"
            lines.append(f'    "{ext.label}:{v}" [label="{v}", shape={shape}];')
        lines.append("  }")
        for e in ext.added_edges:
            src = e.src if e.src in problem.base else f"{ext.label}:{e.src}"
            lines.append(f'  "{src}" -> "{ext.label}:{e.dst}" [label="{e.id}", style=dashed];')
    lines.append("}")
    return "\n".join(lines)


def cmd_export(args, out) -> int:
    out.write(to_dot(parse_problem(args.file)) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="graphext", description=__doc__.splitlines()[0])
    default_fmt = os.environ.get("GRAPHEXT_FORMAT", "text")
    if default_fmt not in ("json", "text"):
        default_fmt = "text"
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "text"], default=default_fmt)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check the extension axioms")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("analyze", parents=[common], help="report every invariant of each extension")
    p.add_argument("file")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("coker", parents=[common], help="cokernel invariants of A_G - I (and A_F - I)")
    p.add_argument("file")
    p.set_defaults(func=cmd_coker)

    p = sub.add_parser("decide", parents=[common], help="decide embeddability of two extensions")
    p.add_argument("file")
    p.add_argument("--ext", action="append", help="1-based index or label; give twice")
    p.add_argument("--mode", choices=["auto", "essential", "general"], default="auto")
    p.add_argument("--all-pairs", action="store_true", help="decide every pair of extensions")
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("snf", parents=[common], help="Smith normal form of a matrix file")
    p.add_argument("--matrix", required=True)
    p.set_defaults(func=cmd_snf)

    p = sub.add_parser("export", parents=[common], help="render a problem file")
    p.add_argument("file")
    p.add_argument("--dot", action="store_true", default=True)
    p.set_defaults(func=cmd_export)
    return parser


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except InvalidExtension as exc:
        report = {"error": "invalid extension", "label": exc.label, "violations": [v.as_dict() for v in exc.violations]}
        _emit(report, args.format, [str(exc)], out)
    except (ProblemError, GraphError, BaseMismatch, OSError) as exc:
        _emit({"error": str(exc)}, args.format, [f"error: {exc}"], out)
    return EXIT_INVALID


if __name__ == "__main__":
    raise SystemExit(main())

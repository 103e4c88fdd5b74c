"""Command-line front end: graph generation and IO, analysis subcommands,
and the three-way moment verification harness.

Reports are deterministic: stable key order, counts as decimal strings, no
timestamps. Exit codes: 0 success, 1 usage error, 2 invalid graph or domain
error, 3 computation budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path

from .errors import (
    DisconnectedGraphError,
    FractaloidError,
    GraphError,
    LimitError,
    NotFractalError,
    ParameterError,
)
from .fractality import (
    classification_report,
    classify,
    fractal_pair,
    max_out_degree,
    tree_regular_to_depth,
    vertex_tree,
)
from .graphs import (
    DirectedGraph,
    family,
    graph_to_json,
    is_connected,
    iterated_glue_loops,
    load_graph,
    regularize,
)
from .isomorphism import graph_isomorphic
from .labeling import canonical_labeling, labeling_dump
from .lattice import (
    DEFAULT_MAX_PATHS,
    closed_form_count,
    count_axis_paths_bruteforce,
    count_axis_paths_recurrence,
)
from .moments import (
    DEFAULT_MAX_STATES,
    identically_distributed,
    moment_report,
    radial_moment,
    truncated_radial_matrix,
    verification_report,
    verify_moment_theorem,
)

SCHEMA_VERSION = "1.0"

MAX_STATES_ENV = "FRACTALOID_MAX_STATES"


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on usage errors; usage errors are exit 1
    # in this tool, so surface them as ParameterError instead.
    def error(self, message):
        raise ParameterError(message)


def _add_output_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--format", choices=("json", "csv", "text"), default="json")
    sub.add_argument("--out", type=Path, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fractaloid", description=__doc__)
    commands = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    gen = commands.add_parser("gen", help="generate a named family graph file")
    gen.add_argument("--family", required=True)
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--regularize", type=int, default=None, metavar="K",
                     help="replace every edge by K parallel copies")
    gen.add_argument("--loops", type=int, default=None, metavar="M",
                     help="attach M fresh loops at every vertex")
    gen.add_argument("--name", default=None, help="override the graph name")
    _add_output_flags(gen)

    for cmd, help_text in (
        ("info", "structural summary of a graph"),
        ("check", "decide fractality and report the fractal pair"),
        ("pair", "fractal pair of a fractal graph (error when non-fractal)"),
        ("label", "canonical lattice labeling of a graph"),
    ):
        sub = commands.add_parser(cmd, help=help_text)
        sub.add_argument("graph", type=Path)
        _add_output_flags(sub)

    moments = commands.add_parser("moments", help="diagonal radial moments")
    moments.add_argument("graph", type=Path)
    moments.add_argument("--max-n", type=int, default=6)
    moments.add_argument("--max-states", type=int, default=None)
    _add_output_flags(moments)

    lattice = commands.add_parser("lattice", help="axis-path count table")
    lattice.add_argument("--N", type=int, required=True, dest="n_bound")
    lattice.add_argument("--max-n", type=int, default=8)
    lattice.add_argument("--method", choices=("brute", "recurrence", "closed"),
                         default=None, help="restrict to one counting method")
    lattice.add_argument("--max-paths", type=int, default=DEFAULT_MAX_PATHS)
    _add_output_flags(lattice)

    cls = commands.add_parser("classify", help="partition graphs into spectral classes")
    cls.add_argument("graphs", type=Path, nargs="+",
                     help="graph files or directories of *.json files")
    _add_output_flags(cls)

    compare = commands.add_parser("compare", help="isomorphism and moment comparison")
    compare.add_argument("graph1", type=Path)
    compare.add_argument("graph2", type=Path)
    compare.add_argument("--max-n", type=int, default=6)
    compare.add_argument("--max-states", type=int, default=None)
    _add_output_flags(compare)

    tree = commands.add_parser("tree", help="depth-bounded vertex tree")
    tree.add_argument("graph", type=Path)
    tree.add_argument("--root", required=True)
    tree.add_argument("--depth", type=int, default=3)
    _add_output_flags(tree)

    matrix = commands.add_parser("matrix", help="truncated radial matrix diagnostics")
    matrix.add_argument("graph", type=Path)
    matrix.add_argument("--depth", type=int, default=4)
    matrix.add_argument("--max-states", type=int, default=None)
    _add_output_flags(matrix)

    verify = commands.add_parser("verify", help="three-way moment comparison table")
    verify.add_argument("graph", type=Path)
    verify.add_argument("--max-n", type=int, default=8)
    verify.add_argument("--max-states", type=int, default=None)
    _add_output_flags(verify)

    return parser


def _resolve_max_states(args: argparse.Namespace) -> int:
    if getattr(args, "max_states", None) is not None:
        return args.max_states
    env = os.environ.get(MAX_STATES_ENV)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise ParameterError(
                f"{MAX_STATES_ENV} must be an integer, got {env!r}"
            ) from None
    return DEFAULT_MAX_STATES


# --- subcommand handlers; each returns (payload, wrap_in_envelope) ---------

def _cmd_gen(args) -> tuple[dict, bool]:
    graph = family(args.family, args.n)
    if args.regularize is not None:
        graph = regularize(graph, args.regularize)
    if args.loops is not None:
        graph = iterated_glue_loops(graph, args.loops)
    if args.name is not None:
        graph = DirectedGraph(args.name, graph.vertices, graph.edges)
    # The bare graph schema, so the output is loadable by every other command.
    return graph_to_json(graph), False


def _cmd_info(args) -> tuple[dict, bool]:
    graph = load_graph(args.graph)
    return {
        "name": graph.name,
        "vertex_count": len(graph.vertices),
        "edge_count": len(graph.edges),
        "connected": is_connected(graph),
        "max_out_degree": max_out_degree(graph) if graph.vertices else None,
        "degrees": {
            v: {"out": d.out_degree, "in": d.in_degree, "total": d.total}
            for v in graph.vertices
            for d in (graph.degrees(v),)
        },
    }, True


def _cmd_check(args) -> tuple[dict, bool]:
    graph = load_graph(args.graph)
    try:
        pair = fractal_pair(graph)
    except (NotFractalError, DisconnectedGraphError) as exc:
        return {"graph": graph.name, "fractal": False, "pair": None,
                "reason": str(exc)}, True
    return {"graph": graph.name, "fractal": True,
            "pair": [pair.n_zero, pair.n_sup], "reason": None}, True


def _cmd_pair(args) -> tuple[dict, bool]:
    graph = load_graph(args.graph)
    pair = fractal_pair(graph)
    return {"graph": graph.name, "pair": [pair.n_zero, pair.n_sup]}, True


def _cmd_label(args) -> tuple[dict, bool]:
    graph = load_graph(args.graph)
    return labeling_dump(canonical_labeling(graph)), True


def _cmd_moments(args) -> tuple[dict, bool]:
    if args.max_n < 1:
        raise ParameterError("--max-n must be >= 1")
    graph = load_graph(args.graph)
    cap = _resolve_max_states(args)
    reports = [
        moment_report(graph, radial_moment(graph, n, max_states=cap))
        for n in range(1, args.max_n + 1)
    ]
    return {"graph": graph.name, "moments": reports}, True


def _cmd_lattice(args) -> tuple[dict, bool]:
    if args.n_bound < 1:
        raise ParameterError("--N must be >= 1")
    if args.max_n < 0:
        raise ParameterError("--max-n must be >= 0")
    if args.method == "closed" and args.n_bound not in (1, 2):
        raise ParameterError("--method closed requires --N 1 or --N 2")
    rows = []
    for n in range(0, args.max_n + 1):
        brute = recurrence = closed = None
        if args.method in (None, "brute"):
            brute = count_axis_paths_bruteforce(
                args.n_bound, n, max_paths=args.max_paths
            )
        if args.method in (None, "recurrence"):
            recurrence = count_axis_paths_recurrence(args.n_bound, n)
        if args.method in (None, "closed") and args.n_bound in (1, 2):
            closed = closed_form_count(args.n_bound, n)
        rows.append({
            "n": n,
            "total": str((2 * args.n_bound) ** n),
            "brute": None if brute is None else str(brute),
            "recurrence": None if recurrence is None else str(recurrence),
            "closed_form": None if closed is None else str(closed),
        })
    return {"N": args.n_bound, "rows": rows}, True


def _collect_graph_paths(paths: list[Path]) -> list[Path]:
    found: list[Path] = []
    for path in paths:
        if path.is_dir():
            found.extend(sorted(path.glob("*.json")))
        else:
            found.append(path)
    return found


def _cmd_classify(args) -> tuple[dict, bool]:
    graphs = [load_graph(p) for p in _collect_graph_paths(args.graphs)]
    return classification_report(classify(graphs)), True


def _cmd_compare(args) -> tuple[dict, bool]:
    g1 = load_graph(args.graph1)
    g2 = load_graph(args.graph2)
    cap = _resolve_max_states(args)
    match = graph_isomorphic(g1, g2)
    pairs = []
    for g in (g1, g2):
        try:
            p = fractal_pair(g)
            pairs.append([p.n_zero, p.n_sup])
        except (NotFractalError, DisconnectedGraphError):
            pairs.append(None)
    return {
        "graphs": [g1.name, g2.name],
        "isomorphic": match is not None,
        "vertex_map": None if match is None else match.vertex_map,
        "pairs": pairs,
        "identically_distributed": identically_distributed(
            g1, g2, args.max_n, max_states=cap
        ),
        "max_n": args.max_n,
    }, True


def _tree_to_json(node) -> dict:
    return {
        "vertex": node.vertex,
        "arc": None if node.arc is None else node.arc.token,
        "children": [_tree_to_json(child) for child in node.children],
    }


def _cmd_tree(args) -> tuple[dict, bool]:
    graph = load_graph(args.graph)
    tree = vertex_tree(graph, args.root, args.depth)
    branching = 2 * max_out_degree(graph)
    return {
        "graph": graph.name,
        "root": args.root,
        "depth": args.depth,
        "regular_branching": branching,
        "regular": tree_regular_to_depth(tree, branching),
        "tree": _tree_to_json(tree.root),
    }, True


def _cmd_matrix(args) -> tuple[dict, bool]:
    if args.depth < 0:
        raise ParameterError("--depth must be >= 0")
    graph = load_graph(args.graph)
    cap = _resolve_max_states(args)
    op = truncated_radial_matrix(graph, args.depth, max_words=cap)
    diagonal = [
        {
            "n": n,
            "per_vertex": {
                v: str(op.power_diagonal(v, n)) for v in graph.vertices
            },
        }
        for n in range(1, args.depth + 1)
    ]
    return {
        "graph": graph.name,
        "depth": args.depth,
        "basis_size": len(op.basis),
        "symmetric": op.is_symmetric(),
        "diagonal": diagonal,
    }, True


def _cmd_verify(args) -> tuple[dict, bool]:
    if args.max_n < 1:
        raise ParameterError("--max-n must be >= 1")
    graph = load_graph(args.graph)
    cap = _resolve_max_states(args)
    return verification_report(
        verify_moment_theorem(graph, args.max_n, max_states=cap)
    ), True


_HANDLERS = {
    "gen": _cmd_gen,
    "info": _cmd_info,
    "check": _cmd_check,
    "pair": _cmd_pair,
    "label": _cmd_label,
    "moments": _cmd_moments,
    "lattice": _cmd_lattice,
    "classify": _cmd_classify,
    "compare": _cmd_compare,
    "tree": _cmd_tree,
    "matrix": _cmd_matrix,
    "verify": _cmd_verify,
}


# --- rendering --------------------------------------------------------------

def _render_text(value, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines: list[str] = []
    if isinstance(value, dict):
        for key, item in value.items():
            if isinstance(item, (dict, list)):
                lines.append(f"{pad}{key}:")
                lines.extend(_render_text(item, indent + 1))
            else:
                lines.append(f"{pad}{key}: {item}")
    elif isinstance(value, list):
        for item in value:
            if isinstance(item, (dict, list)):
                lines.append(f"{pad}-")
                lines.extend(_render_text(item, indent + 1))
            else:
                lines.append(f"{pad}- {item}")
    else:
        lines.append(f"{pad}{value}")
    return lines


def _csv_rows(command: str, payload: dict) -> tuple[list[str], list[list]]:
    if command == "lattice":
        header = ["N", "n", "total", "brute", "recurrence", "closed_form"]
        rows = [
            [payload["N"], r["n"], r["total"], r["brute"], r["recurrence"],
             r["closed_form"]]
            for r in payload["rows"]
        ]
        return header, rows
    if command == "verify":
        header = ["graph", "N", "n", "walk", "tree", "lattice",
                  "a_eq_b", "a_eq_c", "b_eq_c"]
        rows = [
            [payload["graph"], payload["N"], r["n"], r["walk"], r["tree"],
             r["lattice"], r["a_eq_b"], r["a_eq_c"], r["b_eq_c"]]
            for r in payload["rows"]
        ]
        return header, rows
    if command == "moments":
        header = ["graph", "n", "vertex", "count", "scalar"]
        rows = []
        for entry in payload["moments"]:
            for v, count in entry["per_vertex"].items():
                rows.append([payload["graph"], entry["n"], v, count,
                             entry["scalar"]])
        return header, rows
    if command == "classify":
        header = ["kind", "pair_n", "pair_m", "graph", "reason"]
        rows: list[list] = []
        for cls in payload["classes"]:
            for name in cls["graphs"]:
                rows.append(["class", cls["pair"][0], cls["pair"][1], name, ""])
        for rej in payload["rejected"]:
            rows.append(["rejected", "", "", rej["graph"], rej["reason"]])
        return header, rows
    raise ParameterError(f"csv format is not available for {command!r}")


def _render(command: str, report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, ensure_ascii=False) + "\n"
    payload = report.get("payload", report)
    if fmt == "csv":
        header, rows = _csv_rows(command, payload)
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        return buffer.getvalue()
    return "\n".join(_render_text(payload)) + "\n"


def _emit(args: argparse.Namespace, text: str) -> None:
    if args.out is not None:
        args.out.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except ParameterError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    try:
        try:
            payload, wrap = _HANDLERS[args.command](args)
        except OSError as exc:
            raise GraphError(f"cannot read or write file: {exc}") from exc
        if wrap:
            report = {
                "schema_version": SCHEMA_VERSION,
                "command": args.command,
                "payload": payload,
                "warnings": [],
            }
        else:
            report = payload
        _emit(args, _render(args.command, report, args.format))
        return 0
    except FractaloidError as exc:
        if isinstance(exc, ParameterError):
            code = 1
        elif isinstance(exc, LimitError):
            code = 3
        else:
            code = 2
        if args.format == "json":
            error_report = {
                "schema_version": SCHEMA_VERSION,
                "command": args.command,
                "error": {"type": type(exc).__name__, "message": str(exc)},
                "exit_code": code,
            }
            sys.stdout.write(json.dumps(error_report, indent=2) + "\n")
        else:
            print(f"error: {exc}", file=sys.stderr)
        return code


if __name__ == "__main__":
    sys.exit(main())

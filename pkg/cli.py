"""
bmg_lab Command Line
Check, decompose, construct and classify 2-colored best match graphs.

Results go to stdout (JSON by default); diagnostics go to stderr.
Exit codes: 0 success, 1 domain failure, 2 usage or parse error.
"""

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence
from loguru import logger
from pydantic import ValidationError

sys.path.insert(0, str(Path(__file__).parent))

from config import BMG_WORKERS, DEFAULT_SEED, LOG_LEVEL, OUTPUT_DIR, validate_config
from models import ColoredDigraph, DirectedCycle, FamilySpec, FilterSet, ParitySpec, TruncationStep
from exceptions import BMGError, GraphFormatError, PreconditionError
from services.axiom_service import check_2cbmg
from services.canonical_service import CONVENTIONS, are_isomorphic, canonical_form
from services.constructor_service import (
    family_graph,
    join_disjoint,
    join_via_minimal,
    odd_even_graph,
    parity_graph,
    random_bitournament,
    random_family_spec,
)
from services.enumeration_service import EnumerationService
from services.export_service import ExportService, graph_record, render_table
from services.fixture_service import FixtureService
from services.notation_service import format_graph, load_graph, parse_graph, serialize, to_dot
from services.random_source import LinearGenerator
from services.structure_service import (
    consistent_underlying_oriented,
    quotient,
    random_orientation,
    symmetric_components,
    topological_order,
)
from services.tree_service import best_match_graph, format_tree, parse_tree, random_colored_tree
from services.truncation_service import decompose, elementary_graph, truncate


def _write(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _emit_json(payload: Any) -> None:
    _write(json.dumps(payload, indent=2, sort_keys=True))


def _emit_graph(args: argparse.Namespace, g: ColoredDigraph, extra: Optional[Dict[str, Any]] = None) -> None:
    """Graph in the requested format; JSON carries the extra fields alongside."""
    if args.format == "json":
        _emit_json({**graph_record(g), **(extra or {})})
    else:
        _write(format_graph(g, args.format))


def _load(args: argparse.Namespace, source: Optional[str] = None) -> ColoredDigraph:
    source = source if source is not None else args.graph
    colors = getattr(args, "colors", None)
    if not colors:
        return load_graph(source)
    if source.startswith("fixture:"):
        text = FixtureService().entry(source[len("fixture:"):])["graph"]
    elif source.lstrip().startswith("<"):
        text = source
    else:
        text = Path(source).read_text()
    lines = [line for line in text.splitlines()
             if line.strip() and not line.strip().startswith("#") and not line.strip().lower().startswith("colors:")]
    return parse_graph("".join(lines), colors)


def _spec(text: Optional[str]) -> Dict[str, Any]:
    if not text:
        return {}
    try:
        return json.loads(Path(text[1:]).read_text() if text.startswith("@") else text)
    except json.JSONDecodeError as e:
        raise GraphFormatError(f"--spec is not valid JSON: {e}") from e


def _step_record(step: TruncationStep, labels: Optional[Sequence[int]] = None) -> Dict[str, Any]:
    """One truncation step; labels map the step's vertices back to the input graph."""
    analysis = step.analysis
    name = (lambda v: labels[v - 1]) if labels else (lambda v: v)
    return {
        "m": name(analysis.m),
        "ell": name(analysis.ell),
        "d": [name(d) for d in analysis.d_list],
        "order": [name(v) for v in analysis.order.order],
        "removed": [name(v) for v in step.removed],
        "case": step.case,
        "remainder": serialize(step.remainder),
        "remainder_labels": [name(v) for v in step.remainder_labels],
    }


def cmd_check(args: argparse.Namespace) -> int:
    report = check_2cbmg(_load(args))
    if args.format == "json":
        _emit_json({**report.to_report(), "summary": report.summary()})
    else:
        _write(report.summary())
    return 0 if report.is_2cbmg else 1


def cmd_quotient(args: argparse.Namespace) -> int:
    q = quotient(_load(args))
    _emit_graph(args, q.graph, {"classes": [list(c) for c in q.classes]})
    return 0


def _orientation(args: argparse.Namespace, g: ColoredDigraph):
    if args.seed is None:
        return consistent_underlying_oriented(g)
    return random_orientation(g, LinearGenerator(args.seed))


def cmd_orient(args: argparse.Namespace) -> int:
    oriented = _orientation(args, _load(args))
    _emit_graph(args, oriented.graph, {"kept": [list(e) for e in oriented.kept]})
    return 0


def cmd_toposort(args: argparse.Namespace) -> int:
    result = topological_order(_orientation(args, _load(args)))
    if isinstance(result, DirectedCycle):
        payload = {"cycle": list(result.vertices)}
        code = 1
    else:
        payload = {"order": list(result.order)}
        code = 0
    if args.format == "json":
        _emit_json(payload)
    else:
        key = "cycle" if code else "order"
        _write(f"{key}: " + " ".join(map(str, payload[key])))
    return code


def cmd_sigma(args: argparse.Namespace) -> int:
    sigma = symmetric_components(_load(args))
    payload = sigma.model_dump(mode="json")
    payload["all_complete_bipartite"] = all(c.complete_bipartite for c in sigma.components)
    _emit_json(payload)
    return 0


def cmd_truncate(args: argparse.Namespace) -> int:
    _emit_json(_step_record(truncate(_load(args))))
    return 0


def cmd_decompose(args: argparse.Namespace) -> int:
    g = _load(args)
    result = decompose(g)

    steps = []
    labels: Sequence[int] = tuple(g.vertices)
    for step in result.steps:
        steps.append(_step_record(step, labels))
        labels = tuple(labels[v - 1] for v in step.remainder_labels)

    _emit_json({
        "outcome": result.outcome,
        "blocks": [list(b) for b in result.blocks],
        "steps": steps,
        "failed_at": result.failed_at,
        "reason": result.reason,
        "detail": result.detail,
        "offending": serialize(result.offending) if result.offending is not None else None,
        "offending_labels": list(result.offending_labels),
    })
    return 0


def cmd_classify(args: argparse.Namespace) -> int:
    from workflow import classify_sync

    out_dir = Path(args.out) if args.out else None
    report = classify_sync(args.n, i_values=args.i, workers=args.workers, convention=args.convention,
                           output_dir=out_dir, force=args.force, check_quality=not args.no_quality)
    if args.format == "text":
        _write(render_table(report.rows))
    else:
        _emit_json({
            "rows": [row.model_dump() for row in report.rows],
            "convention": report.convention,
            "is_valid": report.is_valid,
            "files": report.files,
        })
    return 0


def _emit_enumeration(args: argparse.Namespace, result, subdir: str) -> None:
    graphs = [c.to_graph() for c in result.certificates]
    if args.out:
        ExportService(Path(args.out)).export_graphs(subdir, graphs, prefix="class")
    if args.format == "text":
        _write("\n".join(serialize(g) for g in graphs) if graphs else "(none)")
        return
    _emit_json({
        "colors": list(result.colors),
        "filters": result.filters.label,
        "count": result.count,
        "masks_scanned": result.masks_scanned,
        "graphs": [serialize(g) for g in graphs],
    })


def _service(args: argparse.Namespace) -> EnumerationService:
    return EnumerationService(workers=args.workers, convention=args.convention)


def cmd_enumerate(args: argparse.Namespace) -> int:
    result = _service(args).enumerate_class(args.i, args.j, FilterSet.preset(args.filters), force=args.force)
    _emit_enumeration(args, result, f"enumerate_{args.i}_{args.j}_{args.filters.upper()}")
    return 0


def cmd_extend(args: argparse.Namespace) -> int:
    base = _load(args, args.base)
    result = _service(args).enumerate_extensions(base, FilterSet.preset(args.filters))
    _emit_enumeration(args, result, f"extend_{args.filters.upper()}")
    return 0


def cmd_construct(args: argparse.Namespace) -> int:
    spec = _spec(args.spec)
    seed = args.seed if args.seed is not None else DEFAULT_SEED

    if args.kind == "elementary":
        g = elementary_graph(spec.get("blocks", []), spec.get("flips"))
    elif args.kind == "family":
        family = FamilySpec(**spec) if spec else random_family_spec(LinearGenerator(seed))
        g = family_graph(family)
    elif args.kind == "parity":
        g = parity_graph(ParitySpec(**spec).S or [])
    elif args.kind == "oddeven":
        parity = ParitySpec(**spec)
        if parity.A is None:
            raise PreconditionError("oddeven needs a spec with A and O")
        g = odd_even_graph(parity.A, parity.O)
    elif args.kind == "bitournament":
        g = random_bitournament(int(spec.get("a", 2)), int(spec.get("b", 2)), seed)
    else:
        graphs = [_load(args, source) for source in args.graphs]
        if not graphs:
            raise PreconditionError("join needs at least one graph")
        if args.sources:
            if len(graphs) != 1:
                raise PreconditionError("--sources joins a single graph")
            g = join_via_minimal(graphs[0], args.sources)
        else:
            g = join_disjoint(graphs)

    _emit_graph(args, g)
    return 0


def cmd_from_tree(args: argparse.Namespace) -> int:
    if args.random:
        tree, coloring = random_colored_tree(args.random, args.seed if args.seed is not None else DEFAULT_SEED)
    elif args.tree:
        text = args.tree if args.tree.rstrip().endswith(";") else Path(args.tree).read_text()
        tree, coloring = parse_tree(text)
    else:
        raise PreconditionError("from-tree needs a tree or --random N")
    g = best_match_graph(tree, coloring)
    _emit_graph(args, g, {"tree": format_tree(tree, coloring), "leaves": list(tree.leaves)})
    return 0


def cmd_canon(args: argparse.Namespace) -> int:
    form = canonical_form(_load(args), args.convention)
    _emit_graph(args, form.to_graph(), {"sizes": list(form.sizes), "rows": list(form.rows)})
    return 0


def cmd_iso(args: argparse.Namespace) -> int:
    result = are_isomorphic(_load(args, args.first), _load(args, args.second), args.convention)
    if args.format == "json":
        _emit_json({"isomorphic": result})
    else:
        _write("isomorphic" if result else "not isomorphic")
    return 0


def cmd_export_dot(args: argparse.Namespace) -> int:
    g = _load(args)
    if args.out:
        ExportService(Path(args.out).parent).export_dot(g, Path(args.out).name, args.name)
    else:
        _write(to_dot(g, args.name))
    return 0


def cmd_forbidden_report(args: argparse.Namespace) -> int:
    from agents.quality_checker import QualityChecker

    report = QualityChecker({"workers": args.workers}).forbidden_agreement(max_n=args.max_n)
    if args.out:
        ExportService(Path(args.out)).write_json("forbidden_report.json", report)
    _emit_json(report)
    return 0


GRAPH_FORMATS = ("json", "text", "dot")
REPORT_FORMATS = ("json", "text")
JSON_ONLY = ("json",)


def _add_format(p: argparse.ArgumentParser, choices: Sequence[str]) -> None:
    p.add_argument("--format", choices=choices, default="json", help="Output format (default: json)")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--colors", help="Color classes such as '1 2 | 3 4' for inline or file graphs")
    verbosity = common.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="Debug logging on stderr")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="Only warnings and errors on stderr")

    scanning = argparse.ArgumentParser(add_help=False)
    scanning.add_argument("--workers", type=int, default=BMG_WORKERS, help=f"Worker processes (default: {BMG_WORKERS})")
    scanning.add_argument("--convention", choices=CONVENTIONS, default=None, help="Class swap convention")
    scanning.add_argument("--force", action="store_true", help="Allow scans beyond the pair budget")
    scanning.add_argument("--out", help=f"Directory for result files (e.g. {OUTPUT_DIR})")

    graph_arg = {"help": "Graph file, inline <n|...> notation, or fixture:NAME"}

    parser = argparse.ArgumentParser(
        prog="bmg",
        description="2-colored best match graphs: axioms, structure, decomposition and classification.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    p = subparsers.add_parser("check", parents=[common], help="Check N1-N4 and report witnesses")
    _add_format(p, REPORT_FORMATS)
    p.add_argument("graph", **graph_arg)
    p.set_defaults(handler=cmd_check)

    p = subparsers.add_parser("quotient", parents=[common], help="Collapse equivalent vertices")
    _add_format(p, GRAPH_FORMATS)
    p.add_argument("graph", **graph_arg)
    p.set_defaults(handler=cmd_quotient)

    for name, handler, formats, help_text in (
        ("orient", cmd_orient, GRAPH_FORMATS, "Underlying oriented digraph"),
        ("toposort", cmd_toposort, REPORT_FORMATS, "Topological order of the underlying oriented digraph"),
    ):
        p = subparsers.add_parser(name, parents=[common], help=help_text)
        _add_format(p, formats)
        p.add_argument("graph", **graph_arg)
        p.add_argument("--seed", type=int, default=None, help="Orient symmetric edges at random (default: consistent)")
        p.set_defaults(handler=handler)

    p = subparsers.add_parser("sigma", parents=[common], help="Components of the symmetric-edge graph")
    _add_format(p, JSON_ONLY)
    p.add_argument("graph", **graph_arg)
    p.set_defaults(handler=cmd_sigma)

    p = subparsers.add_parser("truncate", parents=[common], help="Remove the terminal pair and its dependent vertices")
    _add_format(p, JSON_ONLY)
    p.add_argument("graph", **graph_arg)
    p.set_defaults(handler=cmd_truncate)

    p = subparsers.add_parser("decompose", parents=[common], help="Truncate repeatedly and trace every step")
    _add_format(p, JSON_ONLY)
    p.add_argument("graph", **graph_arg)
    p.set_defaults(handler=cmd_decompose)

    p = subparsers.add_parser("classify", parents=[common, scanning], help="Counts of the sets A..E")
    _add_format(p, REPORT_FORMATS)
    p.add_argument("--n", type=int, nargs="+", required=True, help="Numbers of vertices")
    p.add_argument("--i", type=int, nargs="+", default=None, help="Smaller class sizes (default: all splits)")
    p.add_argument("--no-quality", action="store_true", help="Skip the quality checks")
    p.set_defaults(handler=cmd_classify)

    p = subparsers.add_parser("enumerate", parents=[common, scanning], help="Classes of subgraphs of K(i, j)")
    _add_format(p, REPORT_FORMATS)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--filters", default="A", help="Filter preset A..E or X (default: A)")
    p.set_defaults(handler=cmd_enumerate)

    p = subparsers.add_parser("extend", parents=[common, scanning], help="Classes of edge supersets of a base graph")
    _add_format(p, REPORT_FORMATS)
    p.add_argument("--base", required=True, help=graph_arg["help"])
    p.add_argument("--filters", default="X", help="Filter preset A..E, or X for E without connectivity (default: X)")
    p.set_defaults(handler=cmd_extend)

    p = subparsers.add_parser("construct", parents=[common], help="Build a graph from a construction")
    _add_format(p, GRAPH_FORMATS)
    p.add_argument("kind", choices=["elementary", "family", "parity", "oddeven", "bitournament", "join"])
    p.add_argument("graphs", nargs="*", help="Input graphs for join")
    p.add_argument("--spec", help="JSON spec, or @FILE")
    p.add_argument("--sources", type=int, nargs="+", help="Source vertices for a join through one graph")
    p.add_argument("--seed", type=int, default=None, help=f"Seed for random specs (default: {DEFAULT_SEED})")
    p.set_defaults(handler=cmd_construct)

    p = subparsers.add_parser("from-tree", parents=[common], help="Best match graph of a leaf-colored tree")
    _add_format(p, GRAPH_FORMATS)
    p.add_argument("tree", nargs="?", help="Tree text such as '((x:0,y:1),z:1);' or a file")
    p.add_argument("--random", type=int, metavar="LEAVES", help="Use a random tree with this many leaves")
    p.add_argument("--seed", type=int, default=None, help=f"Seed for --random (default: {DEFAULT_SEED})")
    p.set_defaults(handler=cmd_from_tree)

    p = subparsers.add_parser("canon", parents=[common], help="Canonical representative of the isomorphism class")
    _add_format(p, GRAPH_FORMATS)
    p.add_argument("graph", **graph_arg)
    p.add_argument("--convention", choices=CONVENTIONS, default=None)
    p.set_defaults(handler=cmd_canon)

    p = subparsers.add_parser("iso", parents=[common], help="Test two graphs for isomorphism")
    _add_format(p, REPORT_FORMATS)
    p.add_argument("first", **graph_arg)
    p.add_argument("second", **graph_arg)
    p.add_argument("--convention", choices=CONVENTIONS, default=None)
    p.set_defaults(handler=cmd_iso)

    p = subparsers.add_parser("export-dot", parents=[common], help="Graphviz drawing")
    p.add_argument("graph", **graph_arg)
    p.add_argument("--name", default="G")
    p.add_argument("--out", help="Write to this file instead of stdout")
    p.set_defaults(handler=cmd_export_dot)

    p = subparsers.add_parser("forbidden-report", parents=[common], help="Forbidden-pattern agreement matrix")
    _add_format(p, JSON_ONLY)
    p.add_argument("--max-n", type=int, default=5)
    p.add_argument("--workers", type=int, default=BMG_WORKERS)
    p.add_argument("--out", help="Directory for forbidden_report.json")
    p.set_defaults(handler=cmd_forbidden_report)

    return parser


def configure_logging(args: argparse.Namespace) -> None:
    level = "DEBUG" if getattr(args, "verbose", False) else "WARNING" if getattr(args, "quiet", False) else LOG_LEVEL
    logger.remove()
    logger.add(sys.stderr, level=level)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    configure_logging(args)
    is_valid, errors = validate_config()
    if not is_valid:
        logger.error("Configuration error; check the BMG_* settings in your .env file:")
        for error in errors:
            logger.error(f"- {error}")
        return 2

    try:
        return args.handler(args)
    except BMGError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return e.exit_code
    except ValidationError as e:
        logger.error(f"Invalid input: {e}")
        return 2
    except (OSError, ValueError) as e:
        logger.error(f"{e}")
        return 2


if __name__ == "__main__":
    sys.exit(main())

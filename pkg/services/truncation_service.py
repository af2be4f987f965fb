"""
Truncation Service
Terminal-pair analysis of a 2-cBMG, normalized topological orders, truncated
graphs, iterated decomposition into pairs and triples, and elementary 2-cBMGs.
"""

from typing import List, Optional, Sequence, Tuple
from loguru import logger

import sys
from pathlib import Path
sys.path.insert(0, str(Path(__file__).parent.parent))

from models import (
    ColoredDigraph,
    Decomposition,
    DirectedCycle,
    TerminalAnalysis,
    TopologicalOrder,
    TruncationStep,
)
from exceptions import InternalInvariantError, OneColorRemainderError, PreconditionError
from services.axiom_service import check_2cbmg, check_n4, passes_n1_to_n3
from services.graph_service import induced_subgraph
from services.notation_service import serialize
from services.structure_service import (
    consistent_underlying_oriented,
    equivalence_classes,
    is_topological_order,
    topological_order,
)


def _require_input(g: ColoredDigraph, relaxed: bool) -> None:
    report = check_2cbmg(g)
    if relaxed:
        if not report.is_almost_2cbmg:
            raise PreconditionError(f"not an almost 2-cBMG: {report.summary()}")
    elif not report.is_2cbmg:
        raise PreconditionError(report.summary())

    classes = equivalence_classes(g)
    if not classes.all_singletons:
        groups = [list(c) for c in classes.classes if len(c) > 1]
        raise PreconditionError(f"equivalent vertices present: {groups}")


def _violation(message: str, relaxed: bool) -> None:
    """InternalInvariantError on 2-cBMG input, PreconditionError on relaxed input."""
    if relaxed:
        raise PreconditionError(message)
    raise InternalInvariantError(message)


def analyze_terminal(g: ColoredDigraph, relaxed: bool = False) -> TerminalAnalysis:
    """
    Terminal pair of g under the consistent orientation.

    relaxed admits almost 2-cBMGs, as they arise as remainders during decomposition.
    """
    _require_input(g, relaxed)
    if g.n == 0:
        raise PreconditionError("empty graph has no terminal vertex")

    oriented = consistent_underlying_oriented(g)
    order = topological_order(oriented)
    if isinstance(order, DirectedCycle):
        _violation(f"consistent orientation has the directed cycle {order.vertices}", relaxed)

    m = order.order[-1]
    partners = sorted(v for v in g.out_neighbors(m) if g.has_edge(v, m))
    if not partners:
        raise PreconditionError(f"terminal vertex {m} lies on no symmetric edge")
    if len(partners) > 1:
        _violation(f"terminal vertex {m} lies on several symmetric edges {partners}", relaxed)
    ell = partners[0]

    d_list = tuple(
        d for d in order.order
        if d not in (ell, m) and g.out_neighbors(d) in (frozenset({m}), frozenset({ell}))
    )
    kinds = {"m" if g.out_neighbors(d) == frozenset({m}) else "ell" for d in d_list}
    d_kind = kinds.pop() if len(kinds) == 1 else None

    # no edge leaves ell towards a later vertex other than m
    position = {v: k for k, v in enumerate(order.order)}
    late = [v for v in oriented.graph.out_neighbors(ell) if v != m and position[v] > position[ell]]
    if late:
        _violation(f"symmetric partner {ell} has later out-neighbors {sorted(late)}", relaxed)

    tail = set(d_list) | {ell, m}
    normalized = [v for v in order.order if v not in tail] + list(d_list) + [ell, m]
    if not is_topological_order(oriented, normalized):
        _violation(f"order {normalized} is not topological", relaxed)

    normalized_order = TopologicalOrder(order=tuple(normalized))
    positions = {v: normalized_order.position(v) for v in (*d_list, ell, m)}
    return TerminalAnalysis(m=m, ell=ell, d_list=d_list, d_kind=d_kind, order=normalized_order, positions=positions)


def terminal_pair(g: ColoredDigraph) -> TerminalAnalysis:
    """m, its symmetric partner ell and the dependent vertices d of a 2-cBMG without equivalent vertices."""
    return analyze_terminal(g)


def normalize_order(g: ColoredDigraph) -> TopologicalOrder:
    """Topological order ending with the d-vertices, then ell, then m."""
    return analyze_terminal(g).order


def _classify(analysis: TerminalAnalysis, remainder: ColoredDigraph) -> str:
    if analysis.d_kind is None and analysis.d_list:
        return "other"
    report = check_2cbmg(remainder)
    if not analysis.d_list and report.is_2cbmg:
        return "I"
    if len(analysis.d_list) == 1 and report.is_almost_2cbmg:
        return "II"
    return "other"


def _truncate(g: ColoredDigraph, relaxed: bool) -> TruncationStep:
    analysis = analyze_terminal(g, relaxed=relaxed)
    removed = tuple(sorted((*analysis.d_list, analysis.ell, analysis.m)))
    keep = [v for v in g.vertices if v not in removed]
    if len(keep) >= 2 and len({g.colors[v - 1] for v in keep}) == 1:
        raise OneColorRemainderError(f"removing {list(removed)} leaves {keep}, all of color {g.colors[keep[0] - 1]}")
    remainder, labels = induced_subgraph(g, keep)

    if not relaxed and not passes_n1_to_n3(remainder):
        raise InternalInvariantError(f"truncated graph {serialize(remainder)} violates N1-N3")

    case = _classify(analysis, remainder)
    logger.debug(f"Truncated {removed} from {serialize(g)}: case {case}, remainder {serialize(remainder)}")
    return TruncationStep(analysis=analysis, removed=removed, remainder=remainder, remainder_labels=labels, case=case)


def truncate(g: ColoredDigraph) -> TruncationStep:
    """Remove {m, ell} and the dependent vertices; the remainder is relabelled 1..k in label order."""
    return _truncate(g, relaxed=False)


def _other_reason(step: TruncationStep) -> Tuple[str, str]:
    analysis = step.analysis
    remainder = step.remainder
    if len(analysis.d_list) > 1:
        return "several-dependent-vertices", f"dependent vertices {list(analysis.d_list)}"
    if analysis.d_list and analysis.d_kind is None:
        return "mixed-dependent-vertices", f"dependent vertices {list(analysis.d_list)} hang on both m and ell"
    if analysis.d_list and len(check_n4(remainder)) > 1:
        return "triple-side-condition", f"removing the triple leaves the sinks {check_n4(remainder)}"
    report = check_2cbmg(remainder)
    if report.is_almost_2cbmg:
        return "almost-2cbmg-remainder", f"{serialize(remainder)} is not a 2-cBMG, only an almost 2-cBMG"
    return "remainder-violates-axioms", f"{serialize(remainder)}: {report.summary()}"


def decompose(g: ColoredDigraph) -> Decomposition:
    """
    Truncate repeatedly, recording each removed block in labels of g.

    Stops with outcome "failed" when a remainder leaves the regime where the
    next truncation is defined, keeping the offending remainder.
    """
    _require_input(g, relaxed=False)

    blocks: List[Tuple[int, ...]] = []
    steps: List[TruncationStep] = []
    current = g
    labels: Sequence[int] = tuple(g.vertices)

    def failed(reason: str, detail: str, graph: ColoredDigraph, graph_labels: Sequence[int]) -> Decomposition:
        logger.info(f"Decomposition stopped at step {len(steps) + 1}: {reason} ({detail})")
        return Decomposition(
            blocks=blocks, steps=steps, outcome="failed", failed_at=len(steps) + 1,
            reason=reason, detail=detail, offending=graph, offending_labels=tuple(graph_labels),
        )

    while current.n > 0:
        first = not steps
        if not first:
            classes = equivalence_classes(current)
            if not classes.all_singletons:
                groups = [[labels[v - 1] for v in c] for c in classes.classes if len(c) > 1]
                return failed("equivalent-vertices", f"{serialize(current)} has equivalent vertices {groups}",
                              current, labels)
        try:
            step = _truncate(current, relaxed=not first)
        except OneColorRemainderError as e:
            return failed("one-color-remainder", str(e), current, labels)
        except PreconditionError as e:
            return failed("terminal-analysis", str(e), current, labels)

        blocks.append(tuple(sorted(labels[v - 1] for v in step.removed)))
        steps.append(step)
        next_labels = tuple(labels[v - 1] for v in step.remainder_labels)

        if step.case == "other":
            reason, detail = _other_reason(step)
            logger.info(f"Decomposition stopped after step {len(steps)}: {reason} ({detail})")
            return Decomposition(
                blocks=blocks, steps=steps, outcome="failed", failed_at=len(steps),
                reason=reason, detail=detail, offending=step.remainder, offending_labels=next_labels,
            )
        current, labels = step.remainder, next_labels

    logger.info(f"Decomposed {serialize(g)} into {len(blocks)} blocks")
    return Decomposition(blocks=blocks, steps=steps, outcome="complete")


def elementary_graph(blocks: Sequence[Sequence[int]], flips: Optional[Sequence[bool]] = None) -> ColoredDigraph:
    """
    Disjoint pairs and triples on consecutive labels.

    A pair {i, i+1} is one symmetric edge; a triple {i, i+1, i+2} is the symmetric
    edge {i+1, i+2} plus the arc i -> i+2. Unflipped blocks put i (and i+1 in a
    triple) in color 0; a flip swaps the colors of that block.
    """
    blocks = [list(b) for b in blocks]
    flips = list(flips) if flips is not None else [False] * len(blocks)
    if len(flips) != len(blocks):
        raise PreconditionError(f"{len(flips)} flips given for {len(blocks)} blocks")

    expected = 1
    colors: List[int] = []
    edges: List[Tuple[int, int]] = []
    for block, flip in zip(blocks, flips):
        if len(block) not in (2, 3) or block != list(range(expected, expected + len(block))):
            raise PreconditionError(f"block {block} is not a run of 2 or 3 consecutive labels starting at {expected}")
        i = block[0]
        if len(block) == 2:
            block_colors = [0, 1]
            edges += [(i, i + 1), (i + 1, i)]
        else:
            block_colors = [0, 0, 1]
            edges += [(i + 1, i + 2), (i + 2, i + 1), (i, i + 2)]
        colors += [1 - c for c in block_colors] if flip else block_colors
        expected += len(block)

    if not blocks:
        raise PreconditionError("elementary graph needs at least one block")
    return ColoredDigraph(n=expected - 1, colors=tuple(colors), edges=edges)


def elementary_partitions(n: int) -> List[List[List[int]]]:
    """All ordered partitions of 1..n into consecutive runs of length 2 or 3."""
    if n == 0:
        return [[]]
    result = []
    for size in (2, 3):
        if size > n:
            continue
        for rest in elementary_partitions(n - size):
            shifted = [[v + size for v in block] for block in rest]
            result.append([list(range(1, size + 1))] + shifted)
    return result

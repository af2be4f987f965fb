"""
Constructor Service
Generative constructions: joins through source vertices, complete-bipartite
family graphs, parity and odd-even digraphs, and bitournaments.
"""

from itertools import combinations
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple
from loguru import logger

import sys
from pathlib import Path
sys.path.insert(0, str(Path(__file__).parent.parent))

from models import ColoredDigraph, FamilySpec
from exceptions import PreconditionError
from services.axiom_service import check_2cbmg
from services.canonical_service import are_isomorphic
from services.graph_service import add_edges, disjoint_union, is_oriented, is_weakly_connected
from services.random_source import LinearGenerator


def _require_2cbmg(g: ColoredDigraph, what: str = "input") -> None:
    report = check_2cbmg(g)
    if not report.is_2cbmg:
        raise PreconditionError(f"{what} is {report.summary()}")


def _edges_to_other_color(g: ColoredDigraph, w: int) -> List[Tuple[int, int]]:
    return [(w, v) for v in g.vertices if g.colors[v - 1] != g.colors[w - 1]]


def join_via_minimal(g: ColoredDigraph, sources: Iterable[int]) -> ColoredDigraph:
    """
    Give every vertex of U an edge to every opposite-colored vertex.

    Each vertex of U must be a source of g (no in-neighbors), which makes it
    minimal in every underlying oriented digraph.
    """
    _require_2cbmg(g)
    sources = sorted(set(sources))
    for w in sources:
        if g.in_neighbors(w):
            raise PreconditionError(f"vertex {w} is not minimal: in-neighbors {sorted(g.in_neighbors(w))}")
    if not sources:
        return g

    extra = [edge for w in sources for edge in _edges_to_other_color(g, w)]
    joined = add_edges(g, extra)
    report = check_2cbmg(joined)
    if not report.is_2cbmg or not is_weakly_connected(joined):
        raise PreconditionError(f"join through {sources} is not a connected 2-cBMG: {report.summary()}")
    return joined


def _dominate(union: ColoredDigraph, first_range: range) -> ColoredDigraph:
    extra = [
        (w, v)
        for w in first_range
        for v in union.vertices
        if v not in first_range and union.colors[v - 1] != union.colors[w - 1]
    ]
    return add_edges(union, extra)


def join_disjoint(graphs: Sequence[ColoredDigraph]) -> ColoredDigraph:
    """
    Connected 2-cBMG on the disjoint union of the given 2-cBMGs.

    Tried in order: the smallest source of every component after the first,
    the smallest source of the first component, and finally edges from all of
    the first component to the opposite-colored vertices of the others.
    """
    if not graphs:
        raise PreconditionError("join needs at least one graph")
    for k, h in enumerate(graphs, start=1):
        _require_2cbmg(h, f"graph {k}")
    union, offsets = disjoint_union(graphs)
    if len(graphs) == 1:
        return union

    ranges = [range(offset + 1, offset + h.n + 1) for offset, h in zip(offsets, graphs)]
    smallest_source = [min((v for v in r if not union.in_neighbors(v)), default=None) for r in ranges]

    candidates: List[Tuple[str, ColoredDigraph]] = []
    later = smallest_source[1:]
    if all(s is not None for s in later):
        candidates.append(("later sources", add_edges(union, [e for s in later for e in _edges_to_other_color(union, s)])))
    if smallest_source[0] is not None:
        candidates.append(("first source", add_edges(union, _edges_to_other_color(union, smallest_source[0]))))
    candidates.append(("first component dominates", _dominate(union, ranges[0])))

    for label, joined in candidates:
        if check_2cbmg(joined).is_2cbmg and is_weakly_connected(joined):
            logger.debug(f"Joined {len(graphs)} graphs via {label}")
            return joined
    raise PreconditionError(f"no join of the {len(graphs)} graphs is a connected 2-cBMG")


def family_graph(spec: FamilySpec) -> ColoredDigraph:
    """
    Complete bipartite blocks Λ_i = U_i ∪ W_i joined through block 1.

    Labels run block by block, U_i then W_i; U-vertices have color 0. Besides
    the symmetric block edges, u -> w for u ∈ U_1, w ∈ W_i and w -> u for
    w ∈ W_1, u ∈ U_i, for every i >= 2.
    """
    us: List[List[int]] = []
    ws: List[List[int]] = []
    colors: List[int] = []
    label = 1
    for u_size, w_size in spec.blocks:
        us.append(list(range(label, label + u_size)))
        ws.append(list(range(label + u_size, label + u_size + w_size)))
        colors += [0] * u_size + [1] * w_size
        label += u_size + w_size

    edges = set()
    for u_block, w_block in zip(us, ws):
        for u in u_block:
            for w in w_block:
                edges.add((u, w))
                edges.add((w, u))
    for i in range(1, len(spec.blocks)):
        edges.update((u, w) for u in us[0] for w in ws[i])
        edges.update((w, u) for w in ws[0] for u in us[i])
    return ColoredDigraph(n=label - 1, colors=tuple(colors), edges=sorted(edges))


def random_family_spec(rng: LinearGenerator, max_blocks: int = 4, max_side: int = 3) -> FamilySpec:
    count = 1 + rng.next_below(max_blocks)
    return FamilySpec(blocks=[(1 + rng.next_below(max_side), 1 + rng.next_below(max_side)) for _ in range(count)])


def parity_graph(values: Iterable[int]) -> ColoredDigraph:
    """
    Γ_S: vertex k is the k-th smallest element of S; odd elements get color 1;
    uv is an edge when u < v and the parities differ.
    """
    elements = sorted(set(values))
    if not elements:
        raise PreconditionError("parity graph needs a non-empty set")
    if any(s < 0 for s in elements):
        raise PreconditionError("parity graph needs natural numbers")
    colors = tuple(s % 2 for s in elements)
    if len(elements) >= 2 and len(set(colors)) < 2:
        raise PreconditionError(f"parity graph needs both odd and even elements, got {elements}")
    n = len(elements)
    edges = [(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1) if colors[a - 1] != colors[b - 1]]
    return ColoredDigraph(n=n, colors=colors, edges=edges)


def odd_even_graph(evens: Iterable[int], odds: Iterable[int]) -> ColoredDigraph:
    """
    Vertex k is the k-th smallest element of A; ab is an edge when (a+b)/2 and
    (b-a)/2 both lie in O. Residue 0 mod 4 is color 0, residue 2 is color 1.
    """
    elements = sorted(set(evens))
    odd_set = set(odds)
    bad = [a for a in elements if a < 0 or a % 2]
    if bad:
        raise PreconditionError(f"A must hold non-negative even integers, got {bad}")
    bad = [o for o in odd_set if o <= 0 or o % 2 == 0]
    if bad:
        raise PreconditionError(f"O must hold positive odd integers, got {sorted(bad)}")

    colors = tuple(0 if a % 4 == 0 else 1 for a in elements)
    if len(elements) >= 2 and len(set(colors)) < 2:
        raise PreconditionError(f"A needs elements of both residues 0 and 2 mod 4, got {elements}")
    edges = [
        (i + 1, j + 1)
        for i, a in enumerate(elements)
        for j, b in enumerate(elements)
        if b > a and (a + b) // 2 in odd_set and (b - a) // 2 in odd_set
    ]
    return ColoredDigraph(n=len(elements), colors=colors, edges=edges)


def _cross_pairs(a: int, b: int) -> List[Tuple[int, int]]:
    return [(u, v) for u in range(1, a + 1) for v in range(a + 1, a + b + 1)]


def random_bitournament(a: int, b: int, seed: int) -> ColoredDigraph:
    """One direction per cross pair, drawn from the seeded generator in (u, v) order."""
    if a < 1 or b < 1:
        raise PreconditionError(f"bitournament needs two non-empty classes, got ({a}, {b})")
    rng = LinearGenerator(seed)
    edges = [(u, v) if rng.next_below(2) == 0 else (v, u) for u, v in _cross_pairs(a, b)]
    return ColoredDigraph(n=a + b, colors=tuple([0] * a + [1] * b), edges=edges)


def all_bitournaments(a: int, b: int) -> Iterator[ColoredDigraph]:
    """Every bitournament on classes 1..a and a+1..a+b; bit k of the index flips pair k."""
    pairs = _cross_pairs(a, b)
    colors = tuple([0] * a + [1] * b)
    for index in range(1 << len(pairs)):
        edges = [(v, u) if index >> k & 1 else (u, v) for k, (u, v) in enumerate(pairs)]
        yield ColoredDigraph(n=a + b, colors=colors, edges=edges)


def is_bitournament(g: ColoredDigraph) -> bool:
    """Oriented, with every cross-colored pair adjacent."""
    if not is_oriented(g):
        return False
    return all(
        g.has_edge(u, v) or g.has_edge(v, u)
        for u in g.vertices for v in range(u + 1, g.n + 1)
        if g.colors[u - 1] != g.colors[v - 1]
    )


def is_degree_balanced(g: ColoredDigraph) -> bool:
    return all(len(g.out_neighbors(v)) == len(g.in_neighbors(v)) for v in g.vertices)


def _set_from_parities(parities: Sequence[int]) -> List[int]:
    values: List[int] = []
    for p in parities:
        if not values:
            values.append(1 if p else 2)
        else:
            values.append(values[-1] + (1 if values[-1] % 2 != p else 2))
    return values


def parity_isomorph(g: ColoredDigraph) -> Optional[List[int]]:
    """A set S with Γ_S isomorphic to g, or None. Searches every parity word with g's class sizes."""
    first, second = g.color_classes()
    n = g.n
    for odd_positions in combinations(range(n), len(second)):
        parities = [1 if k in odd_positions else 0 for k in range(n)]
        values = _set_from_parities(parities)
        if are_isomorphic(parity_graph(values), g):
            return values
    return None

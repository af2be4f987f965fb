"""
Graph Core Service
Elementary queries on colored digraphs: symmetric edges, independence,
weak components, induced subgraphs and unions.
"""

from typing import Dict, Iterable, List, Sequence, Set, Tuple
import networkx as nx

import sys
from pathlib import Path
sys.path.insert(0, str(Path(__file__).parent.parent))

from models import ColoredDigraph
from exceptions import PreconditionError


def symmetric_edges(g: ColoredDigraph) -> List[Tuple[int, int]]:
    """Unordered pairs {u,v} with both uv and vu present, as (u, v) with u < v."""
    return [(u, v) for u, v in g.edges if u < v and g.has_edge(v, u)]


def is_oriented(g: ColoredDigraph) -> bool:
    return not symmetric_edges(g)


def is_independent(g: ColoredDigraph, u: int, v: int) -> bool:
    if u == v:
        raise PreconditionError(f"independence needs two distinct vertices, got {u} twice")
    g.out_neighbors(u)
    g.out_neighbors(v)
    return not g.has_edge(u, v) and not g.has_edge(v, u)


def out_set(g: ColoredDigraph, vertices: Iterable[int]) -> Set[int]:
    """Union of N(v) over the given vertices."""
    result: Set[int] = set()
    for v in vertices:
        result |= g.out_neighbors(v)
    return result


def second_out(g: ColoredDigraph, u: int) -> Set[int]:
    """N(N(u))."""
    return out_set(g, g.out_neighbors(u))


def to_networkx(g: ColoredDigraph) -> nx.DiGraph:
    digraph = nx.DiGraph()
    for v in g.vertices:
        digraph.add_node(v, color=g.colors[v - 1])
    digraph.add_edges_from(g.edges)
    return digraph


def weak_components(g: ColoredDigraph) -> List[Tuple[int, ...]]:
    """Components of the undirected shadow, each sorted, ordered by smallest vertex."""
    components = [tuple(sorted(c)) for c in nx.weakly_connected_components(to_networkx(g))]
    return sorted(components)


def _require_two_colors(colors: Sequence[int], what: str) -> None:
    if len(colors) >= 2 and len(set(colors)) < 2:
        raise PreconditionError(f"{what} would have {len(colors)} vertices all of color {colors[0]}")


def is_weakly_connected(g: ColoredDigraph) -> bool:
    if g.n <= 1:
        return True
    return len(weak_components(g)) == 1


def induced_subgraph(g: ColoredDigraph, vertices: Iterable[int]) -> Tuple[ColoredDigraph, Tuple[int, ...]]:
    """
    Subgraph induced on the given vertices, relabelled 1..k in ascending order.

    Returns the subgraph and the source label of each new vertex.
    """
    labels = tuple(sorted(set(vertices)))
    index = {v: k + 1 for k, v in enumerate(labels)}
    edges = [(index[u], index[v]) for u, v in g.edges if u in index and v in index]
    colors = tuple(g.colors[v - 1] for v in labels)
    _require_two_colors(colors, f"subgraph induced on {list(labels)}")
    return ColoredDigraph(n=len(labels), colors=colors, edges=edges), labels


def relabel(g: ColoredDigraph, mapping: Dict[int, int]) -> ColoredDigraph:
    """Apply a bijection old label -> new label on 1..n."""
    if sorted(mapping) != list(g.vertices) or sorted(mapping.values()) != list(g.vertices):
        raise PreconditionError("relabelling must be a permutation of 1..n")
    colors = [0] * g.n
    for old, new in mapping.items():
        colors[new - 1] = g.colors[old - 1]
    edges = [(mapping[u], mapping[v]) for u, v in g.edges]
    return ColoredDigraph(n=g.n, colors=tuple(colors), edges=edges)


def disjoint_union(graphs: Sequence[ColoredDigraph]) -> Tuple[ColoredDigraph, List[int]]:
    """Place the graphs on consecutive label ranges; returns the union and each offset."""
    offsets: List[int] = []
    colors: List[int] = []
    edges: List[Tuple[int, int]] = []
    offset = 0
    for h in graphs:
        offsets.append(offset)
        colors.extend(h.colors)
        edges.extend((u + offset, v + offset) for u, v in h.edges)
        offset += h.n
    _require_two_colors(colors, "disjoint union")
    return ColoredDigraph(n=offset, colors=tuple(colors), edges=edges), offsets


def add_edges(g: ColoredDigraph, extra: Iterable[Tuple[int, int]]) -> ColoredDigraph:
    edges = set(g.edges) | set(extra)
    return g.with_edges(sorted(edges))


def complete_bipartite(i: int, j: int) -> ColoredDigraph:
    """Complete bipartite digraph: classes 1..i and i+1..i+j, every cross pair both ways."""
    colors = tuple([0] * i + [1] * j)
    _require_two_colors(colors, f"K({i},{j})")
    edges = [(u, v) for u in range(1, i + j + 1) for v in range(1, i + j + 1) if colors[u - 1] != colors[v - 1]]
    return ColoredDigraph(n=i + j, colors=colors, edges=edges)


def edgeless(i: int, j: int) -> ColoredDigraph:
    colors = tuple([0] * i + [1] * j)
    _require_two_colors(colors, f"edgeless graph ({i},{j})")
    return ColoredDigraph(n=i + j, colors=colors, edges=())

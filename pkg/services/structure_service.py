"""
Graph Structure Service
Equivalence classes, quotient graphs, underlying oriented digraphs, topological
orders, reachability and the symmetric-edge component graph.
"""

import heapq
from collections import deque
from typing import Dict, Iterable, List, Set, Tuple, Union
import networkx as nx
from loguru import logger

import sys
from pathlib import Path
sys.path.insert(0, str(Path(__file__).parent.parent))

from models import (
    ColoredDigraph,
    DirectedCycle,
    EquivalenceClasses,
    OrientedDigraph,
    QuotientGraph,
    SymmetricComponent,
    SymmetricComponents,
    TopologicalOrder,
)
from exceptions import InternalInvariantError, PreconditionError
from services.graph_service import second_out, symmetric_edges, to_networkx


GraphLike = Union[ColoredDigraph, OrientedDigraph]


def _graph(o: GraphLike) -> ColoredDigraph:
    return o.graph if isinstance(o, OrientedDigraph) else o


def equivalence_classes(g: ColoredDigraph) -> EquivalenceClasses:
    """Group vertices by (N(u), N^-(u)); classes are ordered by their smallest member."""
    groups: Dict[Tuple, List[int]] = {}
    for u in g.vertices:
        groups.setdefault((g.out_neighbors(u), g.in_neighbors(u)), []).append(u)
    classes = sorted(tuple(members) for members in groups.values())
    return EquivalenceClasses(classes=classes)


def are_equivalent(g: ColoredDigraph, u: int, v: int) -> bool:
    return g.out_neighbors(u) == g.out_neighbors(v) and g.in_neighbors(u) == g.in_neighbors(v)


def quotient(g: ColoredDigraph) -> QuotientGraph:
    """Collapse each equivalence class to one vertex; vertex k is the k-th class."""
    classes = equivalence_classes(g).classes
    index = {members[0]: k + 1 for k, members in enumerate(classes)}
    reps = [members[0] for members in classes]
    edges = [(index[a], index[b]) for a in reps for b in reps if g.has_edge(a, b)]
    colors = tuple(g.colors[a - 1] for a in reps)
    return QuotientGraph(graph=ColoredDigraph(n=len(classes), colors=colors, edges=edges), classes=classes)


def underlying_oriented(g: ColoredDigraph, choice: Iterable[Tuple[int, int]]) -> OrientedDigraph:
    """
    Keep exactly the chosen direction of every symmetric edge.

    choice lists one (tail, head) per symmetric edge; all other edges are kept.
    """
    kept = sorted(set(tuple(edge) for edge in choice))
    pairs = {(min(u, v), max(u, v)) for u, v in kept}
    required = set(symmetric_edges(g))
    if len(pairs) != len(kept):
        raise PreconditionError("choice keeps both directions of a symmetric edge")
    extra = pairs - required
    if extra:
        raise PreconditionError(f"choice names pairs that are not symmetric edges: {sorted(extra)}")
    missing = required - pairs
    if missing:
        raise PreconditionError(f"choice misses the symmetric edges {sorted(missing)}")

    dropped = {(v, u) for u, v in kept}
    edges = [edge for edge in g.edges if edge not in dropped]
    return OrientedDigraph(graph=g.with_edges(edges), kept=kept)


def consistent_underlying_oriented(g: ColoredDigraph) -> OrientedDigraph:
    """
    Orient the symmetric edges of the quotient from the smaller representative
    and lift, so the kept direction is constant on equivalence classes.
    """
    q = quotient(g)
    class_of = {v: k + 1 for k, members in enumerate(q.classes) for v in members}
    choice = []
    for u, v in symmetric_edges(g):
        cu, cv = class_of[u], class_of[v]
        if cu == cv or not (q.graph.has_edge(cu, cv) and q.graph.has_edge(cv, cu)):
            raise InternalInvariantError(f"symmetric edge {{{u},{v}}} has no symmetric image in the quotient")
        choice.append((u, v) if cu < cv else (v, u))
    return underlying_oriented(g, choice)


def random_orientation(g: ColoredDigraph, rng) -> OrientedDigraph:
    """Orient each symmetric edge by a coin flip of the given generator."""
    choice = [(u, v) if rng.next_below(2) == 0 else (v, u) for u, v in symmetric_edges(g)]
    return underlying_oriented(g, choice)


def _find_cycle(g: ColoredDigraph, remaining: Set[int]) -> DirectedCycle:
    # every remaining vertex has an in-neighbor among the remaining ones
    start = min(remaining)
    path = [start]
    seen = {start: 0}
    current = start
    while True:
        pred = min(g.in_neighbors(current) & remaining)
        if pred in seen:
            idx = seen[pred]
            return DirectedCycle(vertices=tuple([path[idx]] + list(reversed(path[idx + 1:]))))
        seen[pred] = len(path)
        path.append(pred)
        current = pred


def topological_order(o: GraphLike) -> Union[TopologicalOrder, DirectedCycle]:
    """Kahn elimination taking the smallest available label; a directed cycle if none exists."""
    g = _graph(o)
    indegree = {v: len(g.in_neighbors(v)) for v in g.vertices}
    available = [v for v in g.vertices if indegree[v] == 0]
    heapq.heapify(available)
    order: List[int] = []
    while available:
        u = heapq.heappop(available)
        order.append(u)
        for v in g.out_neighbors(u):
            indegree[v] -= 1
            if indegree[v] == 0:
                heapq.heappush(available, v)

    if len(order) < g.n:
        cycle = _find_cycle(g, set(g.vertices) - set(order))
        logger.debug(f"No topological order; cycle {cycle.vertices}")
        return cycle
    return TopologicalOrder(order=tuple(order))


def is_topological_order(o: GraphLike, order: Iterable[int]) -> bool:
    g = _graph(o)
    order = list(order)
    if sorted(order) != list(g.vertices):
        return False
    position = {v: k for k, v in enumerate(order)}
    return all(position[u] < position[v] for u, v in g.edges)


def minimal_vertices(o: GraphLike) -> List[int]:
    g = _graph(o)
    return [v for v in g.vertices if not g.in_neighbors(v)]


def maximal_vertices(o: GraphLike) -> List[int]:
    g = _graph(o)
    return [v for v in g.vertices if not g.out_neighbors(v)]


def reach_set(g: ColoredDigraph, u: int) -> Set[int]:
    """Vertices at the end of a non-empty directed walk from u."""
    seen: Set[int] = set()
    queue = deque(g.out_neighbors(u))
    while queue:
        v = queue.popleft()
        if v in seen:
            continue
        seen.add(v)
        queue.extend(g.out_neighbors(v) - seen)
    return seen


def reachable(g: ColoredDigraph, u: int, v: int) -> bool:
    """True iff a directed walk from u to v exists."""
    if u == v:
        raise PreconditionError(f"reachability needs two distinct vertices, got {u} twice")
    g.out_neighbors(v)
    return v in reach_set(g, u)


def reachable_by_collapse(g: ColoredDigraph, u: int, v: int) -> bool:
    """uv ∈ E or some w with uw, wv ∈ E; equals reachable() on bi-transitive graphs."""
    return g.has_edge(u, v) or bool(g.out_neighbors(u) & g.in_neighbors(v))


def is_strongly_connected(g: ColoredDigraph) -> bool:
    if g.n == 0:
        return True
    return nx.is_strongly_connected(to_networkx(g))


def symmetric_components(g: ColoredDigraph) -> SymmetricComponents:
    """Σ: symmetric edges among vertices lying on at least two symmetric edges."""
    sym = symmetric_edges(g)
    degree: Dict[int, int] = {}
    for u, v in sym:
        degree[u] = degree.get(u, 0) + 1
        degree[v] = degree.get(v, 0) + 1
    heavy = tuple(sorted(v for v, d in degree.items() if d >= 2))
    heavy_set = set(heavy)
    sigma_edges = [(u, v) for u, v in sym if u in heavy_set and v in heavy_set]

    sigma = nx.Graph()
    sigma.add_nodes_from(heavy)
    sigma.add_edges_from(sigma_edges)
    edge_set = set(sigma_edges)

    components = []
    for members in sorted(tuple(sorted(c)) for c in nx.connected_components(sigma)):
        side0 = tuple(v for v in members if g.colors[v - 1] == 0)
        side1 = tuple(v for v in members if g.colors[v - 1] == 1)
        complete = all((min(a, b), max(a, b)) in edge_set for a in side0 for b in side1)
        components.append(SymmetricComponent(
            vertices=members,
            sides=(side0, side1),
            edges=[e for e in sigma_edges if e[0] in members],
            complete_bipartite=complete,
        ))
    return SymmetricComponents(vertices=heavy, edges=sigma_edges, components=components)


def is_complete_bipartite_on(g: ColoredDigraph, vertices: Iterable[int]) -> bool:
    """Every cross-colored pair inside the vertex set is joined in both directions."""
    vs = sorted(set(vertices))
    return all(
        g.has_edge(a, b) and g.has_edge(b, a)
        for a in vs for b in vs
        if a < b and g.colors[a - 1] != g.colors[b - 1]
    )


def circuit_vertex_sets(g: ColoredDigraph, min_length: int = 4) -> List[Tuple[int, ...]]:
    """Vertex sets of the directed cycles with at least min_length vertices."""
    found = {tuple(sorted(cycle)) for cycle in nx.simple_cycles(to_networkx(g)) if len(cycle) >= min_length}
    return sorted(found)


def domination_holds(g: ColoredDigraph) -> bool:
    """
    Non-equivalent u, v with a common out-neighbor and no 2-path between them
    do not both lie on symmetric edges.
    """
    on_symmetric = {v for edge in symmetric_edges(g) for v in edge}
    for u in g.vertices:
        for v in range(u + 1, g.n + 1):
            if not g.out_neighbors(u) & g.out_neighbors(v):
                continue
            if u in second_out(g, v) or v in second_out(g, u) or are_equivalent(g, u, v):
                continue
            if u in on_symmetric and v in on_symmetric:
                return False
    return True


def separated_reachability_holds(g: ColoredDigraph) -> bool:
    """Independent vertices sharing no out-neighbor never reach a common third vertex."""
    reach = {u: reach_set(g, u) for u in g.vertices}
    for u in g.vertices:
        for v in range(u + 1, g.n + 1):
            if g.out_neighbors(u) & g.out_neighbors(v):
                continue
            if g.has_edge(u, v) or g.has_edge(v, u):
                continue
            if (reach[u] & reach[v]) - {u, v}:
                return False
    return True


def symmetric_edge_degree(g: ColoredDigraph) -> Dict[int, int]:
    """Number of symmetric edges at each vertex."""
    degree = {v: 0 for v in g.vertices}
    for u, v in symmetric_edges(g):
        degree[u] += 1
        degree[v] += 1
    return degree

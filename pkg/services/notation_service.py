"""
Graph Notation Service
Text notation <n|[u,v],...>, color sidecars, JSON documents and DOT export.
"""

import json
import re
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union
from loguru import logger
from pydantic import ValidationError

import sys
sys.path.insert(0, str(Path(__file__).parent.parent))

from models import ColoredDigraph, EdgeList
from exceptions import GraphFormatError, GraphInvariantError


GRAPH_PATTERN = re.compile(r"^<(\d+)\|(.*)>$")
EDGES_PATTERN = re.compile(r"^\[\d+,\d+\](,\[\d+,\d+\])*$")
EDGE_PATTERN = re.compile(r"\[(\d+),(\d+)\]")

ColorSpec = Union[str, Sequence[int], Tuple[Sequence[int], Sequence[int]]]


def parse_edge_list(text: str) -> EdgeList:
    """Parse the text notation keeping the edges in written order."""
    compact = re.sub(r"\s+", "", text or "")
    match = GRAPH_PATTERN.match(compact)
    if not match:
        raise GraphFormatError(f"not a graph in <n|[u,v],...> notation: {text!r}")

    n = int(match.group(1))
    body = match.group(2)
    if body and not EDGES_PATTERN.match(body):
        raise GraphFormatError(f"malformed edge list: {body!r}")

    edges = [(int(u), int(v)) for u, v in EDGE_PATTERN.findall(body)]
    return EdgeList(n=n, edges=edges)


def parse_colors(text: str, n: int) -> Tuple[int, ...]:
    """Parse a sidecar like 'colors: 1 2 | 3' into one color per vertex."""
    body = text.strip()
    if body.lower().startswith("colors:"):
        body = body[len("colors:"):]
    if body.count("|") != 1:
        raise GraphFormatError(f"color sidecar needs exactly one '|': {text!r}")

    left, right = body.split("|")
    try:
        first = [int(tok) for tok in left.replace(",", " ").split()]
        second = [int(tok) for tok in right.replace(",", " ").split()]
    except ValueError as e:
        raise GraphFormatError(f"color sidecar must list integers: {text!r}") from e
    return colors_from_classes(first, second, n)


def colors_from_classes(first: Iterable[int], second: Iterable[int], n: int) -> Tuple[int, ...]:
    """Colors for a partition of 1..n; the first class gets color 0."""
    first, second = list(first), list(second)
    listed = first + second
    if sorted(listed) != list(range(1, n + 1)):
        raise GraphFormatError(f"color classes {first} | {second} do not partition 1..{n}")
    colors = [0] * n
    for v in second:
        colors[v - 1] = 1
    return tuple(colors)


def derive_colors(n: int, edges: Iterable[Tuple[int, int]]) -> Tuple[int, ...]:
    """2-color the undirected shadow; the smallest vertex of each component gets color 0."""
    adjacency: Dict[int, set] = {v: set() for v in range(1, n + 1)}
    for u, v in edges:
        if not (1 <= u <= n and 1 <= v <= n):
            raise GraphInvariantError(f"edge [{u},{v}] uses a vertex outside 1..{n}")
        adjacency[u].add(v)
        adjacency[v].add(u)

    colors: Dict[int, int] = {}
    for start in range(1, n + 1):
        if start in colors:
            continue
        colors[start] = 0
        stack = [start]
        while stack:
            u = stack.pop()
            for v in adjacency[u]:
                if v not in colors:
                    colors[v] = 1 - colors[u]
                    stack.append(v)
                elif colors[v] == colors[u]:
                    raise GraphInvariantError(f"edge [{u},{v}] closes an odd cycle; graph is not bipartite")
    return tuple(colors[v] for v in range(1, n + 1))


def _normalize_colors(colors: ColorSpec, n: int) -> Tuple[int, ...]:
    if isinstance(colors, str):
        return parse_colors(colors, n)
    colors = list(colors)
    if len(colors) == 2 and all(isinstance(side, (list, tuple, set, frozenset)) for side in colors):
        return colors_from_classes(sorted(colors[0]), sorted(colors[1]), n)
    if len(colors) != n:
        raise GraphFormatError(f"expected {n} colors, got {len(colors)}")
    return tuple(int(c) for c in colors)


def _check_edges(n: int, edges: Sequence[Tuple[int, int]]) -> None:
    """Loops, out-of-range vertices and repeated edges; independent of the coloring."""
    seen = set()
    for u, v in edges:
        if u == v:
            raise GraphInvariantError(f"loop edge [{u},{v}]")
        if not (1 <= u <= n and 1 <= v <= n):
            raise GraphInvariantError(f"vertex index out of 1..{n} in edge [{u},{v}]")
        if (u, v) in seen:
            raise GraphInvariantError(f"duplicate edge [{u},{v}]")
        seen.add((u, v))


def build_graph(n: int, colors: Sequence[int], edges: Iterable[Tuple[int, int]]) -> ColoredDigraph:
    """Validate raw parts and build a graph, raising GraphInvariantError on any violation."""
    edges = [tuple(edge) for edge in edges]
    _check_edges(n, edges)
    for u, v in edges:
        if colors[u - 1] == colors[v - 1]:
            raise GraphInvariantError(f"edge [{u},{v}] lies within one color class")

    try:
        return ColoredDigraph(n=n, colors=tuple(colors), edges=edges)
    except ValidationError as e:
        raise GraphInvariantError(str(e)) from e


def parse_graph(text: str, colors: Optional[ColorSpec] = None) -> ColoredDigraph:
    """
    Parse <n|[u,v],...> with an explicit class assignment.

    colors may be a sidecar string, one color per vertex, or a pair of classes.
    Without colors the 2-coloring is derived from the edges.
    """
    parsed = parse_edge_list(text)
    _check_edges(parsed.n, parsed.edges)
    if colors is None:
        color_tuple = derive_colors(parsed.n, parsed.edges)
        logger.debug(f"Derived colors {color_tuple} for {text!r}")
    else:
        color_tuple = _normalize_colors(colors, parsed.n)
    return build_graph(parsed.n, color_tuple, parsed.edges)


def serialize(g: ColoredDigraph) -> str:
    """Text notation with edges in ascending order."""
    return f"<{g.n}|" + ",".join(f"[{u},{v}]" for u, v in g.edges) + ">"


def serialize_edge_list(edge_list: EdgeList) -> str:
    return f"<{edge_list.n}|" + ",".join(f"[{u},{v}]" for u, v in edge_list.edges) + ">"


def serialize_colors(g: ColoredDigraph) -> str:
    first, second = g.color_classes()
    return "colors: " + " ".join(map(str, first)) + " | " + " ".join(map(str, second))


def to_json(g: ColoredDigraph) -> Dict:
    return {"n": g.n, "colors": list(g.colors), "edges": [[u, v] for u, v in g.edges]}


def from_json(doc: Union[str, Dict]) -> ColoredDigraph:
    if isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as e:
            raise GraphFormatError(f"invalid JSON graph document: {e}") from e
    if not isinstance(doc, dict) or not {"n", "colors", "edges"} <= set(doc):
        raise GraphFormatError("JSON graph needs the keys 'n', 'colors' and 'edges'")
    try:
        n = int(doc["n"])
        colors = [int(c) for c in doc["colors"]]
        edges = [(int(u), int(v)) for u, v in doc["edges"]]
    except (TypeError, ValueError) as e:
        raise GraphFormatError(f"malformed JSON graph document: {e}") from e
    if len(colors) != n:
        raise GraphFormatError(f"expected {n} colors, got {len(colors)}")
    if any(c not in (0, 1) for c in colors):
        raise GraphFormatError("colors must be 0 or 1")
    return build_graph(n, colors, edges)


def to_dot(g: ColoredDigraph, name: str = "G") -> str:
    """DOT digraph; color 0 as circles, color 1 as boxes, symmetric edges drawn once and bold."""
    lines = [f"digraph {name} {{"]
    for v in g.vertices:
        shape = "circle" if g.colors[v - 1] == 0 else "box"
        lines.append(f"  {v} [shape={shape}];")
    for u, v in g.edges:
        if g.has_edge(v, u):
            if u < v:
                lines.append(f"  {u} -> {v} [dir=both, style=bold];")
        else:
            lines.append(f"  {u} -> {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def format_graph(g: ColoredDigraph, fmt: str = "json") -> str:
    """Render one graph in the CLI output formats."""
    if fmt == "text":
        return serialize(g) + "\n" + serialize_colors(g) + "\n"
    if fmt == "dot":
        return to_dot(g)
    return json.dumps(to_json(g)) + "\n"


def parse_graph_document(text: str) -> ColoredDigraph:
    """Parse a graph file body: a JSON document, or notation plus an optional colors line."""
    stripped = text.strip()
    if stripped.startswith("{"):
        return from_json(stripped)

    lines = [line.strip() for line in stripped.splitlines() if line.strip() and not line.strip().startswith("#")]
    if not lines:
        raise GraphFormatError("empty graph document")
    graph_lines: List[str] = []
    colors_line = None
    for line in lines:
        if line.lower().startswith("colors:"):
            colors_line = line
        else:
            graph_lines.append(line)
    graph_text = "".join(graph_lines)
    if colors_line is None:
        logger.warning("No colors line given; deriving the 2-coloring from the edges")
    return parse_graph(graph_text, colors_line)


def load_graph(source: str) -> ColoredDigraph:
    """Load a graph from a file path, 'fixture:NAME', or inline notation."""
    if source.startswith("fixture:"):
        from services.fixture_service import FixtureService
        return FixtureService().get_graph(source[len("fixture:"):])
    if source.lstrip().startswith("<"):
        return parse_graph_document(source)

    path = Path(source)
    if not path.exists():
        raise GraphFormatError(f"graph file not found: {source}")
    logger.debug(f"Loading graph from {path}")
    return parse_graph_document(path.read_text())

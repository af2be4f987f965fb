"""
Canonical Form Service
Isomorphism certificates for 2-colored digraphs: the smallest tuple of adjacency
row bitmasks over all relabellings that respect the color classes.

The swap convention decides whether the two classes may trade places; under
"uncolored" the colors of each weak component may also be flipped, which makes
the certificate one of plain digraph isomorphism.
"""

from itertools import permutations, product
from typing import Dict, List, Optional, Sequence, Tuple

import sys
from pathlib import Path
sys.path.insert(0, str(Path(__file__).parent.parent))

from config import SWAP_CONVENTION
from models import CanonicalForm, ColoredDigraph

CONVENTIONS = ("when-equal", "never", "always", "uncolored")

CanonicalKey = Tuple[Tuple[int, int], Tuple[int, ...]]


def _class_orders(colors: Sequence[int], convention: str) -> List[Tuple[List[int], List[int]]]:
    """
    Vertex indices (0-based) of the two classes in every admissible order.

    never keeps color 0 first; when-equal also tries the swap, but only for
    classes of equal size; always and uncolored try both orders.
    """
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown swap convention '{convention}', expected one of {CONVENTIONS}")
    first = [v for v, c in enumerate(colors) if c == 0]
    second = [v for v, c in enumerate(colors) if c == 1]
    if convention == "never" or (convention == "when-equal" and len(first) != len(second)):
        return [(first, second)]
    return [(first, second), (second, first)]


def _cells(members: List[int], invariant: Dict[int, Tuple[int, int, int]]) -> List[List[int]]:
    groups: Dict[Tuple[int, int, int], List[int]] = {}
    for v in members:
        groups.setdefault(invariant[v], []).append(v)
    return [groups[key] for key in sorted(groups)]


def _in_rows(out_rows: Sequence[int]) -> List[int]:
    n = len(out_rows)
    in_rows = [0] * n
    for v in range(n):
        row = out_rows[v]
        for w in range(n):
            if row >> w & 1:
                in_rows[w] |= 1 << v
    return in_rows


def _components(out_rows: Sequence[int], in_rows: Sequence[int]) -> List[int]:
    """Weak components as vertex bitmasks, isolated vertices included."""
    n = len(out_rows)
    seen = 0
    components = []
    for start in range(n):
        if seen >> start & 1:
            continue
        reach = 1 << start
        frontier = reach
        while frontier:
            grown = 0
            for v in range(n):
                if frontier >> v & 1:
                    grown |= out_rows[v] | in_rows[v]
            frontier = grown & ~reach
            reach |= grown
        seen |= reach
        components.append(reach)
    return components


def _colorings(colors: Sequence[int], out_rows: Sequence[int], in_rows: Sequence[int],
               convention: str) -> List[Tuple[int, ...]]:
    """The coloring itself, or for uncolored every flip of whole weak components."""
    if convention != "uncolored":
        return [tuple(colors)]
    components = _components(out_rows, in_rows)
    result = []
    # the first component stays put; flipping it too is covered by the class swap
    for flips in range(1 << max(len(components) - 1, 0)):
        mask = 0
        for k, component in enumerate(components[1:]):
            if flips >> k & 1:
                mask |= component
        flipped = tuple(c ^ (mask >> v & 1) for v, c in enumerate(colors))
        if len(flipped) < 2 or len(set(flipped)) == 2:
            result.append(flipped)
    return result


def canonical_key(colors: Sequence[int], out_rows: Sequence[int], convention: Optional[str] = None) -> CanonicalKey:
    """
    Certificate of a graph given as out-neighbor bitmasks (bit w is vertex w+1).

    Vertices are split into cells by (out-degree, in-degree, symmetric degree)
    inside each class; only permutations within cells are tried. Under the
    uncolored convention two graphs share a key iff they are isomorphic as
    plain digraphs.
    """
    convention = convention or SWAP_CONVENTION
    n = len(colors)
    in_rows = _in_rows(out_rows)
    invariant = {
        v: (bin(out_rows[v]).count("1"), bin(in_rows[v]).count("1"), bin(out_rows[v] & in_rows[v]).count("1"))
        for v in range(n)
    }

    best: Optional[CanonicalKey] = None
    for coloring in _colorings(colors, out_rows, in_rows, convention):
        for first, second in _class_orders(coloring, convention):
            sizes = (len(first), len(second))
            cells = _cells(first, invariant) + _cells(second, invariant)
            for arrangement in product(*(permutations(cell) for cell in cells)):
                order = [v for cell in arrangement for v in cell]
                index = [0] * n
                for k, v in enumerate(order):
                    index[v] = k
                rows = []
                for v in order:
                    row = out_rows[v]
                    new = 0
                    for w in range(n):
                        if row >> w & 1:
                            new |= 1 << index[w]
                    rows.append(new)
                key = (sizes, tuple(rows))
                if best is None or key < best:
                    best = key
    if best is None:
        best = ((0, 0), ())
    return best


def out_rows_of(g: ColoredDigraph) -> List[int]:
    return [sum(1 << (w - 1) for w in g.out_neighbors(v)) for v in g.vertices]


def canonical_form(g: ColoredDigraph, convention: Optional[str] = None) -> CanonicalForm:
    """Certificate equal for two graphs iff they are isomorphic under the swap convention."""
    sizes, rows = canonical_key(g.colors, out_rows_of(g), convention)
    return CanonicalForm(sizes=sizes, rows=rows)


def form_from_key(key: CanonicalKey) -> CanonicalForm:
    return CanonicalForm(sizes=key[0], rows=key[1])


def are_isomorphic(g: ColoredDigraph, h: ColoredDigraph, convention: Optional[str] = None) -> bool:
    if g.n != h.n or g.edge_count != h.edge_count:
        return False
    return canonical_form(g, convention) == canonical_form(h, convention)


def canonical_graph(g: ColoredDigraph, convention: Optional[str] = None) -> ColoredDigraph:
    """The representative of g's class with class one on labels 1..sizes[0]."""
    return canonical_form(g, convention).to_graph()

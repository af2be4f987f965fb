"""
Tree Oracle Service
Rooted leaf-colored trees, their parenthesized text format, last common
ancestors, and the best match graph a tree explains.
"""

import re
from typing import Dict, List, Optional, Tuple

import sys
from pathlib import Path
sys.path.insert(0, str(Path(__file__).parent.parent))

from models import ColoredDigraph, RootedTree
from exceptions import GraphFormatError, PreconditionError
from services.random_source import LinearGenerator

LeafColoring = Dict[str, int]

PUNCTUATION = {"(", ")", ",", ";", ":"}
TOKEN_PATTERN = re.compile(r"\s*([(),;:]|[A-Za-z0-9_.\-]+)")


def _tokenize(text: str) -> List[str]:
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        match = TOKEN_PATTERN.match(text, pos)
        if not match:
            raise GraphFormatError(f"unexpected character {text[pos]!r} at offset {pos}")
        tokens.append(match.group(1))
        pos = match.end()
    return tokens


class _TreeParser:
    """Recursive descent over: tree := node ';'  node := leaf | '(' node (',' node)* ')' [name]  leaf := name ':' color"""

    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.children: Dict[str, Tuple[str, ...]] = {}
        self.coloring: LeafColoring = {}
        self.inner_count = 0

    def peek(self) -> Optional[str]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, expected: Optional[str] = None) -> str:
        token = self.peek()
        if token is None or (expected is not None and token != expected):
            raise GraphFormatError(f"expected {expected or 'a token'} at token {self.pos}, got {token!r}")
        self.pos += 1
        return token

    def _register(self, name: str, kids: Tuple[str, ...]) -> str:
        if name in self.children:
            raise GraphFormatError(f"node name '{name}' used twice")
        self.children[name] = kids
        return name

    def node(self) -> str:
        if self.peek() == "(":
            self.take("(")
            kids = [self.node()]
            while self.peek() == ",":
                self.take(",")
                kids.append(self.node())
            self.take(")")
            token = self.peek()
            if token is not None and token not in PUNCTUATION:
                name = self.take()
            else:
                self.inner_count += 1
                name = f"#{self.inner_count}"
            return self._register(name, tuple(kids))

        name = self.take()
        if name in PUNCTUATION:
            raise GraphFormatError(f"expected a leaf name, got {name!r}")
        self.take(":")
        color = self.take()
        if color not in ("0", "1"):
            raise GraphFormatError(f"leaf '{name}' needs color 0 or 1, got {color!r}")
        self.coloring[name] = int(color)
        return self._register(name, ())

    def parse(self) -> Tuple[RootedTree, LeafColoring]:
        root = self.node()
        self.take(";")
        if self.peek() is not None:
            raise GraphFormatError(f"trailing input after ';': {self.tokens[self.pos:]}")
        return RootedTree(root=root, children=self.children), self.coloring


def parse_tree(text: str) -> Tuple[RootedTree, LeafColoring]:
    """Parse '((x:0,y:1),z:1);' into a tree and its leaf coloring."""
    return _TreeParser(text).parse()


def format_tree(t: RootedTree, coloring: LeafColoring) -> str:
    def render(node: str) -> str:
        kids = t.children.get(node, ())
        if not kids:
            return f"{node}:{coloring[node]}"
        name = "" if node.startswith("#") else node
        return "(" + ",".join(render(child) for child in kids) + ")" + name

    return render(t.root) + ";"


def lca(t: RootedTree, x: str, y: str) -> str:
    """Deepest common ancestor of x and y; lca(x, x) = x."""
    for node in (x, y):
        if node not in t:
            raise PreconditionError(f"node '{node}' is not in the tree")
    while t.depth(x) > t.depth(y):
        x = t.parent(x)
    while t.depth(y) > t.depth(x):
        y = t.parent(y)
    while x != y:
        x, y = t.parent(x), t.parent(y)
    return x


def best_matches(t: RootedTree, coloring: LeafColoring, x: str) -> List[str]:
    """Opposite-colored leaves whose lca with x is deepest; ties are all kept."""
    candidates = [y for y in t.leaves if coloring[y] != coloring[x]]
    if not candidates:
        return []
    depth = {y: t.depth(lca(t, x, y)) for y in candidates}
    deepest = max(depth.values())
    return [y for y in candidates if depth[y] == deepest]


def best_match_graph(t: RootedTree, coloring: LeafColoring) -> ColoredDigraph:
    """Leaves in preorder become vertices 1..n; x -> y for every best match y of x."""
    leaves = t.leaves
    missing = [leaf for leaf in leaves if leaf not in coloring]
    if missing:
        raise PreconditionError(f"leaves without color: {missing}")
    if {coloring[leaf] for leaf in leaves} != {0, 1}:
        raise PreconditionError("leaf coloring must use both colors")

    index = {leaf: k + 1 for k, leaf in enumerate(leaves)}
    edges = [(index[x], index[y]) for x in leaves for y in best_matches(t, coloring, x)]
    colors = tuple(coloring[leaf] for leaf in leaves)
    return ColoredDigraph(n=len(leaves), colors=colors, edges=edges)


def random_colored_tree(num_leaves: int, seed: int) -> Tuple[RootedTree, LeafColoring]:
    """
    Grow a tree from a cherry: a random node either gains a new leaf child
    (inner node) or splits into an inner node with two leaves (leaf).
    Leaf colors are redrawn until both colors occur.
    """
    if num_leaves < 2:
        raise PreconditionError(f"a colored tree needs at least 2 leaves, got {num_leaves}")
    rng = LinearGenerator(seed)
    children: Dict[str, List[str]] = {"r": ["v1", "v2"], "v1": [], "v2": []}
    nodes = ["r", "v1", "v2"]
    leaf_count = 2
    counter = 2

    while leaf_count < num_leaves:
        node = rng.choice(nodes)
        if children[node]:
            counter += 1
            new = [f"v{counter}"]
        else:
            counter += 2
            new = [f"v{counter - 1}", f"v{counter}"]
        children[node].extend(new)
        for child in new:
            children[child] = []
            nodes.append(child)
        leaf_count += 1

    tree = RootedTree(root="r", children={k: tuple(v) for k, v in children.items()})
    leaves = tree.leaves
    while True:
        colors = rng.bits(len(leaves))
        if 0 in colors and 1 in colors:
            return tree, dict(zip(leaves, colors))

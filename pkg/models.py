"""
bmg_lab Data Models
Pydantic models for 2-colored digraphs, axiom reports, structural decompositions,
trees and enumeration results.
"""

from typing import Any, Dict, FrozenSet, List, Literal, Optional, Tuple
from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, field_validator, model_validator


Edge = Tuple[int, int]


class ColoredDigraph(BaseModel):
    """Loop-free bipartite digraph on the vertices 1..n with an explicit 2-coloring."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=0, description="Number of vertices, labelled 1..n")
    colors: Tuple[int, ...] = Field(..., description="Color (0 or 1) of vertex v stored at index v-1")
    edges: Tuple[Edge, ...] = Field(default=(), description="Edges (tail, head) in ascending order")

    _out: Dict[int, FrozenSet[int]] = PrivateAttr(default_factory=dict)
    _in: Dict[int, FrozenSet[int]] = PrivateAttr(default_factory=dict)
    _edge_set: FrozenSet[Edge] = PrivateAttr(default=frozenset())

    @model_validator(mode="before")
    @classmethod
    def normalize_edges(cls, data):
        """Sort edges and reject duplicates before field validation."""
        if isinstance(data, dict) and data.get("edges") is not None:
            edges = [tuple(edge) for edge in data["edges"]]
            seen = set()
            for edge in edges:
                if edge in seen:
                    raise ValueError(f"duplicate edge {list(edge)}")
                seen.add(edge)
            data = {**data, "edges": tuple(sorted(edges))}
        return data

    @field_validator("colors")
    @classmethod
    def colors_are_binary(cls, value: Tuple[int, ...]) -> Tuple[int, ...]:
        if any(c not in (0, 1) for c in value):
            raise ValueError("colors must be 0 or 1")
        return value

    @model_validator(mode="after")
    def check_structure(self) -> "ColoredDigraph":
        if len(self.colors) != self.n:
            raise ValueError(f"expected {self.n} colors, got {len(self.colors)}")
        for u, v in self.edges:
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise ValueError(f"edge [{u},{v}] uses a vertex outside 1..{self.n}")
            if u == v:
                raise ValueError(f"loop edge [{u},{v}]")
            if self.colors[u - 1] == self.colors[v - 1]:
                raise ValueError(f"edge [{u},{v}] joins two vertices of color {self.colors[u - 1]}")
        if self.n >= 2 and len(set(self.colors)) < 2:
            raise ValueError(f"both color classes must be non-empty when n >= 2, got colors {self.colors}")
        return self

    def model_post_init(self, __context) -> None:
        out: Dict[int, set] = {v: set() for v in range(1, self.n + 1)}
        inc: Dict[int, set] = {v: set() for v in range(1, self.n + 1)}
        for u, v in self.edges:
            out.setdefault(u, set()).add(v)
            inc.setdefault(v, set()).add(u)
        self._out = {v: frozenset(s) for v, s in out.items()}
        self._in = {v: frozenset(s) for v, s in inc.items()}
        self._edge_set = frozenset(self.edges)

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def _check_vertex(self, u: int) -> None:
        if not 1 <= u <= self.n:
            # local import keeps models free of a hard dependency cycle
            from exceptions import GraphInvariantError
            raise GraphInvariantError(f"vertex {u} out of range 1..{self.n}")

    def out_neighbors(self, u: int) -> FrozenSet[int]:
        """N(u): heads of all edges leaving u."""
        self._check_vertex(u)
        return self._out[u]

    def in_neighbors(self, u: int) -> FrozenSet[int]:
        """N^-(u): tails of all edges entering u."""
        self._check_vertex(u)
        return self._in[u]

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self._edge_set

    def color_of(self, u: int) -> int:
        self._check_vertex(u)
        return self.colors[u - 1]

    def color_classes(self) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        first = tuple(v for v in self.vertices if self.colors[v - 1] == 0)
        second = tuple(v for v in self.vertices if self.colors[v - 1] == 1)
        return first, second

    def with_edges(self, edges) -> "ColoredDigraph":
        """Same vertices and colors, different edge set."""
        return ColoredDigraph(n=self.n, colors=self.colors, edges=tuple(edges))


class EdgeList(BaseModel):
    """Edges in the order they were written, for notation round-trips."""
    n: int = Field(..., ge=0)
    edges: List[Edge] = Field(default_factory=list)


class AxiomWitness(BaseModel):
    """Concrete vertex tuple realizing an axiom violation."""
    model_config = ConfigDict(frozen=True)

    axiom: Literal["N1", "N2", "N3", "N4"]
    vertices: Tuple[int, ...] = Field(..., min_length=1, max_length=4)


class AxiomReport(BaseModel):
    """Verdicts for N1..N4; a missing witness means the axiom passes."""
    n1: Optional[AxiomWitness] = None
    n2: Optional[AxiomWitness] = None
    n3: Optional[AxiomWitness] = None
    sinks: List[int] = Field(default_factory=list)

    @property
    def n4_passes(self) -> bool:
        return not self.sinks

    @property
    def is_almost_2cbmg(self) -> bool:
        return self.n1 is None and self.n2 is None and self.n3 is None and len(self.sinks) <= 1

    @property
    def is_2cbmg(self) -> bool:
        return self.is_almost_2cbmg and not self.sinks

    def to_report(self) -> Dict:
        """JSON document of the `check` subcommand."""
        def verdict(witness: Optional[AxiomWitness]):
            return "pass" if witness is None else {"witness": list(witness.vertices)}

        return {
            "n1": verdict(self.n1),
            "n2": verdict(self.n2),
            "n3": verdict(self.n3),
            "n4": "pass" if not self.sinks else {"sinks": list(self.sinks)},
            "is_2cbmg": self.is_2cbmg,
            "is_almost_2cbmg": self.is_almost_2cbmg,
        }

    def summary(self) -> str:
        if self.is_2cbmg:
            return "2-cBMG"
        if self.is_almost_2cbmg:
            return f"almost 2-cBMG: sink at {self.sinks[0]}"
        failing = [w for w in (self.n1, self.n2, self.n3) if w is not None]
        parts = [f"{w.axiom} fails at {tuple(w.vertices)}" for w in failing]
        if self.sinks:
            parts.append(f"sinks {self.sinks}")
        return "not a 2-cBMG: " + "; ".join(parts)


class EquivalenceClasses(BaseModel):
    """Partition of the vertices by equal (out-neighbors, in-neighbors)."""
    classes: List[Tuple[int, ...]] = Field(default_factory=list)

    @property
    def representatives(self) -> List[int]:
        return [members[0] for members in self.classes]

    @property
    def all_singletons(self) -> bool:
        return all(len(members) == 1 for members in self.classes)


class QuotientGraph(BaseModel):
    """Graph on equivalence classes; vertex k stands for classes[k-1]."""
    graph: ColoredDigraph
    classes: List[Tuple[int, ...]]

    @property
    def representatives(self) -> List[int]:
        return [members[0] for members in self.classes]


class OrientedDigraph(BaseModel):
    """Symmetric-edge-free derivative of a graph together with the kept directions."""
    graph: ColoredDigraph
    kept: List[Edge] = Field(default_factory=list, description="Direction kept for each symmetric edge of the source")


class TopologicalOrder(BaseModel):
    order: Tuple[int, ...]

    def position(self, v: int) -> int:
        """1-based position of v in the order."""
        return self.order.index(v) + 1


class DirectedCycle(BaseModel):
    vertices: Tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.vertices)


class SymmetricComponent(BaseModel):
    vertices: Tuple[int, ...]
    sides: Tuple[Tuple[int, ...], Tuple[int, ...]]
    edges: List[Edge]
    complete_bipartite: bool


class SymmetricComponents(BaseModel):
    """The graph of symmetric edges among vertices lying on at least two of them."""
    vertices: Tuple[int, ...] = ()
    edges: List[Edge] = Field(default_factory=list)
    components: List[SymmetricComponent] = Field(default_factory=list)


class TerminalAnalysis(BaseModel):
    """Last vertex m of the order, its symmetric partner, and the vertices hanging on them."""
    m: int
    ell: int
    d_list: Tuple[int, ...] = ()
    d_kind: Optional[Literal["m", "ell"]] = None
    order: TopologicalOrder
    positions: Dict[int, int] = Field(default_factory=dict)


class TruncationStep(BaseModel):
    analysis: TerminalAnalysis
    removed: Tuple[int, ...]
    remainder: ColoredDigraph
    remainder_labels: Tuple[int, ...] = Field(..., description="Source label of remainder vertex k at index k-1")
    case: Literal["I", "II", "other"]


class Decomposition(BaseModel):
    blocks: List[Tuple[int, ...]] = Field(default_factory=list, description="Removed blocks in labels of the input graph")
    steps: List[TruncationStep] = Field(default_factory=list)
    outcome: Literal["complete", "failed"]
    failed_at: Optional[int] = None
    reason: Optional[str] = None
    detail: Optional[str] = None
    offending: Optional[ColoredDigraph] = None
    offending_labels: Tuple[int, ...] = ()


class FamilySpec(BaseModel):
    """Sizes (|U_i|, |W_i|) of the complete bipartite blocks of a family graph."""
    blocks: List[Tuple[int, int]]

    @field_validator("blocks")
    @classmethod
    def blocks_valid(cls, value: List[Tuple[int, int]]) -> List[Tuple[int, int]]:
        if not value:
            raise ValueError("family spec needs at least one block")
        for u_size, w_size in value:
            if u_size < 1 or w_size < 1:
                raise ValueError(f"block sizes must be positive, got ({u_size}, {w_size})")
        return value


class ParitySpec(BaseModel):
    """Either S for a parity graph, or (A, O) for an odd-even digraph."""
    S: Optional[List[int]] = None
    A: Optional[List[int]] = None
    O: Optional[List[int]] = None

    @model_validator(mode="after")
    def one_variant(self) -> "ParitySpec":
        if self.S is None and self.A is None:
            raise ValueError("parity spec needs either S or A and O")
        if self.A is not None and self.O is None:
            raise ValueError("odd-even spec needs O")
        return self


class RootedTree(BaseModel):
    """Rooted tree given by a parent map; children keep their insertion order."""
    root: str
    children: Dict[str, Tuple[str, ...]]

    _parent: Dict[str, Optional[str]] = PrivateAttr(default_factory=dict)
    _depth: Dict[str, int] = PrivateAttr(default_factory=dict)
    _preorder: List[str] = PrivateAttr(default_factory=list)

    @model_validator(mode="after")
    def check_tree(self) -> "RootedTree":
        if self.root not in self.children:
            raise ValueError(f"root '{self.root}' is not a node")
        parent: Dict[str, Optional[str]] = {self.root: None}
        stack = [self.root]
        while stack:
            node = stack.pop()
            for child in self.children.get(node, ()):
                if child in parent:
                    raise ValueError(f"node '{child}' reached twice; not a tree")
                if child not in self.children:
                    raise ValueError(f"child '{child}' is not a node")
                parent[child] = node
                stack.append(child)
        if len(parent) != len(self.children):
            missing = sorted(set(self.children) - set(parent))
            raise ValueError(f"nodes not reachable from the root: {missing}")
        return self

    def model_post_init(self, __context) -> None:
        parent: Dict[str, Optional[str]] = {self.root: None}
        depth = {self.root: 0}
        preorder = []
        stack = [self.root]
        while stack:
            node = stack.pop()
            preorder.append(node)
            kids = self.children.get(node, ())
            for child in kids:
                parent[child] = node
                depth[child] = depth[node] + 1
            stack.extend(reversed(kids))
        self._parent = parent
        self._depth = depth
        self._preorder = preorder

    @property
    def nodes(self) -> List[str]:
        return list(self._preorder)

    @property
    def leaves(self) -> List[str]:
        """Leaves in preorder."""
        return [node for node in self._preorder if not self.children.get(node)]

    def parent(self, node: str) -> Optional[str]:
        return self._parent[node]

    def depth(self, node: str) -> int:
        return self._depth[node]

    def __contains__(self, node: str) -> bool:
        return node in self._parent


class CanonicalForm(BaseModel):
    """Isomorphism certificate: class sizes and adjacency rows after canonical relabelling."""
    model_config = ConfigDict(frozen=True)

    sizes: Tuple[int, int]
    rows: Tuple[int, ...]

    @property
    def n(self) -> int:
        return sum(self.sizes)

    @property
    def bits(self) -> str:
        """Row-major adjacency bitstring; column c of row r is edge r+1 -> c+1."""
        return "".join("1" if row >> c & 1 else "0" for row in self.rows for c in range(self.n))

    @property
    def sort_key(self) -> Tuple:
        return self.sizes, self.rows

    def __lt__(self, other: "CanonicalForm") -> bool:
        return self.sort_key < other.sort_key

    def to_graph(self) -> ColoredDigraph:
        """Representative graph: the first sizes[0] vertices carry color 0."""
        colors = tuple([0] * self.sizes[0] + [1] * self.sizes[1])
        edges = [(r + 1, c + 1) for r, row in enumerate(self.rows) for c in range(self.n) if row >> c & 1]
        return ColoredDigraph(n=self.n, colors=colors, edges=edges)


FILTER_PRESETS = {
    "A": {},
    "B": {"require_connected": True},
    "C": {"require_no_equivalent": True},
    "D": {"require_sink_free": True},
    "E": {"require_connected": True, "require_no_equivalent": True, "require_sink_free": True},
    # extension listings: E without the connectivity requirement
    "X": {"require_no_equivalent": True, "require_sink_free": True},
}


class FilterSet(BaseModel):
    """Conjunction of graph properties used to select enumerated graphs."""
    model_config = ConfigDict(frozen=True)

    require_n1: bool = True
    require_n2: bool = True
    require_n3: bool = True
    require_connected: bool = False
    require_no_equivalent: bool = False
    require_sink_free: bool = False

    @classmethod
    def preset(cls, name: str) -> "FilterSet":
        key = name.strip().upper()
        if key not in FILTER_PRESETS:
            raise ValueError(f"unknown filter preset '{name}', expected one of {sorted(FILTER_PRESETS)}")
        return cls(**FILTER_PRESETS[key])

    @property
    def label(self) -> str:
        for name, flags in FILTER_PRESETS.items():
            if self == FilterSet(**flags):
                return name
        return "custom"


class ClassificationRow(BaseModel):
    """Counts of the five classification sets for class sizes i and n - i."""
    n: int = Field(..., ge=2)
    i: int = Field(..., ge=1)
    a: int = Field(..., ge=0)
    b: int = Field(..., ge=0)
    c: int = Field(..., ge=0)
    d: int = Field(..., ge=0)
    e: int = Field(..., ge=0)

    @model_validator(mode="after")
    def lattice_inequalities(self) -> "ClassificationRow":
        if max(self.b, self.c, self.d) > self.a or self.e > min(self.b, self.c, self.d):
            raise ValueError(f"counts {self.counts} violate B,C,D <= A and E <= min(B,C,D)")
        return self

    @property
    def counts(self) -> Tuple[int, int, int, int, int]:
        return self.a, self.b, self.c, self.d, self.e


class EnumerationResult(BaseModel):
    """Deduplicated classes found by an exhaustive or extension scan."""
    colors: Tuple[int, ...]
    filters: FilterSet
    certificates: List[CanonicalForm] = Field(default_factory=list)
    masks_scanned: int = 0

    @property
    def count(self) -> int:
        return len(self.certificates)


class ClassificationReport(BaseModel):
    """Outcome of a classification run: rows, E-set members per split and the quality verdict."""
    rows: List[ClassificationRow] = Field(default_factory=list)
    e_members: Dict[str, List[CanonicalForm]] = Field(default_factory=dict, description="Keyed 'n,i'")
    convention: str
    is_valid: bool = True
    validation: Dict[str, Any] = Field(default_factory=dict)
    files: Dict[str, str] = Field(default_factory=dict)


class ForbiddenOccurrence(BaseModel):
    """Embedding of one of the three forbidden bipartite patterns."""
    model_config = ConfigDict(frozen=True)

    pattern: Literal[1, 2, 3]
    x: Tuple[int, ...]
    y: Tuple[int, ...]

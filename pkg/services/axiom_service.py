"""
Axiom Checking Service
Decides N1..N4 with lexicographically smallest witnesses, the 2-cBMG and
almost-2-cBMG status, and matches the three forbidden bipartite patterns.
"""

from itertools import permutations
from typing import List, Optional

import sys
from pathlib import Path
sys.path.insert(0, str(Path(__file__).parent.parent))

from models import AxiomReport, AxiomWitness, ColoredDigraph, ForbiddenOccurrence
from services.graph_service import out_set, second_out


def check_n1(g: ColoredDigraph) -> Optional[AxiomWitness]:
    """
    Independent u, v must satisfy N(u) ∩ N(N(v)) = N(v) ∩ N(N(u)) = ∅.

    Returns None on pass, else (u, v, t, w) with u->t, v->w, t->w.
    """
    for u in g.vertices:
        for v in g.vertices:
            if u == v or g.has_edge(u, v) or g.has_edge(v, u):
                continue
            n_v = g.out_neighbors(v)
            for t in sorted(g.out_neighbors(u)):
                common = g.out_neighbors(t) & n_v
                if common:
                    return AxiomWitness(axiom="N1", vertices=(u, v, t, min(common)))
    return None


def check_n2(g: ColoredDigraph) -> Optional[AxiomWitness]:
    """Bi-transitivity: every path u1->v1->u2->v2 closes with u1->v2; witness (u1, v1, u2, v2)."""
    for u1 in g.vertices:
        n_u1 = g.out_neighbors(u1)
        for v1 in sorted(n_u1):
            for u2 in sorted(g.out_neighbors(v1)):
                missing = g.out_neighbors(u2) - n_u1
                if missing:
                    return AxiomWitness(axiom="N2", vertices=(u1, v1, u2, min(missing)))
    return None


def n2_set_form_holds(g: ColoredDigraph) -> bool:
    """N(N(N(u))) ⊆ N(u) for every u."""
    return all(out_set(g, second_out(g, u)) <= g.out_neighbors(u) for u in g.vertices)


def _n3_premise(g: ColoredDigraph, u: int, v: int) -> bool:
    return (u not in second_out(g, v)
            and v not in second_out(g, u)
            and bool(g.out_neighbors(u) & g.out_neighbors(v)))


def check_n3(g: ColoredDigraph) -> Optional[AxiomWitness]:
    """
    Vertices u < v with a common out-neighbor and no 2-path between them must have
    equal in-neighborhoods and nested out-neighborhoods; witness (u, v).
    """
    for u in g.vertices:
        for v in range(u + 1, g.n + 1):
            if not _n3_premise(g, u, v):
                continue
            n_u, n_v = g.out_neighbors(u), g.out_neighbors(v)
            nested = n_u <= n_v or n_v <= n_u
            if g.in_neighbors(u) != g.in_neighbors(v) or not nested:
                return AxiomWitness(axiom="N3", vertices=(u, v))
    return None


def check_n4(g: ColoredDigraph) -> List[int]:
    """Sinks: vertices without out-neighbors. Empty list means sink-free."""
    return [u for u in g.vertices if not g.out_neighbors(u)]


def check_2cbmg(g: ColoredDigraph) -> AxiomReport:
    return AxiomReport(n1=check_n1(g), n2=check_n2(g), n3=check_n3(g), sinks=check_n4(g))


def is_2cbmg(g: ColoredDigraph) -> bool:
    return not check_n4(g) and check_n2(g) is None and check_n1(g) is None and check_n3(g) is None


def is_almost_2cbmg(g: ColoredDigraph) -> bool:
    return len(check_n4(g)) <= 1 and check_n2(g) is None and check_n1(g) is None and check_n3(g) is None


def passes_n1_to_n3(g: ColoredDigraph) -> bool:
    return check_n2(g) is None and check_n1(g) is None and check_n3(g) is None


def replay_witness(g: ColoredDigraph, witness: AxiomWitness) -> bool:
    """True when the witness still demonstrates a violation in g."""
    vs = witness.vertices
    if any(not 1 <= v <= g.n for v in vs):
        return False

    if witness.axiom == "N1":
        u, v, t, w = vs
        independent = u != v and not g.has_edge(u, v) and not g.has_edge(v, u)
        return independent and g.has_edge(u, t) and g.has_edge(v, w) and g.has_edge(t, w)
    if witness.axiom == "N2":
        u1, v1, u2, v2 = vs
        return g.has_edge(u1, v1) and g.has_edge(v1, u2) and g.has_edge(u2, v2) and not g.has_edge(u1, v2)
    if witness.axiom == "N3":
        u, v = vs
        if u == v or not _n3_premise(g, u, v):
            return False
        n_u, n_v = g.out_neighbors(u), g.out_neighbors(v)
        return g.in_neighbors(u) != g.in_neighbors(v) or not (n_u <= n_v or n_v <= n_u)
    return all(not g.out_neighbors(v) for v in vs)


def sink_free_lemma_holds(g: ColoredDigraph) -> bool:
    """N(u) ∩ N(v) = ∅ implies N(N(u)) ∩ N(N(v)) = ∅, for distinct same-colored u, v."""
    for u in g.vertices:
        for v in range(u + 1, g.n + 1):
            if g.colors[u - 1] != g.colors[v - 1]:
                continue
            if not g.out_neighbors(u) & g.out_neighbors(v) and second_out(g, u) & second_out(g, v):
                return False
    return True


def containment_lemma_holds(g: ColoredDigraph) -> bool:
    """For v1 -> u2 -> v2 with v1, v2 same-colored: N(v2) ⊆ N(v1) and N^-(v1) ⊆ N^-(v2)."""
    for v1 in g.vertices:
        for u2 in g.out_neighbors(v1):
            for v2 in g.out_neighbors(u2):
                if not g.out_neighbors(v2) <= g.out_neighbors(v1):
                    return False
                if not g.in_neighbors(v1) <= g.in_neighbors(v2):
                    return False
    return True


def _pattern_matches(g: ColoredDigraph, present, absent, x, y) -> bool:
    label = {**{f"x{k + 1}": v for k, v in enumerate(x)}, **{f"y{k + 1}": v for k, v in enumerate(y)}}
    has = lambda pair: g.has_edge(label[pair[0]], label[pair[1]])
    return all(has(p) for p in present) and not any(has(p) for p in absent)


FORBIDDEN_PATTERNS = {
    1: {"x": 2, "y": 2, "present": [("x1", "y1"), ("y2", "x2"), ("y1", "x2")], "absent": [("x1", "y2")]},
    2: {"x": 2, "y": 2, "present": [("x1", "y1"), ("y1", "x2"), ("x2", "y2")], "absent": [("x1", "y2")]},
    3: {"x": 2, "y": 3, "present": [("x1", "y1"), ("x2", "y2"), ("x1", "y3"), ("x2", "y3")],
        "absent": [("x1", "y2"), ("x2", "y1")]},
}


def match_forbidden_subgraphs(g: ColoredDigraph) -> List[ForbiddenOccurrence]:
    """
    Every embedding of the three forbidden patterns.

    The x-vertices come from one color class and the y-vertices from the other,
    in either orientation of the classes.
    """
    first, second = g.color_classes()
    occurrences: List[ForbiddenOccurrence] = []
    for number, pattern in FORBIDDEN_PATTERNS.items():
        for x_class, y_class in ((first, second), (second, first)):
            for x in permutations(x_class, pattern["x"]):
                for y in permutations(y_class, pattern["y"]):
                    if _pattern_matches(g, pattern["present"], pattern["absent"], x, y):
                        occurrences.append(ForbiddenOccurrence(pattern=number, x=x, y=y))
    return occurrences

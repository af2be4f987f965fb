"""
Tree Oracle Tests
"""

import pytest

from exceptions import GraphFormatError, PreconditionError
from models import TopologicalOrder
from services.axiom_service import check_2cbmg
from services.canonical_service import are_isomorphic
from services.structure_service import consistent_underlying_oriented, topological_order
from services.tree_service import (
    best_match_graph,
    best_matches,
    format_tree,
    lca,
    parse_tree,
    random_colored_tree,
)


def test_parse_and_format():
    tree, coloring = parse_tree("(z:1,(x:0,y:1));")
    assert tree.leaves == ["z", "x", "y"]
    assert coloring == {"z": 1, "x": 0, "y": 1}
    assert format_tree(tree, coloring) == "(z:1,(x:0,y:1));"


def test_named_inner_nodes():
    tree, _ = parse_tree("((a:0,b:1)p,c:1)root;")
    assert tree.root == "root"
    assert lca(tree, "a", "b") == "p"
    assert lca(tree, "a", "c") == "root"
    assert lca(tree, "a", "a") == "a"


@pytest.mark.parametrize("text", ["(a:0,b:2);", "(a:0,b:1)", "(a:0,a:1);", "(a:0,b:1);x", "(a:0 b:1);"])
def test_malformed_trees(text):
    with pytest.raises(GraphFormatError):
        parse_tree(text)


def test_best_matches_take_deepest_lca():
    tree, coloring = parse_tree("(z:1,(x:0,y:1));")
    assert best_matches(tree, coloring, "x") == ["y"]
    assert best_matches(tree, coloring, "z") == ["x"]


def test_best_match_graph_of_small_trees(fixtures):
    tree, coloring = parse_tree("(z:1,(x:0,y:1));")
    g = best_match_graph(tree, coloring)
    assert g.edges == ((1, 2), (2, 3), (3, 2))
    assert g.colors == (1, 0, 1)
    assert are_isomorphic(g, fixtures.get_graph("gamma1_3"))

    star = best_match_graph(*parse_tree("(a:0,b:0,c:1);"))
    assert star == fixtures.get_graph("gamma2_3")


def test_single_color_leaves_rejected():
    with pytest.raises(PreconditionError):
        best_match_graph(*parse_tree("(a:0,b:0);"))


def test_lca_unknown_node():
    tree, _ = parse_tree("(a:0,b:1);")
    with pytest.raises(PreconditionError):
        lca(tree, "a", "q")


def test_random_trees_explain_2cbmgs():
    for seed in range(1000):
        leaves = 2 + seed % 11
        tree, coloring = random_colored_tree(leaves, seed)
        assert len(tree.leaves) == leaves
        assert set(coloring.values()) == {0, 1}
        g = best_match_graph(tree, coloring)
        assert check_2cbmg(g).is_2cbmg, format_tree(tree, coloring)
        assert isinstance(topological_order(consistent_underlying_oriented(g)), TopologicalOrder)


def test_random_tree_is_reproducible():
    assert random_colored_tree(6, 9) == random_colored_tree(6, 9)
    with pytest.raises(PreconditionError):
        random_colored_tree(1, 9)


if __name__ == "__main__":
    pytest.main([__file__])

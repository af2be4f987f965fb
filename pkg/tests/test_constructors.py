"""
Constructor Tests
"""

import pytest
from pydantic import ValidationError

from exceptions import PreconditionError
from models import FamilySpec, TopologicalOrder
from services.axiom_service import check_n2, is_2cbmg
from services.canonical_service import are_isomorphic
from services.constructor_service import (
    all_bitournaments,
    family_graph,
    is_bitournament,
    is_degree_balanced,
    join_disjoint,
    join_via_minimal,
    odd_even_graph,
    parity_graph,
    parity_isomorph,
    random_bitournament,
    random_family_spec,
)
from services.graph_service import disjoint_union, is_weakly_connected
from services.notation_service import parse_graph, serialize
from services.random_source import LinearGenerator
from services.structure_service import consistent_underlying_oriented, is_strongly_connected, topological_order
from services.truncation_service import decompose


def test_join_of_two_symmetric_edges(fixtures):
    """Neither part has a source, so the first component dominates."""
    g = fixtures.get_graph("gamma_2")
    joined = join_disjoint([g, g])
    assert serialize(joined) == "<4|[1,2],[1,4],[2,1],[2,3],[3,4],[4,3]>"
    assert is_2cbmg(joined)
    assert is_weakly_connected(joined)

    result = decompose(joined)
    assert result.outcome == "complete"
    assert result.blocks == [(3, 4), (1, 2)]


def test_join_through_a_later_source(fixtures):
    joined = join_disjoint([fixtures.get_graph("gamma_2"), fixtures.get_graph("gamma1_3")])
    assert serialize(joined) == "<5|[1,2],[2,1],[3,2],[3,5],[4,5],[5,4]>"
    assert is_2cbmg(joined)


def test_join_of_one_graph_is_the_graph(fixtures):
    g = fixtures.get_graph("gamma1_3")
    assert join_disjoint([g]) == g


def test_join_rejects_non_2cbmg_parts(fixtures):
    with pytest.raises(PreconditionError):
        join_disjoint([fixtures.get_graph("gamma_2"), parse_graph("<2|[1,2]>")])
    with pytest.raises(PreconditionError):
        join_disjoint([])


def test_join_via_minimal_requires_sources(fixtures):
    g = fixtures.get_graph("gamma1_3")
    assert join_via_minimal(g, [1]) == g
    assert join_via_minimal(g, []) == g
    with pytest.raises(PreconditionError):
        join_via_minimal(g, [3])


def test_join_via_minimal_on_union_without_sources(fixtures):
    """Vertices that are minimal only after orienting are not accepted."""
    union, _ = disjoint_union([fixtures.get_graph("gamma_2")] * 2)
    with pytest.raises(PreconditionError):
        join_via_minimal(union, [1])


def test_family_graph_two_blocks(fixtures):
    g = family_graph(FamilySpec(blocks=[(1, 1), (1, 1)]))
    gamma = fixtures.get_graph("gamma_2")
    assert g == join_disjoint([gamma, gamma])


def test_family_graphs_are_2cbmgs():
    rng = LinearGenerator(11)
    for _ in range(50):
        g = family_graph(random_family_spec(rng))
        assert is_2cbmg(g)
        assert is_weakly_connected(g)


def test_family_spec_validation():
    with pytest.raises(ValidationError):
        FamilySpec(blocks=[])
    with pytest.raises(ValidationError):
        FamilySpec(blocks=[(0, 2)])


def test_parity_graph():
    g = parity_graph([3, 1, 2])
    assert g.colors == (1, 0, 1)
    assert g.edges == ((1, 2), (2, 3))
    with pytest.raises(PreconditionError):
        parity_graph([])
    with pytest.raises(PreconditionError, match="both odd and even"):
        parity_graph([2, 4])


def test_odd_even_graph():
    g = odd_even_graph([0, 2, 4], [1, 3])
    assert g.colors == (0, 1, 0)
    assert g.edges == ((1, 2), (2, 3))
    with pytest.raises(PreconditionError):
        odd_even_graph([1], [1])
    with pytest.raises(PreconditionError):
        odd_even_graph([0], [2])
    with pytest.raises(PreconditionError, match="residues"):
        odd_even_graph([0, 4], [1])


def test_parity_isomorph_round_trip():
    g = parity_graph([1, 2, 4, 5])
    values = parity_isomorph(g)
    assert values is not None
    assert are_isomorphic(parity_graph(values), g)


def test_parity_isomorph_none_for_symmetric_graph(fixtures):
    assert parity_isomorph(fixtures.get_graph("gamma_2")) is None


def test_random_bitournament_is_reproducible():
    a = random_bitournament(2, 3, seed=5)
    assert a == random_bitournament(2, 3, seed=5)
    assert is_bitournament(a)
    assert a.edge_count == 6
    with pytest.raises(PreconditionError):
        random_bitournament(0, 3, seed=5)


def test_all_bitournaments():
    graphs = list(all_bitournaments(1, 2))
    assert len(graphs) == 4
    assert all(is_bitournament(g) for g in graphs)
    assert len({serialize(g) for g in graphs}) == 4


def test_strongly_connected_2cbmg_orients_to_a_bitournament(fixtures):
    g = fixtures.get_graph("gamma_2")
    assert is_strongly_connected(g)
    assert is_bitournament(consistent_underlying_oriented(g).graph)
    assert not is_strongly_connected(fixtures.get_graph("gamma1_3"))


def test_degree_balanced_bitournament():
    balanced = [g for g in all_bitournaments(2, 2) if is_degree_balanced(g)]
    assert balanced
    assert not is_bitournament(family_graph(FamilySpec(blocks=[(1, 1)])))


@pytest.mark.parametrize("a,b", [(1, 1), (1, 2), (1, 3), (2, 2), (2, 3), pytest.param(3, 3, marks=pytest.mark.slow)])
def test_bitournament_is_bi_transitive_iff_acyclic(a, b):
    for g in all_bitournaments(a, b):
        acyclic = isinstance(topological_order(g), TopologicalOrder)
        assert (check_n2(g) is None) == acyclic, g.edges
        if acyclic:
            values = parity_isomorph(g)
            assert values is not None, g.edges
            assert are_isomorphic(parity_graph(values), g)


@pytest.mark.slow
def test_degree_balanced_four_by_four_bitournaments_are_not_bi_transitive():
    balanced = [g for g in all_bitournaments(4, 4) if is_degree_balanced(g)]
    assert balanced
    assert all(check_n2(g) is not None for g in balanced)


if __name__ == "__main__":
    pytest.main([__file__])

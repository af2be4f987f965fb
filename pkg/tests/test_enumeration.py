"""
Enumeration Service Tests
"""

import numpy as np
import pytest
from pydantic import ValidationError

from exceptions import BudgetExceededError, PreconditionError
from models import ClassificationRow, FilterSet
from services.canonical_service import canonical_form
from services.enumeration_service import EnumerationService, MaskSpace, naive_scan, splits_for


def test_vectorized_scan_matches_graph_checkers():
    """The numpy scan and the per-graph axiom checkers find the same classes and flags."""
    service = EnumerationService(workers=1)
    for colors in [(0, 1), (0, 0, 1), (0, 0, 1, 1)]:
        assert service.scan(colors) == naive_scan(colors, FilterSet.preset("A"))


def test_uncolored_merge_matches_direct_certificates():
    """Merging colored classes afterwards equals keying every graph by plain digraph isomorphism."""
    service = EnumerationService(workers=1)
    for colors in [(0, 0, 1), (0, 0, 1, 1), (0, 1, 1, 1)]:
        merged = service.scan(colors, convention="uncolored")
        assert merged == naive_scan(colors, FilterSet.preset("A"), "uncolored")
        assert len(merged) <= len(service.scan(colors, convention="always"))


def test_worker_count_does_not_change_results():
    colors = (0, 0, 1, 1)
    single = EnumerationService(workers=1, chunk_bits=4).scan(colors)
    pooled = EnumerationService(workers=2, chunk_bits=4).scan(colors)
    assert list(single.items()) == list(pooled.items())


def test_smallest_row():
    row, members = EnumerationService(workers=1).classify(2, 1)
    assert row.counts == (3, 2, 2, 1, 1)
    assert members["E"][0].to_graph().edges == ((1, 2), (2, 1))


def test_smallest_row_without_color_swaps():
    row, _ = EnumerationService(workers=1, convention="never").classify(2, 1)
    assert row.a == 4


def test_four_vertex_row(fixtures):
    """Counted up to plain digraph isomorphism; colored counting splits one A class and one C class."""
    row, members = EnumerationService(workers=1).classify(4, 2)
    assert row.counts == (26, 14, 15, 5, 2)
    expected = {canonical_form(g, "uncolored") for g in fixtures.e_members(4, 2)}
    assert set(members["E"]) == expected


def test_classification_table_covers_every_split():
    rows = EnumerationService(workers=1).classification_table([2, 4])
    assert [(row.n, row.i) for row in rows] == [(2, 1), (4, 2)]
    assert rows[1].counts == (26, 14, 15, 5, 2)


def test_enumerate_class_prunes_to_filters():
    result = EnumerationService(workers=1).enumerate_class(2, 2, FilterSet.preset("E"))
    assert result.count == 2
    assert result.masks_scanned == 256
    assert result.filters.label == "E"


def test_extensions_of_a_triple(fixtures):
    result = EnumerationService(workers=1).enumerate_extensions(fixtures.get_graph("gamma1_3"), FilterSet.preset("A"))
    assert result.masks_scanned == 2
    assert set(result.certificates) == {
        canonical_form(fixtures.get_graph("gamma1_3")),
        canonical_form(fixtures.get_graph("gamma2_3")),
    }


def test_budget_guard():
    service = EnumerationService(workers=1, pair_budget=2)
    with pytest.raises(BudgetExceededError):
        service.enumerate_class(2, 2, FilterSet.preset("A"))
    assert service.enumerate_class(2, 2, FilterSet.preset("E"), force=True).count == 2
    with pytest.raises(PreconditionError):
        service.classify(3, 3)


def test_mask_space_positions():
    space = MaskSpace((0, 1, 1), [(1, 2)])
    assert space.size == 1 << 3
    assert space.graph_of(space.base_mask).edges == ((1, 2),)
    assert list(space.expand(np.arange(2))) == [space.base_mask, space.base_mask | 1 << 1]


def test_splits():
    assert splits_for(2) == [1]
    assert splits_for(3) == [1]
    assert splits_for(7) == [2, 3]
    with pytest.raises(PreconditionError):
        splits_for(1)


def test_filter_presets():
    assert FilterSet.preset("e") == FilterSet(require_connected=True, require_no_equivalent=True,
                                              require_sink_free=True)
    assert FilterSet.preset("X") == FilterSet(require_no_equivalent=True, require_sink_free=True)
    assert FilterSet.preset("X").label == "X"
    assert FilterSet(require_n1=False).label == "custom"
    with pytest.raises(ValueError):
        FilterSet.preset("Z")


def test_row_lattice_is_validated():
    with pytest.raises(ValidationError):
        ClassificationRow(n=4, i=2, a=1, b=2, c=0, d=0, e=0)


if __name__ == "__main__":
    pytest.main([__file__])

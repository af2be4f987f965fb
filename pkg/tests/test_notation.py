"""
Graph Notation Tests
"""

import json

import pytest

from exceptions import GraphFormatError, GraphInvariantError
from services.notation_service import (
    format_graph,
    from_json,
    load_graph,
    parse_colors,
    parse_edge_list,
    parse_graph,
    parse_graph_document,
    serialize,
    serialize_colors,
    serialize_edge_list,
    to_dot,
    to_json,
)

GAMMA1_3 = "<3|[1,3],[2,3],[3,2]>"


def test_parse_graph_with_sidecar():
    """Sidecar classes set the colors; edges come back sorted."""
    g = parse_graph("<3|[3,2],[1,3],[2,3]>", "colors: 1 2 | 3")
    assert g.n == 3
    assert g.colors == (0, 0, 1)
    assert g.edges == ((1, 3), (2, 3), (3, 2))


def test_parse_is_whitespace_insensitive():
    a = parse_graph(GAMMA1_3, "1 2 | 3")
    b = parse_graph("< 3 | [1, 3] ,\n [2,3], [3 ,2] >", "1 2 | 3")
    assert a == b


def test_edge_list_keeps_written_order():
    edge_list = parse_edge_list("<3|[3,2],[1,3]>")
    assert edge_list.edges == [(3, 2), (1, 3)]
    assert serialize_edge_list(edge_list) == "<3|[3,2],[1,3]>"


def test_colors_accept_per_vertex_and_class_pairs():
    by_vertex = parse_graph(GAMMA1_3, [0, 0, 1])
    by_classes = parse_graph(GAMMA1_3, ([1, 2], [3]))
    assert by_vertex == by_classes == parse_graph(GAMMA1_3, "1 2 | 3")


def test_colors_derived_from_edges():
    """Without a sidecar the smallest vertex of each component gets color 0."""
    g = parse_graph("<4|[1,2],[2,1],[4,3]>")
    assert g.colors == (0, 1, 0, 1)


@pytest.mark.parametrize("text", ["<2|[1,2]", "<2|[1,2],>", "2|[1,2]>", "<x|[1,2]>", "<2|[1;2]>"])
def test_malformed_text_rejected(text):
    with pytest.raises(GraphFormatError):
        parse_graph(text, "1 | 2")


@pytest.mark.parametrize("text,colors", [
    ("<2|[1,1]>", "1 | 2"),
    ("<2|[1,3]>", "1 | 2"),
    ("<2|[1,2],[1,2]>", "1 | 2"),
    ("<3|[1,2]>", "1 2 | 3"),
])
def test_structural_violations_rejected(text, colors):
    """Loops, out-of-range vertices, duplicates and same-color edges."""
    with pytest.raises(GraphInvariantError):
        parse_graph(text, colors)


def test_odd_cycle_cannot_be_colored():
    with pytest.raises(GraphInvariantError):
        parse_graph("<3|[1,2],[2,3],[3,1]>")


def test_monochromatic_graph_rejected():
    with pytest.raises(GraphInvariantError):
        parse_graph("<2|>")
    with pytest.raises(GraphInvariantError, match="both color classes"):
        parse_graph("<3|>", "1 2 3 | ")


@pytest.mark.parametrize("text, message", [
    ("<3|[1,2],[2,2]>", "loop"),
    ("<3|[1,2],[2,4],[4,1]>", "out of 1..3"),
    ("<3|[1,2],[1,2],[2,3],[3,1]>", "duplicate"),
])
def test_edge_errors_reported_before_coloring(text, message):
    """Without a sidecar the edge checks run before the 2-coloring is derived."""
    with pytest.raises(GraphInvariantError, match=message):
        parse_graph(text)


def test_sidecar_errors():
    with pytest.raises(GraphFormatError):
        parse_colors("colors: 1 2 3", 3)
    with pytest.raises(GraphFormatError):
        parse_colors("colors: 1 | 2", 3)
    with pytest.raises(GraphFormatError):
        parse_colors("colors: a | b", 2)


def test_text_round_trip():
    g = parse_graph(GAMMA1_3, "1 2 | 3")
    assert serialize(g) == GAMMA1_3
    assert serialize_colors(g) == "colors: 1 2 | 3"
    assert parse_graph(serialize(g), serialize_colors(g)) == g


def test_json_document():
    g = parse_graph(GAMMA1_3, "1 2 | 3")
    doc = to_json(g)
    assert doc == {"n": 3, "colors": [0, 0, 1], "edges": [[1, 3], [2, 3], [3, 2]]}
    assert from_json(json.dumps(doc)) == g


def test_json_errors():
    with pytest.raises(GraphFormatError):
        from_json("not json")
    with pytest.raises(GraphFormatError):
        from_json({"n": 2})
    with pytest.raises(GraphFormatError):
        from_json({"n": 2, "colors": [0], "edges": []})


def test_dot_draws_symmetric_edges_once():
    g = parse_graph(GAMMA1_3, "1 2 | 3")
    dot = to_dot(g)
    assert dot.splitlines() == [
        "digraph G {",
        "  1 [shape=circle];",
        "  2 [shape=circle];",
        "  3 [shape=box];",
        "  1 -> 3;",
        "  2 -> 3 [dir=both, style=bold];",
        "}",
    ]


def test_format_graph_text():
    g = parse_graph(GAMMA1_3, "1 2 | 3")
    assert format_graph(g, "text") == GAMMA1_3 + "\ncolors: 1 2 | 3\n"


def test_graph_document_with_comments():
    doc = "# first graph on three vertices\n<3|[1,3],\n[2,3],[3,2]>\ncolors: 1 2 | 3\n"
    assert parse_graph_document(doc) == parse_graph(GAMMA1_3, "1 2 | 3")


def test_load_graph_sources(tmp_path):
    """File paths, inline notation and fixture names all load."""
    path = tmp_path / "g.txt"
    path.write_text(GAMMA1_3 + "\ncolors: 1 2 | 3\n")
    expected = parse_graph(GAMMA1_3, "1 2 | 3")

    assert load_graph(str(path)) == expected
    assert load_graph(GAMMA1_3) == expected
    assert load_graph("fixture:gamma1_3") == expected


def test_load_graph_missing_file():
    with pytest.raises(GraphFormatError):
        load_graph("no/such/graph.txt")


def test_unknown_fixture():
    with pytest.raises(GraphFormatError):
        load_graph("fixture:no_such_graph")


if __name__ == "__main__":
    pytest.main([__file__])

"""
Export and Fixture Service Tests
"""

import json

import pytest

from exceptions import GraphFormatError
from config import PUBLISHED_E_LISTS
from models import ClassificationRow
from services.export_service import ExportService, classification_frame, graph_record, render_table
from services.fixture_service import FixtureService


def test_classification_frame():
    rows = [ClassificationRow(n=4, i=2, a=26, b=14, c=5, d=11, e=2)]
    frame = classification_frame(rows)
    assert list(frame.columns) == ["n", "i", "A", "B", "C", "D", "E"]
    assert frame.iloc[0].tolist() == [4, 2, 26, 14, 5, 11, 2]
    assert render_table([]) == "(no rows)\n"


def test_export_files(tmp_path, fixtures):
    service = ExportService(tmp_path)
    rows = [ClassificationRow(n=2, i=1, a=3, b=2, c=2, d=1, e=1)]
    files = service.export_classification(rows)
    assert json.loads(files["json"].read_text())["rows"][0]["a"] == 3
    assert files["csv"].read_text().splitlines()[0] == "n,i,A,B,C,D,E"

    paths = service.export_graphs("members", [fixtures.get_graph("gamma1_3")], prefix="member")
    assert [p.name for p in paths] == ["member_001.txt"]
    assert paths[0].read_text() == "<3|[1,3],[2,3],[3,2]>\ncolors: 1 2 | 3\n"


def test_graph_record(fixtures):
    record = graph_record(fixtures.get_graph("gamma_2"))
    assert record["text"] == "<2|[1,2],[2,1]>"
    assert record["classes"] == "colors: 1 | 2"
    assert record["colors"] == [0, 1]


def test_fixture_catalogue(fixtures):
    assert "delta_6" in fixtures.names()
    assert len(fixtures.e_members(4, 2)) == 2
    assert fixtures.e_members(9, 4) == []
    assert len(fixtures.extension_members("pi11")) == 7
    with pytest.raises(GraphFormatError):
        fixtures.extension_members("gamma_2")
    with pytest.raises(GraphFormatError):
        fixtures.entry("no_such_graph")


def test_fixture_file_errors(tmp_path):
    with pytest.raises(GraphFormatError):
        FixtureService(tmp_path / "missing.json").names()
    broken = tmp_path / "broken.json"
    broken.write_text("{")
    with pytest.raises(GraphFormatError):
        FixtureService(broken).names()


def test_fixture_duplicate_key_rejected(tmp_path):
    doubled = tmp_path / "doubled.json"
    doubled.write_text(
        '{"graphs": {"g": {"graph": "<2|[1,2],[2,1]>", "colors": "1 | 2"}, '
        '"g": {"graph": "<2|[1,2]>", "colors": "1 | 2"}}}'
    )
    with pytest.raises(GraphFormatError, match="duplicate fixture key 'g'"):
        FixtureService(doubled).names()


def test_published_lists_have_expected_orders(fixtures):
    assert {g.n for g in fixtures.extension_members("pi2_8")} == {8}
    assert {g.n for g in fixtures.extension_members("pi11")} == {7}
    for (n, i), names in PUBLISHED_E_LISTS.items():
        assert {g.n for g in fixtures.e_members(n, i)} == {n}, names


def test_equivalent_remainder_fixture_parses(fixtures):
    g = fixtures.get_graph("truncation_equivalent_remainder")
    assert g.color_classes() == ((1, 2, 4, 5, 6), (3, 7))


if __name__ == "__main__":
    pytest.main([__file__])

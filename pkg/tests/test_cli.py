"""
Command Line Tests
"""

import json

import pytest

from cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_check_reports_2cbmg(capsys):
    code, out = run(capsys, "check", "fixture:gamma10_full")
    assert code == 0
    doc = json.loads(out)
    assert doc["is_2cbmg"] is True
    assert doc["n1"] == "pass"
    assert doc["summary"] == "2-cBMG"


def test_check_failure_exit_code(capsys):
    code, out = run(capsys, "check", "<4|[1,3],[3,2],[2,4]>", "--format", "text")
    assert code == 1
    assert out.startswith("not a 2-cBMG: N2 fails at (1, 3, 2, 4)")


def test_check_with_sidecar(capsys):
    code, out = run(capsys, "check", "<4|[1,3],[3,2],[4,2]>", "--colors", "1 2 | 3 4")
    assert code == 1
    assert json.loads(out)["n1"] == {"witness": [1, 4, 3, 2]}


def test_parse_error_exit_code(capsys):
    code, _ = run(capsys, "check", "<2|[1,2]")
    assert code == 2
    code, _ = run(capsys, "check", "<3|[1,2],[2,3],[3,1]>")
    assert code == 2


def test_usage_error_exit_code(capsys):
    code, _ = run(capsys, "no-such-command")
    assert code == 2


def test_quotient(capsys):
    code, out = run(capsys, "quotient", "fixture:gamma2_3")
    assert code == 0
    doc = json.loads(out)
    assert doc["text"] == "<2|[1,2],[2,1]>"
    assert doc["classes"] == [[1, 2], [3]]


def test_orient_and_toposort(capsys):
    code, out = run(capsys, "orient", "fixture:gamma2_3")
    assert code == 0
    assert json.loads(out)["kept"] == [[1, 3], [2, 3]]

    code, out = run(capsys, "toposort", "<3|[1,3],[2,3]>", "--format", "text")
    assert code == 0
    assert out.strip() == "order: 1 2 3"


def test_toposort_cycle_exit_code(capsys):
    code, out = run(capsys, "toposort", "<4|[1,2],[2,3],[3,4],[4,1]>")
    assert code == 1
    assert json.loads(out) == {"cycle": [1, 2, 3, 4]}


def test_sigma(capsys):
    code, out = run(capsys, "sigma", "fixture:delta_6")
    assert code == 0
    doc = json.loads(out)
    assert doc["vertices"] == [3, 4, 5, 6]
    assert doc["all_complete_bipartite"] is True


def test_truncate(capsys):
    code, out = run(capsys, "truncate", "fixture:truncation_equivalent_remainder")
    assert code == 0
    doc = json.loads(out)
    assert (doc["m"], doc["ell"], doc["d"]) == (7, 6, [5])
    assert doc["case"] == "II"
    assert doc["remainder"] == "<4|[1,3],[2,3],[3,4],[4,3]>"


def test_truncate_precondition_exit_code(capsys):
    code, _ = run(capsys, "truncate", "fixture:gamma2_3")
    assert code == 1


def test_decompose_trace(capsys):
    code, out = run(capsys, "decompose", "fixture:truncation_almost_remainder")
    assert code == 0
    doc = json.loads(out)
    assert doc["outcome"] == "failed"
    assert doc["failed_at"] == 2
    assert doc["reason"] == "almost-2cbmg-remainder"
    assert doc["blocks"] == [[5, 6, 7], [3, 4]]
    assert doc["steps"][1]["m"] == 4
    assert doc["offending"] == "<2|[1,2]>"


def test_decompose_complete(capsys):
    code, out = run(capsys, "decompose", "fixture:pi11")
    assert code == 0
    doc = json.loads(out)
    assert doc["outcome"] == "complete"
    assert sorted(doc["blocks"]) == [[1, 2], [3, 4], [5, 6, 7]]


def test_classify_text_table(capsys, tmp_path):
    code, out = run(capsys, "classify", "--n", "4", "--workers", "1", "--format", "text", "--out", str(tmp_path))
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].split() == ["n", "i", "A", "B", "C", "D", "E"]
    assert lines[1].split() == ["4", "2", "26", "14", "15", "5", "2"]
    assert (tmp_path / "classification.csv").exists()


def test_enumerate_and_budget(capsys):
    code, out = run(capsys, "enumerate", "--i", "2", "--j", "2", "--filters", "E", "--workers", "1")
    assert code == 0
    doc = json.loads(out)
    assert doc["count"] == 2
    assert doc["filters"] == "E"

    code, _ = run(capsys, "enumerate", "--i", "4", "--j", "4", "--workers", "1")
    assert code == 2


def test_extend(capsys, tmp_path):
    code, out = run(capsys, "extend", "--base", "fixture:gamma1_3", "--filters", "A", "--workers", "1",
                    "--out", str(tmp_path))
    assert code == 0
    assert json.loads(out)["count"] == 2
    assert len(list((tmp_path / "extend_A").iterdir())) == 2


def test_extend_defaults_to_extension_preset(capsys):
    code, out = run(capsys, "extend", "--base", "fixture:gamma1_3", "--workers", "1")
    assert code == 0
    doc = json.loads(out)
    assert doc["filters"] == "X"
    assert doc["graphs"] == ["<3|[1,3],[2,3],[3,2]>"]


def test_format_choices_follow_the_command(capsys):
    code, out = run(capsys, "quotient", "fixture:gamma2_3", "--format", "dot")
    assert code == 0
    assert out.startswith("digraph G {")

    for argv in (("sigma", "fixture:delta_6", "--format", "text"),
                 ("decompose", "fixture:pi11", "--format", "dot"),
                 ("check", "fixture:gamma1_3", "--format", "dot")):
        code, out = run(capsys, *argv)
        assert code == 2
        assert out == ""


def test_construct_elementary(capsys):
    spec = json.dumps({"blocks": [[1, 2], [3, 4], [5, 6, 7]]})
    code, out = run(capsys, "construct", "elementary", "--spec", spec)
    assert code == 0
    assert json.loads(out)["text"] == "<7|[1,2],[2,1],[3,4],[4,3],[5,7],[6,7],[7,6]>"


def test_construct_join(capsys):
    code, out = run(capsys, "construct", "join", "fixture:gamma_2", "fixture:gamma_2", "--format", "text")
    assert code == 0
    assert out.splitlines()[0] == "<4|[1,2],[1,4],[2,1],[2,3],[3,4],[4,3]>"


def test_construct_spec_errors(capsys, tmp_path):
    code, _ = run(capsys, "construct", "parity", "--spec", "{not json")
    assert code == 2
    code, _ = run(capsys, "construct", "family", "--spec", json.dumps({"blocks": []}))
    assert code == 2

    spec_file = tmp_path / "spec.json"
    spec_file.write_text(json.dumps({"A": [0, 2, 4], "O": [1, 3]}))
    code, out = run(capsys, "construct", "oddeven", "--spec", f"@{spec_file}")
    assert code == 0
    assert json.loads(out)["edges"] == [[1, 2], [2, 3]]


def test_from_tree(capsys):
    code, out = run(capsys, "from-tree", "(z:1,(x:0,y:1));")
    assert code == 0
    doc = json.loads(out)
    assert doc["text"] == "<3|[1,2],[2,3],[3,2]>"
    assert doc["leaves"] == ["z", "x", "y"]


def test_canon_and_iso(capsys):
    code, out = run(capsys, "canon", "fixture:gamma_2")
    assert code == 0
    assert json.loads(out)["sizes"] == [1, 1]

    code, out = run(capsys, "iso", "fixture:gamma1_3", "<3|[1,2],[2,1],[3,2]>", "--format", "text")
    assert code == 0
    assert out.strip() == "isomorphic"


def test_iso_exit_code_independent_of_answer(capsys):
    code, out = run(capsys, "iso", "fixture:gamma1_3", "fixture:gamma2_3")
    assert code == 0
    assert json.loads(out) == {"isomorphic": False}


def test_export_dot(capsys, tmp_path):
    code, out = run(capsys, "export-dot", "fixture:gamma1_3", "--name", "T")
    assert code == 0
    assert out.startswith("digraph T {")

    target = tmp_path / "g.dot"
    code, _ = run(capsys, "export-dot", "fixture:gamma1_3", "--out", str(target))
    assert code == 0
    assert "2 -> 3 [dir=both, style=bold];" in target.read_text()


if __name__ == "__main__":
    pytest.main([__file__])

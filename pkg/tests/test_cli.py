import json
import shutil
from importlib import resources

import pytest

from ofz import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_main1_at_59(capsys):
    code, out, err = run(capsys, "verify", "--claim", "thm-main1", "--q", "59")
    assert code == 0 and err == ""
    doc = json.loads(out)
    assert doc["verdict"] == "confirmed" and 32 in doc["witnesses"]["beta"]


def test_verify_refuted_exits_1(capsys):
    code, out, _ = run(capsys, "verify", "--claim", "thm-main1", "--q", "11", "--format", "text")
    assert code == 1
    assert out.startswith("thm-main1 q=11: refuted")


def test_verify_beta_claim(capsys):
    code, out, _ = run(capsys, "verify", "--claim", "one-c4", "--q", "19", "--beta", "8")
    assert code == 0 and json.loads(out)["verdict"] == "confirmed"


@pytest.mark.parametrize("argv", [
    ["verify", "--claim", "one-c4", "--q", "19", "--beta", "4"],
    ["verify", "--claim", "thm-main1"],
    ["verify", "--claim", "thm-main1", "--q", "15"],
    ["verify", "--claim", "thm-main1", "--q", "59", "--beta", "32"],
    ["verify", "--claim", "bogus", "--q", "59"],
    ["verify", "--claim", "thm-main1,thm-main2", "--q", "59"],
    ["census", "--q", "19"],
    ["census", "--q", "19", "--beta", "8", "--k", "1"],
    ["scan", "--q-range", "60..11"],
    ["scan", "--q-range", "11..60", "--claim", "one-c4"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert out == "" and err.startswith("ofz ")


def test_bad_range_syntax_is_an_argparse_error(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["scan", "--q-range", "eleven"])
    assert exc.value.code == 2


def test_examples_reproduce(capsys):
    code, out, _ = run(capsys, "examples")
    doc = json.loads(out)
    assert code == 0 and doc["all_reproduced"]
    cycles = {e["name"]: e["computed"]["four_cycle_vertices"] for e in doc["examples"]}
    assert cycles == {"q19-quadratic-root": [[0, 4, 13, "inf"]], "q59-m-set": [[5, 31, 36, 42]]}


def test_examples_mismatch_exits_1(capsys, tmp_path, monkeypatch):
    src = resources.files("ofz.fixtures").joinpath(cli.FIXTURE_FILE)
    data = json.loads(src.read_text())
    data["examples"][1]["four_cycle_vertices"] = [5, 31, 36, 43]
    (tmp_path / cli.FIXTURE_FILE).write_text(json.dumps(data))
    monkeypatch.setenv("OFZ_SEED_DIR", str(tmp_path))
    code, out, _ = run(capsys, "examples", "--format", "text")
    assert code == 1
    assert out == "q19-quadratic-root: reproduced\nq59-m-set: MISMATCH\n"


def test_census_json_and_dot(capsys, tmp_path):
    code, out, _ = run(capsys, "census", "--q", "19", "--beta", "8", "--k", "4")
    doc = json.loads(out)
    assert code == 0 and doc["classification"]["l"] == 1
    assert doc["representative"]["pair"] == [0, 4]
    target = tmp_path / "u.dot"
    code, out, _ = run(capsys, "census", "--q", "19", "--beta", "8", "--format", "dot", "--out", str(target))
    assert code == 0 and out == ""
    dot = target.read_text()
    assert dot.startswith("graph q19_0_4 {") and dot.rstrip().endswith("}")


def test_census_cross_and_mullin_nemeth(capsys):
    code, out, _ = run(capsys, "census", "--q", "19", "--beta", "8", "--cross")
    assert json.loads(out)["cross"] is True
    code, out, _ = run(capsys, "census", "--q", "11", "--construction", "mullin-nemeth", "--format", "text")
    assert code == 0 and out.startswith("q=11 starters=['mullin_nemeth']")


def test_export(capsys):
    code, out, _ = run(capsys, "export", "--q", "7", "--construction", "mullin-nemeth")
    doc = json.loads(out)
    # oriented so x - y is a residue, sorted by that difference
    assert doc["starter"] == [[5, 4], [3, 1], [6, 2]]
    assert len(doc["factors"]) == 7


def test_scan_m_nonempty(capsys):
    code, out, _ = run(capsys, "scan", "--q-range", "11..60", "--claim", "lemma-m-nonempty", "--jobs", "1")
    doc = json.loads(out)
    assert doc["qs"] == [11, 59]
    assert doc["table"] == {"11": {"lemma-m-nonempty": "refuted"}, "59": {"lemma-m-nonempty": "confirmed"}}
    assert code == 1


def test_scan_sets():
    assert cli.scan_qs(11, 200) == [11, 59, 83, 107, 131, 179]
    assert cli.scan_qs(11, 45, include_mod3=True) == [11, 19, 31, 43]


def test_empty_scan(capsys):
    code, out, _ = run(capsys, "scan", "--q-range", "12..58")
    doc = json.loads(out)
    assert code == 0 and doc["qs"] == [] and doc["table"] == {}


def test_scan_is_independent_of_jobs():
    args = ((11, 90), ("lemma-m-nonempty", "thm-main1", "thm-main2"))
    assert cli.scan(*args, jobs=1) == cli.scan(*args, jobs=2)


def test_output_is_atomic(tmp_path):
    target = tmp_path / "report.json"
    cli.write_output("{}\n", str(target))
    assert target.read_text() == "{}\n"
    assert [p.name for p in tmp_path.iterdir()] == ["report.json"]


def test_module_entry_point():
    assert shutil.which("ofz") is not None

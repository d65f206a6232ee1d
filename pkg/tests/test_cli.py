import csv
import io
import json
from dataclasses import replace

import pytest

from confdesign import cli
from confdesign.cli import RunConfig, main, run_command


def test_kacdet_json():
    data = json.loads(run_command(["kacdet", "--degree", "4"]))
    assert data["command"] == "kacdet"
    assert data["columns"] == ["factor", "multiplicity"]
    assert sorted(r[0] for r in data["rows"]) == ["5*c + 22", "c"]


def test_diophant_csv_rows():
    text = run_command(["diophant", "--format", "csv"])
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == ["c", "dim_V2"]
    assert len(rows) == 38
    assert rows[-1] == ["1496", "54836"]


def test_markdown_output():
    text = run_command(["design-strength", "--format", "md", "--c", "24"])
    assert text.startswith("| c |")
    assert "| 24 | 11 |" in text


def test_trace_json_has_expression():
    data = json.loads(run_command(["trace", "--vector", "v4", "--target", "V2"]))
    assert data["meta"]["target"] == "V2"
    assert data["rows"]


def test_thread_count_does_not_change_output():
    one = run_command(["table1", "--threads", "1"])
    two = run_command(["table1", "--threads", "2"])
    assert one == two


def test_exit_codes(capsys):
    assert main(["kacdet", "--degree", "2"]) == 0
    assert main(["kacdet", "--no-such-flag"]) == 2
    assert main(["nonsense"]) == 2
    assert main(["kacdet", "--threads", "0"]) == 2
    # degenerate central charge for the vector space
    assert main(["hwvectors", "--degree", "4", "--c", "3", "--e=-22/5"]) == 1
    err = capsys.readouterr().err
    assert "hypothesis violated" in err


def test_help_exits_zero(capsys):
    assert main(["--help"]) == 0
    assert "COMMAND" in capsys.readouterr().out


def test_missing_gram_file(capsys, tmp_path):
    assert main(["lattice-design", "--gram", str(tmp_path / "x.gram")]) == 1
    assert "x.gram" in capsys.readouterr().err


def test_out_file(tmp_path):
    target = tmp_path / "sub" / "k.json"
    assert main(["kacdet", "--degree", "2", "--out", str(target)]) == 0
    assert json.loads(target.read_text())["rows"] == [["c", "1"]]


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"fmt": "csv", "out_dir": str(tmp_path / "out")}))
    assert main(["kacdet", "--degree", "2", "--config", str(cfg)]) == 0
    assert (tmp_path / "out" / "kacdet.csv").read_text().startswith("factor,multiplicity")
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"colour": 1}))
    assert main(["kacdet", "--config", str(bad)]) == 2
    assert main(["kacdet", "--config", str(tmp_path / "absent.json")]) == 1
    assert "absent.json" in capsys.readouterr().err


def test_scan_cache(tmp_path, monkeypatch):
    monkeypatch.setenv(cli.ENV_CACHE, str(tmp_path))
    first = run_command(["diophant"])
    assert list(tmp_path.glob("diophant-*.json"))
    assert run_command(["diophant"]) == first


def test_golden_roundtrip(tmp_path):
    cfg = RunConfig(golden_dir=str(tmp_path))
    assert cli.compare_golden(cfg)[0].endswith("missing golden file (create it with --bless)")
    written = cli.bless_golden(cfg)
    assert len(written) == len(cli.GOLDEN_RUNS)
    assert cli.compare_golden(cfg) == []
    path = tmp_path / "kacdet-8.json"
    path.write_text(path.read_text().replace("7*c + 68", "7*c + 69"))
    diffs = cli.compare_golden(cfg)
    assert len(diffs) == 1 and "+" in diffs[0] and "kacdet-8.json" in diffs[0]


def test_repository_golden_files_match():
    assert cli.compare_golden(RunConfig()) == []


def test_render_cells():
    t = cli.Table("x", ("a", "b"), meta={"k": 1})
    t.add(None, (1, 2))
    t.add(True, ())
    assert cli.render(t, "csv").splitlines()[1:] == ["-,1 2", "true,()"]
    with pytest.raises(ValueError):
        replace(RunConfig(), fmt="xml")


def test_outputs_match_schema():
    jsonschema = pytest.importorskip("jsonschema")
    from pathlib import Path

    root = Path(__file__).resolve().parents[1]
    schema = json.loads((root / "docs" / "schema.json").read_text())
    for path in sorted((root / "golden").glob("*.json")):
        jsonschema.validate(json.loads(path.read_text()), schema)

import json
import subprocess
import sys

import pytest

from conftest import FIXTURES
from melogeo.cli import main, read_config, thread_count
from melogeo.io import midi_to_segment, parse_json

JS = FIXTURES / "json"
MIDI = FIXTURES / "midi"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    return code, json.loads(out) if out.strip() else None, err


def test_scale_forty_fixture(capsys):
    code, out, _ = run_json(capsys, "scale", "--metric", "area", "-r", JS / "area_reference.json",
                            "-q", JS / "area_query.json", "--check")
    assert code == 0
    assert (out["best_epsilon"], out["best_cost"], out["check"]) == (1, 30, "ok")


def test_scale_text_and_profile(capsys, tmp_path):
    csv_path = tmp_path / "p.csv"
    code, out, _ = run(capsys, "scale", "--metric", "match", "-r", JS / "match_reference.json",
                       "-q", JS / "match_query.json", "--profile", csv_path, "--check")
    assert code == 0 and "best_cost: 2" in out and "check: ok" in out
    assert csv_path.read_text().startswith("eps_lo,eps_hi,value_at_lo,slope")


def test_measure_self_is_zero(capsys):
    code, out, _ = run(capsys, "measure", "--metric", "area", "-r", JS / "area_reference.json",
                       "-q", JS / "area_reference.json")
    assert code == 0 and "cost: 0" in out


def test_measure_with_epsilon(capsys):
    code, out, _ = run_json(capsys, "measure", "--metric", "area", "-r", JS / "area_reference.json",
                            "-q", JS / "area_query.json", "--epsilon", "1/2", "--check")
    assert code == 0 and out["cost"] == 35
    code, out, _ = run_json(capsys, "measure", "--metric", "match", "-r", JS / "match_reference.json",
                            "-q", JS / "match_query.json", "--epsilon", "1/2", "--check")
    assert code == 0 and out["cost"] == "11/4" and out["a_minus"] == [[1, 1]]


def test_compress_ten_notes(capsys, tmp_path):
    dest = tmp_path / "out.json"
    code, out, _ = run_json(capsys, "compress", "--metric", "match", "-k", 3,
                            "--input", JS / "ten_notes.json", "--check", "-o", dest)
    assert code == 0 and len(out["indices"]) == 3 and len(out["melody"]["notes"]) == 3
    assert parse_json(dest.read_bytes()).n == 3


def test_compress_area(capsys):
    code, out, _ = run_json(capsys, "compress", "--metric", "area", "-k", 2, "-i", JS / "valley.json", "--check")
    assert code == 0 and out["cost"] == 10 and out["melody"]["representation"] == "segment"


def test_query_dir_ranking(capsys, monkeypatch):
    monkeypatch.setenv("MELOGEO_THREADS", "3")
    code, out, _ = run_json(capsys, "scale", "--metric", "area", "-r", JS / "area_reference.json",
                            "--query-dir", JS / "queries", "--check")
    assert code == 0
    assert [row["query"] for row in out["ranking"]] == ["b_exact.json", "c_flat.json", "a_query.json"]
    assert [row["rank"] for row in out["ranking"]] == [1, 2, 3]
    assert out["errors"] == []


def test_query_dir_reports_bad_files(capsys, tmp_path):
    (tmp_path / "good.json").write_bytes((JS / "area_query.json").read_bytes())
    (tmp_path / "bad.json").write_text("{")
    code, out, _ = run_json(capsys, "scale", "--metric", "area", "-r", JS / "area_reference.json",
                            "--query-dir", tmp_path)
    assert code == 3 and [e["query"] for e in out["errors"]] == ["bad.json"]
    assert [row["query"] for row in out["ranking"]] == ["good.json"]


def test_convert(capsys, tmp_path):
    code, out, _ = run_json(capsys, "convert", "--from", "midi", "-i", MIDI / "rest.mid")
    assert code == 0 and out["melody"]["times"] == [0, 480, 960]
    code, out, _ = run_json(capsys, "convert", "--from", "midi", "--to", "point", "-i", MIDI / "rest.mid")
    assert out["melody"]["notes"] == [[240, 60], [720, 64]]
    dest = tmp_path / "m.json"
    code, _, _ = run(capsys, "convert", "-i", MIDI / "two_notes.mid", "-o", dest)
    assert code == 0 and parse_json(dest.read_bytes()) == midi_to_segment((MIDI / "two_notes.mid").read_bytes())


@pytest.mark.parametrize(
    "argv, code",
    [
        (["bogus"], 2),
        (["scale", "--metric", "area"], 2),
        (["scale", "--metric", "dtw", "-r", "x", "-q", "y"], 2),
        (["measure", "--metric", "area", "-r", "a", "-q", "b", "--epsilon", "one"], 2),
        (["scale", "--metric", "area", "-r", JS / "area_reference.json", "-q", JS / "area_query.json",
          "--eps-max", "1"], 2),
        (["scale", "--metric", "area", "-r", JS / "area_reference.json"], 2),
        (["convert", "-i", MIDI / "polyphony.mid"], 3),
        (["convert", "-i", MIDI / "not_midi.mid"], 3),
        (["measure", "--metric", "area", "-r", FIXTURES / "missing.json", "-q", JS / "area_query.json"], 3),
        (["compress", "--metric", "area", "-k", "9", "-i", JS / "valley.json"], 3),
        (["compress", "--metric", "area", "-k", "2", "-i", JS / "ten_notes.json"], 3),
        (["scale", "--metric", "area", "-r", JS / "area_query.json", "-q", JS / "area_reference.json"], 3),
    ],
)
def test_exit_codes(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


def test_oracle_mismatch_exits_4(capsys, monkeypatch):
    from melogeo import cli
    from melogeo.scaling.common import ScaleResult

    monkeypatch.setattr(cli.oracle, "oracle_min_area_scaling",
                        lambda r, q: ScaleResult(0, -1, 0, 0))
    code, _, err = run(capsys, "scale", "--metric", "area", "-r", JS / "area_reference.json",
                       "-q", JS / "area_query.json", "--check")
    assert code == 4 and "oracle mismatch" in err
    code, out, _ = run_json(capsys, "scale", "--metric", "area", "-r", JS / "area_reference.json",
                            "--query-dir", JS / "queries", "--check")
    assert code == 4 and {e["kind"] for e in out["errors"]} == {"mismatch"}


def test_config_defaults(capsys, tmp_path):
    cfg = tmp_path / "melogeo.toml"
    cfg.write_text(f'# defaults\n[scale]\nmetric = "area"\nreference = "{JS / "area_reference.json"}"\ncheck = true\n')
    assert read_config(cfg)["metric"] == "area"
    code, out, _ = run_json(capsys, "--config", cfg, "scale", "-q", JS / "area_query.json")
    assert code == 0 and out["best_cost"] == 30 and out["check"] == "ok"
    bad = tmp_path / "bad.toml"
    bad.write_text("metric\n")
    assert run(capsys, "--config", bad, "scale", "-q", "x")[0] == 2


def test_thread_env(monkeypatch):
    monkeypatch.setenv("MELOGEO_THREADS", "2")
    assert thread_count() == 2
    monkeypatch.setenv("MELOGEO_THREADS", "0")
    with pytest.raises(Exception):
        thread_count()


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "melogeo", "scale", "--metric", "area", "-r", str(JS / "area_reference.json"),
         "-q", str(JS / "area_query.json"), "--json"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["best_cost"] == 30


def test_warnings_are_reported_cleanly(capsys):
    code, _, err = run(capsys, "measure", "--metric", "match", "-r", JS / "match_reference.json",
                       "-q", JS / "match_query.json")
    assert code == 0 and err.startswith("melogeo: warning: consecutive notes 1 and 2")

import json
import re

import numpy as np
import pytest

from reca.cli import main
from reca.render import grid_to_ascii, grid_to_pgm


def write_config(path, **kwargs):
    path.write_text(json.dumps(kwargs))
    return str(path)


def strip_comments(text):
    return [line for line in text.splitlines() if line and not line.startswith("#")]


def test_run_success_exit_code(tmp_path, capsys):
    cfg = write_config(tmp_path / "cfg.json", rule=90, iterations=8, mappings=8,
                       diffuse=40, distractor=20, seed=1)
    assert main(["run", "--config", cfg]) == 0
    out = capsys.readouterr().out
    assert "success=True" in out


def test_run_failure_exit_code(tmp_path, capsys):
    cfg = write_config(tmp_path / "cfg.json", rule=0, iterations=2, mappings=2,
                       distractor=20)
    assert main(["run", "--config", cfg]) == 1
    assert "success=False" in capsys.readouterr().out


def test_run_missing_config_is_usage_error(capsys):
    assert main(["run", "--config", "/nonexistent/cfg.json"]) == 2
    assert "not found" in capsys.readouterr().err


def test_run_malformed_config(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    assert main(["run", "--config", str(path)]) == 2


def test_run_requires_a_rule(capsys):
    assert main(["run"]) == 2


def test_flags_override_config_file(tmp_path, capsys):
    cfg = write_config(tmp_path / "cfg.json", rule=0, iterations=2, mappings=2,
                       distractor=20)
    # override the dead rule with rule 90 at (8,8): should now succeed
    assert main(["run", "--config", cfg, "--rule", "90", "--iterations", "8",
                 "--mappings", "8"]) == 0


def test_sweep_writes_csv_with_metadata(tmp_path, capsys):
    out = tmp_path / "table.csv"
    assert main(["sweep", "--rule", "90", "--iterations", "4", "--mappings", "4",
                 "--distractor", "20", "--runs", "2", "--seed", "3",
                 "--out", str(out), "--no-timestamp", "--workers", "1"]) == 0
    text = out.read_text()
    assert "# ld=40" in text and "# td=20" in text
    assert "# runs=2" in text and "# seed=3" in text
    assert "timestamp" not in text
    rows = strip_comments(text)
    assert rows[0] == 'rule,"(4,4)"'
    rule, value = rows[1].split(",")
    assert rule == "90"
    assert float(value) in {0.0, 50.0, 100.0}


def test_sweep_is_deterministic_without_timestamp(tmp_path):
    args = ["sweep", "--rule", "150", "--iterations", "2", "--mappings", "4",
            "--distractor", "20", "--runs", "3", "--seed", "11",
            "--no-timestamp", "--workers", "1"]
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    assert main(args + ["--out", str(a)]) == 0
    assert main(args + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_sweep_timestamp_line_present_by_default(tmp_path):
    out = tmp_path / "t.csv"
    assert main(["sweep", "--rule", "90", "--iterations", "2", "--mappings", "2",
                 "--distractor", "20", "--runs", "1", "--out", str(out),
                 "--workers", "1"]) == 0
    assert re.search(r"^# timestamp=", out.read_text(), re.MULTILINE)


def test_layered_sweep_emits_two_tables(tmp_path):
    out = tmp_path / "deep.csv"
    assert main(["sweep", "--rule", "90", "--iterations", "2", "--mappings", "2",
                 "--distractor", "20", "--runs", "1", "--layered",
                 "--out", str(out), "--no-timestamp", "--workers", "1"]) == 0
    text = out.read_text()
    assert "# layer=1" in text and "# layer=2" in text
    assert len([l for l in text.splitlines() if l.startswith("rule,")]) == 2


def test_sweep_config_file_grid(tmp_path):
    out = tmp_path / "grid.csv"
    cfg = write_config(tmp_path / "sweep.json", rules=[90, 150],
                       combos=[[2, 2], [2, 4]], runs=1, distractor=20,
                       seed=5, out=str(out))
    assert main(["sweep", "--config", cfg, "--no-timestamp", "--workers", "1"]) == 0
    rows = strip_comments(out.read_text())
    assert rows[0] == 'rule,"(2,2)","(2,4)"'
    assert [r.split(",")[0] for r in rows[1:]] == ["90", "150"]


def test_render_outputs_pgm_and_ascii(tmp_path, capsys):
    base = tmp_path / "st"
    assert main(["render", "--rule", "90", "--iterations", "8", "--mappings", "8",
                 "--distractor", "20", "--seed", "1", "--out", str(base)]) == 0
    pgm = (tmp_path / "st_layer1.pgm").read_bytes()
    assert pgm.startswith(b"P5\n320 240\n255\n")
    assert len(pgm) == len(b"P5\n320 240\n255\n") + 320 * 240
    txt = (tmp_path / "st_layer1.txt").read_text().splitlines()
    assert len(txt) == 240 and set("".join(txt)) <= {"#", "."}


def test_render_layered_emits_band_per_layer(tmp_path):
    base = tmp_path / "deep"
    assert main(["render", "--rule", "90", "--iterations", "2", "--mappings", "2",
                 "--distractor", "20", "--layered", "--out", str(base)]) == 0
    assert (tmp_path / "deep_layer1.pgm").exists()
    assert (tmp_path / "deep_layer2.pgm").exists()


def test_render_rule_0_is_all_white(tmp_path):
    base = tmp_path / "blank"
    assert main(["render", "--rule", "0", "--iterations", "2", "--mappings", "2",
                 "--distractor", "20", "--out", str(base)]) == 0
    pgm = (tmp_path / "blank_layer1.pgm").read_bytes()
    body = pgm.split(b"\n", 3)[3]
    assert set(body) == {255}


def test_render_matches_record_space_time(tmp_path):
    from reca.memory_task import all_patterns
    from reca.pipeline import build_config
    from reca.reservoir import make_mappings, record_space_time

    base = tmp_path / "check"
    assert main(["render", "--rule", "110", "--iterations", "3", "--mappings", "2",
                 "--diffuse", "10", "--distractor", "20", "--seed", "4",
                 "--out", str(base)]) == 0
    config = build_config(rule=110, iterations=3, mappings=2, diffuse=10,
                          distractor=20, seed=4)
    grid = record_space_time(all_patterns(20)[0].inputs, config.layer1,
                             make_mappings(config.layer1))
    assert (tmp_path / "check_layer1.pgm").read_bytes() == grid_to_pgm(grid)
    assert (tmp_path / "check_layer1.txt").read_text() == grid_to_ascii(grid) + "\n"


def test_rule_info_output(capsys):
    assert main(["rule-info", "110"]) == 0
    out = capsys.readouterr().out
    assert "lambda: 0.625" in out
    assert out.count("->") == 8


def test_rule_info_equivalents(capsys):
    assert main(["rule-info", "102"]) == 0
    out = capsys.readouterr().out
    assert "mirror equivalent: 60" in out
    assert "complement equivalent: 153" in out
    assert "mirror+complement equivalent: 195" in out


def test_rule_info_self_mirror(capsys):
    assert main(["rule-info", "204"]) == 0
    assert "mirror equivalent: 204" in capsys.readouterr().out


def test_rule_info_rejects_out_of_range(capsys):
    assert main(["rule-info", "300"]) == 2


def test_pgm_encodes_live_as_black():
    grid = np.array([[1, 0], [0, 1]], dtype=np.uint8)
    body = grid_to_pgm(grid).split(b"\n", 3)[3]
    assert list(body) == [0, 255, 255, 0]

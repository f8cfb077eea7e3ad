import csv
import io
import json
import subprocess
import sys

import pytest

from fdl.cli import DEFAULTS, build_parser, resolve_config, run
from fdl.report import (
    Report,
    density_report,
    density_from_json,
    solutions_from_json,
    solutions_report,
)
from fdl.modular import no_root_density
from fdl.search import brute_force_search


def _run(capsys, argv):
    code = run(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# -- report rendering and round trips -----------------------------------------


def test_solutions_json_round_trip():
    sols = brute_force_search(30)
    text = solutions_report(sols).render("json")
    assert solutions_from_json(text) == sols


def test_density_json_round_trip():
    reps = [no_root_density(2, 100), no_root_density(3, 100)]
    text = density_report(reps).render("json")
    assert density_from_json(text) == reps


def test_report_csv_and_table_rendering():
    rep = Report(
        kind="t",
        columns=["a", "flag", "xs"],
        rows=[{"a": 1, "flag": True, "xs": [3, 5]}],
    )
    assert rep.render("csv") == "a,flag,xs\n1,true,3|5\n"
    table = rep.render("table")
    assert table.splitlines()[0].split() == ["a", "flag", "xs"]
    with pytest.raises(ValueError):
        rep.render("yaml")


# -- subcommands ---------------------------------------------------------------


def test_cli_search_json(capsys):
    code, out, _ = _run(capsys, ["search", "--c-max", "30", "--format", "json"])
    assert code == 0
    triples = {(r["a"], r["b"], r["c"]) for r in json.loads(out)}
    assert triples == {(3, 5, 6), (6, 7, 10), (4, 23, 24)}


def test_cli_locate(capsys):
    code, out, _ = _run(
        capsys,
        ["locate", "--a-max", "8", "--k-max", "5", "--format", "json"],
    )
    assert code == 0
    hits = json.loads(out)
    assert {"a": 6, "k": 3, "c": 10, "valid_solution": True} in hits


def test_cli_screen_json(capsys):
    code, out, _ = _run(
        capsys, ["screen", "--k", "2", "--prime-max", "7", "--format", "json"]
    )
    assert code == 0
    by_p = {r["p"]: r for r in json.loads(out)}
    assert by_p[5]["verdict"] == "impossible"
    assert by_p[7]["verdict"] == "possible" and by_p[7]["roots"] == [3, 5]


def test_cli_density_csv(capsys):
    code, out, _ = _run(
        capsys,
        ["density", "--k", "2", "--k", "3", "--prime-max", "100", "--format", "csv"],
    )
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert rows[0]["k"] == "2" and rows[0]["fraction_num"] == "1"
    assert rows[0]["fraction_den"] == "2"
    assert rows[1]["k"] == "3"


def test_cli_count_bound(capsys):
    code, out, _ = _run(
        capsys,
        ["count-bound", "--p", "7", "--k", "2", "--n", "100", "--format", "json"],
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["actual"] == 28 and payload["roots"] == [3, 5]


def test_cli_irred_and_scan(capsys):
    code, out, _ = _run(
        capsys, ["irred", "--k-min", "2", "--k-max", "5", "--format", "json"]
    )
    assert code == 0
    by_k = {r["k"]: r["status"] for r in json.loads(out)}
    assert by_k == {2: "irreducible", 3: "irreducible", 4: "reducible", 5: "irreducible"}

    code, out, _ = _run(
        capsys,
        ["scan-exceptions", "--a-max", "10", "--k-max", "3", "--format", "json"],
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["reducible"] == [[3, 6]] and payload["unknown"] == []

    code, out2, _ = _run(
        capsys,
        ["irred", "--scan", "--a-max", "10", "--k-max", "3", "--format", "json"],
    )
    assert code == 0 and out2 == out


def test_cli_verify_bounds_quick(capsys):
    code, out, _ = _run(capsys, ["verify-bounds", "--quick", "--format", "json"])
    assert code == 0
    payload = json.loads(out)
    assert payload["passed"] is True and payload["min_margin"] > 0


def test_cli_equidist_generate_and_reuse(capsys, tmp_path):
    samples_path = tmp_path / "s.jsonl"
    code, out, _ = _run(
        capsys,
        [
            "equidist", "generate", "--a-max", "20", "--k-max", "3",
            "--out-samples", str(samples_path), "--format", "json",
        ],
    )
    assert code == 0
    assert json.loads(out) == {"a_max": 20, "k_max": 3, "size": 38, "precision_bits": 96}

    code, out, _ = _run(
        capsys,
        [
            "equidist", "count", "--samples", str(samples_path),
            "--interval", "0:1", "--format", "json",
        ],
    )
    assert code == 0
    assert json.loads(out)["count"] == 38

    code, out, _ = _run(
        capsys,
        ["equidist", "discrepancy", "--samples", str(samples_path), "--format", "json"],
    )
    assert code == 0
    payload = json.loads(out)
    assert 0 < payload["dstar_num"] / payload["dstar_den"] <= 1

    code, out, _ = _run(
        capsys,
        [
            "equidist", "hits", "--samples", str(samples_path),
            "--c-floor", "100", "--format", "json",
        ],
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["odd_total"] + payload["even_total"] == 38


def test_cli_equidist_conjecture(capsys):
    code, out, _ = _run(
        capsys,
        [
            "equidist", "conjecture", "--a-max", "100",
            "--interval", "0:1", "--interval", "0:1/2", "--format", "json",
        ],
    )
    assert code == 0
    rows = json.loads(out)
    assert rows[0]["count"] == 594 and rows[0]["deviation_num"] == 0
    assert rows[1]["count"] == 315 and rows[1]["deviation_num"] == 18


def test_cli_sample_cache(capsys, tmp_path):
    argv = [
        "equidist", "generate", "--a-max", "15", "--k-max", "3",
        "--cache-dir", str(tmp_path), "--format", "json",
    ]
    code, out1, _ = _run(capsys, argv)
    assert code == 0
    cached = list(tmp_path.glob("samples-*.jsonl"))
    assert len(cached) == 1
    code, out2, _ = _run(capsys, argv)  # second run loads the cache file
    assert code == 0 and out2 == out1


def test_cli_out_file(capsys, tmp_path):
    out_path = tmp_path / "sols.json"
    code, out, _ = _run(
        capsys,
        ["search", "--c-max", "30", "--format", "json", "--out", str(out_path)],
    )
    assert code == 0 and out == ""
    assert len(json.loads(out_path.read_text())) == 3


def test_cli_error_exit_codes(capsys):
    assert _run(capsys, [])[0] == 2  # a subcommand is required
    assert _run(capsys, ["search"])[0] == 2  # missing --c-max
    assert _run(capsys, ["search", "--c-max", "30", "--format", "yaml"])[0] == 2
    assert _run(capsys, ["no-such-command"])[0] == 2
    code, _, err = _run(capsys, ["search", "--c-max", "1"])  # domain error
    assert code == 2 and "error:" in err
    code, _, err = _run(capsys, ["equidist", "count", "--a-max", "10"])
    assert code == 2 and "interval" in err
    code, _, err = _run(
        capsys, ["equidist", "count", "--a-max", "10", "--interval", "1:2"]
    )
    assert code == 2
    # unwritable output path -> I/O error
    code, _, err = _run(
        capsys,
        ["search", "--c-max", "10", "--out", "/no/such/dir/x.json"],
    )
    assert code == 1 and "i/o error" in err


# -- configuration precedence --------------------------------------------------


def test_config_defaults():
    args = build_parser().parse_args(["search", "--c-max", "10"])
    cfg = resolve_config(args)
    assert cfg.precision_bits == DEFAULTS["precision_bits"] == 96
    assert cfg.output_format == "table" and cfg.threads == 0


def test_config_file_then_env_then_flag(tmp_path, monkeypatch):
    config = tmp_path / "cfg.json"
    config.write_text(json.dumps({"precision_bits": 128, "threads": 2}))
    base = ["search", "--c-max", "10", "--config", str(config)]

    args = build_parser().parse_args(base)
    assert resolve_config(args).precision_bits == 128

    monkeypatch.setenv("FDL_PRECISION_BITS", "160")
    assert resolve_config(build_parser().parse_args(base)).precision_bits == 160

    args = build_parser().parse_args(base + ["--precision-bits", "192"])
    cfg = resolve_config(args)
    assert cfg.precision_bits == 192 and cfg.threads == 2


def test_config_rejects_unknown_keys_and_bad_values(tmp_path, capsys):
    config = tmp_path / "cfg.json"
    config.write_text(json.dumps({"presicion_bits": 128}))
    code, _, err = _run(
        capsys, ["search", "--c-max", "10", "--config", str(config)]
    )
    assert code == 2 and "unknown config keys" in err
    code, _, err = _run(capsys, ["search", "--c-max", "10", "--precision-bits", "8"])
    assert code == 2 and "precision_bits" in err


def test_cache_dir_env(monkeypatch, tmp_path):
    monkeypatch.setenv("FDL_CACHE_DIR", str(tmp_path))
    args = build_parser().parse_args(["search", "--c-max", "10"])
    assert resolve_config(args).cache_dir == str(tmp_path)


# -- process-level checks -------------------------------------------------------


def test_console_entrypoint_subprocess():
    proc = subprocess.run(
        [sys.executable, "-m", "fdl.cli", "search", "--c-max", "30", "--format", "json"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert len(json.loads(proc.stdout)) == 3


def test_backend_env_var_is_validated():
    ok = subprocess.run(
        [sys.executable, "-c", "import fdl; print(fdl.modular.no_root_density(2, 50).no_root_count)"],
        capture_output=True,
        text=True,
        env={"PATH": "/usr/bin:/bin", "FDL_BACKEND": "numpy"},
    )
    assert ok.returncode == 0 and ok.stdout.strip() == "7"
    bad = subprocess.run(
        [sys.executable, "-c", "import fdl"],
        capture_output=True,
        text=True,
        env={"PATH": "/usr/bin:/bin", "FDL_BACKEND": "bogus"},
    )
    assert bad.returncode != 0 and "FDL_BACKEND" in bad.stderr

"""Test the command-line interface end to end."""
import json
import sys
from pathlib import Path

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.main import (
    EXIT_INCOMPLETE,
    EXIT_OK,
    EXIT_USAGE,
    EXIT_VERIFY_FAILED,
    load_run_config,
    main,
)


def test_run_config_layering(tmp_path):
    """Test defaults < config file < explicit flags."""
    cfg_file = tmp_path / "run.yaml"
    cfg_file.write_text("max-depth: 10\nlattice: 3\n", encoding="utf-8")

    run = load_run_config(["search", "--config", str(cfg_file), "--lattice", "2", "--out", "x.json"])
    assert run.max_depth == 10
    assert run.lattice == 2
    out = run.for_output()
    assert out == {"command": "search", "lattice": 2, "max_depth": 10}


def test_search_writes_results_and_trace(tmp_path):
    """Test search output files on the integer lattice."""
    out = tmp_path / "m1.json"
    trace = tmp_path / "m1.jsonl"
    code = main(["search", "--lattice", "1", "--out", str(out), "--trace", str(trace)])
    assert code == EXIT_OK

    text = out.read_text(encoding="utf-8")
    assert text.endswith("}\n")
    data = json.loads(text)
    assert data["complete"] is True
    assert data["candidate_count"] == 9
    assert "jobs" not in data["config"]
    assert "out" not in data["config"]
    assert data["search"]["lattice"] == 1

    lines = trace.read_text(encoding="utf-8").splitlines()
    assert lines
    first = json.loads(lines[0])
    assert {"prefix", "phase", "verdict"} <= set(first)


def test_search_output_independent_of_jobs(tmp_path):
    """Test byte-identical half-integer results for one and eight workers."""
    serial = tmp_path / "serial.json"
    parallel = tmp_path / "parallel.json"
    assert main(["search", "--lattice", "2", "--jobs", "1", "--out", str(serial)]) == EXIT_OK
    assert main(["search", "--lattice", "2", "--jobs", "8", "--out", str(parallel)]) == EXIT_OK
    assert serial.read_bytes() == parallel.read_bytes()
    assert json.loads(serial.read_text(encoding="utf-8"))["candidate_count"] == 21


def test_shallow_search_exit_code(tmp_path):
    """Test exit code 2 when the depth cap is hit."""
    code = main(["search", "--lattice", "2", "--max-depth", "6", "--out", str(tmp_path / "shallow.json")])
    assert code == EXIT_INCOMPLETE
    assert json.loads((tmp_path / "shallow.json").read_text(encoding="utf-8"))["complete"] is False


def test_verify_pass_and_fail(tmp_path, capsys):
    """Test verify exit codes and report contents."""
    assert main(["verify", "--function", "f6"]) == EXIT_OK
    printed = json.loads(capsys.readouterr().out)
    assert printed["passed"] is True
    assert printed["catalog_id"] == "f6_minus"

    out = tmp_path / "fib.json"
    code = main(["verify", "--function", "fibonacci", "--lattice", "1", "--out", str(out)])
    assert code == EXIT_VERIFY_FAILED
    report = json.loads(out.read_text(encoding="utf-8"))
    assert report["debranges_ok"] is False
    assert report["analytic_ok"] is False


def test_verify_literal_with_options(capsys):
    """Test a literal with custom Grunsky and Prawitz settings."""
    code = main(["verify", "--function", "z(2+z^3)/2(1+z^3)", "--grunsky-order", "4",
                 "--prawitz", "2/3", "--prawitz-depth", "15"])
    assert code == EXIT_VERIFY_FAILED
    report = json.loads(capsys.readouterr().out)
    assert report["grunsky_ok"] is True
    assert report["prawitz_ok"] is False
    assert report["config"]["prawitz"] == ["2/3"]


def test_usage_errors(capsys):
    """Test exit code 1 for bad input."""
    assert main(["verify", "--function", "nope"]) == EXIT_USAGE
    assert "ERROR:" in capsys.readouterr().err
    assert main(["verify", "--function", "z/(1-z"]) == EXIT_USAGE
    assert main(["verify"]) == EXIT_USAGE
    assert main(["search", "--bogus"]) == EXIT_USAGE
    assert main(["search", "--lattice", "0", "--out", "x.json"]) == EXIT_USAGE
    assert main(["plot", "--out", "x.svg"]) == EXIT_USAGE
    assert main([]) == EXIT_USAGE


def test_report_writes_markdown_and_json(tmp_path):
    """Test report output files."""
    out = tmp_path / "report.md"
    assert main(["report", "--all", "--samples", "256", "--out", str(out)]) == EXIT_OK
    assert out.read_text(encoding="utf-8").startswith("# Geometry report")
    data = json.loads(out.with_suffix(".json").read_text(encoding="utf-8"))
    assert len(data["rows"]) == 6
    assert data["config"]["samples"] == 256


def test_plot_single_and_all(tmp_path):
    """Test SVG figures."""
    single = tmp_path / "f4.svg"
    assert main(["plot", "--function", "f4", "--samples", "512", "--out", str(single)]) == EXIT_OK
    assert "<polyline" in single.read_text(encoding="utf-8")

    figures = tmp_path / "figures"
    assert main(["plot", "--all", "--samples", "256", "--out", str(figures)]) == EXIT_OK
    assert sorted(p.name for p in figures.glob("*.svg")) == [f"f{i}.svg" for i in range(1, 7)]


def test_report_and_plot_targets_are_exclusive():
    """Test that --function and --all cannot be combined."""
    assert main(["plot", "--function", "f1", "--all"]) == EXIT_USAGE
    assert main(["report", "--function", "f1", "--all"]) == EXIT_USAGE

"""End-to-end command-line checks: exit codes, file contents, determinism."""

import json
import subprocess
import sys

import pytest

from entrack.cli import main

HEADER = "scenario,label,sequence,alpha,beta,lambda0,entropy_vn,gap,renyi_2,renyi_3"


def _lines(path):
    return path.read_text(encoding="ascii").splitlines()


# ---------------------------------------------------------------------------
# plumbing


def test_version_flag_exits_zero(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    assert "entrack" in capsys.readouterr().out


def test_missing_subcommand_is_a_usage_error():
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2


def test_console_script_is_installed():
    proc = subprocess.run([sys.executable, "-c",
                           "from entrack.cli import main; raise SystemExit(main(['--version']))"],
                          capture_output=True, text=True)
    assert proc.returncode == 0


# ---------------------------------------------------------------------------
# scenario runs


def test_primes_run_writes_trajectory(tmp_path):
    assert main(["primes", "--n", "8", "--out", str(tmp_path)]) == 0
    lines = _lines(tmp_path / "trajectory.csv")
    assert lines[0] == HEADER
    assert len(lines) == 1 + 14
    manifest = json.loads((tmp_path / "manifest.json").read_text())
    assert manifest["command"] == ["primes", "8"]
    assert "trajectory.csv" in manifest["outputs"]
    assert manifest["results"]["support_sizes"]["P1"] == 54


def test_primes_json_mirror_carries_boundaries(tmp_path):
    assert main(["primes", "--n", "6", "--json", "--grid", "32",
                 "--out", str(tmp_path)]) == 0
    doc = json.loads((tmp_path / "trajectory.json").read_text())
    assert doc["scenario"] == "primes"
    assert len(doc["points"]) == 10
    assert {"f1", "exact_upper", "flexible_E"} <= set(doc["boundaries"])
    assert len(doc["boundaries"]["f1"]["samples"]) == 32


def test_adiabatic_run_row_count_and_peak(tmp_path):
    assert main(["adiabatic", "--instance", "ec10_a", "--s-step", "0.5",
                 "--partitions", "2", "--seed", "1", "--out", str(tmp_path)]) == 0
    lines = _lines(tmp_path / "trajectory.csv")
    assert len(lines) == 1 + 3 * 2  # three interpolation stops, two partitions
    manifest = json.loads((tmp_path / "manifest.json").read_text())
    assert manifest["config"]["instance"] == "pinned:ec10_a"
    assert 0.0 <= manifest["results"]["peak_entropy_s"] <= 1.0


def test_adiabatic_unknown_instance_exits_two(tmp_path, capsys):
    assert main(["adiabatic", "--instance", "nope", "--seed", "0",
                 "--out", str(tmp_path)]) == 2
    assert "pinned" in capsys.readouterr().err


def test_grover_marked_run(tmp_path):
    assert main(["grover", "--marked", "11", "--n", "4",
                 "--out", str(tmp_path)]) == 0
    lines = _lines(tmp_path / "trajectory.csv")
    assert len(lines) == 1 + 7
    assert lines[-1].split(",")[1] == "it03|post_diffusion"


def test_grover_flag_exclusivity(tmp_path):
    assert main(["grover", "--instance", "ec10_a", "--marked", "3", "--n", "4",
                 "--out", str(tmp_path)]) == 2
    assert main(["grover", "--out", str(tmp_path)]) == 2
    assert main(["grover", "--marked", "3", "--out", str(tmp_path)]) == 2


def test_shor_run_reports_factors(tmp_path):
    assert main(["shor", "--N", "15", "--a", "7", "--seed", "1",
                 "--out", str(tmp_path)]) == 0
    assert len(_lines(tmp_path / "trajectory.csv")) == 1 + 16
    manifest = json.loads((tmp_path / "manifest.json").read_text())
    assert manifest["results"]["factors"] == [3, 5]
    assert manifest["results"]["order"] == 4


def test_shor_invalid_modulus_exits_one(tmp_path, capsys):
    assert main(["shor", "--N", "16", "--a", "3", "--seed", "0",
                 "--out", str(tmp_path)]) == 1
    assert "entrack:" in capsys.readouterr().err


# ---------------------------------------------------------------------------
# validate


def test_validate_accepts_fresh_output(tmp_path, capsys):
    main(["primes", "--n", "8", "--out", str(tmp_path)])
    csv_path = tmp_path / "trajectory.csv"
    assert main(["validate", str(csv_path)]) == 0
    assert "0 problems" in capsys.readouterr().out


def test_validate_flags_corrupted_entropy(tmp_path, capsys):
    main(["primes", "--n", "8", "--out", str(tmp_path)])
    csv_path = tmp_path / "trajectory.csv"
    lines = _lines(csv_path)
    cells = lines[3].split(",")
    cells[6] = "9.9"  # far above any admissible entropy at alpha=16
    lines[3] = ",".join(cells)
    csv_path.write_text("\n".join(lines) + "\n", encoding="ascii")
    assert main(["validate", str(csv_path)]) == 1
    err = capsys.readouterr().err
    assert "outside" in err


# ---------------------------------------------------------------------------
# ensembles


def test_mpd_is_thread_invariant(tmp_path):
    args = ["rmt", "mpd", "--alpha", "64", "--beta", "128", "--samples", "6",
            "--seed", "3", "--bins", "40"]
    a, b = tmp_path / "a", tmp_path / "b"
    assert main(args + ["--threads", "1", "--out", str(a)]) == 0
    assert main(args + ["--threads", "3", "--out", str(b)]) == 0
    assert (a / "mpd.csv").read_bytes() == (b / "mpd.csv").read_bytes()


def test_mpd_requires_a_shape(tmp_path):
    assert main(["rmt", "mpd", "--alpha", "64", "--samples", "4",
                 "--seed", "0", "--out", str(tmp_path)]) == 2


def test_page_csv_row_count(tmp_path):
    assert main(["rmt", "page", "--alpha", "32", "--betas", "64,128",
                 "--samples", "5", "--seed", "2", "--out", str(tmp_path)]) == 0
    assert len(_lines(tmp_path / "page.csv")) == 1 + 2 * 5


def test_dominant_sweep_csv(tmp_path):
    assert main(["rmt", "dominant", "--alpha", "16", "--beta", "32",
                 "--gamma-max", "1.0", "--gamma-steps", "3", "--samples", "10",
                 "--seed", "4", "--out", str(tmp_path)]) == 0
    lines = _lines(tmp_path / "dominant.csv")
    assert lines[0] == "gamma,mean_lambda0,predicted,stderr,rel_err"
    assert len(lines) == 1 + 3


def test_conditional_bins_csv(tmp_path):
    assert main(["rmt", "conditional", "--alpha", "16", "--beta", "16",
                 "--samples", "300", "--bins", "5", "--seed", "5",
                 "--out", str(tmp_path)]) == 0
    lines = _lines(tmp_path / "conditional.csv")
    assert lines[0].startswith("bin_center,count,mean_entropy,mean_gap")
    manifest = json.loads((tmp_path / "manifest.json").read_text())
    assert manifest["results"]["bins_used"] == len(lines) - 1


# ---------------------------------------------------------------------------
# boundary sampling


def test_boundary_f1_grid(tmp_path):
    assert main(["boundary", "--curve", "f1", "--grid", "50",
                 "--out", str(tmp_path)]) == 0
    lines = _lines(tmp_path / "boundary.csv")
    assert lines[0] == "curve,x,value"
    assert len(lines) == 1 + 50


def test_boundary_flexible_marks_extrapolation(tmp_path):
    assert main(["boundary", "--curve", "flexible_E", "--alpha", "64",
                 "--beta", "128", "--grid", "64", "--out", str(tmp_path)]) == 0
    lines = _lines(tmp_path / "boundary.csv")
    assert lines[0] == "curve,x,value,extrapolated"
    flags = {row.split(",")[3] for row in lines[1:]}
    assert flags == {"0", "1"}


def test_boundary_unknown_curve_exits_two(tmp_path, capsys):
    assert main(["boundary", "--curve", "f9", "--out", str(tmp_path)]) == 2
    assert "f9" in capsys.readouterr().err

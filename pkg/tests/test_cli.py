import subprocess
import sys

import pytest

from generic_gp.cli import main, split_policies


def test_split_policies():
    assert split_policies("simple-ucb,gp-ts") == ["simple-ucb", "gp-ts"]
    assert split_policies("bernoulli:0.5,0.25@10,simple-categorical:k=3,igp-ucb:delta=0.2") == [
        "bernoulli:0.5,0.25@10",
        "simple-categorical:k=3",
        "igp-ucb:delta=0.2",
    ]


def test_run_writes_csv_and_svg(tmp_path, capsys):
    csv_path, svg_path = tmp_path / "r.csv", tmp_path / "r.svg"
    code = main(["run", "--env", "holder-table", "--policy", "simple-bernoulli", "--rounds", "20",
                 "--seeds", "2", "--out-csv", str(csv_path), "--out-svg", str(svg_path), "--per-seed"])
    assert code == 0
    lines = csv_path.read_text().splitlines()
    assert lines[0] == "round,mean_cum_regret,std_cum_regret,seed_0,seed_1" and len(lines) == 21
    assert svg_path.read_text().startswith("<svg")
    assert "simple-bernoulli" in capsys.readouterr().out


def test_compare(tmp_path, capsys):
    svg = tmp_path / "c.svg"
    code = main(["compare", "--env", "cross-in-tray", "--policies", "simple-ucb,gp-ts", "--rounds", "15",
                 "--seeds", "2", "--out-svg", str(svg), "--out-csv-prefix", str(tmp_path / "c_")])
    assert code == 0
    assert svg.read_text().count('class="legend"') == 2
    assert (tmp_path / "c_gp-ts.csv").exists()
    out = capsys.readouterr().out.splitlines()
    assert len(out) == 2


def test_bound_table(capsys):
    assert main(["bound", "--policy", "simple-ucb", "--rounds", "80", "--gamma", "3.5"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "T,gamma,C2,C3,bound"
    assert [int(l.split(",")[0]) for l in lines[1:]] == [10, 20, 40, 80]
    bounds = [float(l.split(",")[-1]) for l in lines[1:]]
    assert bounds == sorted(bounds)


def test_bound_greedy_gamma(capsys):
    assert main(["bound", "--policy", "simple-gaussian", "--rounds", "16", "--env", "holder-table"]) == 0
    gammas = [float(l.split(",")[1]) for l in capsys.readouterr().out.splitlines()[1:]]
    assert gammas == sorted(gammas) and gammas[0] > 0


def test_info_gain(capsys):
    assert main(["info-gain", "--env", "hartmann", "--kernel", "rbf:0.4", "--rounds", "10"]) == 0
    assert float(capsys.readouterr().out) > 0


def test_lower_bound_command(capsys):
    assert main(["lower-bound", "--d", "2", "--rounds", "300", "--seeds", "3"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("Delta=") and "floor=" in out and "loglog_slope=" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["run", "--env", "nowhere", "--out-csv", "x.csv", "--rounds", "3", "--seeds", "1"],
        ["run", "--kernel", "poly", "--out-csv", "x.csv", "--rounds", "3", "--seeds", "1"],
        ["bound", "--policy", "gp-ts"],
        ["run", "--env", "perovskite:/does/not/exist.csv", "--out-csv", "x.csv"],
    ],
)
def test_errors_exit_nonzero_with_one_line(argv, capsys, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert main(argv) == 1
    err = capsys.readouterr().err.strip().splitlines()
    assert len(err) == 1 and err[0].startswith("error: ")


def test_console_script_entry_point(tmp_path):
    out = tmp_path / "o.csv"
    proc = subprocess.run(
        [sys.executable, "-m", "generic_gp", "run", "--rounds", "5", "--seeds", "1", "--out-csv", str(out)],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0, proc.stderr
    assert out.read_text().startswith("round,")

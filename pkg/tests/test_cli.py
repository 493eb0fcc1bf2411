import csv
import io
import json
import subprocess
import sys

import pytest

from rackregen.cli import EXIT_BUDGET, EXIT_INVALID, EXIT_MISMATCH, EXIT_OK, main

WIDE = ["--set", "k=5", "--set", "d1=6", "--set", "d2=6", "--set", "n1=7", "--set", "n2=7"]
TALL = ["--set", "k=10", "--set", "d1=5", "--set", "d2=6", "--set", "n1=6", "--set", "n2=6"]
WORKED = ["--set", "n1=3", "--set", "n2=3", "--set", "k=4", "--set", "d1=1", "--set", "d2=3", "--set", "tau=2"]
BASIC = ["--model", "basic", "--set", "n1=2", "--set", "n2=2", "--set", "k=2", "--set", "d1=1", "--set", "d2=2"]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_curve_wide(capsys):
    code, out, _ = run(capsys, "curve", *WIDE)
    assert code == EXIT_OK
    table = rows(out)
    assert len(table) == 5
    assert (table[0]["gamma1"], table[0]["alpha"]) == ("0.3", "0.2")
    assert (table[-1]["gamma1"], table[-1]["alpha"]) == ("0.24", "0.24")
    assert table[1]["beta_e"] == "0.0227272727273"
    assert table[1]["beta_e_exact"] == "1/44"


def test_curve_collapses_empty_intervals(capsys):
    code, out, _ = run(capsys, "curve", *TALL, "--set", "tau=2")
    table = rows(out)
    pairs = [(r["beta_e"], r["alpha"]) for r in table]
    assert ("0.025", "0.1") in pairs
    assert ("0.0106382978723", "0.170212765957") in pairs
    assert len(table) == 7
    betas = [float(r["beta_e"]) for r in table]
    assert betas == sorted(betas, reverse=True) and len(set(betas)) == len(betas)


def test_curve_single_row(capsys):
    code, out, _ = run(capsys, "curve")
    assert code == EXIT_OK and len(rows(out)) == 1


def test_curve_beta_sample(capsys):
    code, out, _ = run(capsys, "curve", *WORKED, "--beta", "1/12", "--exact")
    table = rows(out)
    assert [r["kind"] for r in table] == ["breakpoint", "breakpoint", "sample", "breakpoint", "breakpoint"]
    sample = table[2]
    assert sample["beta_e"] == "1/12" and sample["alpha"] == "7/24"
    code, _, err = run(capsys, "curve", *WORKED, "--beta", "0.01")
    assert code == EXIT_INVALID and "below the last breakpoint" in err


def test_points(capsys):
    code, out, _ = run(capsys, "points", *WIDE, "--set", "tau=10")
    msr, mbr = rows(out)
    assert msr["point"] == "MSR" and msr["gamma1"] == "0.507692307692"
    code, out, _ = run(capsys, "points", *WIDE, "--set", "tau=5")
    _, mbr = rows(out)
    assert mbr["gamma1"] == mbr["alpha"] == "0.276923076923"
    code, out, _ = run(capsys, "points")
    msr, mbr = rows(out)
    assert {k: v for k, v in msr.items() if k != "point"} == {k: v for k, v in mbr.items() if k != "point"}


def test_income(capsys):
    code, out, _ = run(capsys, "income", *WORKED, "--exact")
    table = rows(out)
    by_set = {}
    for r in table:
        by_set.setdefault(r["multiset"], []).append(r["value"])
    assert by_set["I1"] == ["5", "3"]
    assert by_set["L"] == ["2", "3", "4", "5"]
    assert by_set["selected"] == ["5", "3", "4", "2"]


def test_cost(capsys):
    code, out, _ = run(capsys, "cost", *WIDE)
    assert [r["cost1"] for r in rows(out)] == ["1.65", "1.5", "1.40425531915", "1.34693877551", "1.32"]
    assert all(r["eta"] == "1" for r in rows(out))
    code, out, _ = run(capsys, "cost", *WIDE, "--set", "tau=2", "--exact")
    assert rows(out)[0]["cost1"] == "36/25"


def test_json_mirrors_csv(capsys):
    _, out_csv, _ = run(capsys, "curve", *WIDE, "--set", "tau=2")
    _, out_json, _ = run(capsys, "curve", *WIDE, "--set", "tau=2", "--format", "json")
    doc = json.loads(out_json)
    assert doc["command"] == "curve" and doc["model"] == "rack"
    assert doc["config"]["tau"] == "2"
    assert doc["rows"] == rows(out_csv)
    assert doc["columns"] == list(rows(out_csv)[0])


def test_flags_before_subcommand(capsys):
    _, before, _ = run(capsys, "--format", "json", *WIDE, "points")
    _, after, _ = run(capsys, "points", "--format", "json", *WIDE)
    assert before == after


def test_config_file(tmp_path, capsys):
    path = tmp_path / "wide.cfg"
    path.write_text("# wide\nk = 5\nd1 = 6\nd2 = 6\nn1 = 7\nn2 = 7\n")
    _, from_file, _ = run(capsys, "points", "--config", str(path))
    _, from_flags, _ = run(capsys, "points", *WIDE)
    assert from_file == from_flags


@pytest.mark.parametrize("argv", [
    ["curve", "--set", "k=3"],
    ["curve", "--set", "bogus=1"],
    ["curve", "--set", "k"],
    ["points", "--set", "tau=1/2", "--set", "d2=1"],
    ["figure", "9Z"],
    ["curve", "--config", "/nonexistent/file.cfg"],
])
def test_invalid_input_exit_code(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == EXIT_INVALID
    assert out == "" and "error" in err


def test_usage_errors_exit_one(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["nonsense"])
    assert exc.value.code == EXIT_INVALID
    with pytest.raises(SystemExit) as exc:
        main(["curve", "--format", "xml"])
    assert exc.value.code == EXIT_INVALID


def test_verify_basic_agrees(capsys):
    code, out, err = run(capsys, "verify", *BASIC)
    assert code == EXIT_OK
    assert all(r["agree"] == "yes" for r in rows(out))
    assert "4/4 points agree" in err


def test_verify_empty_grid_is_vacuous(capsys):
    code, out, _ = run(capsys, "verify", *WORKED, "--grid", "none")
    assert code == EXIT_OK
    assert rows(out) == []


def test_verify_worked_example_reports_witnesses(capsys):
    code, out, _ = run(capsys, "verify", *WORKED, "--exact")
    assert code == EXIT_MISMATCH
    table = rows(out)
    tight = [r for r in table if r["at_breakpoint"] == "yes"]
    assert [(r["alpha"], r["oracle"], r["analytic"]) for r in tight] == [
        ("1/4", "7/8", "1"), ("3/11", "10/11", "1"), ("4/13", "12/13", "1"), ("5/14", "13/14", "1")]
    for r in table:
        if r["agree"] == "no":
            scenario = json.loads(r["witness"])
            assert set(scenario) == {"initial_nodes", "repairs", "dc_attachment"}


def test_verify_tau_one_agrees(capsys):
    code, out, _ = run(capsys, "verify", *WORKED, "--set", "tau=1")
    assert code == EXIT_OK


def test_verify_budget_exhausted(capsys):
    code, out, err = run(capsys, "verify", *WORKED, "--exhaustive", "--budget", "3")
    assert code == EXIT_BUDGET
    assert "budget exhausted" in err


def test_verify_exhaustive_matches_default(capsys):
    _, fast, _ = run(capsys, "verify", *BASIC, "--exact")
    _, slow, _ = run(capsys, "verify", *BASIC, "--exact", "--exhaustive")
    strip = lambda text: [(r["alpha"], r["beta_e"], r["oracle"]) for r in rows(text)]
    assert strip(fast) == strip(slow)


def test_figure_stdout(capsys):
    code, out, _ = run(capsys, "figure", "4L")
    table = rows(out)
    assert code == EXIT_OK
    assert any(r["curve"] == "tau=2" and r["x"] == "0.02" and r["y"] == "1.44" for r in table)


def test_figure_out_dir(tmp_path, capsys):
    code, out, _ = run(capsys, "figure", "all", "--out-dir", str(tmp_path))
    assert code == EXIT_OK
    names = sorted(p.name for p in tmp_path.iterdir())
    assert "fig3R_tau6_5.csv" in names and "fig4R_static.csv" in names
    assert [n for n in names if n.endswith(".png")] == ["fig3L.png", "fig3R.png", "fig4L.png", "fig4R.png"]
    assert len([n for n in names if n.endswith(".csv")]) == 14


def test_figure_no_plot_json(tmp_path, capsys):
    code, _, _ = run(capsys, "figure", "3R", "--out-dir", str(tmp_path), "--no-plot", "--format", "json")
    names = sorted(p.name for p in tmp_path.iterdir())
    assert names == ["fig3R_tau1.json", "fig3R_tau10.json", "fig3R_tau2.json", "fig3R_tau6_5.json"]
    data = json.loads((tmp_path / "fig3R_tau2.json").read_text())
    assert data[0]["decoration"] == "start" and data[-1]["decoration"] == "end"


def test_figure_output_is_byte_identical():
    cmd = [sys.executable, "-m", "rackregen", "figure", "all"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second and first.startswith(b"figure,curve,model,tau,index,decoration,x,y,x_exact,y_exact\n")


def test_module_entry_point_exit_code():
    proc = subprocess.run([sys.executable, "-m", "rackregen", "curve", "--set", "k=3"], capture_output=True, text=True)
    assert proc.returncode == EXIT_INVALID
    assert "k <= n1 + n2" in proc.stderr

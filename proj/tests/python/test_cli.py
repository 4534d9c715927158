"""End-to-end checks of the command-line interface."""

import json
import math
import os
import subprocess

import pytest

CLI = os.environ.get("NSLEAK_CLI")

pytestmark = pytest.mark.skipif(not CLI, reason="NSLEAK_CLI not set")


def run(*args, **kwargs):
    return subprocess.run([CLI, *args], capture_output=True, text=True, **kwargs)


@pytest.fixture()
def remark1_csv(tmp_path):
    path = tmp_path / "remark1.csv"
    path.write_text("x,y\n1,1\n2,1\n3,2\n")
    return str(path)


@pytest.fixture()
def ages_csv(tmp_path):
    path = tmp_path / "ages.csv"
    path.write_text("age,bp\n40,120\n41,131\n52,120\n53,128\n70,200\n40,121\n")
    return str(path)


def test_measure_json(remark1_csv):
    res = run("measure", "--input", remark1_csv, "--x-col", "x", "--y-col", "y",
              "--semantics", "value", "--epsilon", "1.0")
    assert res.returncode == 0, res.stderr
    report = json.loads(res.stdout)
    assert report["l_star"] == pytest.approx(math.log2(3))
    assert report["l_guessing"] == pytest.approx(math.log2(3))
    assert report["i_star"] == 1.0
    assert report["epsilon_identifiable"] is False

    swapped = run("measure", "--input", remark1_csv, "--x-col", "y", "--y-col", "x",
                  "--semantics", "value")
    assert json.loads(swapped.stdout)["l_star"] == 1.0


def test_measure_unrelated(tmp_path):
    path = tmp_path / "product.csv"
    path.write_text("x,y\n1,1\n1,2\n2,1\n2,2\n")
    res = run("measure", "--input", str(path), "--x-col", "x", "--y-col", "y",
              "--semantics", "value")
    report = json.loads(res.stdout)
    assert report["l_star"] == 0.0
    assert report["i_star"] == 0.0
    assert report["sibson_inf"] == 0.0
    assert report["l_guessing"] == 0.0


def test_sweep_matches_measure(ages_csv):
    sweep = run("sweep", "--input", ages_csv, "--x-col", "age", "--y-col", "bp",
                "--delta", "4", "--semantics", "record", "--format", "json")
    measure = run("measure", "--input", ages_csv, "--x-col", "age", "--y-col", "bp",
                  "--delta", "4", "--semantics", "record")
    row = json.loads(sweep.stdout)[0]
    report = json.loads(measure.stdout)
    assert row["l_star"] == report["l_star"]
    assert row["i_star"] == report["i_star"]
    assert row["sibson_inf"] == report["sibson_inf"]
    assert row["l_identity"] == report["l_guessing"]


def test_sweep_rows_and_determinism(ages_csv):
    args = ("sweep", "--input", ages_csv, "--x-col", "age", "--y-col", "bp",
            "--delta-range", "1:10:1", "--semantics", "record")
    first = run(*args)
    second = run(*args)
    assert first.returncode == 0
    assert first.stdout == second.stdout  # byte-deterministic
    lines = first.stdout.strip().splitlines()
    assert lines[0] == "delta,max_distortion,l_star,i_star,sibson_inf,l_identity"
    assert len(lines) == 11
    for line in lines[1:]:
        delta, dist, l_star, i_star, sibson, l_id = map(float, line.split(","))
        assert i_star <= l_star + 1e-12


def test_vote_csv():
    res = run("vote", "2")
    assert res.stdout.splitlines() == [
        "n,l_individual,l_all,l_star,i_star",
        "1,1,1,1,1",
        "2,1,2,2,1",
    ]


def test_vote_json():
    res = run("vote", "10", "--format", "json")
    rows = json.loads(res.stdout)
    assert rows[9]["l_all"] == pytest.approx(1.40754296273192)
    assert rows[9]["l_star"] == pytest.approx(9.31967212094699)


def test_selftest_fast():
    res = run("selftest", "--cap", "2", "--random-instances", "20")
    assert res.returncode == 0, res.stdout
    assert "selftest passed" in res.stdout


def test_selftest_default_checks_enough_instances():
    res = run("selftest")
    assert res.returncode == 0, res.stdout
    summary = res.stdout.strip().splitlines()[-1]
    instances = int(summary.split("(")[1].split()[0])
    assert instances >= 10_000
    assert "violations=0" in res.stdout


def test_exit_codes(tmp_path, remark1_csv):
    assert run("measure", "--input", "/no/such/file", "--x-col", "a",
               "--y-col", "b").returncode == 3
    assert run("measure", "--input", remark1_csv, "--x-col", "nope",
               "--y-col", "y").returncode == 3
    assert run("measure", "--no-such-flag").returncode == 2
    assert run("vote", "99").returncode == 2
    assert run("sweep", "--input", remark1_csv, "--x-col", "x", "--y-col", "y",
               "--delta-range", "5:1:1").returncode == 2

    ragged = tmp_path / "ragged.csv"
    ragged.write_text("a,b\n1,2\n3\n")
    assert run("measure", "--input", str(ragged), "--x-col", "a",
               "--y-col", "b").returncode == 3


def test_output_file(tmp_path, remark1_csv):
    out = tmp_path / "report.json"
    res = run("measure", "--input", remark1_csv, "--x-col", "x", "--y-col", "y",
              "--semantics", "value", "--output", str(out))
    assert res.returncode == 0
    assert json.loads(out.read_text())["l_star"] == pytest.approx(math.log2(3))

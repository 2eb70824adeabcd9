"""Command-line client: files in, files out, exit codes."""

import json

import pytest
from click.testing import CliRunner

import corpus
from phfield.cli import main
from phfield.filtration import write_simplicial

TRIANGLE = write_simplicial(corpus.filled_triangle())
MOBIUS = write_simplicial(corpus.fixture_filtrations()[3][1])


@pytest.fixture()
def runner():
    return CliRunner()


def _write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_pd_json_stdout(runner, tmp_path):
    path = _write(tmp_path, "tri.txt", TRIANGLE)
    res = runner.invoke(main, ["pd", path, "--field", "q"])
    assert res.exit_code == 0, res.output
    body = json.loads(res.output)
    assert body["field"] == "Q"
    assert body["n_cells"] == 7


def test_pd_tsv_and_degree(runner, tmp_path):
    path = _write(tmp_path, "tri.txt", TRIANGLE)
    res = runner.invoke(main, ["pd", path, "--field", "zp:2", "--degree", "1", "--tsv"])
    assert res.exit_code == 0
    assert res.output.splitlines() == ["degree\tbirth\tdeath", "1\t6\t7"]


def test_pd_parse_error_exits_2(runner, tmp_path):
    path = _write(tmp_path, "bad.txt", "0 0\n2 0 1\n")
    res = runner.invoke(main, ["pd", path])
    assert res.exit_code == 2
    assert "line 2" in res.output


def test_pd_missing_file_exits_2(runner):
    res = runner.invoke(main, ["pd", "/nonexistent/file.txt"])
    assert res.exit_code == 2


def test_check_field_exit_codes(runner, tmp_path):
    tri = _write(tmp_path, "tri.txt", TRIANGLE)
    mob = _write(tmp_path, "mob.txt", MOBIUS)
    res = runner.invoke(main, ["check-field", tri])
    assert res.exit_code == 0, res.output
    assert json.loads(res.output)["verdict"] == "independent"
    res = runner.invoke(main, ["check-field", mob])
    assert res.exit_code == 1
    body = json.loads(res.output)
    assert body["verdict"] == "dependent" and body["pivot"] == "2"
    res = runner.invoke(main, ["check-field", mob, "--max-degree", "0"])
    assert res.exit_code == 0


def test_gen_pipe_check(runner, tmp_path):
    out = str(tmp_path / "annulus.txt")
    res = runner.invoke(main, ["gen", "--kind", "annulus", "--p", "3",
                               "--segments", "7", "--out", out])
    assert res.exit_code == 0, res.output
    res = runner.invoke(main, ["check-field", out])
    assert res.exit_code == 1
    assert int(json.loads(res.output)["pivot"]) % 3 == 0


def test_gen_explicit_format_round_trips(runner, tmp_path):
    out = str(tmp_path / "mob.ex.txt")
    res = runner.invoke(main, ["gen", "--kind", "mobius", "--segments", "3",
                               "--format", "explicit", "--out", out])
    assert res.exit_code == 0
    res = runner.invoke(main, ["check-field", out, "--format", "explicit"])
    assert res.exit_code == 1


def test_betti_tsv(runner, tmp_path):
    mob = _write(tmp_path, "mob.txt", MOBIUS)
    dpath = str(tmp_path / "d.json")
    res = runner.invoke(main, ["pd", mob, "--field", "q", "--out", dpath])
    assert res.exit_code == 0
    res = runner.invoke(main, ["betti", dpath, "--degree", "1"])
    assert res.exit_code == 0
    lines = res.output.splitlines()
    assert lines[0] == "m\tn\tbeta"
    # beta(12, 12) = 1: the boundary circle is complete at step 12
    assert "12\t12\t1" in lines


def test_compare_cli(runner, tmp_path):
    mob = _write(tmp_path, "mob.txt", MOBIUS)
    a = str(tmp_path / "a.json")
    b = str(tmp_path / "b.json")
    runner.invoke(main, ["pd", mob, "--field", "zp:2", "--out", a])
    runner.invoke(main, ["pd", mob, "--field", "q", "--out", b])
    res = runner.invoke(main, ["compare", a, b])
    assert res.exit_code == 0
    body = json.loads(res.output)
    assert body["equal"] is False
    assert body["witness"]["degree"] == 1
    res = runner.invoke(main, ["compare", a, a])
    assert json.loads(res.output)["equal"] is True


def test_functional_cli_with_labels(runner, tmp_path):
    # a filled square: every loop dies, so the degree-1 functional is finite;
    # Rips labels give the radius scale
    pts = _write(tmp_path, "pts.txt", "0 0\n1 0\n1 1\n0 1\n")
    filt = str(tmp_path / "rips.txt")
    res = runner.invoke(main, ["rips", pts, "--max-dim", "2",
                               "--max-radius", "0.8", "--out", filt])
    assert res.exit_code == 0, res.output
    dpath = str(tmp_path / "d.json")
    runner.invoke(main, ["pd", filt, "--field", "q", "--out", dpath])
    res = runner.invoke(main, ["functional", dpath, "--degree", "1",
                               "--f", "x^2", "--labels-from", filt])
    assert res.exit_code == 0, res.output
    assert json.loads(res.output)["exact"] is False  # float labels
    res = runner.invoke(main, ["functional", dpath, "--degree", "1", "--f", "x^2"])
    body = json.loads(res.output)
    assert body["exact"] is True and int(body["value"]) > 0
    # degree 0 keeps its surviving component: infinite lifetime is an error
    res = runner.invoke(main, ["functional", dpath, "--degree", "0", "--f", "x^2"])
    assert res.exit_code == 2


def test_oracle_commands(runner, tmp_path):
    mob = _write(tmp_path, "mob.txt", MOBIUS)
    res = runner.invoke(main, ["oracle", "scan", mob])
    assert res.exit_code == 1
    assert json.loads(res.output)["verdict"] == "dependent"
    mat = _write(tmp_path, "m.txt", "2 4 4\n-6 6 12\n10 4 16\n")
    res = runner.invoke(main, ["oracle", "snf", mat])
    assert res.exit_code == 0
    assert json.loads(res.output)["invariant_factors"] == ["2", "2", "156"]


def test_experiment_cli(runner, tmp_path):
    out = str(tmp_path / "report.json")
    res = runner.invoke(main, ["experiment", "--kind", "mobius",
                               "--segments", "4", "--seeds", "1:5", "--out", out])
    assert res.exit_code == 0, res.output
    body = json.loads(open(out).read())
    assert body["aggregate"]["trials"] == 5
    assert body["aggregate"]["dependent_fraction"] == 1.0
    rows = body["trials"]
    assert all(r["verdict"] == "dependent" for r in rows)
    assert len({r["pivot"] for r in rows}) == 1  # identical rows


def test_experiment_bad_seed_range(runner):
    res = runner.invoke(main, ["experiment", "--kind", "mobius", "--seeds", "x"])
    assert res.exit_code == 2

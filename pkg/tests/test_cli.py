import subprocess
import sys

import pytest

from tightcycle.cli import main
from tightcycle.formats import parse_cycle, read_experiment
from tightcycle.hypergraph import parse_hypergraph


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def k222(tmp_path, capsys):
    path = tmp_path / "k222.hg"
    assert run(capsys, "gen", "multipartite", 2, 2, 2, "-o", path)[0] == 0
    return path


def test_gen_writes_parseable_graph(capsys):
    code, out, _ = run(capsys, "gen", "star", 6, 3)
    assert code == 0
    H = parse_hypergraph(out)
    assert (H.r, H.n, H.num_edges) == (3, 6, 10)


def test_gen_bad_values(capsys):
    code, _, err = run(capsys, "gen", "grid", 3)
    assert code == 2 and "gen grid" in err


def test_stats(k222, capsys):
    code, out, _ = run(capsys, "stats", k222)
    assert code == 0 and "density=2\n" in out and "delta=2\n" in out
    code, out, _ = run(capsys, "stats", k222, "--format", "csv")
    assert out.splitlines()[0] == "r,vertices,edges,n,p,density,delta"


def test_find_then_verify(k222, tmp_path, capsys):
    cyc = tmp_path / "c.tc"
    assert run(capsys, "find-cycle", k222, "-o", cyc)[0] == 0
    tag, r, seq = parse_cycle(cyc.read_text())
    assert tag == "TC" and r == 3 and len(seq) == 6
    assert run(capsys, "verify", k222, cyc)[:2] == (0, "valid\n")


def test_verify_rejects_bad_witness(k222, tmp_path, capsys):
    bad = tmp_path / "bad.tc"
    bad.write_text("TC r=3 L=6\n0 2 4 1 5 3\n")
    assert run(capsys, "verify", k222, bad)[:2] == (1, "invalid\n")


def test_find_cycle_length(tmp_path, capsys):
    g = tmp_path / "grid.hg"
    run(capsys, "gen", "grid", 6, 3, "-o", g)
    code, out, _ = run(capsys, "find-cycle", g, "--length", 9, "--epsilon", "1/2")
    assert code == 0 and len(parse_cycle(out)[2]) == 9
    code, _, err = run(capsys, "find-cycle", g, "--length", 4)
    assert code == 2 and "multiple of r" in err


def test_star_has_no_cycle(tmp_path, capsys):
    s = tmp_path / "star.hg"
    run(capsys, "gen", "star", 8, 3, "-o", s)
    assert run(capsys, "oracle", s)[:2] == (1, "NONE\n")
    code, out, _ = run(capsys, "find-cycle", s)
    assert code == 1 and out.startswith(("NONE", "DS"))


def test_oracle_witness(k222, capsys):
    code, out, _ = run(capsys, "oracle", k222)
    assert code == 0 and out.startswith("TCW l=6")


def test_oracle_too_large(tmp_path, capsys):
    g = tmp_path / "g.hg"
    run(capsys, "gen", "grid", 6, 3, "-o", g)
    assert run(capsys, "oracle", g)[0] == 2


def test_parse_error_names_the_line(tmp_path, capsys):
    bad = tmp_path / "bad.hg"
    bad.write_text("HG r=3 n=4 parts=none\n0 1 2\n0 1 9\n")
    code, _, err = run(capsys, "stats", bad)
    assert code == 2 and "line 3" in err


def test_missing_file_and_bad_flag(capsys):
    assert run(capsys, "stats", "/nonexistent/x.hg")[0] == 2
    assert run(capsys, "find-cycle", "x.hg", "--lambda", "abc")[0] == 2


def test_extract_expander_outputs(k222, tmp_path, capsys):
    cert = tmp_path / "cert.csv"
    code, out, _ = run(capsys, "extract-expander", k222, "--cert", cert)
    assert code == 0 and parse_hypergraph(out).num_edges == 8
    assert cert.read_text().splitlines()[0] == "n,p,density,delta,lambda,mode,witness_size"
    code, out, _ = run(capsys, "extract-expander", k222, "--cover", "--format", "csv")
    assert code == 0 and len(out.splitlines()) >= 2


def test_experiment_csv(capsys):
    code, out, _ = run(capsys, "experiment", "--m", 3, "--runs", 3, "--no-timing")
    assert code == 0
    rows = read_experiment(out)
    assert len(rows) == 3 and all(r["wall_time"] == "" for r in rows)
    assert {r["seed"] for r in rows} == {"0", "1", "2"}


def test_experiment_parallel_matches_serial(capsys):
    argv = ["experiment", "--m", 3, 4, "--runs", 3, "--no-timing"]
    serial = run(capsys, *argv)[1]
    assert run(capsys, *argv, "--parallel", 2)[1] == serial


def test_repeat_in_fresh_processes_is_byte_identical(tmp_path):
    cmd = [sys.executable, "-m", "tightcycle.cli", "--seed", "3", "experiment",
           "--m", "4", "--runs", "2", "--no-timing"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a

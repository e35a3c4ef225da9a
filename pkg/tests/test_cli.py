import csv
import io

import pytest

from tricount.cli import main
from tricount.graph import karate_path

KARATE = str(karate_path())


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_count_karate(capsys):
    assert run(capsys, "count", KARATE, "--algo", "Bader") == (0, "45\n", "")


def test_count_reorder(capsys):
    assert run(capsys, "count", KARATE, "--algo", "CE", "--reorder")[:2] == (0, "45\n")


def test_count_empty_file(capsys, tmp_path):
    p = tmp_path / "empty.txt"
    p.write_text("")
    assert run(capsys, "count", str(p), "--algo", "FH")[:2] == (0, "0\n")


def test_count_bad_key_lists_registry(capsys):
    code, _, err = run(capsys, "count", KARATE, "--algo", "XX")
    assert code == 2
    assert "BaderD" in err and "IR" in err


def test_count_unreadable(capsys, tmp_path):
    assert run(capsys, "count", str(tmp_path / "missing.txt"))[0] == 1
    bad = tmp_path / "bad.txt"
    bad.write_text("0 1\nzero one\n")
    code, _, err = run(capsys, "count", str(bad))
    assert code == 1 and "line 2" in err


def test_unknown_flag_rejected(capsys):
    with pytest.raises(SystemExit) as info:
        main(["count", KARATE, "--fast"])
    assert info.value.code == 2


def test_gen_rmat_pair_count(capsys, tmp_path):
    out = tmp_path / "r6.txt"
    code, _, err = run(capsys, "gen-rmat", "--scale", "6", "--edge-factor", "16", "--out", str(out))
    assert code == 0 and "1024 generated pairs" in err
    lines = [l for l in out.read_text().splitlines() if not l.startswith("#")]
    assert len(lines) == 1024


def test_gen_rmat_binary_and_cross_variant(capsys, tmp_path):
    out = tmp_path / "rmat8_s0.bin"
    assert run(capsys, "gen-rmat", "--scale", "8", "--seed", "0", "--out", str(out))[0] == 0
    a = run(capsys, "count", str(out), "--algo", "IR")
    b = run(capsys, "count", str(out), "--algo", "BaderD")
    assert a[0] == b[0] == 0 and a[1] == b[1]


def test_gen_rmat_scale7_fh_matches_oracle(capsys, tmp_path):
    out = tmp_path / "r7.el"
    run(capsys, "gen-rmat", "--scale", "7", "--seed", "11", "--out", str(out))
    from tricount.algorithms import tc_brute_force
    from tricount.graph import load_graph

    want = tc_brute_force(load_graph(out))
    assert run(capsys, "count", str(out), "--algo", "FH")[1] == f"{want}\n"


def test_gen_rmat_bad_probabilities(capsys, tmp_path):
    code, _, _ = run(capsys, "gen-rmat", "--scale", "4", "--params", "0.5,0.5,0.5,0",
                     "--out", str(tmp_path / "x.txt"))
    assert code == 2
    code, _, _ = run(capsys, "gen-rmat", "--scale", "4", "--params", "1,0",
                     "--out", str(tmp_path / "x.txt"))
    assert code == 2


def test_info_karate(capsys):
    code, out, _ = run(capsys, "info", KARATE)
    assert code == 0
    assert out.startswith("n=34 m=78 d_max=17 ")
    assert out.strip().endswith("k=35.9")


def test_info_k4_and_tree(capsys, tmp_path):
    k4 = tmp_path / "k4.txt"
    k4.write_text("0 1\n1 2\n0 2\n3 0\n3 1\n3 2\n")
    assert "k=50.0" in run(capsys, "info", str(k4))[1]
    tree = tmp_path / "tree.el"
    tree.write_text("0 1\n0 2\n1 3\n1 4\n2 5\n")
    assert "k=0.0" in run(capsys, "info", str(tree))[1]


def test_info_unreadable(capsys, tmp_path):
    assert run(capsys, "info", str(tmp_path / "nope.bin"))[0] == 1


def test_bench_karate_all(capsys):
    code, out, _ = run(capsys, "bench", "--graphs", KARATE, "--algos", "all", "--runs", "2",
                       "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 20
    assert {r["triangles"] for r in rows} == {"45"}
    assert {r["runs"] for r in rows} == {"2"}


def test_bench_empty_graph_to_file(capsys, tmp_path):
    p = tmp_path / "empty.txt"
    p.write_text("# nothing\n")
    out = tmp_path / "table.md"
    code, stdout, _ = run(capsys, "bench", "--graphs", str(p), "--runs", "1", "--format",
                          "markdown", "--out", str(out))
    assert code == 0 and stdout == ""
    assert "| empty | 0 | 0 | 0 | 0.0 |" in out.read_text()


def test_bench_three_rmat_seeds(capsys):
    seeds = [f"rmat:scale=7,seed={s}" for s in range(3)]
    code, out, _ = run(capsys, "bench", "--graphs", *seeds, "--runs", "1")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    for s in seeds:
        assert len({r["triangles"] for r in rows if r["graph"] == s}) == 1


def test_bench_bad_algo(capsys):
    assert run(capsys, "bench", "--graphs", KARATE, "--algos", "FH,ZZ")[0] == 2


def test_bench_needs_graphs(capsys):
    assert run(capsys, "bench")[0] == 2


def test_bench_config_file(capsys, tmp_path):
    cfg = tmp_path / "b.cfg"
    cfg.write_text("runs = 1\nformat = csv\nalgorithms = F,LA\ngraph kar = karate\n")
    code, out, _ = run(capsys, "bench", "--config", str(cfg))
    assert code == 0 and out.count("kar,34,78,45") == 2


def test_bench_mismatch_exit_code(capsys, monkeypatch):
    from tricount import algorithms

    broken = algorithms.Algorithm("FH", "broken", lambda g: -1)
    monkeypatch.setitem(algorithms.REGISTRY, "FH", broken)
    code, _, err = run(capsys, "bench", "--graphs", KARATE, "--algos", "F,FH", "--runs", "1")
    assert code == 3 and "FH" in err

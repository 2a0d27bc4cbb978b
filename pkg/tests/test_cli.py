import json

from cylcomp.cli import dispatch


def run(args):
    return dispatch([str(a) for a in args])


def test_gen_formula_and_check_proof(tmp_path):
    cnf = tmp_path / "tau.cnf"
    res = tmp_path / "tau.res"
    assert run(["gen-formula", "--k", 2, "--c", 1, "--moduli", "6,15",
                "--L", 30, "--r", 3, "--out", cnf]) == 0
    assert cnf.exists() and (tmp_path / "tau.cnf.vars").exists()
    assert cnf.read_text().startswith("p cnf 38 ")
    assert run(["refute", "--k", 2, "--c", 1, "--moduli", "6,15",
                "--L", 30, "--r", 3, "--out", res]) == 0
    assert run(["check-proof", cnf, res]) == 0


def test_oracles(tmp_path, capsys):
    cnf = tmp_path / "small.cnf"
    run(["gen-formula", "--k", 2, "--c", 1, "--moduli", "3,3",
         "--L", 3, "--r", 1, "--out", cnf])
    assert run(["oracle-width", "--cnf", cnf, "--cap", 5]) == 0
    out = capsys.readouterr().out
    assert "min-width" in out
    assert run(["oracle-depth", "--cnf", cnf, "--width", 5, "--cap", 40]) == 0


def test_play_writes_replayable_transcript(tmp_path):
    out = tmp_path / "match.json"
    assert run(["play", "--k", 2, "--c", 1, "--moduli", "6,15", "--L", 30,
                "--r", 3, "--cops", "lockstep", "--robber", "paper",
                "--max-rounds", 100, "--seed", 7, "--out", out]) == 0
    payload = json.loads(out.read_text())
    assert payload["verdict"] in ("capture", "survived")
    assert payload["seed"] == 7


def test_cfi_and_wl_pipeline(tmp_path):
    g = tmp_path / "G.cg"
    h = tmp_path / "H.cg"
    report = tmp_path / "wl.csv"
    base = ["--k", 2, "--c", 1, "--moduli", "3,3", "--L", 3, "--r", 2,
            "--compressed"]
    assert run(["cfi-gen", *base, "--charge", "f", "--out", g]) == 0
    assert run(["cfi-gen", *base, "--charge", "g", "--out", h]) == 0
    assert run(["wl-run", "--graph", g, "--other", h, "--dim", 2,
                "--out", report]) == 0
    lines = report.read_text().splitlines()
    assert lines[0].startswith("# cylcomp")
    assert lines[1] == "round,classes_g,classes_h,distinguished"
    assert lines[-1].endswith(",1")


def test_lift_and_restrict(tmp_path):
    cnf = tmp_path / "unit.cnf"
    cnf.write_text("p cnf 1 2\n1 0\n-1 0\n")
    lifted = tmp_path / "lifted.cnf"
    assert run(["lift", "--cnf", cnf, "--gadget", "xor", "--size", 2,
                "--out", lifted]) == 0
    assert lifted.read_text().startswith("p cnf 2 4")
    assert run(["restrict", "--cnf", cnf, "--size", 3, "--seed", 1,
                "--out", tmp_path / "rho.txt"]) == 0
    restricted = (tmp_path / "rho.txt.cnf").read_text()
    assert restricted.splitlines()[0] == "p cnf 1 2"


def test_extract_tree_command(tmp_path):
    cnf = tmp_path / "unit.cnf"
    cnf.write_text("p cnf 1 2\n1 0\n-1 0\n")
    out = tmp_path / "tree.txt"
    assert run(["extract-tree", "--cnf", cnf, "--size", 2, "--out", out]) == 0
    assert "leaf" in out.read_text()


def test_tail_experiment_deterministic(tmp_path):
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    args = ["tail-experiment", "--blocks", 4, "--size", 3, "--trials", 500,
            "--seed", 3]
    assert run(args + ["--out", a]) == 0
    assert run(args + ["--out", b]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert (tmp_path / "a.csv.png").exists()


def test_tradeoff_experiment(tmp_path):
    out = tmp_path / "trade.csv"
    assert run(["tradeoff-experiment", "--k", 2, "--c", 1, "--moduli", "6,15",
                "--L", 30, "--r", 3, "--seed", 0, "--no-figure",
                "--out", out]) == 0
    lines = out.read_text().splitlines()
    assert lines[1].startswith("instance,")
    assert len(lines) == 4
    assert "identity" in lines[3] and "capture" in lines[3]


def test_exit_codes(tmp_path):
    # validation failure: c out of range
    assert run(["gen-formula", "--k", 2, "--c", 5, "--moduli", "6,15",
                "--L", 30, "--r", 3, "--out", tmp_path / "x.cnf"]) == 3
    # resource failure: full tree too large
    cnf = tmp_path / "big.cnf"
    cnf.write_text("p cnf 12 1\n1 2 3 4 5 6 7 8 9 10 11 12 0\n")
    assert run(["extract-tree", "--cnf", cnf, "--size", 2,
                "--out", tmp_path / "t.txt"]) == 4

"""Command-line interface: every subcommand plus the exit-code contract."""

from __future__ import annotations

from fractions import Fraction

from spinel import Polynomial, Trace, format_polynomial, parse_polynomial
from spinel.cli import main
from spinel.problems import factor_preset
from test_poly import H_I


def write(path, text):
    path.write_text(text, encoding="utf-8")
    return str(path)


def test_reduce_factor_preset_to_two_spins(tmp_path, capsys):
    inp = write(tmp_path / "h3p.txt", format_polynomial(factor_preset("n291311_3")))
    out = tmp_path / "h2p.txt"
    tr = tmp_path / "h2p.trace"
    code = main(
        ["reduce", "--input", inp, "--output", str(out), "--trace", str(tr),
         "--order", "1"]
    )
    assert code == 0
    text = out.read_text()
    assert "c 1" in text.splitlines()
    assert "t -1 2 3" in text.splitlines()
    assert "eliminated 1 spins" in capsys.readouterr().out


def test_reduce_empty_order_is_identity(tmp_path, capsys):
    inp = write(tmp_path / "h.txt", format_polynomial(H_I))
    out = tmp_path / "out.txt"
    code = main(["reduce", "--input", inp, "--output", str(out), "--order", ""])
    assert code == 0
    assert out.read_text() == (tmp_path / "h.txt").read_text()


def test_reduce_zero_progress_exit_code(tmp_path):
    inp = write(tmp_path / "h.txt", format_polynomial(H_I))
    out = tmp_path / "out.txt"
    code = main(
        ["reduce", "--input", inp, "--output", str(out), "--max-neighborhood", "1"]
    )
    assert code == 2


def test_reduce_parse_error_exit_code(tmp_path):
    inp = write(tmp_path / "bad.txt", "t 1 2 1\n")
    assert main(["reduce", "--input", inp, "--order", ""]) == 1


def test_solve_worked_example(tmp_path, capsys):
    inp = write(tmp_path / "hi.txt", format_polynomial(H_I))
    assert main(["solve", "--input", inp]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "-14"
    assert lines[1:] == ["++-+-"]
    assert main(["solve", "--input", inp, "--method", "eliminate"]) == 0
    assert capsys.readouterr().out.strip().splitlines()[0] == "-14"


def test_backmap_decodes_factors(tmp_path, capsys):
    inp = write(tmp_path / "h3p.txt", format_polynomial(factor_preset("n291311_3")))
    tr = tmp_path / "f.trace"
    main(["reduce", "--input", inp, "--output", str(tmp_path / "o.txt"),
          "--trace", str(tr), "--order", "1"])
    capsys.readouterr()
    assert main(["backmap", "--trace", str(tr), "--assign", "2=1,3=1",
                 "--decode", "factor291311"]) == 0
    out1 = capsys.readouterr().out
    assert "factor=523" in out1
    assert main(["backmap", "--trace", str(tr), "--assign", "2=-1,3=-1",
                 "--decode", "factor291311"]) == 0
    assert "factor=557" in capsys.readouterr().out


def test_spectrum_two_rows(tmp_path, capsys):
    inp = write(tmp_path / "pair.txt", "t 1 1 2\n")
    assert main(["spectrum", "--input", inp]) == 0
    assert capsys.readouterr().out == "-1,2\n1,2\n"


def test_spectrum_size_cap_exit_code(tmp_path):
    big = Polynomial({(i,): 1 for i in range(1, 26)})
    inp = write(tmp_path / "big.txt", format_polynomial(big))
    assert main(["spectrum", "--input", inp]) == 3


def test_maxcut_csv_and_determinism(tmp_path, capsys):
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    args = ["maxcut", "--n", "16", "--runs", "3", "--strategy", "2local",
            "--seed", "11", "--verify"]
    assert main(args + ["--output", str(out1)]) == 0
    assert main(args + ["--output", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()
    text = out1.read_text().splitlines()
    assert text[0] == "n,seed,removed_fraction,deg0,deg3,deg4,deg5,deg6"
    assert len(text) == 4
    capsys.readouterr()


def test_maxcut_klocal_runs(tmp_path, capsys):
    assert main(["maxcut", "--n", "12", "--runs", "2", "--strategy", "klocal",
                 "--rounds", "2", "--seed", "3"]) == 0
    out = capsys.readouterr().out
    assert "mean_removed_fraction=" in out


def test_mobius_scan_reports_critical_point(capsys):
    assert main(["mobius", "--n", "8", "--grid", "1/4,3/8,1/2,5/8"]) == 0
    out = capsys.readouterr().out.strip().splitlines()
    assert out[-1] == "J*=1/2"
    assert "J=1/4 ground=S0" in out
    assert "J=1/2 ground=S1" in out


def test_mobius_bad_grid_exit_code(capsys):
    assert main(["mobius", "--n", "8", "--grid", "1/8,1/4"]) == 1


def test_hopfield_histogram(tmp_path):
    out = tmp_path / "hist.csv"
    assert main(["hopfield", "--n", "8", "--p", "2", "--trials", "20",
                 "--dt", "0.2", "--max-steps", "1500", "--keep-diagonal",
                 "--output", str(out)]) == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "energy,count,state"
    assert sum(int(row.split(",")[1]) for row in lines[1:]) == 20


def test_hopfield_with_elimination(tmp_path):
    out = tmp_path / "hist.csv"
    assert main(["hopfield", "--n", "16", "--p", "2", "--trials", "10",
                 "--remove", "1", "--dt", "0.2", "--max-steps", "2000",
                 "--output", str(out)]) == 0
    lines = out.read_text().strip().splitlines()
    state = lines[1].split(",")[2]
    assert len(state) == 14


def test_presets_roundtrip(tmp_path, capsys):
    out = tmp_path / "h.txt"
    assert main(["presets", "--name", "bit48_10", "--output", str(out)]) == 0
    again = parse_polynomial(out.read_text())
    assert again == factor_preset("bit48_10")


def test_trace_files_roundtrip_through_cli(tmp_path, capsys):
    inp = write(tmp_path / "hi.txt", format_polynomial(H_I))
    tr = tmp_path / "hi.trace"
    main(["reduce", "--input", inp, "--output", str(tmp_path / "r.txt"),
          "--trace", str(tr), "--order", "1,2"])
    capsys.readouterr()
    trace = Trace.load(str(tr))
    assert trace.eliminated_spins() == [1, 2]
    assert Trace.from_text(trace.to_text()).to_text() == trace.to_text()


def test_reduce_ten_spin_preset_greedy_to_two(tmp_path, capsys):
    inp = tmp_path / "h10.txt"
    main(["presets", "--name", "bit48_10", "--output", str(inp)])
    out = tmp_path / "h2.txt"
    code = main(["reduce", "--input", str(inp), "--output", str(out),
                 "--order", "greedy", "--target-spins", "2"])
    assert code == 0
    capsys.readouterr()
    assert main(["solve", "--input", str(out)]) == 0
    assert capsys.readouterr().out.splitlines()[0] == "-504"

"""CLI behavior: exit codes, report files, config handling."""

import io

from gridmono.cli import EXIT_CAPACITY, EXIT_OK, EXIT_REJECT, EXIT_USAGE, main
from gridmono.func import generate, save
from gridmono.grid import GridShape


def run(argv):
    return main(argv)


def test_test_subcommand_monotone_accepts(capsys):
    code = run(["test", "--family", "monotone_threshold", "--n", "4", "--d", "2",
                "--seed", "5"])
    assert code == EXIT_OK
    assert "ACCEPT" in capsys.readouterr().out


def test_test_subcommand_far_function_rejects(capsys):
    code = run(["test", "--family", "anti_slab", "--n", "8", "--d", "2", "--seed", "5"])
    assert code == EXIT_REJECT
    assert "REJECT" in capsys.readouterr().out


def test_test_subcommand_loads_file(tmp_path, capsys):
    f = generate("anti_slab", GridShape(8, 2))
    path = tmp_path / "f.agf"
    save(f, str(path))
    assert run(["test", "--load", str(path)]) == EXIT_REJECT
    capsys.readouterr()


def test_rate_report_deterministic(tmp_path, capsys):
    out1 = tmp_path / "a.csv"
    out2 = tmp_path / "b.csv"
    base = ["rate", "--shapes", "4x1,4x2", "--families", "anti_slab",
            "--trials", "200", "--seed", "7"]
    assert run(base + ["--out", str(out1)]) == EXIT_OK
    assert run(base + ["--out", str(out2), "--workers", "3"]) == EXIT_OK
    capsys.readouterr()
    a, b = out1.read_bytes(), out2.read_bytes()
    assert a == b
    header = a.decode().splitlines()[0]
    assert header == "n,d,family,eps_true,trials,rejections,rate,wilson_lo,wilson_hi"


def test_isoperimetry_report(tmp_path, capsys):
    out = tmp_path / "iso.csv"
    assert run(["isoperimetry", "--shapes", "4x1", "--out", str(out)]) == EXIT_OK
    capsys.readouterr()
    lines = out.read_text().splitlines()
    assert lines[0] == "n,d,function_id,eps,I,I_minus,gamma_minus,r,margulis_ratio,edge_ratio,vertex_ratio"
    assert len(lines) == 1 + 11  # eps-far functions on the 4-point line
    for line in lines[1:]:
        cells = line.split(",")
        assert float(cells[3]) > 0


def test_isoperimetry_capacity_exit(tmp_path, capsys):
    out = tmp_path / "iso.csv"
    code = run(["isoperimetry", "--shapes", "32x3", "--out", str(out)])
    assert code == EXIT_CAPACITY
    capsys.readouterr()


def test_persistence_report(tmp_path, capsys):
    out = tmp_path / "p.csv"
    assert run(["persistence", "--shapes", "8x2", "--families", "anti_slab",
                "--taus", "1,2", "--outer", "40", "--inner", "30",
                "--out", str(out)]) == EXIT_OK
    capsys.readouterr()
    lines = out.read_text().splitlines()
    assert lines[0] == "n,d,tau,family,nonpersistent_fraction,reference_bound"
    assert len(lines) == 3
    for line in lines[1:]:
        cells = line.split(",")
        assert 0.0 <= float(cells[4]) <= 1.0
        assert float(cells[5]) >= 0.0


def test_structure_subcommand(capsys):
    assert run(["structure", "--family", "anti_slab", "--n", "4", "--d", "2"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "|M*|" in out and "disjoint_paths" in out


def test_reduce_subcommand(capsys):
    assert run(["reduce", "--family", "anti_slab", "--n", "3", "--d", "2"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "plan:" in out and "distance" in out


def test_fourier_subcommand(capsys):
    assert run(["fourier", "--line-n", "8", "--tables", "20"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "parseval" in out and "0 failures" in out


def test_usage_errors(capsys):
    assert run(["rate", "--families", "bogus_family", "--out", "/dev/null"]) == EXIT_USAGE
    assert run(["rate", "--shapes", "4by2", "--out", "/dev/null"]) == EXIT_USAGE
    assert run(["test"]) == EXIT_USAGE  # no --load and no shape
    capsys.readouterr()


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "run.ini"
    cfg.write_text("[rate]\nshapes = 4x1\nfamilies = anti_slab\ntrials = 100\nseed = 3\n")
    out = tmp_path / "r.csv"
    assert run(["rate", "--config", str(cfg), "--out", str(out)]) == EXIT_OK
    capsys.readouterr()
    lines = out.read_text().splitlines()
    assert len(lines) == 2
    assert lines[1].split(",")[4] == "100"  # trials taken from the file

    # flags override the file
    out2 = tmp_path / "r2.csv"
    assert run(["rate", "--config", str(cfg), "--trials", "50", "--out", str(out2)]) == EXIT_OK
    capsys.readouterr()
    assert out2.read_text().splitlines()[1].split(",")[4] == "50"


def test_config_typed_values(tmp_path, capsys):
    # --n has no flag default; the file value must still arrive as an int
    cfg = tmp_path / "t.ini"
    cfg.write_text("[test]\nfamily = anti_slab\nn = 8\nd = 2\nseed = 4\n")
    assert run(["test", "--config", str(cfg)]) == EXIT_REJECT
    capsys.readouterr()


def test_config_rejects_unknown_keys(tmp_path, capsys):
    cfg = tmp_path / "bad.ini"
    cfg.write_text("[rate]\nbogus = 1\n")
    code = run(["rate", "--config", str(cfg), "--out", "/dev/null"])
    assert code == EXIT_USAGE
    capsys.readouterr()

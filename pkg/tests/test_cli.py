import pytest

from pamlab import cli

DATUM = """# coordinate projections of the plane
dim 2
map 1
1 0
map 1
0 1
"""


def run(capsys, *argv):
    code = cli.main(list(argv))
    return code, capsys.readouterr()


def test_classify(capsys):
    code, out = run(capsys, "classify", "--h0", "0.6", "--h", "0.1")
    assert code == cli.EXIT_OK and "ConvergentA1A2" in out.out


def test_classify_profile_file(tmp_path, capsys):
    path = tmp_path / "p.txt"
    path.write_text("h0 = 0.6\nh = [0.1]  # one spatial direction\n")
    assert run(capsys, "classify", "--profile", str(path))[1].out == run(capsys, "classify", "--h0", "0.6", "--h", "0.1")[1].out


@pytest.mark.parametrize("argv", [["classify", "--h0", "0.3", "--h", "0.1"], ["classify", "--h0", "0.6"],
                                  ["classify", "--profile", "/nonexistent/profile"],
                                  ["region-scan", "--grid", "0.5:1"], ["--samples", "0", "classify"],
                                  ["--seed", "notanumber", "classify"]])
def test_invalid_input_exit_code(argv, capsys):
    try:
        code = cli.main(argv)
    except SystemExit as exc:
        code = exc.code
    assert code == cli.EXIT_INVALID


def test_region_scan_is_byte_identical(tmp_path, capsys):
    first, second = tmp_path / "a.csv", tmp_path / "b.csv"
    for target in (first, second):
        assert run(capsys, "region-scan", "--grid", "0.5:1:0.05,0:0.5:0.05", "-o", str(target))[0] == 0
    assert first.read_bytes() == second.read_bytes()
    lines = first.read_text().splitlines()
    # the upper end of each axis is excluded
    assert len(lines) == 1 + 10 * 10


def test_region_scan_svg(tmp_path, capsys):
    svg = tmp_path / "map.svg"
    code, out = run(capsys, "region-scan", "--grid", "0.5:1:0.1,0:0.5:0.1", "--classifier", "chaos",
                    "--svg", str(svg))
    assert code == 0 and svg.read_text().lstrip().startswith("<") and "h0" in out.out.splitlines()[0]


def test_moment_methods(capsys):
    code, out = run(capsys, "moment", "--h0", "0.7", "--h", "0.3", "--n", "1", "--method", "exact")
    assert code == 0 and "Quadrature" in out.out
    code, out = run(capsys, "--seed", "0x10", "--samples", "20000", "moment", "--h0", "0.7", "--h", "0.3",
                    "--n", "2", "--method", "mc")
    again = run(capsys, "--seed", "16", "--samples", "20000", "moment", "--h0", "0.7", "--h", "0.3",
                "--n", "2", "--method", "mc")
    assert code == 0 and out.out == again[1].out and "surrogate_upper" in out.out


def test_moment_wrong_regime(capsys):
    code, _ = run(capsys, "moment", "--h0", "0.6", "--h", "0.2", "0.2", "--n", "2", "--method", "bound")
    assert code == cli.EXIT_INVALID


@pytest.mark.parametrize("argv", [["verify", "l32"], ["verify", "I1"], ["verify", "hls"],
                                  ["verify", "frakB"], ["verify", "mainterm"],
                                  ["verify", "hls", "--draws", "3"]])
def test_verify_suites_pass(argv, capsys):
    code, out = run(capsys, *argv)
    assert code == cli.EXIT_OK and ("PASS" in out.out or "3/3 draws pass" in out.out)


def test_verify_reports_failure(capsys):
    # q above the admissible range is a precondition error, not a failed check
    code, _ = run(capsys, "verify", "frakB", "--alpha", "0.3", "--beta", "0.6", "--gamma", "0.7", "--q", "0.5")
    assert code == cli.EXIT_INVALID


def test_bl_check(tmp_path, capsys):
    path = tmp_path / "datum.txt"
    path.write_text(DATUM + "exponents 1 1\nlower 0 0\n")
    code, out = run(capsys, "bl-check", str(path))
    assert code == cli.EXIT_OK and "holds" in out.out and "feasible exponents" in out.out
    assert "dimension condition: holds (lattice-restricted)" in out.out
    path.write_text(DATUM + "exponents 1 2\n")
    code, out = run(capsys, "bl-check", str(path))
    assert code == cli.EXIT_FAILED and "FAILS" in out.out
    path.write_text("dim 2\nmap 1\n1 0 0\n")
    assert run(capsys, "bl-check", str(path))[0] == cli.EXIT_INVALID

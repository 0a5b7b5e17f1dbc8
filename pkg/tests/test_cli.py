import math
import subprocess
import sys
import pytest

from spinbijection import cli
from spinbijection.bijection import ClusterSpec, inverse_polynomials
from spinbijection.hamiltonian import SpinCouplings, solve_periodic_constraints
from spinbijection.partition import ChainSpec, SymbolicZ, partition_symbolic


def run(capsys, *argv):
    code = cli.run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_inverse_2_2(capsys):
    code, out, _ = run(capsys, "inverse", "--p", "2", "--M", "2")
    assert code == 0
    assert "weight 1: [0, -7/6, 0, 2/3]" in out
    assert "weight 2: [0, 13/12, 0, -1/3]" in out
    assert "weight\tj=0\tj=1\tj=2\tj=3" in out


@pytest.mark.parametrize("fmt", ["text", "tsv"])
@pytest.mark.parametrize("p, M", [(2, 3), (3, 2), (4, 2)])
def test_inverse_output_roundtrips(capsys, fmt, p, M):
    code, out, _ = run(capsys, "inverse", "--p", str(p), "--M", str(M), "--format", fmt)
    assert code == 0
    spec = ClusterSpec(p, M)
    assert cli.parse_inverse(out) == dict(zip(spec.weights, inverse_polynomials(spec)))


def test_roundtrip_trivial(capsys):
    code, out, _ = run(capsys, "roundtrip", "--p", "7", "--M", "1")
    assert code == 0 and "PASS" in out


def test_partition_symbolic_z2(capsys):
    code, out, _ = run(capsys, "partition", "--M", "2", "--symbolic")
    assert code == 0
    assert out.splitlines() == ["2 * exp(-1/2*J + 0*h)", "1 * exp(1/2*J + -1*h)", "1 * exp(1/2*J + 1*h)"]
    assert SymbolicZ.parse(out) == partition_symbolic(ChainSpec(2))


def test_partition_numeric(capsys):
    code, out, _ = run(capsys, "partition", "--M", "3", "--J", "1", "--h", "0", "--format", "tsv")
    assert code == 0
    values = dict(line.split("\t") for line in out.splitlines())
    assert set(values) == {"closed_form", "transfer_matrix", "symbolic"}
    # 2 exp(3/4) + 6 exp(-1/4), printed with 17 significant digits
    assert float(values["closed_form"]) == pytest.approx(2 * math.exp(0.75) + 6 * math.exp(-0.25), rel=1e-15)
    assert all(len(v.replace(".", "").lstrip("0")) <= 17 for v in values.values())


def test_free_energy(capsys):
    code, out, _ = run(capsys, "free-energy", "--J", "1", "--h", "0")
    assert code == 0 and out == "f = 0.72407698418010669\n"


def test_solve_periodic(capsys):
    code, out, _ = run(capsys, "solve", "--case", "periodic", "--J77", "1", "--h6", "1")
    assert code == 0
    assert "J11 = 8991341559/389120\n" in out
    assert out.endswith("K1 = 105840/19\nK2 = 360\n")


def test_solve_free_and_exact(capsys):
    code, out, _ = run(capsys, "solve", "--case", "free", "--J77", "1", "--h6", "1")
    assert code == 0 and "h2 = 1429/16" in out and out.endswith("K3 = -90\n")
    code, out, _ = run(capsys, "solve", "--case", "exact", "--J55", "0", "--J57", "0", "--J77", "64")
    assert code == 0 and out.endswith("K11 = 11432925\nK22 = 118364400\nK33 = -131947200\n")


def test_reduce_from_file(capsys, tmp_path):
    c = solve_periodic_constraints(1, 1).couplings
    path = tmp_path / "periodic.txt"
    path.write_text(c.to_text())
    code, out, _ = run(capsys, "reduce", "--couplings", str(path))
    assert code == 0
    lines = dict(line.split(" = ") for line in out.splitlines())
    assert list(lines)[:3] == ["K11", "K12", "K13"] and list(lines)[-1] == "offset"
    assert lines["K11"] == lines["K22"] == lines["K33"] == "105840/19"
    assert lines["R"] == "0"


def test_reduce_bad_file(capsys, tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("J11 = 1\nJ99 = 2\ngamma = 4\n")
    code, _, err = run(capsys, "reduce", "--couplings", str(path))
    assert code == 1 and "J99" in err
    code, _, err = run(capsys, "reduce", "--couplings", str(tmp_path / "missing.txt"))
    assert code == 1


def test_derive(capsys):
    code, out, _ = run(capsys, "derive", "--p", "2", "--M", "2")
    assert code == 0
    assert "K12: J11=2 J13=5 J33=91/8\n" in out
    assert out.endswith("constant: J22=25/16 gamma*h2=5/4\n")
    code, out, _ = run(capsys, "derive", "--p", "2", "--M", "2", "--format", "tsv")
    assert "K21\tJ22\t5\n" in out


def test_errata(capsys):
    code, out, _ = run(capsys, "errata")
    assert code == 0
    assert sum(line.startswith("[") for line in out.splitlines()) == 5
    code, out, _ = run(capsys, "errata", "--format", "tsv")
    assert out.splitlines()[1:] == [
        "index-order\tfails\tholds",
        "sign-p2-M3\tfails\tholds",
        "typeset-p3-M3\tfails\tholds",
        "gap-factor\tfails\tholds",
        "free-energy-sinh\tfails\tholds",
    ]


def test_output_file(capsys, tmp_path):
    target = tmp_path / "z4.txt"
    code, out, _ = run(capsys, "partition", "--M", "4", "--symbolic", "--output", str(target))
    assert code == 0 and out == ""
    assert SymbolicZ.parse(target.read_text()) == partition_symbolic(ChainSpec(4))


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["bogus"],
        ["inverse", "--p", "2"],
        ["inverse", "--p", "2", "--M", "2", "--unknown"],
        ["inverse", "--p", "x", "--M", "2"],
        ["partition", "--M", "3"],
        ["partition", "--M", "3", "--symbolic", "--J", "1"],
        ["partition", "--M", "3", "--J", "nan", "--h", "0"],
        ["solve", "--case", "periodic", "--J77", "1"],
        ["solve", "--case", "exact", "--J77", "1/0"],
        ["inverse", "--p", "2", "--M", "17", "--limit", "200000"],
        ["free-energy", "--J", "1"],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert out == "" and err


@pytest.mark.parametrize(
    "argv",
    [
        ["roundtrip", "--p", "2", "--M", "21"],
        ["inverse", "--p", "2", "--M", "17"],
        ["inverse", "--p", "1", "--M", "2"],
        ["derive", "--p", "2", "--M", "9"],
        ["partition", "--M", "21", "--symbolic"],
        ["partition", "--M", "20", "--J", "300", "--h", "0"],
    ],
)
def test_domain_errors_exit_1(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 1
    assert out == "" and err


def test_limit_override_needs_acknowledgment(capsys):
    code, _, err = run(capsys, "partition", "--M", "21", "--symbolic", "--limit", "21")
    assert code == 2 and "--accept-limit" in err
    code, out, _ = run(capsys, "derive", "--p", "3", "--M", "2", "--limit", "300", "--accept-limit")
    assert code == 0 and "\nK11: J11=1 " in out


def test_numeric_partition_has_no_size_limit(capsys):
    code, out, _ = run(capsys, "partition", "--M", "50", "--J", "0.1", "--h", "0.1")
    assert code == 0 and "symbolic" not in out


def test_help_exits_0(capsys):
    code, out, _ = run(capsys, "--help")
    assert code == 0 and "errata" in out


def test_console_script_is_deterministic():
    cmd = [sys.executable, "-m", "spinbijection.cli", "partition", "--M", "6", "--symbolic"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second and first.count(b"\n") == len(partition_symbolic(ChainSpec(6)).terms)

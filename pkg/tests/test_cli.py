import json

import numpy as np
import pytest

from gateport import linalg as la
from gateport import bases, cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_gate_file_round_trip(tmp_path):
    path = tmp_path / "gate.json"
    m = la.haar_random_unitary(4, 0)
    cli.write_gate_file(str(path), m, name="sample")
    name, back = cli.read_gate_file(str(path))
    assert name == "sample"
    assert np.array_equal(back, m)  # bit-exact round trip
    # writing the read-back document reproduces the file byte for byte
    path2 = tmp_path / "gate2.json"
    cli.write_gate_file(str(path2), back, name=name)
    assert path.read_bytes() == path2.read_bytes()


def test_basis_file_round_trips_every_constructor(tmp_path):
    constructors = [
        bases.bell_basis(),
        bases.m1_basis(),
        bases.m2_basis(),
        bases.beta_ab_basis(0.3, np.sqrt(0.5 - 0.09)),
        bases.beta_nl_basis(0.0, np.pi / 4, 0.37),
        bases.conjugated_pauli_basis(la.haar_random_unitary(2, 5)),
        bases.phase_paired_basis(la.haar_random_unitary(4, 6), np.exp(1j * np.pi / 4), 1j),
    ]
    for i, b in enumerate(constructors):
        path = tmp_path / f"basis{i}.json"
        cli.write_basis_file(str(path), b)
        back = cli.read_basis_file(str(path))
        assert back.name == b.name
        for u, v in zip(back.vectors, b.vectors):
            assert np.array_equal(u, v)


def test_resolve_named_gates():
    assert np.allclose(cli.resolve_gate("cnot", 1e-9), la.CNOT)
    assert np.allclose(cli.resolve_gate("swap", 1e-9), la.SWAP)
    sq = cli.resolve_gate("cnot_sqrt", 1e-9)
    assert np.linalg.norm(sq @ sq - la.CNOT) < 1e-10
    t = cli.resolve_gate("t:0.3,0.7", 1e-9)
    assert np.allclose(t, np.diag([1j, np.exp(0.3j), np.exp(0.7j), 1j * np.exp(1.0j)]))


def test_resolve_gate_from_file(tmp_path):
    path = tmp_path / "gate.json"
    cli.write_gate_file(str(path), la.CZ)
    assert np.allclose(cli.resolve_gate(f"@{path}", 1e-9), la.CZ)
    cli.write_gate_file(str(path), np.diag([1, 1, 1, 0.5]).astype(complex))
    with pytest.raises(cli.ValidationError):
        cli.resolve_gate(f"@{path}", 1e-9)


def test_resolve_bases():
    assert cli.resolve_basis("bell", 1e-9).name == "bell"
    b = cli.resolve_basis("beta_ab:0.5", 1e-9)
    assert b.is_orthonormal(1e-10)
    b = cli.resolve_basis("pauli_conj:h", 1e-9)
    assert b.is_orthonormal(1e-10)
    with pytest.raises(cli.UsageError):
        cli.resolve_basis("nope", 1e-9)
    with pytest.raises(cli.ValidationError):
        cli.resolve_basis("beta_ab:0.9", 1e-9)


def test_kak_command(capsys):
    code, out, _ = run(capsys, "kak", "--gate", "cnot")
    assert code == 0
    assert "theta: (0.785398, 0.000000, 0.000000)" in out
    code, out, _ = run(capsys, "kak", "--gate", "swap")
    assert "theta: (0.785398, 0.785398, 0.785398)" in out
    code, out, _ = run(capsys, "kak", "--gate", "t:0.3927,0.3927")
    assert "clifford: False" in out


def test_analyze_command(capsys):
    code, out, _ = run(capsys, "analyze", "--gate", "cnot", "--basis", "bell")
    assert code == 0
    assert "success probability: 1.000" in out
    code, out, _ = run(capsys, "analyze", "--gate", "cnot", "--basis", "m1")
    assert "success probability: 0.000" in out
    code, out, _ = run(capsys, "analyze", "--gate", "swap_sqrt", "--basis", "m2", "--verify")
    assert code == 0
    assert "success probability: 0.250" in out


def test_analyze_json(capsys):
    code, out, _ = run(capsys, "analyze", "--gate", "cnot", "--basis", "m2", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["n_separable"] == 8
    assert doc["success_probability"] == 0.5
    assert len(doc["outcomes"]) == 16


def test_tables_command_self_checks(capsys):
    code, out, _ = run(capsys, "tables")
    assert code == 0
    assert "table-1 self-check: ok" in out
    assert "table-2 self-check: ok" in out


def test_scan_commands(capsys):
    from gateport.teleport import analyze_gate_teleport

    code, out, _ = run(capsys, "scan", "--gate", "cnot", "--family", "beta_ab", "--grid", "8")
    assert code == 0
    rows = out.strip().splitlines()
    assert rows[0] == "t,a,b,success"
    for row in rows[1:]:
        t, a, b, p = (float(x) for x in row.split(","))
        # every scanned point agrees with a direct analysis; away from the
        # a*b = 0 points (where the family degenerates to the Bell basis
        # and cnot teleports deterministically) the success is zero
        a_exact, b_exact = np.cos(t) / np.sqrt(2), np.sin(t) / np.sqrt(2)
        direct = analyze_gate_teleport(la.CNOT, bases.beta_ab_basis(a_exact, b_exact)).success_probability
        assert p == direct
        assert p == (1.0 if abs(a_exact * b_exact) < 1e-9 else 0.0)
    code, out, _ = run(capsys, "scan", "--gate", "exp_yy", "--family", "beta_ab", "--grid", "8")
    rows = out.strip().splitlines()
    assert all(row.endswith(",1.0000") for row in rows[1:])
    code, out, _ = run(capsys, "scan", "--gate", "cnot", "--family", "beta_nl", "--grid", "4")
    assert code == 0
    rows = out.strip().splitlines()
    assert rows[0] == "theta1,theta2,success"
    # invalid grid points are reported as zero capability, not errors
    assert any(row.endswith(",0.0000") for row in rows[1:])


def test_scan_rejects_tiny_grid(capsys):
    code, _, err = run(capsys, "scan", "--gate", "cnot", "--family", "beta_ab", "--grid", "1")
    assert code == 1


def test_simulate_command(capsys):
    code, out, _ = run(
        capsys, "simulate", "--gate", "t:0.449,0.242", "--basis", "m2", "--trials", "100", "--seed", "7"
    )
    assert code == 0
    assert "overall min fidelity: 1.000000" in out


def test_validate_basis_command(capsys):
    code, out, _ = run(capsys, "validate-basis", "--basis", "beta_nl:0.3,0.1,0")
    assert code == 0
    assert "teleportation capability: zero" in out
    code, out, _ = run(capsys, "validate-basis", "--basis", "bell")
    assert "all beta unitary: True" in out


def test_fourway_command(capsys):
    code, out, _ = run(capsys, "fourway", "--gate", "c_pi8")
    assert code == 0
    line = [l for l in out.splitlines() if l.startswith("max corrected fidelity")][0]
    assert float(line.split(":")[1]) < 1.0


def test_state_teleport_command(capsys):
    code, out, _ = run(capsys, "state-teleport", "--basis", "bell")
    assert code == 0
    assert "deterministic: True" in out


def test_usage_error_exit_code(capsys):
    code, _, err = run(capsys, "analyze", "--gate", "nope", "--basis", "bell")
    assert code == 1
    code, _, err = run(capsys, "kak", "--gate", "t:1")
    assert code == 1


def test_validation_error_exit_code(capsys, tmp_path):
    path = tmp_path / "bad.json"
    cli.write_gate_file(str(path), np.diag([1, 1, 1, 0.5]).astype(complex))
    code, _, err = run(capsys, "analyze", "--gate", f"@{path}", "--basis", "bell")
    assert code == 2
    assert "not unitary" in err


def test_tables_self_check_exit_code(capsys, monkeypatch):
    monkeypatch.setattr(cli, "_TABLE1_EXPECTED", np.zeros((5, 3)))
    code, _, err = run(capsys, "tables")
    assert code == 3


def test_env_var_tolerance(monkeypatch):
    monkeypatch.setenv("GATEPORT_TOL", "1e-3")
    parser = cli._build_parser()
    args = parser.parse_args(["kak", "--gate", "cnot"])
    assert args.tol == 1e-3
    args = parser.parse_args(["kak", "--gate", "cnot", "--tol", "1e-7"])
    assert args.tol == 1e-7


def test_byte_identical_reruns(capsys):
    _, out1, _ = run(capsys, "analyze", "--gate", "cnot", "--basis", "m2", "--verify", "--seed", "3")
    _, out2, _ = run(capsys, "analyze", "--gate", "cnot", "--basis", "m2", "--verify", "--seed", "3")
    assert out1 == out2
    _, out1, _ = run(capsys, "scan", "--gate", "swap", "--family", "beta_ab", "--grid", "6")
    _, out2, _ = run(capsys, "scan", "--gate", "swap", "--family", "beta_ab", "--grid", "6")
    assert out1 == out2

"""Command-line surface: gate/basis specs, file formats, reports, scans.

Exit codes: 0 success, 1 usage or parse error, 2 numerical validation
failure (non-unitary gate, non-orthonormal basis), 3 table self-check
mismatch.  GATEPORT_TOL overrides the default tolerance; an explicit
--tol flag wins over the environment.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .linalg import (
    CNOT,
    CZ,
    H,
    I2,
    PAULIS,
    Q_GATE,
    R_GATE,
    S,
    SWAP,
    is_unitary,
    principal_sqrt,
    random_state,
    tensor,
)
from .kak import classify_nonlocal, is_clifford, kak_decompose, nonlocal_gate
from .bases import (
    MeasurementBasis,
    bell_basis,
    beta_ab_basis,
    beta_nl_basis,
    conjugated_pauli_basis,
    m1_basis,
    m2_basis,
    validate_basis,
)
from .teleport import (
    C_PI8,
    EXP_YY,
    PAIR_ORDER,
    analyze_gate_teleport,
    analyze_state_teleport,
    bell_resource,
    reproduce_table1,
    t_gate,
    table2_factors,
    theorem1_check,
)
from .simulator import run_gate_teleport, sample_gate_teleport
from .fourway import analyze_fourway


class UsageError(Exception):
    exit_code = 1


class ValidationError(Exception):
    exit_code = 2


class SelfCheckError(Exception):
    exit_code = 3


# --- number / file formats -------------------------------------------------

def _f17(x: float) -> float:
    """Round-trip through 17 significant digits (value-preserving)."""
    return float(f"{float(x):.17g}")


def _complex_pair(z: complex):
    return [_f17(z.real), _f17(z.imag)]


def _pair_complex(p) -> complex:
    if not isinstance(p, (list, tuple)) or len(p) != 2:
        raise UsageError(f"expected [re, im] pair, got {p!r}")
    return complex(float(p[0]), float(p[1]))


def _rows_to_doc(m: np.ndarray):
    return [[_complex_pair(z) for z in row] for row in np.asarray(m, dtype=complex)]


def _doc_to_rows(doc, shape) -> np.ndarray:
    try:
        m = np.array([[_pair_complex(p) for p in row] for row in doc], dtype=complex)
    except (TypeError, ValueError) as e:
        raise UsageError(f"malformed complex matrix: {e}")
    if m.shape != shape:
        raise UsageError(f"expected shape {shape}, got {m.shape}")
    return m


def write_gate_file(path: str, matrix: np.ndarray, name: str = "") -> None:
    doc = {"matrix": _rows_to_doc(matrix)}
    if name:
        doc["name"] = name
    with open(path, "w") as fh:
        json.dump(doc, fh, sort_keys=True, indent=1)
        fh.write("\n")


def read_gate_file(path: str) -> tuple[str, np.ndarray]:
    with open(path) as fh:
        doc = json.load(fh)
    return doc.get("name", ""), _doc_to_rows(doc["matrix"], (4, 4))


def write_basis_file(path: str, basis: MeasurementBasis) -> None:
    doc = {"vectors": [[_complex_pair(z) for z in v] for v in basis.vectors]}
    if basis.name:
        doc["name"] = basis.name
    with open(path, "w") as fh:
        json.dump(doc, fh, sort_keys=True, indent=1)
        fh.write("\n")


def read_basis_file(path: str) -> MeasurementBasis:
    with open(path) as fh:
        doc = json.load(fh)
    rows = _doc_to_rows(doc["vectors"], (4, 4))
    return MeasurementBasis(tuple(rows[i] for i in range(4)), doc.get("name", ""))


# --- spec resolution --------------------------------------------------------

_SINGLE_QUBIT_NAMED = {"i": I2, "x": PAULIS["X"], "y": PAULIS["Y"], "z": PAULIS["Z"], "h": H, "s": S}


def _parse_floats(text: str, n: int, what: str):
    parts = text.split(",")
    if len(parts) != n:
        raise UsageError(f"{what} takes {n} comma-separated numbers, got {text!r}")
    try:
        return [float(p) for p in parts]
    except ValueError:
        raise UsageError(f"{what}: could not parse numbers in {text!r}")


def resolve_gate(spec: str, tol: float) -> np.ndarray:
    named = {
        "cnot": lambda: CNOT,
        "swap": lambda: SWAP,
        "q": lambda: Q_GATE,
        "r": lambda: R_GATE,
        "cz": lambda: CZ,
        "c_pi8": lambda: C_PI8,
        "cnot_sqrt": lambda: principal_sqrt(CNOT),
        "swap_sqrt": lambda: principal_sqrt(SWAP),
        "exp_yy": lambda: EXP_YY,
    }
    key = spec.strip().lower()
    if key in named:
        return named[key]()
    if key.startswith("t:"):
        phi, xi = _parse_floats(spec[2:], 2, "t:phi,xi")
        return t_gate(phi, xi)
    if key.startswith("kak:"):
        t1, t2, t3 = _parse_floats(spec[4:], 3, "kak:t1,t2,t3")
        return nonlocal_gate((t1, t2, t3))
    if spec.startswith("@"):
        _, m = read_gate_file(spec[1:])
        if not is_unitary(m, tol):
            raise ValidationError(f"gate from {spec[1:]} is not unitary within {tol}")
        return m
    raise UsageError(f"unknown gate spec {spec!r}")


def _resolve_single_qubit(spec: str) -> np.ndarray:
    key = spec.strip().lower()
    if key in _SINGLE_QUBIT_NAMED:
        return _SINGLE_QUBIT_NAMED[key]
    if spec.startswith("@"):
        with open(spec[1:]) as fh:
            doc = json.load(fh)
        return _doc_to_rows(doc["matrix"], (2, 2))
    vals = _parse_floats(spec, 8, "2x2 matrix (re,im x 4 entries)")
    return np.array(
        [[complex(vals[0], vals[1]), complex(vals[2], vals[3])],
         [complex(vals[4], vals[5]), complex(vals[6], vals[7])]]
    )


def resolve_basis(spec: str, tol: float) -> MeasurementBasis:
    key = spec.strip().lower()
    if key == "bell":
        return bell_basis()
    if key == "m1":
        return m1_basis()
    if key == "m2":
        return m2_basis()
    if key.startswith("beta_ab:"):
        vals = spec[len("beta_ab:"):]
        nums = vals.split(",")
        if len(nums) == 1:
            a = float(nums[0])
            bsq = 0.5 - a * a
            if bsq < -1e-12:
                raise ValidationError(f"beta_ab: |a| must be at most 1/sqrt(2), got {a}")
            b = float(np.sqrt(max(bsq, 0.0)))
        else:
            a, b = _parse_floats(vals, 2, "beta_ab:a,b")
        try:
            return beta_ab_basis(a, b)
        except ValueError as e:
            raise ValidationError(str(e))
    if key.startswith("beta_nl:"):
        t1, t2, t3 = _parse_floats(spec[len("beta_nl:"):], 3, "beta_nl:t1,t2,t3")
        return beta_nl_basis(t1, t2, t3)
    if key.startswith("pauli_conj:"):
        u_r = _resolve_single_qubit(spec[len("pauli_conj:"):])
        if not is_unitary(u_r, tol):
            raise ValidationError("pauli_conj matrix is not unitary")
        return conjugated_pauli_basis(u_r)
    if spec.startswith("@"):
        basis = read_basis_file(spec[1:])
        if not basis.is_orthonormal(tol):
            raise ValidationError(f"basis from {spec[1:]} is not orthonormal within {tol}")
        return basis
    raise UsageError(f"unknown basis spec {spec!r}")


# --- output helpers ---------------------------------------------------------

def _fmt_c(z: complex) -> str:
    re = z.real + 0.0
    im = z.imag + 0.0
    return f"{re:+.6f}{im:+.6f}j"


def _fmt_mat(m: np.ndarray, indent: str = "    ") -> str:
    return "\n".join(indent + "  ".join(_fmt_c(z) for z in row) for row in np.asarray(m))


def _jsonable(obj):
    if isinstance(obj, np.ndarray):
        if obj.ndim == 1:
            return [_complex_pair(complex(z)) for z in obj]
        return _rows_to_doc(obj)
    if isinstance(obj, complex):
        return _complex_pair(obj)
    if isinstance(obj, (np.floating, float)):
        return _f17(float(obj))
    if isinstance(obj, (np.integer, int)):
        return int(obj)
    if isinstance(obj, (list, tuple)):
        return [_jsonable(x) for x in obj]
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    return obj


def _emit_json(doc) -> None:
    print(json.dumps(_jsonable(doc), sort_keys=True, indent=1))


# --- subcommands ------------------------------------------------------------

def cmd_kak(args) -> int:
    g = resolve_gate(args.gate, args.tol)
    d = kak_decompose(g, args.tol)
    cls = classify_nonlocal(d.theta)
    clifford = is_clifford(g)
    if args.format == "json":
        _emit_json(
            {
                "gate": args.gate,
                "theta": list(d.theta),
                "global_phase": d.global_phase,
                "a_local": d.a_local,
                "b_local": d.b_local,
                "c_local": d.c_local,
                "d_local": d.d_local,
                "delta": list(cls.delta),
                "odd_quarter_pi": list(cls.odd_quarter_pi),
                "is_swap_point": cls.is_swap_point,
                "is_clifford": clifford,
            }
        )
        return 0
    print(f"gate: {args.gate}")
    print(f"theta: ({d.theta[0]:.6f}, {d.theta[1]:.6f}, {d.theta[2]:.6f})")
    print(f"global phase: {d.global_phase:.6f}")
    for label, m in (("A", d.a_local), ("B", d.b_local), ("C", d.c_local), ("D", d.d_local)):
        print(f"local {label}:")
        print(_fmt_mat(m))
    print(f"delta: {cls.delta}  odd_quarter_pi: {cls.odd_quarter_pi}  swap_point: {cls.is_swap_point}")
    print(f"clifford: {clifford}")
    return 0


def cmd_analyze(args) -> int:
    g = resolve_gate(args.gate, args.tol)
    basis = resolve_basis(args.basis, args.tol)
    report = analyze_gate_teleport(g, basis)
    verdict = theorem1_check(g, basis)
    fidelities = None
    if args.verify:
        rng = np.random.default_rng(args.seed)
        mins = np.ones(16)
        for _ in range(args.inputs):
            psi = random_state(4, rng)
            r = run_gate_teleport(psi, g, basis, report.correction_inverses())
            mins = np.minimum(mins, r.fidelities)
        fidelities = mins
    if args.format == "json":
        doc = {
            "gate": args.gate,
            "basis": args.basis,
            "n_separable": report.n_separable,
            "success_probability": report.success_probability,
            "deterministic": report.deterministic,
            "outcomes": [
                {
                    "j": j + 1,
                    "k": k + 1,
                    "separable": report.separable[idx],
                    "correction_a": None if report.corrections[idx] is None else report.corrections[idx][0],
                    "correction_b": None if report.corrections[idx] is None else report.corrections[idx][1],
                    "w_matrix": report.w_matrices[idx],
                    **({"min_fidelity": float(fidelities[idx])} if fidelities is not None else {}),
                }
                for idx, (j, k) in enumerate(PAIR_ORDER)
            ],
            "theorem1": {
                "condition1_met": verdict.condition1_met,
                "condition2_met": verdict.condition2_met,
                "conclusion": verdict.conclusion,
                "branch": verdict.branch,
            },
        }
        _emit_json(doc)
        return 0
    print(f"gate: {args.gate}   basis: {args.basis}")
    header = " j k separable"
    if fidelities is not None:
        header += "  min_fidelity"
    print(header)
    for idx, (j, k) in enumerate(PAIR_ORDER):
        line = f" {j + 1} {k + 1} {str(report.separable[idx]):<9}"
        if fidelities is not None:
            line += f"  {fidelities[idx]:.9f}"
        print(line)
    print(f"separable outcomes: {report.n_separable}/16")
    print(f"success probability: {report.success_probability:.3f}")
    print(f"deterministic: {report.deterministic}")
    print(
        f"theorem1: {verdict.conclusion}"
        f" (condition1: {verdict.condition1_met}, condition2: {verdict.condition2_met}"
        + (f", branch: {verdict.branch}" if verdict.branch else "")
        + ")"
    )
    return 0


_TABLE1_GATES = ("cnot", "c_pi8", "cnot_sqrt", "swap_sqrt", "exp_yy")
_TABLE1_EXPECTED = np.array(
    [[1, 0, 0.5], [0.5, 0, 0.5], [0.5, 0, 0.25], [0.25, 0.25, 0.25], [1, 1, 0.25]]
)
_TABLE2_LABELS = {
    (0, 0): ("P", "-P"),
    (0, 1): ("P.Z", "-V_phi.Z"),
    (0, 2): ("P.Z", "i V_phi"),
    (0, 3): ("P", "P.Y.X"),
    (1, 0): ("-V_xi.Z", "P.Z"),
    (1, 1): ("V_xi", "V_phi"),
    (1, 2): ("V_xi", "-V_phi.Z"),
    (1, 3): ("-V_xi.Z", "i P"),
    (2, 0): ("V_xi", "i P.Z"),
    (2, 1): ("-V_xi.Z", "i V_phi"),
    (2, 2): ("V_xi.Z", "-V_phi.Z"),
    (2, 3): ("-V_xi", "P"),
    (3, 0): ("P.Y.X", "P"),
    (3, 1): ("i P", "-V_phi.Z"),
    (3, 2): ("P", "-V_phi"),
    (3, 3): ("P.Z", "P.Z"),
}


def cmd_tables(args) -> int:
    table1 = reproduce_table1()
    ok = np.allclose(table1, _TABLE1_EXPECTED, atol=1e-9)
    print("success probabilities (rows: cnot, c_pi8, cnot_sqrt, swap_sqrt, exp_yy)")
    print(f"{'gate':<10} {'bell':>6} {'m1':>6} {'m2':>6}")
    for name, row in zip(_TABLE1_GATES, table1):
        print(f"{name:<10} {row[0]:>6.3f} {row[1]:>6.3f} {row[2]:>6.3f}")
    print(f"table-1 self-check: {'ok' if ok else 'MISMATCH'}")

    phi, xi = np.pi / 8, np.pi / 8
    report = analyze_gate_teleport(t_gate(phi, xi), m2_basis())
    symbolic = table2_factors(phi, xi)
    print()
    print("correction factors of t:pi/8,pi/8 under m2 (phase aligns numeric to symbolic)")
    print(" j k  first       second       phase")
    ok2 = True
    for idx, (j, k) in enumerate(PAIR_ORDER):
        corr = report.corrections[idx]
        sym = symbolic[idx]
        labels = _TABLE2_LABELS[(j, k)]
        if corr is None:
            ok2 = False
            print(f" {j + 1} {k + 1}  NOT SEPARABLE")
            continue
        num = tensor(corr[0], corr[1])
        ref = tensor(sym[0], sym[1])
        idxmax = np.unravel_index(np.argmax(np.abs(ref)), ref.shape)
        c = num[idxmax] / ref[idxmax]
        match = np.linalg.norm(num - c * ref) <= 1e-8 and abs(abs(c) - 1) <= 1e-8
        ok2 = ok2 and match
        print(
            f" {j + 1} {k + 1}  {labels[0]:<11} {labels[1]:<12} {np.angle(c):+.6f}"
            + ("" if match else "  MISMATCH")
        )
    print(f"table-2 self-check: {'ok' if ok2 else 'MISMATCH'}")
    if not (ok and ok2):
        raise SelfCheckError("table reproduction mismatch")
    return 0


def cmd_scan(args) -> int:
    g = resolve_gate(args.gate, args.tol)
    if args.grid < 2:
        raise UsageError("grid must be at least 2 points per axis")
    if args.family == "beta_ab":
        print("t,a,b,success")
        for i in range(args.grid):
            t = 2 * np.pi * i / args.grid
            a = np.cos(t) / np.sqrt(2)
            b = np.sin(t) / np.sqrt(2)
            basis = beta_ab_basis(a, b)
            p = analyze_gate_teleport(g, basis).success_probability
            print(f"{t:.9f},{a:.9f},{b:.9f},{p:.4f}")
        return 0
    if args.family == "beta_nl":
        print("theta1,theta2,success")
        for i in range(args.grid):
            t1 = -np.pi + 2 * np.pi * i / args.grid
            for j in range(args.grid):
                t2 = -np.pi + 2 * np.pi * j / args.grid
                basis = beta_nl_basis(t1, t2, 0.0)
                p = analyze_gate_teleport(g, basis).success_probability
                print(f"{t1:.9f},{t2:.9f},{p:.4f}")
        return 0
    raise UsageError(f"unknown family {args.family!r}")


def cmd_state_teleport(args) -> int:
    basis = resolve_basis(args.basis, args.tol)
    u_front = resolve_gate(args.front, args.tol) if args.front else None
    report = analyze_state_teleport(bell_resource(), u_front, basis)
    if args.format == "json":
        _emit_json(
            {
                "basis": args.basis,
                "front": args.front,
                "probabilities": list(report.probabilities),
                "teleportable": list(report.teleportable),
                "corrections": [c for c in report.corrections],
                "deterministic": report.deterministic,
                "entanglement": report.entanglement,
            }
        )
        return 0
    print(f"basis: {args.basis}   front gate: {args.front or 'none'}")
    print(f"resource entanglement |det psi|: {report.entanglement:.6f}")
    for j in range(4):
        print(f" outcome {j + 1}: p = {report.probabilities[j]:.6f}  teleportable = {report.teleportable[j]}")
        if report.corrections[j] is not None:
            print(_fmt_mat(report.corrections[j]))
    print(f"deterministic: {report.deterministic}")
    return 0


def cmd_simulate(args) -> int:
    g = resolve_gate(args.gate, args.tol)
    basis = resolve_basis(args.basis, args.tol)
    report = analyze_gate_teleport(g, basis)
    rng = np.random.default_rng(args.seed)
    psi = random_state(4, rng)
    record, per_outcome = sample_gate_teleport(
        psi, g, basis, report.correction_inverses(), args.trials, args.seed
    )
    print(f"gate: {args.gate}   basis: {args.basis}   trials: {args.trials}   seed: {args.seed}")
    print(" j k  hits  min_fidelity  mean_fidelity")
    for idx, (j, k) in enumerate(PAIR_ORDER):
        fids = per_outcome.get(idx, [])
        if not fids:
            print(f" {j + 1} {k + 1}  {0:>4}  -             -")
            continue
        print(f" {j + 1} {k + 1}  {len(fids):>4}  {min(fids):.6f}      {float(np.mean(fids)):.6f}")
    overall = [f for fids in per_outcome.values() for f in fids]
    print(f"overall min fidelity: {min(overall):.6f}")
    return 0


def cmd_fourway(args) -> int:
    g = resolve_gate(args.gate, args.tol)
    basis = resolve_basis(args.basis, args.tol)
    rng = np.random.default_rng(args.seed)
    psi = random_state(4, rng)
    report = analyze_fourway(g, basis, psi)
    if args.format == "json":
        _emit_json(
            {
                "gate": args.gate,
                "basis": args.basis,
                "clifford_case": report.clifford_case,
                "branch_xx_separable": list(report.branch_xx_separable),
                "branch_zz_separable": list(report.branch_zz_separable),
                "probabilities": list(report.probabilities),
                "fidelities_raw": list(report.fidelities_raw),
                "fidelities_corrected": list(report.fidelities_corrected),
                "max_corrected_fidelity": report.max_corrected_fidelity,
            }
        )
        return 0
    print(f"gate: {args.gate}   basis: {args.basis}   seed: {args.seed}")
    print(f"clifford case: {report.clifford_case}")
    print(" j k  p        xx_sep  zz_sep  fidelity  corrected")
    for idx, (j, k) in enumerate(PAIR_ORDER):
        print(
            f" {j + 1} {k + 1}  {report.probabilities[idx]:.4f}  "
            f"{str(report.branch_xx_separable[idx]):<6}  {str(report.branch_zz_separable[idx]):<6}  "
            f"{report.fidelities_raw[idx]:.6f}  {report.fidelities_corrected[idx]:.6f}"
        )
    print(f"max corrected fidelity: {report.max_corrected_fidelity:.6f}")
    return 0


def cmd_validate_basis(args) -> int:
    basis = resolve_basis(args.basis, args.tol)
    report = validate_basis(basis, args.tol)
    capability_zero = not report.all_beta_unitary
    if args.format == "json":
        _emit_json(
            {
                "basis": args.basis,
                "orthonormal": report.orthonormal,
                "all_beta_unitary": report.all_beta_unitary,
                "per_vector_entanglement": list(report.per_vector_entanglement),
                "capability_zero": capability_zero,
            }
        )
        return 0
    print(f"basis: {args.basis}")
    print(f"orthonormal: {report.orthonormal}")
    print(f"all beta unitary: {report.all_beta_unitary}")
    for j, e in enumerate(report.per_vector_entanglement):
        print(f" vector {j + 1} entanglement |det|: {e:.6f}")
    if capability_zero:
        print("teleportation capability: zero")
    return 0


# --- driver -----------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _build_parser() -> argparse.ArgumentParser:
    env_tol = os.environ.get("GATEPORT_TOL")
    default_tol = float(env_tol) if env_tol else 1e-9

    p = _Parser(prog="gateport", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, basis=False, fmt=True):
        sp.add_argument("--tol", type=float, default=default_tol)
        if fmt:
            sp.add_argument("--format", choices=("human", "json"), default="human")

    sp = sub.add_parser("kak", help="canonical decomposition of a gate")
    sp.add_argument("--gate", required=True)
    common(sp)
    sp.set_defaults(func=cmd_kak)

    sp = sub.add_parser("analyze", help="per-outcome teleportability of a gate")
    sp.add_argument("--gate", required=True)
    sp.add_argument("--basis", required=True)
    sp.add_argument("--verify", action="store_true", help="run the statevector oracle")
    sp.add_argument("--inputs", type=int, default=5, help="oracle inputs per outcome")
    sp.add_argument("--seed", type=int, default=0)
    common(sp)
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("tables", help="reproduce the reference tables (self-checking)")
    common(sp, fmt=False)
    sp.set_defaults(func=cmd_tables)

    sp = sub.add_parser("scan", help="success probability over a basis family")
    sp.add_argument("--gate", required=True)
    sp.add_argument("--family", choices=("beta_ab", "beta_nl"), required=True)
    sp.add_argument("--grid", type=int, default=16)
    common(sp, fmt=False)
    sp.set_defaults(func=cmd_scan)

    sp = sub.add_parser("state-teleport", help="single-qubit teleportation report")
    sp.add_argument("--basis", required=True)
    sp.add_argument("--front", default=None, help="optional front gate spec")
    common(sp)
    sp.set_defaults(func=cmd_state_teleport)

    sp = sub.add_parser("simulate", help="Monte Carlo gate teleportation")
    sp.add_argument("--gate", required=True)
    sp.add_argument("--basis", required=True)
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    common(sp, fmt=False)
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("fourway", help="four-way-entangled-resource analysis")
    sp.add_argument("--gate", required=True)
    sp.add_argument("--basis", default="bell")
    sp.add_argument("--seed", type=int, default=0)
    common(sp)
    sp.set_defaults(func=cmd_fourway)

    sp = sub.add_parser("validate-basis", help="orthonormality / capability report")
    sp.add_argument("--basis", required=True)
    common(sp)
    sp.set_defaults(func=cmd_validate_basis)

    return p


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except ValidationError as e:
        print(f"validation error: {e}", file=sys.stderr)
        return 2
    except SelfCheckError as e:
        print(f"self-check failed: {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())

"""Brute-force statevector oracle for the teleportation circuits.

Registers are immutable snapshots of dense statevectors (at most 8
qubits).  Qubit 0 is the most significant amplitude-index bit.

Circuit layouts checked against the analytical module:

* State teleportation (3 qubits): 0 = resource carrier, 1 = resource
  partner, 2 = input.  The front gate and the measurement act on the
  (partner, input) pair in that order.
* Gate teleportation (6 qubits): 0,1 = two-qubit input, (2,3) and (4,5)
  = resource pairs with carriers 2 and 4.  The front gate and the
  measurements act on the (input, partner) pairs (0,3) and (1,5) in
  that order; the teleported gate acts on the carriers (2,4).

The measured-pair orderings differ between the two circuits; this is
what makes the state_form and gate_form beta layouts transposes of each
other.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import require_unitary, tensor
from .bases import MeasurementBasis, require_orthonormal
from .teleport import PAIR_ORDER, ResourceState

MAX_QUBITS = 8


@dataclass(frozen=True, eq=False)
class Register:
    state: np.ndarray
    n: int


@dataclass(frozen=True)
class MeasurementRecord:
    outcome_indices: tuple[int, ...]
    probabilities: tuple[float, ...]


@dataclass(frozen=True, eq=False)
class StateSimResult:
    fidelities: tuple[float, ...]
    probabilities: tuple[float, ...]


@dataclass(frozen=True, eq=False)
class GateSimResult:
    """Row-major (j, k) outcome order, matching GateTeleportReport."""

    fidelities: tuple[float, ...]
    probabilities: tuple[float, ...]


def register_from(parts, n: int) -> Register:
    """Assemble a register from (amplitudes, qubit positions) fragments
    covering all n qubits exactly once."""
    if not 1 <= n <= MAX_QUBITS:
        raise ValueError(f"register width must be 1..{MAX_QUBITS}")
    covered = [q for _, qs in parts for q in qs]
    if sorted(covered) != list(range(n)):
        raise ValueError("fragments must cover every qubit exactly once")
    tensor_state = np.array(1.0, dtype=complex)
    order = []
    for amps, qubits in parts:
        amps = np.asarray(amps, dtype=complex)
        k = len(qubits)
        tensor_state = np.tensordot(tensor_state, amps.reshape((2,) * k), axes=0)
        order.extend(qubits)
    perm = np.argsort(order)
    state = tensor_state.transpose(perm).reshape(-1)
    if abs(np.linalg.norm(state) - 1.0) > 1e-9:
        raise ValueError("assembled register is not normalized")
    return Register(state, n)


def apply_gate(reg: Register, gate: np.ndarray, targets) -> Register:
    """Apply a 2x2 or 4x4 unitary on the target qubits (identity elsewhere)."""
    targets = tuple(targets)
    if len(set(targets)) != len(targets):
        raise ValueError("targets must be distinct")
    if any(not 0 <= q < reg.n for q in targets):
        raise IndexError("target out of range")
    k = len(targets)
    gate = require_unitary(gate, 1e-9, "gate")
    if gate.shape != (2**k, 2**k):
        raise ValueError("gate dimension does not match target count")
    t = reg.state.reshape((2,) * reg.n)
    gt = gate.reshape((2,) * (2 * k))
    t = np.tensordot(gt, t, axes=(tuple(range(k, 2 * k)), targets))
    t = np.moveaxis(t, tuple(range(k)), targets)
    return Register(t.reshape(-1), reg.n)


def pair_probabilities(reg: Register, targets, basis: MeasurementBasis) -> np.ndarray:
    """Outcome distribution of a projective pair measurement."""
    require_orthonormal(basis)
    t = reg.state.reshape((2,) * reg.n)
    probs = []
    for v in basis.vectors:
        bra = np.conj(v).reshape(2, 2)
        rest = np.tensordot(bra, t, axes=((0, 1), targets))
        probs.append(float(np.linalg.norm(rest) ** 2))
    return np.array(probs)


def _project(reg: Register, targets, vector) -> tuple[float, np.ndarray]:
    """Probability and the renormalized residual tensor (targets removed)."""
    t = reg.state.reshape((2,) * reg.n)
    bra = np.conj(np.asarray(vector)).reshape(2, 2)
    rest = np.tensordot(bra, t, axes=((0, 1), targets))
    p = float(np.linalg.norm(rest) ** 2)
    return p, rest


def measure_pair(
    reg: Register,
    targets,
    basis: MeasurementBasis,
    forced_outcome: int | None = None,
    seed=None,
):
    """Projective measurement of a qubit pair in an orthonormal basis.

    Returns (outcome index, outcome probability, post-measurement
    register).  With forced_outcome the projection is deterministic
    (forcing a zero-probability outcome is an error); otherwise the
    outcome is sampled with the caller's seed.
    """
    require_orthonormal(basis)
    targets = tuple(targets)
    probs = pair_probabilities(reg, targets, basis)
    if forced_outcome is None:
        rng = np.random.default_rng(seed)
        outcome = int(rng.choice(4, p=probs / probs.sum()))
    else:
        outcome = int(forced_outcome)
        if probs[outcome] <= 1e-12:
            raise ValueError(f"outcome {outcome} has zero probability")
    p, rest = _project(reg, targets, basis.vectors[outcome])
    post = np.tensordot(
        np.asarray(basis.vectors[outcome]).reshape(2, 2), rest / np.sqrt(p), axes=0
    )
    post = np.moveaxis(post, (0, 1), targets)
    return outcome, float(probs[outcome]), Register(post.reshape(-1), reg.n)


def run_state_teleport(
    input_xi: np.ndarray,
    resource: ResourceState,
    u_front: np.ndarray | None,
    basis: MeasurementBasis,
    corrections=None,
    seed=None,
) -> StateSimResult:
    """Force each outcome of the single-qubit circuit and score fidelity.

    Corrections are applied verbatim to the carrier qubit; to undo
    outcome j of an analysis report, pass its correction_inverses().
    """
    xi = np.asarray(input_xi, dtype=complex)
    if abs(np.linalg.norm(xi) - 1) > 1e-9:
        raise ValueError("input state must be normalized")
    require_orthonormal(basis)
    reg = register_from([(resource.psi.reshape(-1), (0, 1)), (xi, (2,))], 3)
    if u_front is not None:
        reg = apply_gate(reg, u_front, (1, 2))
    fids, probs = [], []
    for j in range(4):
        p, rest = _project(reg, (1, 2), basis.vectors[j])
        probs.append(p)
        if p <= 1e-12:
            fids.append(0.0)
            continue
        out = rest / np.sqrt(p)
        if corrections is not None and corrections[j] is not None:
            out = corrections[j] @ out
        fids.append(float(abs(np.vdot(xi, out)) ** 2))
    return StateSimResult(tuple(fids), tuple(probs))


def _gate_circuit(input_ab, u_t, basis, u_front):
    ab = np.asarray(input_ab, dtype=complex)
    if abs(np.linalg.norm(ab) - 1) > 1e-9:
        raise ValueError("input state must be normalized")
    u_t = require_unitary(u_t, 1e-9, "teleported gate")
    require_orthonormal(basis)
    bell = np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2)
    reg = register_from([(ab, (0, 1)), (bell, (2, 3)), (bell, (4, 5))], 6)
    if u_front is not None:
        reg = apply_gate(reg, u_front, (0, 3))
        reg = apply_gate(reg, u_front, (1, 5))
    return ab, reg


def run_gate_teleport(
    input_ab: np.ndarray,
    u_t: np.ndarray,
    basis: MeasurementBasis,
    corrections=None,
    u_front: np.ndarray | None = None,
    seed=None,
) -> GateSimResult:
    """Force all 16 outcomes of the two-pair circuit and score fidelity
    of the corrected carrier state against u_t|input>.

    Correction pairs are applied verbatim (first factor on the first
    carrier); pass a report's correction_inverses() to undo outcomes.
    """
    ab, reg = _gate_circuit(input_ab, u_t, basis, u_front)
    target = u_t @ ab
    t6 = reg.state.reshape((2,) * 6)
    fids, probs = [], []
    for idx, (j, k) in enumerate(PAIR_ORDER):
        braj = np.conj(basis.vectors[j]).reshape(2, 2)
        brak = np.conj(basis.vectors[k]).reshape(2, 2)
        # Project (0,3) then (1,5); axes shift after the first contraction.
        rest = np.tensordot(braj, t6, axes=((0, 1), (0, 3)))  # axes now 1,2,4,5
        rest = np.tensordot(brak, rest, axes=((0, 1), (0, 3)))  # axes now 2,4
        out = rest.reshape(-1)
        p = float(np.linalg.norm(out) ** 2)
        probs.append(p)
        if p <= 1e-12:
            fids.append(0.0)
            continue
        out = u_t @ (out / np.sqrt(p))
        if corrections is not None and corrections[idx] is not None:
            ca, cb = corrections[idx]
            out = tensor(ca, cb) @ out
        fids.append(float(abs(np.vdot(target, out)) ** 2))
    return GateSimResult(tuple(fids), tuple(probs))


def outcome_distribution(
    input_ab: np.ndarray,
    u_t: np.ndarray,
    basis: MeasurementBasis,
    u_front: np.ndarray | None = None,
) -> np.ndarray:
    """Exact joint probabilities of the 16 measurement outcomes."""
    return np.array(
        run_gate_teleport(input_ab, u_t, basis, corrections=None, u_front=u_front).probabilities
    )


def sample_gate_teleport(
    input_ab: np.ndarray,
    u_t: np.ndarray,
    basis: MeasurementBasis,
    corrections,
    trials: int,
    seed,
) -> tuple[MeasurementRecord, dict[int, list[float]]]:
    """Monte Carlo runs with sampled outcomes; returns the record of
    sampled (j,k) pairs (flattened index) and per-outcome fidelities."""
    result = run_gate_teleport(input_ab, u_t, basis, corrections)
    probs = np.array(result.probabilities)
    rng = np.random.default_rng(seed)
    outcomes = rng.choice(16, size=trials, p=probs / probs.sum())
    per_outcome: dict[int, list[float]] = {}
    for o in outcomes:
        per_outcome.setdefault(int(o), []).append(result.fidelities[int(o)])
    return (
        MeasurementRecord(tuple(int(o) for o in outcomes), tuple(float(probs[o]) for o in outcomes)),
        per_outcome,
    )

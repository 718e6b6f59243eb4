"""Teleportability analysis of states and two-qubit gates.

Single-qubit side: with resource coefficients psi and measurement basis
{b_j}, outcome j acts on the teleported qubit through M_j = psi @ B_j
(B_j in state_form).  The outcome is correctable iff M_j^dag M_j is
proportional to the identity; the per-outcome operator is then
V_j = M_j / sqrt(p_j) and the receiver applies its inverse.

Two-qubit side: outcome (j,k) acts through W = U_T (b_j (x) b_k) U_T^dag
(gate_form matrices).  The gate teleports on that outcome iff W is a
tensor product of single-qubit factors, which are the correction pair.
Success probability is (number of separable outcomes) / 16.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .linalg import (
    CNOT,
    H,
    I2,
    S,
    SWAP,
    SX,
    SY,
    SZ,
    dag,
    is_unitary,
    principal_sqrt,
    require_unitary,
    tensor,
)
from .kak import (
    NonlocalClass,
    classify_nonlocal,
    euler_zyz,
    kak_decompose,
    nonlocal_gate,
)
from .bases import (
    MeasurementBasis,
    bell_basis,
    beta_matrices,
    m1_basis,
    m2_basis,
    require_orthonormal,
)
from .separability import SEPARABLE_TOL, tensor_factorize

# Controlled phase-of-pi/4 gate and the pi/8 phase gate it is built from.
C_PI8 = np.diag([1, 1, 1, np.exp(1j * np.pi / 4)]).astype(complex)
PI8 = np.diag([1, np.exp(1j * np.pi / 4)]).astype(complex)
EXP_YY = nonlocal_gate((0.0, np.pi / 4, 0.0))

PAIR_ORDER = tuple(itertools.product(range(4), repeat=2))


def t_gate(phi: float, xi: float) -> np.ndarray:
    """diag(i, e^{i*phi}, e^{i*xi}, i e^{i(phi+xi)}); non-Clifford for
    generic angles yet deterministically teleportable under Bell-like
    bases."""
    return np.diag(
        [1j, np.exp(1j * phi), np.exp(1j * xi), 1j * np.exp(1j * (phi + xi))]
    ).astype(complex)


@dataclass(frozen=True, eq=False)
class ResourceState:
    """2x2 coefficient matrix psi of the two-qubit resource, |nm> -> psi[n,m]."""

    psi: np.ndarray


def bell_resource() -> ResourceState:
    return ResourceState(I2 / np.sqrt(2))


@dataclass(frozen=True, eq=False)
class StateTeleportReport:
    m_matrices: tuple[np.ndarray, ...]
    probabilities: tuple[float, ...]
    teleportable: tuple[bool, ...]
    corrections: tuple[np.ndarray | None, ...]
    deterministic: bool
    entanglement: float

    def correction_inverses(self) -> tuple[np.ndarray | None, ...]:
        """The operators the receiver actually applies (V_j^dag)."""
        return tuple(None if v is None else dag(v) for v in self.corrections)


@dataclass(frozen=True, eq=False)
class GateTeleportReport:
    """Per-outcome results in row-major (j, k) order, 0-based indices."""

    w_matrices: tuple[np.ndarray, ...]
    separable: tuple[bool, ...]
    corrections: tuple[tuple[np.ndarray, np.ndarray] | None, ...]
    n_separable: int
    success_probability: float
    deterministic: bool

    def correction_inverses(self):
        return tuple(
            None if c is None else (dag(c[0]), dag(c[1])) for c in self.corrections
        )


@dataclass(frozen=True)
class Theorem1Verdict:
    condition1_met: bool
    condition2_met: bool
    conclusion: str  # "deterministic" or "not_covered"
    nonlocal_class: NonlocalClass
    quarter_k: tuple[int | None, int | None, int | None]
    branch: str | None
    pair_witnesses: tuple | None


def analyze_state_teleport(
    resource: ResourceState,
    u_front: np.ndarray | None,
    basis: MeasurementBasis,
    tol: float = 1e-8,
) -> StateTeleportReport:
    """Per-outcome teleportability of a single qubit through the Fig.-1-style
    circuit with front gate u_front on the (partner, input) pair."""
    psi = np.asarray(resource.psi, dtype=complex)
    if abs(np.linalg.norm(psi) - 1.0) > 1e-9:
        raise ValueError("resource state must be normalized")
    require_orthonormal(basis)
    state_betas = beta_matrices(basis, u_front, "state_form").mats

    m_matrices, probs, flags, corrections = [], [], [], []
    for b in state_betas:
        m = psi @ b
        gram = dag(m) @ m
        p = float(np.trace(gram).real / 2.0)
        ok = p > 1e-12 and np.linalg.norm(gram - p * np.eye(2)) <= tol
        m_matrices.append(m)
        probs.append(p)
        flags.append(bool(ok))
        corrections.append(m / np.sqrt(p) if ok else None)

    deterministic = all(ok or p <= 1e-12 for ok, p in zip(flags, probs))
    return StateTeleportReport(
        m_matrices=tuple(m_matrices),
        probabilities=tuple(probs),
        teleportable=tuple(flags),
        corrections=tuple(corrections),
        deterministic=deterministic,
        entanglement=float(abs(np.linalg.det(psi))),
    )


def analyze_gate_teleport(
    u_t: np.ndarray,
    basis: MeasurementBasis,
    u_front: np.ndarray | None = None,
    tol: float = SEPARABLE_TOL,
) -> GateTeleportReport:
    """Separability verdict and corrections for each of the 16 outcomes."""
    u_t = require_unitary(u_t, 1e-9, "teleported gate")
    require_orthonormal(basis)
    gate_betas = beta_matrices(basis, u_front, "gate_form").mats

    w_matrices = tuple(
        u_t @ tensor(gate_betas[j], gate_betas[k]) @ dag(u_t) for j, k in PAIR_ORDER
    )
    if not all(is_unitary(b, 1e-8) for b in gate_betas):
        # A non-unitary beta means a disentangled basis vector: no outcome
        # admits a unitary local correction.
        return GateTeleportReport(
            w_matrices=w_matrices,
            separable=(False,) * 16,
            corrections=(None,) * 16,
            n_separable=0,
            success_probability=0.0,
            deterministic=False,
        )

    separable, corrections = [], []
    for w in w_matrices:
        f = tensor_factorize(w, tol)
        separable.append(f.separable)
        if f.separable:
            corrections.append((np.exp(1j * f.phase) * f.factor_a, f.factor_b))
        else:
            corrections.append(None)
    n = sum(separable)
    return GateTeleportReport(
        w_matrices=w_matrices,
        separable=tuple(separable),
        corrections=tuple(corrections),
        n_separable=n,
        success_probability=n / 16.0,
        deterministic=(n == 16),
    )


def reproduce_table1() -> np.ndarray:
    """Success probabilities of the five reference gates under the three
    reference bases (rows CNOT, controlled-pi/4, CNOT^1/2, SWAP^1/2,
    exp(i pi/4 YY); columns Bell, M1, M2)."""
    gates = [CNOT, C_PI8, principal_sqrt(CNOT), principal_sqrt(SWAP), EXP_YY]
    bases_ = [bell_basis(), m1_basis(), m2_basis()]
    table = np.zeros((5, 3))
    for i, g in enumerate(gates):
        for j, b in enumerate(bases_):
            table[i, j] = analyze_gate_teleport(g, b).success_probability
    return table


def table2_factors(phi: float, xi: float):
    """Symbolic correction factors for t_gate under the m2 basis.

    Returned as 16 (first, second) matrix pairs in row-major (j, k)
    order; each pair equals the numerically extracted factorization of
    T (b_j (x) b_k) T^dag up to a global phase.
    """
    P = np.diag([1, 1j]).astype(complex)
    PZ = P @ SZ
    PYX = P @ SY @ SX

    def V(alpha):
        return np.array(
            [[0, -1j * np.exp(-1j * alpha)], [1j * np.exp(1j * alpha), 0]],
            dtype=complex,
        )

    Vp, Vx = V(phi), V(xi)
    entries = {
        (0, 0): (P, -P),
        (0, 1): (PZ, -Vp @ SZ),
        (0, 2): (PZ, 1j * Vp),
        (0, 3): (P, PYX),
        (1, 0): (-Vx @ SZ, PZ),
        (1, 1): (Vx, Vp),
        (1, 2): (Vx, -Vp @ SZ),
        (1, 3): (-Vx @ SZ, 1j * P),
        (2, 0): (Vx, 1j * PZ),
        (2, 1): (-Vx @ SZ, 1j * Vp),
        (2, 2): (Vx @ SZ, -Vp @ SZ),
        (2, 3): (-Vx, P),
        (3, 0): (PYX, P),
        (3, 1): (1j * P, -Vp @ SZ),
        (3, 2): (P, -Vp),
        (3, 3): (PZ, PZ),
    }
    return tuple(entries[jk] for jk in PAIR_ORDER)


# --- Theorem-style sufficient conditions for deterministic teleportation ---

# Axis-moving conjugators for a single quarter-pi angle: h sigma_x h^dag
# is the axis named by the key.  Each mode names the Euler-angle lattice
# the conjugated basis factors must satisfy on that representative.
_AXIS_REPS = (
    ("x", I2, "all"),  # exp(i(2k+1)pi/4 XX): factors must be Pauli-like
    ("z", H, "middle"),  # exp(.. ZZ): factors diagonal or antidiagonal
    ("y", S, "outer"),  # exp(.. YY): factors real up to phase
)


def _lattice_witness(m: np.ndarray, mode: str, tol: float):
    """Integer multiples of pi for the constrained ZYZ angles of m, or
    None if a constrained angle is off-lattice."""
    e = euler_zyz(m)

    def near(x):
        r = x % np.pi
        return (r <= tol or r >= np.pi - tol), int(np.rint(x / np.pi))

    checks = {"all": (True, True, True), "middle": (False, True, False), "outer": (True, False, True)}[mode]
    out = []
    for constrained, ang in zip(checks, (e.lambda1, e.lambda2, e.lambda3)):
        if not constrained:
            out.append(None)
            continue
        ok, n = near(ang)
        if not ok:
            return None
        out.append(n)
    return tuple(out)


def theorem1_check(u_t: np.ndarray, basis: MeasurementBasis, tol: float = 1e-8) -> Theorem1Verdict:
    """Sufficient-condition check for deterministic teleportation.

    Condition 2 (swap-point non-local part) works with any basis whose
    gate_form matrices are unitary.  Condition 1 requires every
    non-local angle on the {0, (2k+1)pi/4} lattice and the basis
    matrices, conjugated by the right-side locals, to sit on an
    Euler-angle lattice; which angles are constrained depends on the
    active axes, so all single-axis representatives are tried.  The
    conditions are sufficient only: "not_covered" is not a proof of
    non-teleportability.
    """
    u_t = require_unitary(u_t, 1e-9, "teleported gate")
    require_orthonormal(basis)
    d = kak_decompose(u_t)
    cls = classify_nonlocal(d.theta, tol)
    gate_betas = beta_matrices(basis, None, "gate_form").mats
    basis_valid = all(is_unitary(b, 1e-8) for b in gate_betas)

    quarter_k = tuple(
        int(np.rint((t / (np.pi / 4) - 1) / 2)) if q else None
        for t, q in zip(d.theta, cls.odd_quarter_pi)
    )
    condition2 = cls.is_swap_point and basis_valid

    condition1 = False
    branch = None
    pair_witnesses = None
    on_lattice = all((not dl) or q for dl, q in zip(cls.delta, cls.odd_quarter_pi))
    if basis_valid and on_lattice:
        n_active = sum(cls.delta)
        if n_active == 0:
            # Locally trivial non-local part: the conjugated pair is a
            # tensor product of unitaries for every outcome.
            condition1 = True
            branch = "local"
            pair_witnesses = None
        else:
            # With several active axes only the Pauli lattice applies;
            # a single active axis may be re-expressed along x, y or z,
            # each with its own (weaker) angle constraint.
            reps = _AXIS_REPS if n_active == 1 else _AXIS_REPS[:1]
            for axis, h, mode in reps:
                side_c = [
                    _lattice_witness(h @ d.c_local @ b @ dag(d.c_local) @ dag(h), mode, tol)
                    for b in gate_betas
                ]
                side_d = [
                    _lattice_witness(h @ d.d_local @ b @ dag(d.d_local) @ dag(h), mode, tol)
                    for b in gate_betas
                ]
                if all(w is not None for w in side_c) and all(w is not None for w in side_d):
                    condition1 = True
                    branch = f"axis_{axis}"
                    pair_witnesses = tuple(
                        (side_c[j], side_d[k]) for j, k in PAIR_ORDER
                    )
                    break

    conclusion = "deterministic" if (condition1 or condition2) else "not_covered"
    return Theorem1Verdict(
        condition1_met=condition1,
        condition2_met=condition2,
        conclusion=conclusion,
        nonlocal_class=cls,
        quarter_k=quarter_k,
        branch=branch if condition1 else None,
        pair_witnesses=pair_witnesses,
    )

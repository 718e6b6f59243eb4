"""Two-qubit measurement bases and their induced single-qubit matrices.

A basis is four orthonormal vectors |b_1..4> on the measured pair.  Each
vector induces a 2x2 matrix of overlaps <b_j|U|xy>, in one of two entry
layouts:

* ``state_form``: entry [m, y] = <b_j|U|my>, no prefactor.  This is the
  layout that multiplies the resource-coefficient matrix in single-qubit
  teleportation.
* ``gate_form``: entry [y, x] = sqrt(2) <b_j|U|xy>.  This transposed,
  rescaled layout is the per-outcome operator whose tensor squares drive
  two-qubit gate teleportation; it is unitary exactly when the basis
  vector is maximally entangled.

The two layouts differ because the two circuits wire the measured pair
in opposite orders (resource partner first for state teleportation,
input qubit first for gate teleportation).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import I4, PAULIS, dag, is_unitary, require_unitary
from .kak import nonlocal_gate

_SQ2 = np.sqrt(2.0)


@dataclass(frozen=True, eq=False)
class MeasurementBasis:
    vectors: tuple[np.ndarray, ...]
    name: str = ""

    def matrix(self) -> np.ndarray:
        """Vectors as columns."""
        return np.column_stack(self.vectors)

    def is_orthonormal(self, tol: float = 1e-9) -> bool:
        m = self.matrix()
        return np.linalg.norm(dag(m) @ m - np.eye(4)) <= tol


@dataclass(frozen=True, eq=False)
class BetaMatrices:
    mats: tuple[np.ndarray, ...]
    convention: str


@dataclass(frozen=True)
class BasisReport:
    orthonormal: bool
    all_beta_unitary: bool
    per_vector_entanglement: tuple[float, float, float, float]


def _basis(rows, name: str) -> MeasurementBasis:
    return MeasurementBasis(tuple(np.asarray(v, dtype=complex) for v in rows), name)


def require_orthonormal(basis: MeasurementBasis, tol: float = 1e-9) -> MeasurementBasis:
    if not basis.is_orthonormal(tol):
        raise ValueError(f"basis {basis.name or '<anonymous>'} is not orthonormal within {tol}")
    return basis


def bell_basis() -> MeasurementBasis:
    """The four Bell vectors, inducing gate_form matrices {I, X, Z, -iY}."""
    s = 1 / _SQ2
    return _basis(
        [[s, 0, 0, s], [0, s, s, 0], [s, 0, 0, -s], [0, s, -s, 0]],
        "bell",
    )


def m1_basis() -> MeasurementBasis:
    """The real +-1/2 basis; equals beta_ab_basis(1/2, 1/2)."""
    return _basis(
        [
            [-0.5, 0.5, 0.5, 0.5],
            [-0.5, 0.5, -0.5, -0.5],
            [-0.5, -0.5, 0.5, -0.5],
            [0.5, 0.5, 0.5, -0.5],
        ],
        "m1",
    )


def m2_basis() -> MeasurementBasis:
    """Partially phase-rotated Bell-like basis."""
    s = 1 / _SQ2
    return _basis(
        [[1j * s, 0, 0, s], [0, -1j * s, 1j * s, 0], [0, s, s, 0], [s, 0, 0, 1j * s]],
        "m2",
    )


def beta_ab_basis(a: float, b: float) -> MeasurementBasis:
    """Real two-parameter basis on the circle a^2 + b^2 = 1/2."""
    if abs(a * a + b * b - 0.5) > 1e-9:
        raise ValueError("beta_ab parameters must satisfy a^2 + b^2 = 1/2")
    return _basis(
        [[-a, b, b, a], [-b, a, -a, -b], [-a, -b, b, -a], [b, a, a, -b]],
        f"beta_ab({a:g},{b:g})",
    )


def beta_nl_basis(theta1: float, theta2: float, theta3: float) -> MeasurementBasis:
    """Columns of exp(i(t1 XX + t2 YY + t3 ZZ)) as basis vectors.

    Always orthonormal; maximally entangled (and hence teleportation
    capable) only when t1 -/+ t2 both sit at pi/4 mod pi/2.  Use
    validate_basis for the verdict.
    """
    u = nonlocal_gate((theta1, theta2, theta3))
    return _basis(
        [u[:, j] for j in range(4)],
        f"beta_nl({theta1:g},{theta2:g},{theta3:g})",
    )


def conjugated_pauli_basis(u_r: np.ndarray) -> MeasurementBasis:
    """Basis whose gate_form matrices are u_r^dag sigma u_r.

    The sigma order (I, X, Z, Y) makes u_r = I reproduce the Bell basis
    up to a phase on the fourth vector.
    """
    u_r = require_unitary(u_r, 1e-9, "conjugating unitary")
    vecs = []
    for label in ("I", "X", "Z", "Y"):
        m = dag(u_r) @ PAULIS[label] @ u_r
        v = np.zeros(4, dtype=complex)
        for x in range(2):
            for y in range(2):
                v[2 * x + y] = np.conj(m[y, x]) / _SQ2
        vecs.append(v)
    return _basis(vecs, "pauli_conj")


def phase_paired_basis(u: np.ndarray, diag_phase: complex, off_phase: complex) -> MeasurementBasis:
    """Basis {U|00> -/+ p1 U|11>, U|01> -/+ p2 U|10>} / sqrt(2).

    Pairs the columns of a front gate U with adjustable relative phases
    (minus combinations first); p1 = p2 = 1 on U = I gives the Bell
    basis up to ordering.
    """
    u = require_unitary(u, 1e-9, "front gate")
    c = [u[:, k] for k in range(4)]
    return _basis(
        [
            (c[0] - diag_phase * c[3]) / _SQ2,
            (c[0] + diag_phase * c[3]) / _SQ2,
            (c[1] - off_phase * c[2]) / _SQ2,
            (c[1] + off_phase * c[2]) / _SQ2,
        ],
        "phase_paired",
    )


def beta_matrices(
    basis: MeasurementBasis,
    u_front: np.ndarray | None = None,
    convention: str = "gate_form",
) -> BetaMatrices:
    """Overlap matrices <b_j|U|xy> in the requested entry layout."""
    if convention not in ("state_form", "gate_form"):
        raise ValueError("convention must be state_form or gate_form")
    u = I4 if u_front is None else require_unitary(u_front, 1e-9, "front gate")
    mats = []
    for v in basis.vectors:
        overlap = np.array(
            [[np.vdot(v, u[:, 2 * x + y]) for y in range(2)] for x in range(2)]
        )
        if convention == "state_form":
            mats.append(overlap)
        else:
            mats.append(_SQ2 * overlap.T)
    return BetaMatrices(tuple(mats), convention)


def vector_entanglement(v: np.ndarray) -> float:
    """|det| of the 2x2 amplitude reshape; 1/2 for maximally entangled,
    0 for product vectors."""
    return float(abs(np.linalg.det(np.asarray(v).reshape(2, 2))))


def validate_basis(basis: MeasurementBasis, tol: float = 1e-9) -> BasisReport:
    """Orthonormality, beta unitarity, and per-vector entanglement."""
    ent = tuple(vector_entanglement(v) for v in basis.vectors)
    ortho = basis.is_orthonormal(tol)
    betas = beta_matrices(basis, convention="gate_form")
    unitary = all(is_unitary(m, max(tol, 1e-9)) for m in betas.mats)
    return BasisReport(ortho, unitary, ent)

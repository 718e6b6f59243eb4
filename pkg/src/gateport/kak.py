"""Cartan decomposition of two-qubit gates into locals around a non-local core.

Any 4x4 unitary U factors as

    U = e^{i*phase} (A (x) B) exp(i(t1 XX + t2 YY + t3 ZZ)) (C (x) D)

with single-qubit unitaries A, B, C, D.  The angle triple is reported in
the canonical Weyl chamber  pi/4 >= t1 >= t2 >= |t3|, with t3 >= 0
whenever t1 = pi/4.

The extraction works in the magic basis, where local gates become real
orthogonal matrices and the XX/YY/ZZ generators are simultaneously
diagonal: conjugate U into that basis, diagonalize the complex symmetric
unitary m^T m over a real orthogonal eigenbasis, and split the
eigenphases between the non-local core and the two local factors.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import (
    H,
    I2,
    PAULIS,
    SX,
    SY,
    SZ,
    dag,
    kron_split,
    pauli_pairs,
    require_unitary,
    tensor,
)

MAGIC = np.array(
    [[1, 0, 0, 1j], [0, 1j, 1, 0], [0, 1j, -1, 0], [1, 0, 0, -1j]],
    dtype=complex,
) / np.sqrt(2)
_MAGIC_DAG = dag(MAGIC)

# Diagonal of sigma_ww in the magic basis; eigenphase j of the non-local
# core is phase + t1*dxx[j] + t2*dyy[j] + t3*dzz[j].
_DXX = np.array([1.0, 1.0, -1.0, -1.0])
_DYY = np.array([-1.0, 1.0, -1.0, 1.0])
_DZZ = np.array([1.0, -1.0, -1.0, 1.0])
_ANGLE_COLS = np.column_stack([np.ones(4), _DXX, _DYY, _DZZ])

# Hermitian single-qubit reflections exchanging two Pauli axes (and both
# qubits together leave the third axis invariant).
_AXIS_SWAPPERS = {
    (0, 1): (SX + SY) / np.sqrt(2),
    (0, 2): H,
    (1, 2): (SY + SZ) / np.sqrt(2),
}
_FLIPPERS = (SX, SY, SZ)


@dataclass(frozen=True, eq=False)
class KakDecomposition:
    """U = e^{i*global_phase} (a (x) b) exp(i theta.sigma_ww) (c (x) d)."""

    global_phase: float
    a_local: np.ndarray
    b_local: np.ndarray
    theta: tuple[float, float, float]
    c_local: np.ndarray
    d_local: np.ndarray


@dataclass(frozen=True)
class LocalEulerAngles:
    """u = e^{i*phase} Rz(lambda1) Ry(lambda2) Rz(lambda3)."""

    lambda1: float
    lambda2: float
    lambda3: float
    phase: float


@dataclass(frozen=True)
class NonlocalClass:
    """Lattice classification of canonical non-local angles.

    delta[w] is False iff theta_w = 0 (mod pi/2); odd_quarter_pi[w] is
    True iff theta_w = pi/4 (mod pi/2).  An angle with delta True but
    odd_quarter_pi False is generic (on neither lattice).
    """

    delta: tuple[bool, bool, bool]
    odd_quarter_pi: tuple[bool, bool, bool]
    is_swap_point: bool


def rot(axis: str, angle: float) -> np.ndarray:
    """Single-qubit rotation exp(-i*(angle/2)*sigma_axis)."""
    sig = PAULIS[axis.upper()]
    return np.cos(angle / 2) * I2 - 1j * np.sin(angle / 2) * sig


def nonlocal_gate(theta) -> np.ndarray:
    """exp(i(t1 XX + t2 YY + t3 ZZ)) from its angle triple."""
    t1, t2, t3 = theta
    out = np.eye(4, dtype=complex)
    for t, (f, s) in ((t1, (SX, SX)), (t2, (SY, SY)), (t3, (SZ, SZ))):
        out = out @ (np.cos(t) * np.eye(4) + 1j * np.sin(t) * tensor(f, s))
    return out


def kak_reconstruct(d: KakDecomposition) -> np.ndarray:
    return (
        np.exp(1j * d.global_phase)
        * tensor(d.a_local, d.b_local)
        @ nonlocal_gate(d.theta)
        @ tensor(d.c_local, d.d_local)
    )


def _sym_unitary_eigenbasis(s: np.ndarray, gap: float):
    """Real orthogonal p and phases 2*lam with s = p diag(e^{i 2 lam}) p^T.

    s must be complex symmetric unitary; its real and imaginary parts are
    then commuting real symmetric matrices, diagonalized simultaneously by
    grouping nearly-degenerate eigenspaces of the real part and rotating
    each block into an eigenbasis of the imaginary part.
    """
    a = (s.real + s.real.T) / 2
    b = (s.imag + s.imag.T) / 2
    wa, p = np.linalg.eigh(a)
    start = 0
    for stop in range(1, 5):
        if stop < 4 and wa[stop] - wa[stop - 1] <= gap:
            continue
        if stop - start > 1:
            block = p[:, start:stop]
            sub = block.T @ b @ block
            _, q = np.linalg.eigh((sub + sub.T) / 2)
            p[:, start:stop] = block @ q
        start = stop
    phases = np.angle(np.diag(p.T @ s @ p))
    return phases, p


def kak_decompose(u: np.ndarray, tol: float = 1e-9) -> KakDecomposition:
    """Canonical Weyl-chamber KAK decomposition of a 4x4 unitary."""
    u = require_unitary(u, tol, "input gate")
    if u.shape != (4, 4):
        raise ValueError("expected a 4x4 matrix")

    m = _MAGIC_DAG @ u @ MAGIC
    s = m.T @ m
    # Escalate the degeneracy-grouping width until s is actually
    # diagonalized; exact gates hit fourfold-degenerate spectra.
    best = None
    for gap in (1e-10, 1e-7, 1e-4):
        phases2, p = _sym_unitary_eigenbasis(s, gap)
        off = p.T @ s @ p - np.diag(np.exp(1j * phases2))
        err = np.linalg.norm(off)
        if best is None or err < best[0]:
            best = (err, phases2, p)
        if err <= 1e-10:
            break
    _, phases2, p = best

    if np.linalg.det(p) < 0:
        p[:, -1] *= -1
    lam = phases2 / 2.0
    k1 = m @ p @ np.diag(np.exp(-1j * lam))
    if np.linalg.det(k1).real < 0:
        lam[0] += np.pi
        k1[:, 0] *= -1
    k1 = k1.real

    phi, t1, t2, t3 = (_ANGLE_COLS.T @ lam) / 4.0
    ga, a, b = kron_split(MAGIC @ k1 @ _MAGIC_DAG)
    gc, c, d = kron_split(MAGIC @ p.T @ _MAGIC_DAG)
    phase = np.exp(1j * phi) * ga * gc
    return _canonicalize(phase, a, b, [t1, t2, t3], c, d)


def _canonicalize(phase, a, b, theta, c, d) -> KakDecomposition:
    eps = 1e-12

    def shift(k, n):
        # Moving theta_k by n*pi/2 costs a factor (-i sigma_k sigma_k)^n,
        # absorbed into the right locals and the global phase.
        nonlocal c, d, phase
        theta[k] += n * np.pi / 2
        phase *= (-1j) ** n
        if n % 2:
            c = _FLIPPERS[k] @ c
            d = _FLIPPERS[k] @ d

    def negate(k1, k2):
        nonlocal b, d
        k3 = 3 - k1 - k2
        theta[k1] *= -1
        theta[k2] *= -1
        b = b @ _FLIPPERS[k3]
        d = _FLIPPERS[k3] @ d

    def swap(k1, k2):
        nonlocal a, b, c, d
        h = _AXIS_SWAPPERS[(min(k1, k2), max(k1, k2))]
        theta[k1], theta[k2] = theta[k2], theta[k1]
        a = a @ h
        b = b @ h
        c = h @ c
        d = h @ d

    for k in range(3):
        while theta[k] > np.pi / 4 + eps:
            shift(k, -1)
        while theta[k] <= -np.pi / 4 + eps:
            shift(k, +1)

    if abs(theta[0]) < abs(theta[1]):
        swap(0, 1)
    if abs(theta[1]) < abs(theta[2]):
        swap(1, 2)
    if abs(theta[0]) < abs(theta[1]):
        swap(0, 1)

    if theta[0] < 0:
        negate(0, 2)
    if theta[1] < 0:
        negate(1, 2)
    # At the t1 = pi/4 chamber wall, t3 and -t3 are equivalent; pick t3 >= 0.
    if theta[0] > np.pi / 4 - 1e-10 and theta[2] < -1e-12:
        shift(0, -1)
        negate(0, 2)

    return KakDecomposition(
        global_phase=float(np.angle(phase)),
        a_local=a,
        b_local=b,
        theta=(float(theta[0]), float(theta[1]), float(theta[2])),
        c_local=c,
        d_local=d,
    )


def classify_nonlocal(theta, tol: float = 1e-8) -> NonlocalClass:
    """Classify canonical non-local angles against the pi/4 and pi/2 lattices."""
    delta = []
    odd_quarter = []
    for t in theta:
        r = t % (np.pi / 2)
        on_half_lattice = r <= tol or r >= np.pi / 2 - tol
        delta.append(not on_half_lattice)
        odd_quarter.append(abs(r - np.pi / 4) <= tol)
    swap_point = all(abs(abs(t) - np.pi / 4) <= tol for t in theta)
    return NonlocalClass(
        delta=tuple(delta),
        odd_quarter_pi=tuple(odd_quarter),
        is_swap_point=swap_point,
    )


def euler_zyz(u: np.ndarray, tol: float = 1e-9) -> LocalEulerAngles:
    """ZYZ angles of a single-qubit unitary, lambda2 in [0, pi].

    At the gauge-degenerate points lambda2 = 0 or pi only the combination
    lambda1 +/- lambda3 is defined; lambda3 = 0 is reported there.
    """
    u = require_unitary(u, tol, "single-qubit gate")
    lam2 = 2.0 * np.arctan2(abs(u[1, 0]), abs(u[0, 0]))
    if abs(u[1, 0]) <= 1e-12:
        lam1 = np.angle(u[1, 1] * np.conj(u[0, 0]))
        lam3 = 0.0
        phase = np.angle(u[0, 0] * np.exp(0.5j * lam1))
        lam2 = 0.0
    elif abs(u[0, 0]) <= 1e-12:
        lam1 = np.angle(u[1, 0] * np.conj(-u[0, 1]))
        lam3 = 0.0
        phase = np.angle(u[1, 0] * np.exp(-0.5j * lam1))
        lam2 = np.pi
    else:
        plus = np.angle(u[1, 1] * np.conj(u[0, 0]))
        minus = np.angle(u[1, 0] * np.conj(-u[0, 1]))
        lam1 = (plus + minus) / 2.0
        lam3 = (plus - minus) / 2.0
        phase = np.angle(u[0, 0] * np.exp(0.5j * (lam1 + lam3)))
        # The principal branches of plus/minus may wrap with odd parity,
        # which flips the sign of both off-diagonal entries; shifting all
        # three angles by pi restores them without touching the diagonal.
        pred10 = np.exp(1j * (phase + 0.5 * minus)) * np.sin(lam2 / 2)
        if (u[1, 0] * np.conj(pred10)).real < 0:
            lam1 += np.pi
            lam3 += np.pi
            phase += np.pi
        # Rz(x - 2pi) = -Rz(x), so every 2pi wrap costs pi of global phase.
        for wrapped, raw in ((_wrap(lam1), lam1), (_wrap(lam3), lam3)):
            if abs(wrapped - raw) > 1e-9:
                phase += np.pi
        lam1, lam3, phase = _wrap(lam1), _wrap(lam3), _wrap(phase)
    return LocalEulerAngles(float(lam1), float(lam2), float(lam3), float(phase))


def _wrap(angle: float) -> float:
    """Wrap to (-pi, pi]."""
    return float(np.angle(np.exp(1j * angle)))


def euler_reconstruct(e: LocalEulerAngles) -> np.ndarray:
    return np.exp(1j * e.phase) * rot("z", e.lambda1) @ rot("y", e.lambda2) @ rot("z", e.lambda3)


def is_clifford(u: np.ndarray, tol: float = 1e-8) -> bool:
    """True iff u maps every two-qubit Pauli product onto one, up to phase."""
    u = require_unitary(u, max(tol, 1e-9), "input gate")
    paulis = [m for _, m in pauli_pairs()]
    for sig in paulis:
        v = u @ sig @ dag(u)
        best = max(abs(np.trace(dag(p) @ v)) / 4.0 for p in paulis)
        if best < 1.0 - tol:
            return False
    return True

"""Tensor-product structure of two-qubit unitaries.

A 4x4 operator w expands as w = sum_s c_s A_s (x) B_s (its operator
Schmidt decomposition); w is a tensor product of single-qubit factors
exactly when the expansion has rank one.  The rank is read off the
singular values of the realigned matrix whose rows collect the A-side
indices and whose columns collect the B-side indices.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import I2, PAULIS, require_finite, require_unitary, tensor
from .kak import rot

# Second Schmidt coefficient below this (coefficients normalized to unit
# square sum) counts as separable: an order of magnitude above the 1e-9
# arithmetic noise floor, far below the smallest genuine coefficient in
# the gate families analyzed here (~0.38).
SEPARABLE_TOL = 1e-7


@dataclass(frozen=True, eq=False)
class TensorFactorization:
    """Verdict and factors of w ~ e^{i*phase} factor_a (x) factor_b."""

    separable: bool
    factor_a: np.ndarray | None
    factor_b: np.ndarray | None
    phase: float
    schmidt_values: np.ndarray


def _realign(w: np.ndarray) -> np.ndarray:
    """Regroup w[(2a+b),(2c+d)] into r[(2a+c),(2b+d)]."""
    return w.reshape(2, 2, 2, 2).transpose(0, 2, 1, 3).reshape(4, 4)


def operator_schmidt(w: np.ndarray) -> np.ndarray:
    """Operator Schmidt coefficients, descending, unit square sum."""
    w = require_finite(w)
    s = np.linalg.svd(_realign(w), compute_uv=False)
    total = np.linalg.norm(s)
    return s / total if total > 0 else s


def tensor_factorize(w: np.ndarray, tol: float = SEPARABLE_TOL) -> TensorFactorization:
    """Decide whether a unitary w is a tensor product and extract factors.

    factor_a is gauged so its largest-magnitude entry is real positive;
    the residual phase lands in `phase` with
    e^{i*phase} kron(factor_a, factor_b) = w.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    w = require_unitary(w, 1e-9, "factorization input")
    u, s, vh = np.linalg.svd(_realign(w))
    schmidt = s / 2.0
    if schmidt[1] > tol:
        return TensorFactorization(False, None, None, 0.0, schmidt)
    a = np.sqrt(2.0) * u[:, 0].reshape(2, 2)
    b = np.sqrt(2.0) * vh[0, :].reshape(2, 2)
    for m in (a, b):
        top = m.flat[gauge_index(m)]
        m *= np.conj(top) / abs(top)
    phase = np.angle(np.trace(tensor(a, b).conj().T @ w) / 4.0)
    return TensorFactorization(True, a, b, float(phase), schmidt)


def gauge_index(m: np.ndarray) -> int:
    """First row-major entry within 1e-9 of the maximum magnitude.

    A 2x2 unitary always carries tied magnitudes (|m00| = |m11| and
    |m01| = |m10|), so a plain argmax would be unstable under rounding.
    """
    mags = np.abs(np.asarray(m)).ravel()
    return int(np.argmax(mags > mags.max() - 1e-9))


_W_AXES = {1: ("z", 0), 2: ("z", 1), 3: ("y", 0), 4: ("y", 1)}
_W_PAULI_CHOICES = {1: ("X", "Y"), 2: ("X", "Y"), 3: ("X", "Z"), 4: ("X", "Z")}


def w_witness(kind: int, theta: float, lam: float, pauli: str = "X") -> np.ndarray:
    """One of the four conjugated-rotation witnesses.

    Kind 1/2 conjugates a first/second-qubit Z rotation by exp(i*theta*
    sigma_pp) with p in {X, Y}; kind 3/4 does the same for Y rotations
    with p in {X, Z}.
    """
    if kind not in _W_AXES:
        raise ValueError("kind must be 1..4")
    pauli = pauli.upper()
    if pauli not in _W_PAULI_CHOICES[kind]:
        raise ValueError(f"witness {kind} takes pauli in {_W_PAULI_CHOICES[kind]}")
    axis, slot = _W_AXES[kind]
    sig = PAULIS[pauli]
    conj = np.cos(theta) * np.eye(4) + 1j * np.sin(theta) * tensor(sig, sig)
    mid = tensor(rot(axis, lam), I2) if slot == 0 else tensor(I2, rot(axis, lam))
    return conj @ mid @ conj.conj().T


def eq44_separable(theta: float, lam: float) -> bool:
    """Closed-form separability of the witnesses at (theta, lam).

    The witnesses are tensor products exactly on the solution families
    (theta = k*pi/2, any lam), (any theta, lam = 2*k*pi) and
    (theta = (2k+1)*pi/4, lam = n*pi).
    """
    bracket = np.exp(0.5j * lam) * np.sin(theta) ** 2 + np.exp(-0.5j * lam) * np.cos(theta) ** 2
    value = np.sin(lam / 2.0) * np.sin(2.0 * theta) * bracket
    return bool(abs(value) <= 1e-10)

"""Dense Hermitian linear algebra helpers.

Provides the Pauli matrices, Kronecker-product utilities, persymmetry tests,
and a self-contained cyclic Jacobi eigenvalue solver for complex Hermitian
matrices.  The solver is used wherever the package needs a full spectrum, so
certification results do not depend on an external eigensolver.
"""
from __future__ import annotations

import math
from typing import Sequence, Tuple

import numpy as np

_PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex),
    "Y": np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex),
    "Z": np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex),
}

MAX_JACOBI_DIM = 64
_JACOBI_SWEEPS = 100


def pauli(label: str) -> np.ndarray:
    """Return the 2x2 Pauli matrix named by ``label`` in {I, X, Y, Z}."""
    try:
        return _PAULI[label].copy()
    except KeyError:
        raise ValueError(f"unknown Pauli label {label!r}") from None


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product of two matrices."""
    return np.kron(a, b)


def kron_all(mats: Sequence[np.ndarray]) -> np.ndarray:
    """Kronecker product of a nonempty sequence of matrices, left to right."""
    if not mats:
        raise ValueError("kron_all requires at least one matrix")
    out = np.asarray(mats[0], dtype=complex)
    for m in mats[1:]:
        out = np.kron(out, m)
    return out


def outer_all(factors: Sequence[np.ndarray]) -> np.ndarray:
    """Chained elementwise outer product of 1-D arrays, left to right."""
    if not factors:
        raise ValueError("outer_all requires at least one factor")
    out = np.asarray(factors[0])
    for f in factors[1:]:
        out = np.multiply.outer(out, f)
    return out


def exchange_matrix(dim: int) -> np.ndarray:
    """Return the dim x dim exchange (reversal) matrix J."""
    if dim < 1:
        raise ValueError("dimension must be positive")
    return np.eye(dim, dtype=complex)[::-1]


def is_persymmetric(m: np.ndarray, tol: float = 1e-10) -> bool:
    """Check whether ``m`` is symmetric about its antidiagonal: m = J m.T J."""
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("persymmetry is defined for square matrices")
    flipped = m[::-1, ::-1].T
    return bool(np.max(np.abs(m - flipped)) <= tol)


def eig2x2_hermitian(a: float, b: complex) -> Tuple[float, float]:
    """Eigenvalues of [[a, b], [conj(b), a]], returned as (low, high)."""
    r = abs(b)
    return (a - r, a + r)


def hermitian_eigenvalues(m: np.ndarray,
                          hermiticity_tol: float = 1e-10) -> np.ndarray:
    """Eigenvalues of a complex Hermitian matrix, sorted ascending.

    Uses cyclic Jacobi rotations with complex phase factors.  Raises
    ValueError for non-square, non-Hermitian, or oversized input and
    ArithmeticError if the sweep limit is reached without convergence.
    """
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("expected a square matrix")
    dim = a.shape[0]
    if dim > MAX_JACOBI_DIM:
        raise ValueError(f"matrix dimension {dim} exceeds {MAX_JACOBI_DIM}")
    if np.max(np.abs(a - a.conj().T)) > hermiticity_tol:
        raise ValueError("matrix is not Hermitian within tolerance")
    if dim == 1:
        return np.array([a[0, 0].real])

    a = 0.5 * (a + a.conj().T)
    scale = math.sqrt(max(float(np.sum(np.abs(a) ** 2)), 1.0))
    target = 1e-12 * scale

    for sweep in range(_JACOBI_SWEEPS + 1):
        off = a.copy()
        np.fill_diagonal(off, 0.0)
        if math.sqrt(float(np.sum(np.abs(off) ** 2))) < target:
            return np.sort(np.diag(a).real)
        if sweep == _JACOBI_SWEEPS:
            break
        for p in range(dim - 1):
            for q in range(p + 1, dim):
                apq = a[p, q]
                mag = abs(apq)
                if mag < 1e-30:
                    continue
                phase = apq / mag
                tau = (a[q, q].real - a[p, p].real) / (2.0 * mag)
                if tau >= 0.0:
                    t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                u = phase.conjugate()
                colp = a[:, p].copy()
                colq = a[:, q].copy()
                a[:, p] = c * colp - (s * u) * colq
                a[:, q] = s * colp + (c * u) * colq
                rowp = a[p, :].copy()
                rowq = a[q, :].copy()
                a[p, :] = c * rowp - (s * u.conjugate()) * rowq
                a[q, :] = s * rowp + (c * u.conjugate()) * rowq

    raise ArithmeticError("Jacobi iteration did not converge")

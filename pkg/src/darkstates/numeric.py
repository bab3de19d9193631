"""Float-regime dense numerics: Jacobi eigensolver and helpers.

The eigensolver is a cyclic two-sided Jacobi iteration for complex
Hermitian matrices.  Each rotation first absorbs the phase of the targeted
off-diagonal entry, then applies the classic symmetric 2x2 rotation, so
the accumulated transform stays exactly unitary.  Quadratic convergence
makes a handful of sweeps enough at the sizes used here (N <= 64).

Singular values are taken from the eigendecomposition of the Hermitian
Gram matrix, which keeps the whole float path on this one kernel.
"""

from __future__ import annotations

import math

import numpy as np

#: Relative off-diagonal mass at which the Jacobi sweep stops.
JACOBI_RTOL = 1e-14
_MAX_SWEEPS = 100


def as_complex_array(matrix) -> np.ndarray:
    """Convert nested sequences of any supported scalar to complex128."""
    arr = np.asarray(matrix)
    if arr.dtype == object or arr.dtype.kind not in "cfiu":
        rows = [[complex(x) for x in row] for row in matrix]
        return np.array(rows, dtype=np.complex128) if rows else np.zeros((0, 0), np.complex128)
    return arr.astype(np.complex128)


def as_complex_vector(vector) -> np.ndarray:
    return np.array([complex(x) for x in vector], dtype=np.complex128)


def frobenius(matrix) -> float:
    a = as_complex_array(matrix)
    return float(np.linalg.norm(a)) if a.size else 0.0


def off_diagonal_norm(a: np.ndarray) -> float:
    total = np.sum(np.abs(a) ** 2) - np.sum(np.abs(np.diag(a)) ** 2)
    return math.sqrt(max(0.0, float(total)))


def eigh_jacobi(matrix, rtol: float = JACOBI_RTOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and orthonormal eigenvectors of a Hermitian matrix.

    Returns ``(w, v)`` with eigenvectors in the columns of ``v``.  The
    caller is responsible for Hermiticity; entries above/below the
    diagonal are trusted as conjugates of each other.
    """
    a = as_complex_array(matrix).copy()
    n = a.shape[0]
    if n == 0:
        return np.zeros(0), np.zeros((0, 0), np.complex128)
    v = np.eye(n, dtype=np.complex128)
    scale = float(np.linalg.norm(a)) or 1.0
    for _ in range(_MAX_SWEEPS):
        if off_diagonal_norm(a) <= rtol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag <= 1e-18 * scale:
                    continue
                phase = apq / mag
                app = a[p, p].real
                aqq = a[q, q].real
                tau = (aqq - app) / (2.0 * mag)
                t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + math.hypot(1.0, tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                # Unitary confined to columns p, q:
                #   col p = (c, -s*conj(phase)),  col q = (s, c*conj(phase))
                up = np.array([c, -s * np.conj(phase)], dtype=np.complex128)
                uq = np.array([s, c * np.conj(phase)], dtype=np.complex128)
                cols = np.column_stack(
                    (a[:, p] * up[0] + a[:, q] * up[1], a[:, p] * uq[0] + a[:, q] * uq[1])
                )
                a[:, p] = cols[:, 0]
                a[:, q] = cols[:, 1]
                rows = np.vstack(
                    (
                        np.conj(up[0]) * a[p, :] + np.conj(up[1]) * a[q, :],
                        np.conj(uq[0]) * a[p, :] + np.conj(uq[1]) * a[q, :],
                    )
                )
                a[p, :] = rows[0]
                a[q, :] = rows[1]
                a[p, q] = 0.0
                a[q, p] = 0.0
                vcols = np.column_stack(
                    (v[:, p] * up[0] + v[:, q] * up[1], v[:, p] * uq[0] + v[:, q] * uq[1])
                )
                v[:, p] = vcols[:, 0]
                v[:, q] = vcols[:, 1]
    else:
        raise ArithmeticError("Jacobi eigensolver failed to converge")
    w = np.real(np.diag(a)).copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def singular_triplets(matrix) -> tuple[np.ndarray, np.ndarray]:
    """Singular values (descending) and right-singular vectors of a matrix.

    Computed from the Gram matrix, so small singular values are accurate to
    roughly the square root of machine precision; that is ample for the
    margins enforced by the random-network generators.
    """
    m = as_complex_array(matrix)
    if m.size == 0:
        n_cols = m.shape[1] if m.ndim == 2 else 0
        return np.zeros(0), np.eye(n_cols, dtype=np.complex128)
    g = m.conj().T @ m
    w, v = eigh_jacobi(g)
    sigma = np.sqrt(np.clip(w, 0.0, None))
    order = np.argsort(-sigma, kind="stable")
    return sigma[order], v[:, order]


def rank_by_singular_values(matrix, rtol: float = 1e-10) -> int:
    sigma, _ = singular_triplets(matrix)
    if sigma.size == 0 or sigma[0] == 0.0:
        return 0
    return int(np.sum(sigma > rtol * sigma[0]))


def det_lu(matrix) -> complex:
    """Determinant of a small complex matrix by partially pivoted elimination."""
    a = as_complex_array(matrix).copy()
    n = a.shape[0]
    if n == 0:
        return 1.0 + 0j
    result = 1.0 + 0j
    for k in range(n):
        pivot_row = int(np.argmax(np.abs(a[k:, k]))) + k
        if a[pivot_row, k] == 0:
            return 0j
        if pivot_row != k:
            a[[k, pivot_row]] = a[[pivot_row, k]]
            result = -result
        result *= a[k, k]
        if k + 1 < n:
            factors = a[k + 1 :, k] / a[k, k]
            a[k + 1 :, k:] -= np.outer(factors, a[k, k:])
    return complex(result)


def row_echelon_float(matrix, rtol: float = 1e-12) -> tuple[np.ndarray, list[int]]:
    """Unscaled float row echelon with partial pivoting; drops near-zero rows."""
    a = as_complex_array(matrix).copy()
    if a.size == 0:
        return a.reshape(0, a.shape[1] if a.ndim == 2 else 0), []
    scale = float(np.max(np.abs(a))) or 1.0
    n_rows, n_cols = a.shape
    pivot_cols: list[int] = []
    r = 0
    for c in range(n_cols):
        if r >= n_rows:
            break
        pivot_row = int(np.argmax(np.abs(a[r:, c]))) + r
        if abs(a[pivot_row, c]) <= rtol * scale:
            continue
        a[[r, pivot_row]] = a[[pivot_row, r]]
        for i in range(r + 1, n_rows):
            if a[i, c] != 0:
                a[i, :] -= (a[i, c] / a[r, c]) * a[r, :]
                a[i, c] = 0.0
        pivot_cols.append(c)
        r += 1
    return a[:r], pivot_cols

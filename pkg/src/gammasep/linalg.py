"""Symmetric eigendecomposition by cyclic Jacobi rotations.

Small dense symmetric matrices only (the pipeline never exceeds 10x10).
Deterministic: fixed sweep order, no pivot randomization.
"""

from __future__ import annotations

import math

import numpy as np


def jacobi_eigh(matrix, tol=1e-13, max_sweeps=100):
    """Eigenvalues and eigenvectors of a real symmetric matrix.

    Returns (eigenvalues, eigenvectors) sorted by descending eigenvalue,
    with eigenvectors in columns. Convergence is reached when the
    off-diagonal Frobenius norm falls below tol times the matrix norm.
    """
    a = np.array(matrix, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("matrix must be square")
    if not np.isfinite(a).all():
        raise ValueError("matrix contains non-finite entries")
    if not np.allclose(a, a.T, rtol=0.0, atol=1e-8 * max(1.0, np.abs(a).max())):
        raise ValueError("matrix must be symmetric")
    a = 0.5 * (a + a.T)
    n = a.shape[0]
    vectors = np.eye(n)
    scale = max(np.linalg.norm(a), 1e-300)

    for _ in range(max_sweeps):
        off = math.sqrt(max(0.0, (a ** 2).sum() - (np.diag(a) ** 2).sum()))
        if off <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= 1e-300:
                    continue
                # rotation angle zeroing a[p, q]
                theta = float(0.5 * (a[q, q] - a[p, p]) / apq)
                if abs(theta) > 1e150:
                    t = 0.5 / theta  # asymptotic root; theta^2 would overflow
                else:
                    t = math.copysign(1.0, theta) / (
                        abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                rot_p = c * a[:, p] - s * a[:, q]
                rot_q = s * a[:, p] + c * a[:, q]
                a[:, p], a[:, q] = rot_p, rot_q
                rot_p = c * a[p, :] - s * a[q, :]
                rot_q = s * a[p, :] + c * a[q, :]
                a[p, :], a[q, :] = rot_p, rot_q
                a[p, q] = a[q, p] = 0.0
                rot_p = c * vectors[:, p] - s * vectors[:, q]
                rot_q = s * vectors[:, p] + c * vectors[:, q]
                vectors[:, p], vectors[:, q] = rot_p, rot_q

    eigenvalues = np.diag(a).copy()
    order = np.argsort(-eigenvalues, kind="stable")
    return eigenvalues[order], vectors[:, order]


def inverse_sqrt_symmetric(matrix, floor=1e-12):
    """(M)^{-1/2} for a symmetric positive-definite matrix."""
    values, vectors = jacobi_eigh(matrix)
    values = np.maximum(values, floor * max(values.max(), 1.0))
    return (vectors / np.sqrt(values)) @ vectors.T

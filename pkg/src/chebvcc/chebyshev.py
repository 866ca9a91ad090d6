"""Chebyshev coefficients of the scaled exponential and series application."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .operators import SparseOperator


@dataclass(frozen=True)
class ChebCoefficients:
    """Coefficients c_n with sum_n c_n T_n(x) ~ e^{tau x} on [-1, 1]."""

    tau: float
    degree: int
    c: np.ndarray


def cheb_coeffs_exp(tau: float, d: int) -> ChebCoefficients:
    """Chebyshev-Gauss quadrature coefficients of e^{tau x} up to degree d.

    Analytically c_0 = I_0(tau) and c_n = 2 I_n(tau); the quadrature route is
    independent of the Bessel identity, which the tests cross-check.
    """
    if tau < 0:
        raise ValueError(f"tau must be >= 0, got {tau}")
    if d < 0:
        raise ValueError(f"degree must be >= 0, got {d}")
    # node count: the 4(d+1) floor plus enough to push aliasing below 1e-14
    K = max(4 * (d + 1), int(np.ceil(2.0 * tau)) + 48)
    theta = np.pi * (np.arange(K) + 0.5) / K
    f = np.exp(tau * np.cos(theta))
    n = np.arange(d + 1)
    c = (2.0 / K) * np.cos(np.outer(n, theta)) @ f
    c[0] *= 0.5
    return ChebCoefficients(float(tau), int(d), c)


def apply_cheb_series(A_normalized, coeffs: ChebCoefficients,
                      v: np.ndarray) -> np.ndarray:
    """Evaluate sum_n c_n T_n(A) v by the vector three-term recurrence.

    The caller guarantees the spectral norm of A_normalized is <= 1 (up to
    roundoff); no operator powers are formed.
    """
    A = A_normalized.entries if isinstance(A_normalized, SparseOperator) else A_normalized
    if A.shape[1] != v.shape[0]:
        raise ValueError(f"dimension mismatch: {A.shape[1]} vs {v.shape[0]}")
    c = coeffs.c
    w_prev = v
    out = c[0] * v
    if len(c) == 1:
        return out
    w = A @ v
    out = out + c[1] * w
    for n in range(2, len(c)):
        w, w_prev = 2.0 * (A @ w) - w_prev, w
        out = out + c[n] * w
    return out


def bessel_tail_bound(tau: float, d: int, terms: int = 200) -> float:
    """Upper bound sum_{n>d} 2 I_n(tau) on the truncation error."""
    from scipy.special import iv

    n = np.arange(d + 1, d + 1 + terms)
    return float(2.0 * np.sum(iv(n, tau)))


def expm_action(A, v: np.ndarray, tol: float = 1e-14,
                norm_bound: float | None = None) -> np.ndarray:
    """e^A v by scaled Taylor series; exact to tol for any square A.

    Splits e^A = (e^{A/2^s})^{2^s} so each series argument has norm <= 1,
    then sums the Taylor series on vectors only.
    """
    M = A.entries if isinstance(A, SparseOperator) else A
    if norm_bound is None:
        if sp.issparse(M):
            norm_bound = float(np.abs(M).sum(axis=0).max()) if M.nnz else 0.0
        else:
            norm_bound = float(np.linalg.norm(M, 1))
    s = max(0, int(np.ceil(np.log2(max(norm_bound, 1e-300)))))
    scale = 2.0 ** (-s)
    w = np.array(v, copy=True)
    for _ in range(1 << s):
        term = w
        acc = w.copy()
        for k in range(1, 60):
            term = (M @ term) * (scale / k)
            acc = acc + term
            if np.linalg.norm(term) <= tol * max(np.linalg.norm(acc), 1e-300):
                break
        w = acc
    return w

"""Independent oracles shared by the test modules.

Everything here is deliberately written from scratch (dense kron products,
occupation-number bookkeeping, Bessel power series) so that library results
are checked against a second implementation rather than against themselves.
"""

from __future__ import annotations

from functools import reduce
from math import factorial

import numpy as np

SIGMA_MINUS = np.array([[0.0, 1.0], [0.0, 0.0]])
PAULI_Z = np.array([[1.0, 0.0], [0.0, -1.0]])
IDENTITY_2 = np.eye(2)


def dense_annihilator(q: int, p: int) -> np.ndarray:
    """Jordan-Wigner annihilator on mode p as a dense 2^q matrix.

    Qubit 0 is the least significant bit, so the Z string sits on the low
    factors of the kron product.
    """
    factors = [IDENTITY_2] * (q - 1 - p) + [SIGMA_MINUS] + [PAULI_Z] * p
    return reduce(np.kron, factors) if factors else np.eye(1)


def dense_creator(q: int, p: int) -> np.ndarray:
    return dense_annihilator(q, p).T


def apply_ops_to_det(det: int, ops: list[tuple[int, bool]]) -> tuple[int, int]:
    """Apply ladder operators (first listed acts first) to one determinant.

    Returns (resulting determinant, sign); sign 0 means the result vanished.
    """
    sign = 1
    for p, is_create in ops:
        occupied = bool(det >> p & 1)
        if is_create == occupied:
            return 0, 0
        if int.bit_count(det & ((1 << p) - 1)) % 2:
            sign = -sign
        det ^= 1 << p
    return det, sign


def bessel_i_series(n: int, tau: float, terms: int = 60) -> float:
    """Modified Bessel function of the first kind via its power series."""
    half = tau / 2.0
    total = 0.0
    for k in range(terms):
        total += half ** (n + 2 * k) / (factorial(k) * factorial(n + k))
    return total


def cheb_exp_coeff(n: int, tau: float) -> float:
    """Chebyshev coefficient of e^{tau x}: I_n(tau), doubled for n >= 1."""
    value = bessel_i_series(n, tau)
    return value if n == 0 else 2.0 * value


def random_amplitudes(n: int, seed: int, scale: float = 0.1) -> np.ndarray:
    return np.random.default_rng(seed).uniform(-scale, scale, size=n)


def align_phase(psi: np.ndarray, target: np.ndarray) -> np.ndarray:
    """Rotate psi by a global phase to best match target."""
    overlap = np.vdot(target, psi)
    if abs(overlap) < 1e-300:
        return psi
    return psi * (overlap.conjugate() / abs(overlap))

"""Ansatz state constructors and energy functionals on the full space.

Methods: HF, exact-VCC (e^T), C^d (Chebyshev-truncated e^T), trotter-VCC
(split anti-Hermitian times Hermitian exponential), dUCC (anti-Hermitian
factor alone), HC^d (anti-Hermitian factor times Chebyshev-truncated
Hermitian exponential), and HC^d-circuit (block-encoded emulation, in the
circuit module).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .chebyshev import apply_cheb_series, cheb_coeffs_exp, expm_action
from .operators import (
    AmplitudeVector,
    FockSpace,
    SparseOperator,
    apply_ladder_sequence,
    build_cluster_operator,
    spectral_norm,
    split_hermitian,
    term_sequence,
)

METHODS = ("HF", "exact-VCC", "C^d", "trotter-VCC", "dUCC", "HC^d", "HC^d-circuit")
UCC_MODES = ("exact-exponential", "disentangled-product")
_DEGREE_METHODS = ("C^d", "HC^d", "HC^d-circuit")


@dataclass(frozen=True)
class AnsatzSpec:
    """Method tag plus the parameters that select one ansatz family member."""

    method: str
    degree: int | None = None
    ucc_mode: str = "exact-exponential"
    term_ordering: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        if self.ucc_mode not in UCC_MODES:
            raise ValueError(f"unknown ucc_mode {self.ucc_mode!r}")
        needs_degree = self.method in _DEGREE_METHODS
        if needs_degree and (self.degree is None or self.degree < 0):
            raise ValueError(f"method {self.method} requires degree >= 0")
        if not needs_degree and self.degree is not None:
            raise ValueError(f"method {self.method} takes no degree")


@dataclass(frozen=True)
class EnergyReport:
    energy: float
    norm_squared: float
    method: AnsatzSpec | None = None
    amplitudes: AmplitudeVector | None = None


def reference_state(space: FockSpace) -> np.ndarray:
    v = np.zeros(space.dimension)
    v[space.reference_index] = 1.0
    return v


def _cluster(t: AmplitudeVector, space: FockSpace) -> sp.csr_matrix:
    return build_cluster_operator(t, space).entries


def state_exact_vcc(t: AmplitudeVector, space: FockSpace) -> np.ndarray:
    """e^T |ref>; the Taylor series terminates by nilpotency of T."""
    T = _cluster(t, space)
    v = reference_state(space)
    out = v.copy()
    term = v
    for k in range(1, space.n_electrons + 1):
        term = (T @ term) / k
        if not np.any(term):
            break
        out = out + term
    return out


def state_cvcc(t: AmplitudeVector, space: FockSpace, d: int) -> np.ndarray:
    """Chebyshev-truncated exponential ansatz state of degree d."""
    T = build_cluster_operator(t, space)
    tau = spectral_norm(T)
    v = reference_state(space)
    if tau == 0.0:
        return v
    coeffs = cheb_coeffs_exp(tau, d)
    return apply_cheb_series(T.entries * (1.0 / tau), coeffs, v)


def _anti_hermitian_factor(t: AmplitudeVector, space: FockSpace, mode: str,
                           ordering: tuple[int, ...] | None,
                           v: np.ndarray) -> np.ndarray:
    if mode == "exact-exponential":
        T = build_cluster_operator(t, space)
        anti, _ = split_hermitian(T)
        return expm_action(anti.entries, v, tol=1e-15)
    if mode != "disentangled-product":
        raise ValueError(f"unknown ucc_mode {mode!r}")
    order = ordering if ordering is not None else tuple(range(len(t.index_map)))
    if sorted(order) != list(range(len(t.index_map))):
        raise ValueError("term_ordering is not a permutation of the index map")
    out = v
    q = space.n_spin_orbitals
    dim = space.dimension
    for pos in order:
        theta = 0.5 * float(t.values[pos])
        if theta == 0.0:
            continue
        rows, cols, signs = apply_ladder_sequence(q, term_sequence(t.index_map[pos]))
        E = sp.csr_matrix((signs, (rows, cols)), shape=(dim, dim))
        K = (E - E.T).tocsr()
        # elementary excitations satisfy K^3 = -K, so the exponential closes
        Kv = K @ out
        out = out + np.sin(theta) * Kv + (1.0 - np.cos(theta)) * (K @ Kv)
    return out


def state_anti_hermitian_exp(t: AmplitudeVector, space: FockSpace,
                             mode: str = "exact-exponential",
                             ordering: tuple[int, ...] | None = None) -> np.ndarray:
    """Unitary e^{(T - T+)/2} |ref>, exact or as a disentangled product."""
    return _anti_hermitian_factor(t, space, mode, ordering, reference_state(space))


def _hermitian_exp_action(H: sp.csr_matrix, v: np.ndarray) -> np.ndarray:
    if H.shape[0] <= 512:
        evals, evecs = np.linalg.eigh(H.toarray())
        return evecs @ (np.exp(evals) * (evecs.T @ v))
    return expm_action(H, v, tol=1e-15)


def state_trotter_vcc(t: AmplitudeVector, space: FockSpace,
                      mode: str = "exact-exponential",
                      ordering: tuple[int, ...] | None = None) -> np.ndarray:
    """Split ansatz e^{(T - T+)/2} e^{(T + T+)/2} |ref>."""
    T = build_cluster_operator(t, space)
    _, herm = split_hermitian(T)
    v = _hermitian_exp_action(herm.entries, reference_state(space))
    return _anti_hermitian_factor(t, space, mode, ordering, v)


def state_hcvcc(t: AmplitudeVector, space: FockSpace, d: int,
                mode: str = "exact-exponential",
                ordering: tuple[int, ...] | None = None,
                normalization: float | None = None) -> np.ndarray:
    """Chebyshev approximation of the Hermitian factor, then the unitary factor.

    normalization overrides the spectral-norm scaling of the Hermitian part;
    the circuit emulation uses the block-encoding subnormalization instead.
    """
    T = build_cluster_operator(t, space)
    _, herm = split_hermitian(T)
    kappa = spectral_norm(herm) if normalization is None else float(normalization)
    v = reference_state(space)
    if kappa == 0.0:
        return _anti_hermitian_factor(t, space, mode, ordering, v)
    coeffs = cheb_coeffs_exp(kappa, d)
    v = apply_cheb_series(herm.entries * (1.0 / kappa), coeffs, v)
    return _anti_hermitian_factor(t, space, mode, ordering, v)


def energy_rayleigh(psi: np.ndarray, H: SparseOperator,
                    method: AnsatzSpec | None = None,
                    amplitudes: AmplitudeVector | None = None) -> EnergyReport:
    """Rayleigh quotient <psi|H|psi> / <psi|psi>."""
    norm_sq = float(np.real(np.vdot(psi, psi)))
    if norm_sq <= 1e-14:
        raise ValueError(f"state norm^2 {norm_sq:.3e} too small for a quotient")
    raw = np.vdot(psi, H.entries @ psi) / norm_sq
    if abs(raw.imag) > 1e-10 * max(abs(raw.real), 1.0):
        raise ValueError(f"energy has imaginary residue {raw.imag:.3e}")
    return EnergyReport(float(raw.real), norm_sq, method, amplitudes)


def energy_projective_cc(t: AmplitudeVector, space: FockSpace,
                         H: SparseOperator) -> float:
    """<ref| e^{-T} H e^{T} |ref> via terminating nilpotent series; diagnostic."""
    T = _cluster(t, space)
    v = reference_state(space)
    right = v.copy()
    term = v
    for k in range(1, space.n_electrons + 1):
        term = (T @ term) / k
        if not np.any(term):
            break
        right = right + term
    w = np.asarray(H.entries @ right)
    left = w.copy()
    term = w
    for k in range(1, space.n_electrons + 1):
        term = -(T @ term) / k
        if not np.any(term):
            break
        left = left + term
    return float(np.real(left[space.reference_index]))

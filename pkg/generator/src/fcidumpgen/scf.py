"""Restricted Hartree-Fock with a generalized Hueckel guess and DIIS."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh


@dataclass
class SCFResult:
    energy: float
    mo_energies: np.ndarray
    mo_coeffs: np.ndarray
    n_iter: int
    converged: bool


def _fock(D: np.ndarray, Hc: np.ndarray, eri: np.ndarray) -> np.ndarray:
    J = np.einsum("pqrs,rs->pq", eri, D)
    K = np.einsum("prqs,rs->pq", eri, D)
    return Hc + 2.0 * J - K


def _gwh_fock(S: np.ndarray, Hc: np.ndarray) -> np.ndarray:
    # Generalized Hueckel seed.  Unlike the bare core Hamiltonian it spreads
    # the guess over bonding combinations, which avoids symmetry-broken
    # stationary points when the core guess straddles a degenerate shell.
    diag = np.diag(Hc)
    F = 0.875 * S * (diag[:, None] + diag[None, :])
    np.fill_diagonal(F, diag)
    return F


def rhf(S: np.ndarray, Hc: np.ndarray, eri: np.ndarray, e_nuc: float,
        n_electrons: int, max_iter: int = 300, conv: float = 1e-11) -> SCFResult:
    """Solve closed-shell RHF.  Convergence is on the DIIS error norm."""
    if n_electrons % 2:
        raise ValueError("rhf requires an even electron count")
    n_occ = n_electrons // 2

    F = _gwh_fock(S, Hc)
    fock_list: list[np.ndarray] = []
    err_list: list[np.ndarray] = []
    energy = 0.0
    for it in range(1, max_iter + 1):
        eps, C = eigh(F, S)
        Cocc = C[:, :n_occ]
        D = Cocc @ Cocc.T
        F = _fock(D, Hc, eri)
        energy = e_nuc + np.sum(D * (Hc + F))
        # DIIS on the antisymmetric residual FDS - SDF
        err = F @ D @ S - S @ D @ F
        err_norm = np.max(np.abs(err))
        if err_norm < conv:
            # final canonical orbitals for the converged Fock
            eps, C = eigh(F, S)
            C = _fix_phases(C)
            return SCFResult(float(energy), eps, C, it, True)
        fock_list.append(F)
        err_list.append(err)
        if len(fock_list) > 8:
            fock_list.pop(0)
            err_list.pop(0)
        if len(fock_list) > 1:
            F = _diis_extrapolate(fock_list, err_list)
    eps, C = eigh(F, S)
    return SCFResult(float(energy), eps, _fix_phases(C), max_iter, False)


def _diis_extrapolate(fock_list, err_list) -> np.ndarray:
    m = len(fock_list)
    B = -np.ones((m + 1, m + 1))
    B[m, m] = 0.0
    for i in range(m):
        for j in range(m):
            B[i, j] = np.sum(err_list[i] * err_list[j])
    rhs = np.zeros(m + 1)
    rhs[m] = -1.0
    try:
        coeffs = np.linalg.solve(B, rhs)[:m]
    except np.linalg.LinAlgError:
        return fock_list[-1]
    F = np.zeros_like(fock_list[0])
    for c, Fi in zip(coeffs, fock_list):
        F += c * Fi
    return F


def _fix_phases(C: np.ndarray) -> np.ndarray:
    """Make the largest-magnitude entry of each MO positive for determinism."""
    C = C.copy()
    for k in range(C.shape[1]):
        idx = np.argmax(np.abs(C[:, k]))
        if C[idx, k] < 0:
            C[:, k] = -C[:, k]
    return C

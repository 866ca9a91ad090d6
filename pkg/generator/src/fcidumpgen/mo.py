"""AO-to-MO transformation and frozen-core active-space reduction."""

from __future__ import annotations

import numpy as np


def mo_transform(C: np.ndarray, Hc: np.ndarray, eri: np.ndarray):
    """Transform the core Hamiltonian and chemists'-notation ERI tensor to the MO basis."""
    h = C.T @ Hc @ C
    g = np.einsum("pi,qj,pqrs,rk,sl->ijkl", C, C, eri, C, C, optimize=True)
    return h, g


def active_space(h: np.ndarray, g: np.ndarray, e_nuc: float, n_electrons: int,
                 n_frozen: int, n_active: int):
    """Freeze the lowest n_frozen MOs into an effective core.

    Returns (h_active, g_active, core_energy, n_active_electrons).  The frozen
    orbitals contribute a mean-field potential to the active one-body term and
    a constant to the core energy.
    """
    core = list(range(n_frozen))
    act = list(range(n_frozen, n_frozen + n_active))
    e_core = e_nuc + 2.0 * sum(h[c, c] for c in core)
    for c in core:
        for d in core:
            e_core += 2.0 * g[c, c, d, d] - g[c, d, d, c]
    h_act = h[np.ix_(act, act)].copy()
    for a, p in enumerate(act):
        for b, q in enumerate(act):
            for c in core:
                h_act[a, b] += 2.0 * g[p, q, c, c] - g[p, c, c, q]
    g_act = g[np.ix_(act, act, act, act)].copy()
    n_act_elec = n_electrons - 2 * n_frozen
    if n_act_elec < 0:
        raise ValueError("more frozen orbitals than electron pairs")
    return h_act, g_act, float(e_core), n_act_elec

"""Determinant-space reference solvers: HF, FCI, CISD, and CCSD.

Determinants are bit masks over spin orbitals with spin orbital
p = 2 * spatial + sigma (alpha even, beta odd).  Matrix elements come from
the Slater-Condon rules with signs computed by sequential ladder-operator
application, which keeps the phase convention in one place.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np
import scipy.sparse as sp
from scipy.linalg import eigh


def spin_orbital_integrals(h: np.ndarray, g: np.ndarray):
    """Spin-orbital one-body matrix and antisymmetrized two-body tensor.

    Returns (h_so, aso) with aso[p, q, r, s] = <pq||rs> in physicists'
    notation, from spatial chemists' integrals g[p, q, r, s] = (pq|rs).
    """
    n = h.shape[0]
    n_so = 2 * n
    spatial = np.arange(n_so) // 2
    sigma = np.arange(n_so) % 2
    h_so = h[np.ix_(spatial, spatial)] * (sigma[:, None] == sigma[None, :])
    coul = (
        g[spatial[:, None, None, None], spatial[None, None, :, None],
          spatial[None, :, None, None], spatial[None, None, None, :]]
        * (sigma[:, None, None, None] == sigma[None, None, :, None])
        * (sigma[None, :, None, None] == sigma[None, None, None, :])
    )
    aso = coul - coul.transpose(0, 1, 3, 2)
    return h_so, aso


def _parity_below(det: int, p: int) -> int:
    return (det & ((1 << p) - 1)).bit_count() & 1


def annihilate(det: int, p: int) -> tuple[int, int]:
    """Apply a_p to a determinant; returns (new_det, sign) or (0, 0) if empty."""
    if not (det >> p) & 1:
        return 0, 0
    sign = -1 if _parity_below(det, p) else 1
    return det & ~(1 << p), sign


def create(det: int, p: int) -> tuple[int, int]:
    """Apply a^dag_p; returns (new_det, sign) or (0, 0) if occupied."""
    if (det >> p) & 1:
        return 0, 0
    sign = -1 if _parity_below(det, p) else 1
    return det | (1 << p), sign


def _bits(det: int) -> list[int]:
    out = []
    p = 0
    while det:
        if det & 1:
            out.append(p)
        det >>= 1
        p += 1
    return out


def sector_determinants(n_spatial: int, n_alpha: int, n_beta: int) -> list[int]:
    """All determinants with fixed alpha and beta counts, reference first ordering.

    Ordering is lexicographic in the (alpha, beta) occupation combinations, so
    the aufbau reference is always index 0.
    """
    dets = []
    for occ_a in combinations(range(n_spatial), n_alpha):
        for occ_b in combinations(range(n_spatial), n_beta):
            det = 0
            for s in occ_a:
                det |= 1 << (2 * s)
            for s in occ_b:
                det |= 1 << (2 * s + 1)
            dets.append(det)
    return dets


def _alpha_beta_counts(nelec: int, ms2: int) -> tuple[int, int]:
    n_alpha = (nelec + ms2) // 2
    n_beta = nelec - n_alpha
    if n_alpha < 0 or n_beta < 0 or n_alpha - n_beta != ms2:
        raise ValueError(f"invalid electron count {nelec} for MS2={ms2}")
    return n_alpha, n_beta


def _sc_diag(det: int, h_so: np.ndarray, aso: np.ndarray) -> float:
    occ = _bits(det)
    e = sum(h_so[p, p] for p in occ)
    for p in occ:
        for q in occ:
            e += 0.5 * aso[p, q, p, q]
    return float(e)


def _sc_single(d1: int, d2: int, h_so: np.ndarray, aso: np.ndarray) -> float:
    p = (d1 & ~d2).bit_length() - 1
    q = (d2 & ~d1).bit_length() - 1
    det, s1 = annihilate(d2, q)
    det, s2 = create(det, p)
    sign = s1 * s2
    val = h_so[p, q]
    for i in _bits(d1 & d2):
        val += aso[p, i, q, i]
    return sign * float(val)


def _sc_double(d1: int, d2: int, aso: np.ndarray) -> float:
    p1, p2 = _bits(d1 & ~d2)
    q1, q2 = _bits(d2 & ~d1)
    det, s1 = annihilate(d2, q1)
    det, s2 = annihilate(det, q2)
    det, s3 = create(det, p2)
    det, s4 = create(det, p1)
    return s1 * s2 * s3 * s4 * float(aso[p1, p2, q1, q2])


def build_sector_hamiltonian(h: np.ndarray, g: np.ndarray, nelec: int, ms2: int = 0):
    """Dense electronic Hamiltonian in the fixed-(N_alpha, N_beta) sector.

    Returns (dets, H) without the core energy shift.
    """
    n_alpha, n_beta = _alpha_beta_counts(nelec, ms2)
    dets = sector_determinants(h.shape[0], n_alpha, n_beta)
    h_so, aso = spin_orbital_integrals(h, g)
    nd = len(dets)
    du = np.array(dets, dtype=np.uint64)
    degree = np.bitwise_count(du[:, None] ^ du[None, :]) >> 1
    H = np.zeros((nd, nd))
    rows, cols = np.nonzero((degree <= 2) & (np.arange(nd)[:, None] <= np.arange(nd)[None, :]))
    for r, c in zip(rows.tolist(), cols.tolist()):
        d1, d2 = dets[r], dets[c]
        deg = int(degree[r, c])
        if deg == 0:
            H[r, c] = _sc_diag(d1, h_so, aso)
        elif deg == 1:
            H[r, c] = H[c, r] = _sc_single(d1, d2, h_so, aso)
        else:
            H[r, c] = H[c, r] = _sc_double(d1, d2, aso)
    return dets, H


def hf_energy(h: np.ndarray, g: np.ndarray, core: float, nelec: int, ms2: int = 0) -> float:
    n_alpha, n_beta = _alpha_beta_counts(nelec, ms2)
    ref = 0
    for s in range(n_alpha):
        ref |= 1 << (2 * s)
    for s in range(n_beta):
        ref |= 1 << (2 * s + 1)
    h_so, aso = spin_orbital_integrals(h, g)
    return core + _sc_diag(ref, h_so, aso)


def fci_energy(h: np.ndarray, g: np.ndarray, core: float, nelec: int, ms2: int = 0) -> float:
    _, H = build_sector_hamiltonian(h, g, nelec, ms2)
    return core + float(eigh(H, eigvals_only=True, subset_by_index=[0, 0])[0])


def cisd_energy(h: np.ndarray, g: np.ndarray, core: float, nelec: int, ms2: int = 0) -> float:
    dets, H = build_sector_hamiltonian(h, g, nelec, ms2)
    ref = dets[0]
    du = np.array(dets, dtype=np.uint64)
    keep = (np.bitwise_count(du ^ np.uint64(ref)) >> 1) <= 2
    Hs = H[np.ix_(keep, keep)]
    return core + float(eigh(Hs, eigvals_only=True, subset_by_index=[0, 0])[0])


def _excitation_descriptors(occ_so: list[int], virt_so: list[int]):
    """Spin-conserving single and double excitation index tuples."""
    singles = [(i, a) for i in occ_so for a in virt_so if i % 2 == a % 2]
    doubles = []
    for i, j in combinations(occ_so, 2):
        for a, b in combinations(virt_so, 2):
            if (i % 2 + j % 2) == (a % 2 + b % 2):
                doubles.append((i, j, a, b))
    return singles, doubles


def _excitation_matrix(desc, dets, index_of) -> sp.csr_matrix:
    """Sparse matrix of one normal-ordered excitation operator on the sector."""
    nd = len(dets)
    rows, cols, vals = [], [], []
    for c, det in enumerate(dets):
        if len(desc) == 2:
            i, a = desc
            d, s1 = annihilate(det, i)
            if not s1:
                continue
            d, s2 = create(d, a)
            if not s2:
                continue
            sign = s1 * s2
        else:
            i, j, a, b = desc
            d, s1 = annihilate(det, i)
            if not s1:
                continue
            d, s2 = annihilate(d, j)
            if not s2:
                continue
            d, s3 = create(d, b)
            if not s3:
                continue
            d, s4 = create(d, a)
            if not s4:
                continue
            sign = s1 * s2 * s3 * s4
        rows.append(index_of[d])
        cols.append(c)
        vals.append(float(sign))
    return sp.csr_matrix((vals, (rows, cols)), shape=(nd, nd))


def _exp_apply(T: sp.csr_matrix, v: np.ndarray, max_rank: int) -> np.ndarray:
    # Excitation operators are nilpotent on the sector, so the series is exact.
    w = v.copy()
    term = v
    for k in range(1, max_rank + 2):
        term = T @ term / k
        if not np.any(term):
            break
        w += term
    return w


def ccsd_energy(h: np.ndarray, g: np.ndarray, core: float, nelec: int, ms2: int = 0,
                max_iter: int = 200, tol: float = 1e-9) -> float | None:
    """Coupled cluster singles and doubles on the determinant sector.

    Solves the projected amplitude equations <D_k|e^{-T} H e^{T}|ref> = 0 with
    quasi-Newton steps on orbital-energy denominators plus DIIS.  Returns None
    when the iteration does not converge, which happens at strongly stretched
    geometries where single-reference CC breaks down.
    """
    dets, H = build_sector_hamiltonian(h, g, nelec, ms2)
    index_of = {d: k for k, d in enumerate(dets)}
    ref = dets[0]
    n_so = 2 * h.shape[0]
    occ_so = _bits(ref)
    virt_so = [p for p in range(n_so) if p not in occ_so]
    singles, doubles = _excitation_descriptors(occ_so, virt_so)
    descs = singles + doubles
    ops = [_excitation_matrix(d, dets, index_of) for d in descs]
    # one concatenated COO pattern so each iteration assembles T in one shot
    pat_rows = np.concatenate([op.tocoo().row for op in ops])
    pat_cols = np.concatenate([op.tocoo().col for op in ops])
    pat_vals = np.concatenate([op.tocoo().data for op in ops])
    pat_term = np.concatenate([np.full(op.nnz, k) for k, op in enumerate(ops)])

    # projection target for each amplitude: the excited determinant and sign
    ref_vec = np.zeros(len(dets))
    ref_vec[0] = 1.0
    proj_rows = np.empty(len(descs), dtype=np.intp)
    proj_signs = np.empty(len(descs))
    for k, op in enumerate(ops):
        col = op @ ref_vec
        (nz,) = np.nonzero(col)
        proj_rows[k] = nz[0]
        proj_signs[k] = col[nz[0]]

    h_so, aso = spin_orbital_integrals(h, g)
    eps = np.array([
        h_so[p, p] + sum(aso[p, j, p, j] for j in occ_so) for p in range(n_so)
    ])
    denom = np.array([
        eps[d[0]] - eps[d[1]] if len(d) == 2
        else eps[d[0]] + eps[d[1]] - eps[d[2]] - eps[d[3]]
        for d in descs
    ])

    t = np.zeros(len(descs))
    t_hist: list[np.ndarray] = []
    r_hist: list[np.ndarray] = []
    for _ in range(max_iter):
        T = sp.csr_matrix((t[pat_term] * pat_vals, (pat_rows, pat_cols)),
                          shape=(len(dets), len(dets)))
        right = _exp_apply(T, ref_vec, nelec)
        left = _exp_apply(-T, H @ right, nelec)
        res = left[proj_rows] * proj_signs
        if np.max(np.abs(res)) < tol:
            return core + float(left[0])
        t = t + res / denom
        t_hist.append(t.copy())
        r_hist.append(res.copy())
        if len(t_hist) > 8:
            t_hist.pop(0)
            r_hist.pop(0)
        if len(t_hist) > 1:
            t = _diis_amplitudes(t_hist, r_hist)
    return None


def _diis_amplitudes(t_hist, r_hist) -> np.ndarray:
    m = len(t_hist)
    B = -np.ones((m + 1, m + 1))
    B[m, m] = 0.0
    for i in range(m):
        for j in range(m):
            B[i, j] = float(np.dot(r_hist[i], r_hist[j]))
    rhs = np.zeros(m + 1)
    rhs[m] = -1.0
    try:
        c = np.linalg.solve(B, rhs)[:m]
    except np.linalg.LinAlgError:
        return t_hist[-1]
    return sum(ci * ti for ci, ti in zip(c, t_hist))

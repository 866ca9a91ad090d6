"""McMurchie-Davidson one- and two-electron integrals over contracted Gaussians."""

from __future__ import annotations

import numpy as np
from scipy.special import hyp1f1

from .basis import ContractedGaussian, NUCLEAR_CHARGE


def boys(n: int, x: float) -> float:
    return hyp1f1(n + 0.5, n + 1.5, -x) / (2.0 * n + 1.0)


def hermite_expansion(i: int, j: int, t: int, Qx: float, a: float, b: float) -> float:
    """Coefficient E_t^{ij} expanding a Cartesian Gaussian product in Hermite Gaussians.

    Qx = Ax - Bx is the center separation along this axis.
    """
    p = a + b
    q = a * b / p
    if t < 0 or t > i + j:
        return 0.0
    if i == j == t == 0:
        return np.exp(-q * Qx * Qx)
    if j == 0:
        # decrement i
        return (
            hermite_expansion(i - 1, j, t - 1, Qx, a, b) / (2 * p)
            - (q * Qx / a) * hermite_expansion(i - 1, j, t, Qx, a, b)
            + (t + 1) * hermite_expansion(i - 1, j, t + 1, Qx, a, b)
        )
    # decrement j
    return (
        hermite_expansion(i, j - 1, t - 1, Qx, a, b) / (2 * p)
        + (q * Qx / b) * hermite_expansion(i, j - 1, t, Qx, a, b)
        + (t + 1) * hermite_expansion(i, j - 1, t + 1, Qx, a, b)
    )


def overlap_prim(a, lmn1, A, b, lmn2, B) -> float:
    p = a + b
    s = 1.0
    for ax in range(3):
        s *= hermite_expansion(lmn1[ax], lmn2[ax], 0, A[ax] - B[ax], a, b)
    return s * (np.pi / p) ** 1.5


def kinetic_prim(a, lmn1, A, b, lmn2, B) -> float:
    l2, m2, n2 = lmn2
    term0 = b * (2 * (l2 + m2 + n2) + 3) * overlap_prim(a, lmn1, A, b, lmn2, B)
    term1 = -2.0 * b * b * (
        overlap_prim(a, lmn1, A, b, (l2 + 2, m2, n2), B)
        + overlap_prim(a, lmn1, A, b, (l2, m2 + 2, n2), B)
        + overlap_prim(a, lmn1, A, b, (l2, m2, n2 + 2), B)
    )
    term2 = -0.5 * (
        l2 * (l2 - 1) * overlap_prim(a, lmn1, A, b, (l2 - 2, m2, n2), B)
        + m2 * (m2 - 1) * overlap_prim(a, lmn1, A, b, (l2, m2 - 2, n2), B)
        + n2 * (n2 - 1) * overlap_prim(a, lmn1, A, b, (l2, m2, n2 - 2), B)
    )
    return term0 + term1 + term2


def hermite_coulomb(t: int, u: int, v: int, n: int, p: float, PC, memo) -> float:
    """Auxiliary Hermite Coulomb integral R^n_{tuv}."""
    key = (t, u, v, n)
    if key in memo:
        return memo[key]
    if t == u == v == 0:
        r2 = PC[0] * PC[0] + PC[1] * PC[1] + PC[2] * PC[2]
        val = (-2.0 * p) ** n * boys(n, p * r2)
    elif t > 0:
        val = PC[0] * hermite_coulomb(t - 1, u, v, n + 1, p, PC, memo)
        if t > 1:
            val += (t - 1) * hermite_coulomb(t - 2, u, v, n + 1, p, PC, memo)
    elif u > 0:
        val = PC[1] * hermite_coulomb(t, u - 1, v, n + 1, p, PC, memo)
        if u > 1:
            val += (u - 1) * hermite_coulomb(t, u - 2, v, n + 1, p, PC, memo)
    else:
        val = PC[2] * hermite_coulomb(t, u, v - 1, n + 1, p, PC, memo)
        if v > 1:
            val += (v - 1) * hermite_coulomb(t, u, v - 2, n + 1, p, PC, memo)
    memo[key] = val
    return val


def nuclear_prim(a, lmn1, A, b, lmn2, B, C) -> float:
    p = a + b
    P = tuple((a * A[ax] + b * B[ax]) / p for ax in range(3))
    PC = tuple(P[ax] - C[ax] for ax in range(3))
    E = [
        [hermite_expansion(lmn1[ax], lmn2[ax], t, A[ax] - B[ax], a, b)
         for t in range(lmn1[ax] + lmn2[ax] + 1)]
        for ax in range(3)
    ]
    memo: dict = {}
    val = 0.0
    for t in range(len(E[0])):
        for u in range(len(E[1])):
            for v in range(len(E[2])):
                val += E[0][t] * E[1][u] * E[2][v] * hermite_coulomb(t, u, v, 0, p, PC, memo)
    return 2.0 * np.pi / p * val


def eri_prim(a, lmn1, A, b, lmn2, B, c, lmn3, C, d, lmn4, D) -> float:
    p = a + b
    q = c + d
    alpha = p * q / (p + q)
    P = tuple((a * A[ax] + b * B[ax]) / p for ax in range(3))
    Q = tuple((c * C[ax] + d * D[ax]) / q for ax in range(3))
    PQ = tuple(P[ax] - Q[ax] for ax in range(3))
    E1 = [
        [hermite_expansion(lmn1[ax], lmn2[ax], t, A[ax] - B[ax], a, b)
         for t in range(lmn1[ax] + lmn2[ax] + 1)]
        for ax in range(3)
    ]
    E2 = [
        [hermite_expansion(lmn3[ax], lmn4[ax], t, C[ax] - D[ax], c, d)
         for t in range(lmn3[ax] + lmn4[ax] + 1)]
        for ax in range(3)
    ]
    memo: dict = {}
    val = 0.0
    for t in range(len(E1[0])):
        for u in range(len(E1[1])):
            for v in range(len(E1[2])):
                e1 = E1[0][t] * E1[1][u] * E1[2][v]
                if e1 == 0.0:
                    continue
                for tt in range(len(E2[0])):
                    for uu in range(len(E2[1])):
                        for vv in range(len(E2[2])):
                            e2 = E2[0][tt] * E2[1][uu] * E2[2][vv]
                            if e2 == 0.0:
                                continue
                            sign = -1.0 if (tt + uu + vv) % 2 else 1.0
                            val += e1 * e2 * sign * hermite_coulomb(
                                t + tt, u + uu, v + vv, 0, alpha, PQ, memo
                            )
    return val * 2.0 * np.pi ** 2.5 / (p * q * np.sqrt(p + q))


def _contract2(func, bf1: ContractedGaussian, bf2: ContractedGaussian) -> float:
    s = 0.0
    for a, ca in zip(bf1.exps, bf1.coefs):
        for b, cb in zip(bf2.exps, bf2.coefs):
            s += ca * cb * func(a, bf1.lmn, bf1.center, b, bf2.lmn, bf2.center)
    return s


def nuclear_attraction(bf1, bf2, symbols, coords) -> float:
    s = 0.0
    for sym, xyz in zip(symbols, coords):
        Z = NUCLEAR_CHARGE[sym]
        for a, ca in zip(bf1.exps, bf1.coefs):
            for b, cb in zip(bf2.exps, bf2.coefs):
                s -= Z * ca * cb * nuclear_prim(
                    a, bf1.lmn, bf1.center, b, bf2.lmn, bf2.center, tuple(xyz)
                )
    return s


def eri_contracted(bf1, bf2, bf3, bf4) -> float:
    s = 0.0
    for a, ca in zip(bf1.exps, bf1.coefs):
        for b, cb in zip(bf2.exps, bf2.coefs):
            for c, cc in zip(bf3.exps, bf3.coefs):
                for d, cd in zip(bf4.exps, bf4.coefs):
                    s += ca * cb * cc * cd * eri_prim(
                        a, bf1.lmn, bf1.center,
                        b, bf2.lmn, bf2.center,
                        c, bf3.lmn, bf3.center,
                        d, bf4.lmn, bf4.center,
                    )
    return s


def nuclear_repulsion(symbols, coords) -> float:
    e = 0.0
    for i in range(len(symbols)):
        for j in range(i + 1, len(symbols)):
            r = np.linalg.norm(np.asarray(coords[i]) - np.asarray(coords[j]))
            e += NUCLEAR_CHARGE[symbols[i]] * NUCLEAR_CHARGE[symbols[j]] / r
    return e


def ao_integrals(symbols: list[str], coords_bohr: np.ndarray,
                 basis: list[ContractedGaussian]):
    """Compute AO-basis S, T, V matrices, the chemists'-notation ERI tensor,
    and the nuclear repulsion energy."""
    n = len(basis)
    S = np.zeros((n, n))
    T = np.zeros((n, n))
    V = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1):
            S[i, j] = S[j, i] = _contract2(overlap_prim, basis[i], basis[j])
            T[i, j] = T[j, i] = _contract2(kinetic_prim, basis[i], basis[j])
            V[i, j] = V[j, i] = nuclear_attraction(basis[i], basis[j], symbols, coords_bohr)

    eri = np.zeros((n, n, n, n))
    # 8-fold permutational symmetry of real orbitals
    for i in range(n):
        for j in range(i + 1):
            ij = i * (i + 1) // 2 + j
            for k in range(n):
                for l in range(k + 1):
                    kl = k * (k + 1) // 2 + l
                    if ij < kl:
                        continue
                    val = eri_contracted(basis[i], basis[j], basis[k], basis[l])
                    for (p, q, r, s) in (
                        (i, j, k, l), (j, i, k, l), (i, j, l, k), (j, i, l, k),
                        (k, l, i, j), (l, k, i, j), (k, l, j, i), (l, k, j, i),
                    ):
                        eri[p, q, r, s] = val
    e_nuc = nuclear_repulsion(symbols, coords_bohr)
    return S, T, V, eri, e_nuc

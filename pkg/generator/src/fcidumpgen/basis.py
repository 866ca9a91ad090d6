"""STO-3G basis set data and contracted Gaussian construction."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

BOHR_PER_ANGSTROM = 1.8897261246257702

NUCLEAR_CHARGE = {"H": 1, "N": 7}

# STO-3G exponents and contraction coefficients.  The sp shells share
# exponents between the s and p contractions.
STO3G = {
    "H": [
        ("s", [3.42525091, 0.62391373, 0.16885540],
         [0.15432897, 0.53532814, 0.44463454]),
    ],
    "N": [
        ("s", [99.1061690, 18.0523120, 4.8856602],
         [0.15432897, 0.53532814, 0.44463454]),
        ("sp", [3.7804559, 0.8784966, 0.2857144],
         [-0.09996723, 0.39951283, 0.70011547],
         [0.15591627, 0.60768372, 0.39195739]),
    ],
}


@dataclass(frozen=True)
class ContractedGaussian:
    """One normalized contracted Cartesian Gaussian basis function."""

    center: tuple[float, float, float]
    lmn: tuple[int, int, int]
    exps: tuple[float, ...]
    coefs: tuple[float, ...]


def primitive_norm(a: float, lmn: tuple[int, int, int]) -> float:
    l, m, n = lmn
    total = l + m + n
    df = 1.0
    for k in (l, m, n):
        for j in range(2 * k - 1, 0, -2):
            df *= j
    return (2.0 * a / np.pi) ** 0.75 * np.sqrt((4.0 * a) ** total / df)


def _contracted(center, lmn, exps, coefs) -> ContractedGaussian:
    """Fold primitive norms into the coefficients and normalize the contraction."""
    from .integrals import overlap_prim

    scaled = [c * primitive_norm(a, lmn) for a, c in zip(exps, coefs)]
    zero = (0.0, 0.0, 0.0)
    s = 0.0
    for ai, ci in zip(exps, scaled):
        for aj, cj in zip(exps, scaled):
            s += ci * cj * overlap_prim(ai, lmn, zero, aj, lmn, zero)
    scaled = [c / np.sqrt(s) for c in scaled]
    return ContractedGaussian(tuple(center), tuple(lmn), tuple(exps), tuple(scaled))


def build_basis(symbols: list[str], coords_bohr: np.ndarray) -> list[ContractedGaussian]:
    """Build the STO-3G basis for a molecule.

    coords_bohr has shape (n_atoms, 3) in bohr.  Basis functions are ordered
    atom by atom, s before p, p in x, y, z order.
    """
    basis: list[ContractedGaussian] = []
    for sym, xyz in zip(symbols, coords_bohr):
        for shell in STO3G[sym]:
            kind, exps = shell[0], shell[1]
            if kind == "s":
                basis.append(_contracted(xyz, (0, 0, 0), exps, shell[2]))
            elif kind == "sp":
                basis.append(_contracted(xyz, (0, 0, 0), exps, shell[2]))
                for lmn in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
                    basis.append(_contracted(xyz, lmn, exps, shell[3]))
            else:
                raise ValueError(f"unsupported shell kind {kind!r}")
    return basis

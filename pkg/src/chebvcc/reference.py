"""Classical references: HF expectation, sector FCI, and CISD diagonalization."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .operators import FockSpace, SparseOperator, lanczos_extremal


@dataclass(frozen=True)
class SectorBasis:
    """All determinants with the space's electron count and Sz, ascending."""

    determinants: tuple[int, ...]
    index_of: dict[int, int]
    reference_position: int

    def __len__(self) -> int:
        return len(self.determinants)


def sector_basis(space: FockSpace) -> SectorBasis:
    n_spatial = space.n_spin_orbitals // 2
    n_alpha = sum(1 for p in space.occupied if p % 2 == 0)
    n_beta = space.n_electrons - n_alpha
    dets = []
    for occ_a in combinations(range(n_spatial), n_alpha):
        for occ_b in combinations(range(n_spatial), n_beta):
            det = sum(1 << (2 * s) for s in occ_a)
            det += sum(1 << (2 * s + 1) for s in occ_b)
            dets.append(det)
    dets.sort()
    index_of = {d: k for k, d in enumerate(dets)}
    return SectorBasis(tuple(dets), index_of, index_of[space.reference_index])


def hf_energy(H: SparseOperator, space: FockSpace) -> float:
    r = space.reference_index
    return float(np.real(H.entries[r, r]))


def sector_matrix(H: SparseOperator, basis: SectorBasis) -> np.ndarray:
    idx = np.array(basis.determinants, dtype=np.int64)
    sub = H.entries[np.ix_(idx, idx)]
    return np.real(sub.toarray())


def fci_ground_energy(H: SparseOperator, space: FockSpace,
                      dense_cutoff: int = 5000) -> tuple[float, np.ndarray]:
    """Lowest eigenpair of H restricted to the (N, Sz) sector.

    Dense below dense_cutoff, Lanczos with full reorthogonalization above.
    The returned vector lives on the full 2^q space.
    """
    basis = sector_basis(space)
    nd = len(basis)
    if nd <= dense_cutoff:
        Hs = sector_matrix(H, basis)
        evals, evecs = np.linalg.eigh(Hs)
        energy = float(evals[0])
        v_sector = evecs[:, 0]
    else:
        idx = np.array(basis.determinants, dtype=np.int64)
        Hs = H.entries[np.ix_(idx, idx)].tocsr()
        # shift so the ground state is the dominant eigenvalue in magnitude
        shift = float(np.abs(Hs).sum(axis=0).max()) + 1.0

        def matvec(v: np.ndarray) -> np.ndarray:
            return shift * v - np.real(Hs @ v)

        theta, y, _ = lanczos_extremal(matvec, nd, tol=1e-13, max_steps=400)
        energy = float(shift - theta)
        v_sector = y / np.linalg.norm(y)
    vec = np.zeros(space.dimension)
    vec[np.array(basis.determinants)] = v_sector
    return energy, vec


def cisd_ground_energy(H: SparseOperator, space: FockSpace) -> float:
    """Lowest eigenvalue over the reference plus Sz-conserving singles/doubles."""
    basis = sector_basis(space)
    ref = space.reference_index
    dets = np.array(basis.determinants, dtype=np.uint64)
    degree = np.bitwise_count(dets ^ np.uint64(ref)) >> 1
    keep = np.array(basis.determinants, dtype=np.int64)[degree <= 2]
    sub = np.real(H.entries[np.ix_(keep, keep)].toarray())
    return float(np.linalg.eigh(sub)[0][0])

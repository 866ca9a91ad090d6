"""Jordan-Wigner Fock space, second-quantized operators, and norms.

Basis states are integers on q spin orbitals with bit p giving the occupation
of spin orbital p; spin orbital p = 2*(spatial-1) + sigma with alpha on even
positions.  Ladder operators carry the Jordan-Wigner sign, the parity of the
occupied orbitals below p.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg

from .fcidump import IntegralSet, dense_integrals

Descriptor = tuple
# single: ("s", i, a) for t_i^a; double: ("d", i, j, a, b), i<j, a<b


@dataclass(frozen=True)
class FockSpace:
    """Reference determinant and orbital partition on q spin orbitals."""

    n_spin_orbitals: int
    n_electrons: int
    occupied: tuple[int, ...]
    virtual: tuple[int, ...]
    reference_index: int

    @property
    def dimension(self) -> int:
        return 1 << self.n_spin_orbitals


def make_fock_space(n_orbitals: int, n_electrons: int, ms2: int = 0) -> FockSpace:
    """Aufbau reference: the lowest alpha and beta spin orbitals consistent with ms2."""
    q = 2 * n_orbitals
    n_alpha = (n_electrons + ms2) // 2
    n_beta = n_electrons - n_alpha
    if n_alpha - n_beta != ms2 or min(n_alpha, n_beta) < 0:
        raise ValueError(f"inconsistent N={n_electrons}, MS2={ms2}")
    if max(n_alpha, n_beta) > n_orbitals:
        raise ValueError("more electrons of one spin than spatial orbitals")
    occupied = sorted([2 * s for s in range(n_alpha)]
                      + [2 * s + 1 for s in range(n_beta)])
    virtual = [p for p in range(q) if p not in occupied]
    ref = sum(1 << p for p in occupied)
    return FockSpace(q, n_electrons, tuple(occupied), tuple(virtual), ref)


def space_for(integrals: IntegralSet) -> FockSpace:
    return make_fock_space(integrals.n_orbitals, integrals.n_electrons,
                           integrals.ms2)


@dataclass(frozen=True)
class SparseOperator:
    """Sparse matrix on the full 2^q space."""

    dimension: int
    entries: sp.csr_matrix

    def toarray(self) -> np.ndarray:
        return self.entries.toarray()

    def adjoint(self) -> "SparseOperator":
        return SparseOperator(self.dimension,
                              self.entries.conj().transpose().tocsr())


@dataclass(frozen=True)
class AmplitudeVector:
    """Real amplitudes with descriptors mapping positions to excitation terms."""

    values: np.ndarray
    index_map: tuple[Descriptor, ...]

    def __post_init__(self):
        if len(self.values) != len(self.index_map):
            raise ValueError("values and index_map length mismatch")
        if len(set(self.index_map)) != len(self.index_map):
            raise ValueError("duplicate excitation descriptors")

    def with_values(self, values: np.ndarray) -> "AmplitudeVector":
        return AmplitudeVector(np.asarray(values, dtype=float), self.index_map)


def _popcount(x: np.ndarray) -> np.ndarray:
    return np.bitwise_count(x.astype(np.uint64)).astype(np.int64)


def apply_ladder_sequence(q: int, ops: list[tuple[int, bool]]):
    """Vectorized action of a product of ladder operators on every basis state.

    ops lists (spin orbital, is_create) in application order, first applied
    first.  Returns (rows, cols, signs) for the surviving columns.
    """
    dim = 1 << q
    cols = np.arange(dim, dtype=np.int64)
    state = cols.copy()
    sign = np.ones(dim, dtype=np.int64)
    for p, is_create in ops:
        if not 0 <= p < q:
            raise IndexError(f"spin orbital {p} outside 0..{q - 1}")
        bit = np.int64(1) << p
        occupied = (state & bit) != 0
        keep = ~occupied if is_create else occupied
        cols, state, sign = cols[keep], state[keep], sign[keep]
        parity = _popcount(state & (bit - 1)) & 1
        sign = sign * (1 - 2 * parity)
        state = state ^ bit
    return state, cols, sign.astype(np.float64)


def ladder_operator(space: FockSpace, p: int, kind: str) -> SparseOperator:
    """Jordan-Wigner creation/annihilation matrix on the full space."""
    if kind not in ("create", "annihilate"):
        raise ValueError(f"kind must be create|annihilate, got {kind!r}")
    rows, cols, signs = apply_ladder_sequence(
        space.n_spin_orbitals, [(p, kind == "create")])
    dim = space.dimension
    return SparseOperator(dim, sp.csr_matrix((signs, (rows, cols)),
                                             shape=(dim, dim)))


def build_hamiltonian(integrals: IntegralSet, space: FockSpace) -> SparseOperator:
    """Second-quantized electronic Hamiltonian on the Jordan-Wigner space.

    H = E_core + sum_pq h_pq a+_ps a_qs
      + 1/2 sum_pqrs (pq|rs) a+_ps a+_rt a_st a_qs, spins s, t summed.
    """
    if 2 * integrals.n_orbitals != space.n_spin_orbitals:
        raise ValueError("integral set and Fock space dimension mismatch")
    q = space.n_spin_orbitals
    dim = space.dimension
    h, g = dense_integrals(integrals)
    n = integrals.n_orbitals

    all_rows, all_cols, all_vals = [], [], []

    def add(seq, coeff):
        rows, cols, signs = apply_ladder_sequence(q, seq)
        if rows.size:
            all_rows.append(rows)
            all_cols.append(cols)
            all_vals.append(signs * coeff)

    for p in range(n):
        for r in range(n):
            if h[p, r] == 0.0:
                continue
            for s in range(2):
                add([(2 * r + s, False), (2 * p + s, True)], h[p, r])
    for p in range(n):
        for r in range(n):
            for u in range(n):
                for v in range(n):
                    w = g[p, r, u, v]
                    if w == 0.0:
                        continue
                    for s in range(2):
                        for t in range(2):
                            # a+_{p s} a+_{u t} a_{v t} a_{r s}, applied right to left
                            add([(2 * r + s, False), (2 * v + t, False),
                                 (2 * u + t, True), (2 * p + s, True)], 0.5 * w)

    rows = np.concatenate(all_rows) if all_rows else np.empty(0, dtype=np.int64)
    cols = np.concatenate(all_cols) if all_cols else np.empty(0, dtype=np.int64)
    vals = np.concatenate(all_vals) if all_vals else np.empty(0)
    H = sp.csr_matrix((vals, (rows, cols)), shape=(dim, dim))
    H = H + sp.identity(dim, format="csr") * integrals.core_energy
    H.sum_duplicates()
    return SparseOperator(dim, H.tocsr())


def full_excitation_map(space: FockSpace) -> tuple[Descriptor, ...]:
    """Every unique single (i,a) and double (i<j, a<b) over spin orbitals."""
    singles = [("s", i, a) for i in space.occupied for a in space.virtual]
    doubles = [("d", i, j, a, b)
               for i, j in combinations(space.occupied, 2)
               for a, b in combinations(space.virtual, 2)]
    return tuple(singles + doubles)


def sz_excitation_map(space: FockSpace) -> tuple[Descriptor, ...]:
    """The Sz-conserving subset of the full excitation map."""
    def sz_ok(desc: Descriptor) -> bool:
        if desc[0] == "s":
            _, i, a = desc
            return i % 2 == a % 2
        _, i, j, a, b = desc
        return (i % 2 + j % 2) == (a % 2 + b % 2)
    return tuple(d for d in full_excitation_map(space) if sz_ok(d))


def zero_amplitudes(space: FockSpace, sz_conserving: bool = True) -> AmplitudeVector:
    index_map = sz_excitation_map(space) if sz_conserving else full_excitation_map(space)
    return AmplitudeVector(np.zeros(len(index_map)), index_map)


def validate_descriptors(index_map, space: FockSpace) -> None:
    occ, vir = set(space.occupied), set(space.virtual)
    for desc in index_map:
        if desc[0] == "s":
            _, i, a = desc
            holes, parts = (i,), (a,)
        elif desc[0] == "d":
            _, i, j, a, b = desc
            if not (i < j and a < b):
                raise ValueError(f"double descriptor not ordered: {desc}")
            holes, parts = (i, j), (a, b)
        else:
            raise ValueError(f"unknown descriptor kind {desc!r}")
        if not all(x in occ for x in holes):
            raise ValueError(f"descriptor {desc} excites from a virtual orbital")
        if not all(x in vir for x in parts):
            raise ValueError(f"descriptor {desc} excites into an occupied orbital")


def term_sequence(desc: Descriptor) -> list[tuple[int, bool]]:
    """Ladder sequence of one excitation term, in application order.

    Singles a+_a a_i; doubles a+_a a+_b a_i a_j, rightmost operator first.
    """
    if desc[0] == "s":
        _, i, a = desc
        return [(i, False), (a, True)]
    _, i, j, a, b = desc
    return [(j, False), (i, False), (b, True), (a, True)]


def cluster_term_patterns(space: FockSpace, index_map):
    """Concatenated sparse patterns of all excitation terms on the full space.

    Returns (rows, cols, signs, term_ids); the cluster matrix for amplitudes t
    is the COO matrix with data signs * t[term_ids].
    """
    validate_descriptors(index_map, space)
    q = space.n_spin_orbitals
    rows_l, cols_l, vals_l, ids_l = [], [], [], []
    for k, desc in enumerate(index_map):
        rows, cols, signs = apply_ladder_sequence(q, term_sequence(desc))
        rows_l.append(rows)
        cols_l.append(cols)
        vals_l.append(signs)
        ids_l.append(np.full(rows.size, k, dtype=np.int64))
    return (np.concatenate(rows_l), np.concatenate(cols_l),
            np.concatenate(vals_l), np.concatenate(ids_l))


def build_cluster_operator(t: AmplitudeVector, space: FockSpace) -> SparseOperator:
    """T = sum_ia t_i^a a+_a a_i + sum_{i<j,a<b} t_ij^ab a+_a a+_b a_i a_j."""
    rows, cols, signs, ids = cluster_term_patterns(space, t.index_map)
    dim = space.dimension
    T = sp.csr_matrix((signs * t.values[ids], (rows, cols)), shape=(dim, dim))
    return SparseOperator(dim, T)


def split_hermitian(T: SparseOperator) -> tuple[SparseOperator, SparseOperator]:
    """Return ((T - T+)/2, (T + T+)/2)."""
    Td = T.entries.conj().transpose().tocsr()
    anti = (T.entries - Td) * 0.5
    herm = (T.entries + Td) * 0.5
    return (SparseOperator(T.dimension, anti.tocsr()),
            SparseOperator(T.dimension, herm.tocsr()))


def lanczos_extremal(matvec, dim: int, v0: np.ndarray | None = None,
                     tol: float = 1e-12, max_steps: int = 200):
    """Symmetric Lanczos with full reorthogonalization.

    Returns (eigenvalue largest in magnitude, its Ritz vector, residual).
    The default start is a fixed-seed random vector: a structured start such
    as all-ones can be exactly orthogonal to the dominant eigenspace when the
    operator has symmetries, in which case Lanczos converges cleanly to a
    subdominant eigenvalue.
    """
    if v0 is None:
        start = np.random.default_rng(1905).standard_normal(dim)
    else:
        start = np.asarray(v0, dtype=float)
    v = start / np.linalg.norm(start)
    V = [v]
    alphas: list[float] = []
    betas: list[float] = []
    for k in range(max_steps):
        w = matvec(V[-1])
        alpha = float(V[-1] @ w)
        alphas.append(alpha)
        w = w - alpha * V[-1]
        if betas:
            w = w - betas[-1] * V[-2]
        # full reorthogonalization keeps the basis numerically orthogonal
        for u in V:
            w = w - (u @ w) * u
        beta = float(np.linalg.norm(w))
        Tk = np.diag(alphas) + np.diag(betas, 1) + np.diag(betas, -1)
        evals, evecs = np.linalg.eigh(Tk)
        idx = int(np.argmax(np.abs(evals)))
        theta = float(evals[idx])
        resid = abs(beta * evecs[-1, idx])
        scale = max(abs(theta), 1e-300)
        if resid <= tol * scale or beta <= 1e-14 * scale:
            y = np.column_stack(V) @ evecs[:, idx]
            return theta, y, resid
        if len(V) == dim:
            break
        betas.append(beta)
        V.append(w / beta)
    y = np.column_stack(V[:len(alphas)]) @ evecs[:, idx]
    return theta, y, resid


def spectral_norm(A: SparseOperator) -> float:
    """Largest singular value; 0 for the zero matrix."""
    M = A.entries
    if M.nnz == 0 or not np.any(M.data):
        return 0.0
    if A.dimension <= 1024:
        return float(np.linalg.norm(M.toarray(), ord=2))
    if np.iscomplexobj(M.data) and np.any(M.data.imag):
        s = sp.linalg.svds(M.astype(complex), k=1, return_singular_vectors=False,
                           tol=1e-12, maxiter=5000)
        return float(s[0])
    Mc = M.real.tocsr()
    Mt = Mc.transpose().tocsr()

    def matvec(v: np.ndarray) -> np.ndarray:
        return Mt @ (Mc @ v)

    theta, _, _ = lanczos_extremal(matvec, A.dimension)
    return float(np.sqrt(max(theta, 0.0)))

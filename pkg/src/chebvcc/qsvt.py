"""Matrix-level emulation of the block-encoding / QSVT / LCU circuit.

The Hermitian cluster part is Pauli-decomposed, block encoded via
PREPARE+SELECT, and Chebyshev polynomials of the encoded block are realized
by QSVT phase sequences; an LCU register combines the polynomial degrees
into the truncated exponential, and ancilla post-selection yields the
system state.  Qubit 0 is the least significant bit of a basis index, and
character p of a Pauli string acts on qubit p.  Ancilla registers occupy
the high bits, so projected blocks are top-left.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.optimize
import scipy.sparse.linalg

from .chebyshev import cheb_coeffs_exp, expm_action
from .operators import (
    AmplitudeVector,
    FockSpace,
    SparseOperator,
    build_cluster_operator,
    split_hermitian,
)

_PAULI_2X2 = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex),
    "Y": np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex),
    "Z": np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex),
}
_AXES = "IXYZ"
# single-qubit map from the (i, j) matrix-unit basis to Pauli coefficients
_PAIR_TO_PAULI = 0.5 * np.array([
    [1.0, 0.0, 0.0, 1.0],
    [0.0, 1.0, 1.0, 0.0],
    [0.0, 1.0j, -1.0j, 0.0],
    [1.0, 0.0, 0.0, -1.0],
])

_GRID = np.linspace(-1.0, 1.0, 201)


class PhaseFindingError(ValueError):
    """Numerical phase finding failed; carries the best residual reached."""

    def __init__(self, residual: float):
        super().__init__(f"phase finding did not converge: residual "
                         f"{residual:.3e}")
        self.residual = residual


@dataclass(frozen=True)
class PauliDecomposition:
    """Hermitian matrix as a real-weighted sum of Pauli strings."""

    terms: tuple[tuple[str, float], ...]
    one_norm: float
    n_qubits: int

    def as_lines(self) -> str:
        return "\n".join(f"{w:+.16e} {s}" for s, w in self.terms)


@dataclass(frozen=True)
class PhaseSequence:
    """QSVT phases realizing one fixed-parity polynomial."""

    phases: tuple[float, ...]
    parity: str
    target_degree: int
    grid_residual: float


@dataclass(frozen=True)
class BlockEncoding:
    """PREPARE+SELECT unitary encoding H-tilde / lambda in its top block."""

    unitary: object
    m: int
    subnormalization: float
    decomposition: PauliDecomposition


def pauli_matrix(string: str) -> np.ndarray:
    """Dense matrix of a Pauli string; character p acts on qubit p.

    Qubit 0 is the least significant index bit, so the kron nests from the
    highest qubit down.
    """
    out = _PAULI_2X2[string[-1]]
    for ch in reversed(string[:-1]):
        out = np.kron(out, _PAULI_2X2[ch])
    return out


def _pauli_action(string: str):
    """(flip mask, phase per input index) for applying the string to a vector."""
    q = len(string)
    flip = 0
    zy_mask = 0
    n_y = 0
    for p, ch in enumerate(string):
        if ch in ("X", "Y"):
            flip |= 1 << p
        if ch in ("Z", "Y"):
            zy_mask |= 1 << p
        if ch == "Y":
            n_y += 1
    idx = np.arange(1 << q, dtype=np.uint64)
    par = np.bitwise_count(idx & np.uint64(zy_mask)).astype(np.int64) & 1
    phase = (1j ** n_y) * (1.0 - 2.0 * par)
    return flip, phase


def pauli_decompose(A) -> PauliDecomposition:
    """Weights w_k = tr(P_k A) / 2^q over all nonzero Pauli strings."""
    dense = A.entries.toarray() if isinstance(A, SparseOperator) \
        else np.asarray(A)
    dim = dense.shape[0]
    q = int(round(np.log2(dim)))
    if dense.shape != (dim, dim) or (1 << q) != dim:
        raise ValueError("matrix dimension is not a power of two")
    if q > 10:
        raise ValueError(f"Pauli decomposition capped at 10 qubits, got {q}")
    if np.max(np.abs(dense - dense.conj().T)) > 1e-12:
        raise ValueError("matrix is not Hermitian to 1e-12")

    # interleave row/column bits so qubit p owns base-4 digit p, then apply
    # the single-qubit matrix-unit -> Pauli map along every digit
    rows, cols = np.divmod(np.arange(dim * dim), dim)
    inter = np.zeros(dim * dim, dtype=np.int64)
    for p in range(q):
        inter |= (((rows >> p) & 1) * 2 + ((cols >> p) & 1)) << (2 * p)
    coeff = np.zeros(4 ** q, dtype=complex)
    coeff[inter] = dense.reshape(-1)
    for p in range(q):
        shaped = coeff.reshape(4 ** (q - 1 - p), 4, 4 ** p)
        coeff = np.einsum("st,atb->asb", _PAIR_TO_PAULI, shaped).reshape(-1)

    keep = np.nonzero(np.abs(coeff) > 1e-13)[0]
    terms = []
    for k in keep:
        digits = [(int(k) >> (2 * p)) & 3 for p in range(q)]
        label = "".join(_AXES[d] for d in digits)
        w = coeff[k]
        if abs(w.imag) > 1e-12:
            raise ValueError(f"non-real weight {w} for {label}")
        terms.append((label, float(w.real)))
    terms.sort(key=lambda sw: sw[0])
    one_norm = float(sum(abs(w) for _, w in terms))
    return PauliDecomposition(tuple(terms), one_norm, q)


def reconstruct_pauli(dec: PauliDecomposition) -> np.ndarray:
    dim = 1 << dec.n_qubits
    out = np.zeros((dim, dim), dtype=complex)
    for label, w in dec.terms:
        out += w * pauli_matrix(label)
    return out


class _CircuitOps:
    """Vectorized PREPARE / SELECT / phase-gadget actions on statevectors.

    All methods accept arrays of shape (2^m, 2^q) or batched (2^m, 2^q, b).
    """

    def __init__(self, dec: PauliDecomposition):
        self.q = dec.n_qubits
        self.n_terms = len(dec.terms)
        self.m = max(0, int(np.ceil(np.log2(self.n_terms)))) if self.n_terms \
            else 0
        lam = dec.one_norm
        amps = np.zeros(1 << self.m)
        amps[:self.n_terms] = [np.sqrt(abs(w) / lam) for _, w in dec.terms]
        u = np.zeros(1 << self.m)
        u[0] = 1.0
        u -= amps
        self.u = None if (u @ u) < 1e-24 else u
        self.select_perm = []
        self.select_phase = []
        dim_q = 1 << self.q
        for label, w in dec.terms:
            flip, phase = _pauli_action(label)
            perm = np.arange(dim_q) ^ flip
            self.select_perm.append(perm)
            self.select_phase.append(np.sign(w) * phase[perm])

    def prepare(self, V: np.ndarray) -> np.ndarray:
        if self.u is None:
            return V
        proj = np.tensordot(self.u, V, axes=(0, 0))
        return V - (2.0 / (self.u @ self.u)) * self.u.reshape(
            (-1,) + (1,) * proj.ndim) * proj[None]

    def select(self, V: np.ndarray) -> np.ndarray:
        out = V.copy()
        for k in range(self.n_terms):
            out[k] = self.select_phase[k].reshape(
                (-1,) + (1,) * (V.ndim - 2)) * V[k][self.select_perm[k]]
        return out

    def apply_u(self, V: np.ndarray) -> np.ndarray:
        return self.prepare(self.select(self.prepare(V)))

    def gadget(self, phi: float, V: np.ndarray) -> np.ndarray:
        out = V * np.exp(-1j * phi)
        out[0] = V[0] * np.exp(1j * phi)
        return out

    def run(self, phases, psi0: np.ndarray) -> np.ndarray:
        """Projected block action: ancillas |0> -> <0|, signal qubit implicit.

        psi0 has shape (2^q,) or (2^q, b); returns the same shape.
        """
        W = np.zeros((1 << self.m,) + psi0.shape, dtype=complex)
        W[0] = psi0
        W = self.gadget(phases[-1], W)
        for phi in phases[-2::-1]:
            W = self.gadget(phi, self.apply_u(W))
        return W[0]


def block_encode_lcu(dec: PauliDecomposition) -> BlockEncoding:
    """PREPARE(+) SELECT PREPARE with subnormalization = Pauli one-norm.

    The unitary is dense up to 10 total qubits and a LinearOperator beyond.
    """
    if not dec.terms:
        raise ValueError("decomposition has no terms to encode")
    ops = _CircuitOps(dec)
    total = ops.m + ops.q
    if total <= 10:
        dim = 1 << total
        cols = np.eye(dim, dtype=complex).reshape(1 << ops.m, 1 << ops.q, dim)
        unitary = ops.apply_u(cols).reshape(dim, dim)
    else:
        dim = 1 << total

        def mv(v):
            return ops.apply_u(np.asarray(v, dtype=complex).reshape(
                1 << ops.m, 1 << ops.q)).reshape(dim)

        def mm(V):
            V = np.asarray(V, dtype=complex)
            return ops.apply_u(V.reshape(1 << ops.m, 1 << ops.q,
                                         V.shape[1])).reshape(dim, V.shape[1])

        unitary = scipy.sparse.linalg.LinearOperator(
            (dim, dim), matvec=mv, matmat=mm, rmatvec=mv, dtype=complex)
    be = BlockEncoding(unitary, ops.m, dec.one_norm, dec)
    object.__setattr__(be, "_ops", ops)
    return be


def _ops_of(be: BlockEncoding) -> _CircuitOps:
    ops = getattr(be, "_ops", None)
    if ops is None:
        ops = _CircuitOps(be.decomposition)
        object.__setattr__(be, "_ops", ops)
    return ops


def encoded_block(be: BlockEncoding, chunk: int = 32) -> np.ndarray:
    """Dense top-left 2^q block of the encoding unitary."""
    ops = _ops_of(be)
    dim_q = 1 << ops.q
    out = np.empty((dim_q, dim_q), dtype=complex)
    for lo in range(0, dim_q, chunk):
        hi = min(lo + chunk, dim_q)
        cols = np.zeros((1 << ops.m, dim_q, hi - lo), dtype=complex)
        cols[0, lo:hi] = np.eye(hi - lo)
        out[:, lo:hi] = ops.apply_u(cols)[0]
    return out


def _response(phases, xs: np.ndarray) -> np.ndarray:
    """Scalar QSP response <0| e^{i phi0 Z} prod_j R(x) e^{i phi_j Z} |0>."""
    xs = np.asarray(xs, dtype=float)
    s = np.sqrt(np.clip(1.0 - xs * xs, 0.0, None))
    col0 = np.zeros((xs.size, 2), dtype=complex)
    col1 = np.zeros((xs.size, 2), dtype=complex)
    e0 = np.exp(1j * phases[0])
    col0[:, 0] = e0
    col1[:, 1] = np.conj(e0)
    for phi in phases[1:]:
        a, b = col0.copy(), col1.copy()
        col0 = a * xs[:, None] + b * s[:, None]
        col1 = a * s[:, None] - b * xs[:, None]
        e = np.exp(1j * phi)
        col0 *= e
        col1 *= np.conj(e)
    return col0[:, 0]


def chebyshev_phases(n: int) -> PhaseSequence:
    """Analytic phases whose QSP response is exactly T_n(x)."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    if n == 0:
        phases = (0.0,)
    else:
        edge = -(n - 1) * np.pi / 4.0
        phases = (edge,) + (np.pi / 2.0,) * (n - 1) + (edge,)
    resp = _response(phases, _GRID)
    target = np.cos(n * np.arccos(_GRID))
    residual = float(np.max(np.abs(resp - target)))
    return PhaseSequence(phases, "even" if n % 2 == 0 else "odd", n, residual)


def qsp_phase_find(target, parity: str) -> PhaseSequence:
    """Phases whose response real part matches a fixed-parity polynomial.

    target holds Chebyshev-basis coefficients c_0..c_n of the polynomial;
    entries of the wrong parity must vanish and max |target| on [-1, 1]
    must not exceed 1 - 1e-4.
    """
    coeffs = np.asarray(target, dtype=float)
    if parity not in ("even", "odd"):
        raise ValueError(f"parity must be even or odd, got {parity!r}")
    n = coeffs.size - 1
    if n < 0:
        raise ValueError("empty target")
    if n % 2 != (0 if parity == "even" else 1):
        raise ValueError(f"target degree {n} conflicts with {parity} parity")
    wrong = coeffs[1::2] if parity == "even" else coeffs[0::2]
    if np.any(np.abs(wrong) > 1e-13):
        raise ValueError(f"{parity} target has opposite-parity coefficients")
    fine = np.linspace(-1.0, 1.0, 2001)
    if np.max(np.abs(np.polynomial.chebyshev.chebval(fine, coeffs))) \
            > 1.0 - 1e-4 + 1e-12:
        raise ValueError("max |target| exceeds 1 - 1e-4; rescale first")

    goal = np.polynomial.chebyshev.chebval(_GRID, coeffs)

    def resid(phi):
        return np.real(_response(phi, _GRID)) - goal

    edge = -(n - 1) * np.pi / 4.0
    inits = [
        np.array([np.pi / 4] + [0.0] * (n - 1) + [np.pi / 4])[:n + 1],
        np.zeros(n + 1),
        np.array((edge,) + (np.pi / 2,) * max(n - 1, 0) + (edge,))[:n + 1],
    ]
    rng = np.random.default_rng(20240817)
    inits += [rng.uniform(-np.pi / 2, np.pi / 2, n + 1) for _ in range(5)]
    best = np.inf
    best_phi = None
    for x0 in inits:
        sol = scipy.optimize.least_squares(resid, x0, method="lm",
                                           xtol=1e-15, ftol=1e-15, gtol=1e-15,
                                           max_nfev=4000)
        residual = float(np.max(np.abs(resid(sol.x))))
        if residual < best:
            best, best_phi = residual, sol.x
        if best <= 1e-10:
            break
    if best > 1e-8:
        raise PhaseFindingError(best)
    return PhaseSequence(tuple(float(p) for p in best_phi), parity, n, best)


def _gadget_diag(m: int, q: int, phi: float) -> np.ndarray:
    """Diagonal of CPiX (e^{-i phi Z} x I) CPiX over (signal, ancilla, system)."""
    anc = np.arange(1 << m) != 0
    sys_ones = np.ones(1 << q)
    plus = np.exp(1j * phi) * sys_ones
    minus = np.exp(-1j * phi) * sys_ones
    b0 = np.concatenate([(plus if not a else minus) for a in anc])
    b1 = np.concatenate([(minus if not a else plus) for a in anc])
    return np.concatenate([b0, b1])


def qsvt_apply(be: BlockEncoding, ps: PhaseSequence):
    """Full circuit on (1 + m + q) qubits: gadgets interleaved with the
    encoding unitary; the all-ancilla <0| block realizes the polynomial."""
    ops = _ops_of(be)
    m, q = ops.m, ops.q
    total = 1 + m + q
    phases = ps.phases
    if (1 << total) <= 1024:
        dim = 1 << total
        U_full = np.kron(np.eye(2), np.asarray(be.unitary))
        V = np.diag(_gadget_diag(m, q, phases[-1]))
        for phi in phases[-2::-1]:
            V = U_full @ V
            V = _gadget_diag(m, q, phi)[:, None] * V
        return V

    dim = 1 << total

    def run(V):
        # shape (2, 2^m, 2^q, b); signal halves see mirrored gadget phases
        W = V.copy()
        ph = np.exp(1j * phases[-1])

        def gadget(W, e):
            W2 = np.empty_like(W)
            W2[0] = W[0] * np.conj(e)
            W2[0, 0] = W[0, 0] * e
            W2[1] = W[1] * e
            W2[1, 0] = W[1, 0] * np.conj(e)
            return W2

        W = gadget(W, ph)
        for phi in phases[-2::-1]:
            W[0] = ops.apply_u(W[0])
            W[1] = ops.apply_u(W[1])
            W = gadget(W, np.exp(1j * phi))
        return W

    def mm(V):
        V = np.asarray(V, dtype=complex)
        b = V.shape[1] if V.ndim == 2 else 1
        W = run(V.reshape(2, 1 << m, 1 << q, b))
        return W.reshape(dim, b)

    return scipy.sparse.linalg.LinearOperator(
        (dim, dim), matvec=lambda v: mm(v.reshape(-1, 1)).reshape(-1),
        matmat=mm, dtype=complex)


def qsvt_block(be: BlockEncoding, ps: PhaseSequence,
               chunk: int = 32) -> np.ndarray:
    """Dense system-space block <0, 0^m| circuit |0, 0^m> = P(H-tilde/lambda)."""
    ops = _ops_of(be)
    dim_q = 1 << ops.q
    out = np.empty((dim_q, dim_q), dtype=complex)
    for lo in range(0, dim_q, chunk):
        hi = min(lo + chunk, dim_q)
        cols = np.zeros((dim_q, hi - lo), dtype=complex)
        cols[lo:hi] = np.eye(hi - lo)
        out[:, lo:hi] = ops.run(ps.phases, cols)
    return out


def _chebyshev_parts(coeffs: np.ndarray):
    """Split Chebyshev coefficients into rescaled even/odd QSP targets."""
    parts = []
    for parity in ("even", "odd"):
        sel = np.zeros_like(coeffs)
        start = 0 if parity == "even" else 1
        sel[start::2] = coeffs[start::2]
        nz = np.nonzero(np.abs(sel) > 1e-13)[0]
        if nz.size == 0:
            continue
        trimmed = sel[:nz[-1] + 1]
        fine = np.linspace(-1.0, 1.0, 2001)
        peak = np.max(np.abs(np.polynomial.chebyshev.chebval(fine, trimmed)))
        scale = min(1.0, (1.0 - 1e-4) / peak)
        parts.append((parity, trimmed * scale, 1.0 / scale))
    return parts


def assemble_hcvcc_circuit(t: AmplitudeVector, space: FockSpace, d: int,
                           combine_mode: str = "per-term"):
    """Emulated circuit state preparation; returns (state, success amplitude).

    The state lives on the system register after projecting every ancilla
    onto |0> and applying the anti-Hermitian cluster exponential; the
    success amplitude is the projected norm before renormalization.
    """
    if d < 0:
        raise ValueError("degree must be nonnegative")
    if combine_mode not in ("per-term", "even-odd"):
        raise ValueError(f"unknown combine_mode {combine_mode!r}")
    if space.n_spin_orbitals > 8:
        raise ValueError("circuit emulation capped at 8 system qubits")
    T = build_cluster_operator(t, space)
    anti, herm = split_hermitian(T)
    ref = np.zeros(space.dimension)
    ref[space.reference_index] = 1.0
    herm_dense = herm.entries.toarray()
    if np.max(np.abs(herm_dense)) < 1e-14:
        psi = expm_action(anti.entries, ref.astype(complex), tol=1e-15)
        return psi / np.linalg.norm(psi), 1.0
    dec = pauli_decompose(herm_dense)
    lam = dec.one_norm
    ops = _CircuitOps(dec)
    coeffs = cheb_coeffs_exp(lam, d).c

    if combine_mode == "per-term":
        acc = np.zeros(space.dimension, dtype=complex)
        for n, c in enumerate(coeffs):
            acc += c * ops.run(chebyshev_phases(n).phases, ref.astype(complex))
        raw = acc / np.sum(np.abs(coeffs))
    else:
        acc = np.zeros(space.dimension, dtype=complex)
        weight_sum = 0.0
        for parity, part, weight in _chebyshev_parts(coeffs):
            ps = qsp_phase_find(part, parity)
            proj = ops.run(ps.phases, ref.astype(complex))
            # the encoding unitary is real, so the conjugate-phase branch of
            # the LCU pair contributes the complex conjugate: pair = Re
            acc += weight * np.real(proj)
            weight_sum += weight
        raw = acc / weight_sum

    success = float(np.linalg.norm(raw))
    if success < 1e-10:
        raise ValueError(f"post-selection collapsed: amplitude {success:.3e}")
    psi = expm_action(anti.entries, raw, tol=1e-15)
    return psi / np.linalg.norm(psi), success

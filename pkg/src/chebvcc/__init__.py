"""Variational coupled cluster with Chebyshev-approximated exponentials.

Statevector-exact VCC, C^d-VCC, and HC^d-VCC energies on Jordan-Wigner
Fock spaces, a matrix-level emulation of the block-encoding/QSVT/LCU
circuit realizing the HC^d ansatz, an L-BFGS variational driver, and
classical HF/CISD/FCI reference solvers over FCIDUMP integral files.
"""

from .ansatz import (
    AnsatzSpec,
    EnergyReport,
    energy_projective_cc,
    energy_rayleigh,
    reference_state,
    state_anti_hermitian_exp,
    state_cvcc,
    state_exact_vcc,
    state_hcvcc,
    state_trotter_vcc,
)
from .chebyshev import (
    ChebCoefficients,
    apply_cheb_series,
    bessel_tail_bound,
    cheb_coeffs_exp,
    expm_action,
)
from .driver import (
    OptResult,
    ScanResult,
    ScanRow,
    finite_diff_gradient,
    lbfgs_minimize,
    optimize_ansatz,
    scan_pec,
)
from .engine import AnsatzEngine
from .fcidump import (
    FcidumpError,
    IntegralSet,
    integral_lookup,
    load_fcidump,
    parse_fcidump,
    serialize_fcidump,
)
from .operators import (
    AmplitudeVector,
    FockSpace,
    SparseOperator,
    build_cluster_operator,
    build_hamiltonian,
    full_excitation_map,
    ladder_operator,
    space_for,
    spectral_norm,
    split_hermitian,
    sz_excitation_map,
    zero_amplitudes,
)
from .qsvt import (
    BlockEncoding,
    PauliDecomposition,
    PhaseFindingError,
    PhaseSequence,
    assemble_hcvcc_circuit,
    block_encode_lcu,
    chebyshev_phases,
    encoded_block,
    pauli_decompose,
    qsp_phase_find,
    qsvt_apply,
    qsvt_block,
)
from .reference import (
    SectorBasis,
    cisd_ground_energy,
    fci_ground_energy,
    hf_energy,
    sector_basis,
)

__all__ = [
    "AmplitudeVector",
    "AnsatzEngine",
    "AnsatzSpec",
    "BlockEncoding",
    "ChebCoefficients",
    "EnergyReport",
    "FcidumpError",
    "FockSpace",
    "IntegralSet",
    "OptResult",
    "PauliDecomposition",
    "PhaseFindingError",
    "PhaseSequence",
    "ScanResult",
    "ScanRow",
    "SectorBasis",
    "SparseOperator",
    "apply_cheb_series",
    "assemble_hcvcc_circuit",
    "bessel_tail_bound",
    "block_encode_lcu",
    "build_cluster_operator",
    "build_hamiltonian",
    "cheb_coeffs_exp",
    "chebyshev_phases",
    "cisd_ground_energy",
    "encoded_block",
    "energy_projective_cc",
    "energy_rayleigh",
    "expm_action",
    "fci_ground_energy",
    "finite_diff_gradient",
    "full_excitation_map",
    "hf_energy",
    "integral_lookup",
    "ladder_operator",
    "lbfgs_minimize",
    "load_fcidump",
    "optimize_ansatz",
    "parse_fcidump",
    "pauli_decompose",
    "qsp_phase_find",
    "qsvt_apply",
    "qsvt_block",
    "reference_state",
    "scan_pec",
    "sector_basis",
    "serialize_fcidump",
    "space_for",
    "spectral_norm",
    "split_hermitian",
    "state_anti_hermitian_exp",
    "state_cvcc",
    "state_exact_vcc",
    "state_hcvcc",
    "state_trotter_vcc",
    "sz_excitation_map",
    "zero_amplitudes",
    "__version__",
]

__version__ = "0.1.0"

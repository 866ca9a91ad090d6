"""Gaussian-integral FCIDUMP generator and determinant-based reference solvers."""

from .basis import ContractedGaussian, build_basis
from .integrals import ao_integrals
from .scf import rhf
from .mo import mo_transform, active_space
from .fcidump import write_fcidump, read_fcidump
from .solvers import hf_energy, fci_energy, cisd_energy, ccsd_energy
from .systems import SYSTEMS, SystemSpec
from .generate import generate_dumps, generate_references, write_manifest

__all__ = [
    "ContractedGaussian",
    "build_basis",
    "ao_integrals",
    "rhf",
    "mo_transform",
    "active_space",
    "write_fcidump",
    "read_fcidump",
    "hf_energy",
    "fci_energy",
    "cisd_energy",
    "ccsd_energy",
    "SYSTEMS",
    "SystemSpec",
    "generate_dumps",
    "generate_references",
    "write_manifest",
]

"""End-to-end fixture generation: dumps, reference energies, and a manifest."""

from __future__ import annotations

import csv
import hashlib
import json
import os
import sys

import numpy as np
import scipy

from .basis import build_basis
from .fcidump import read_fcidump, write_fcidump
from .integrals import ao_integrals
from .mo import active_space, mo_transform
from .scf import rhf
from .solvers import ccsd_energy, cisd_energy, fci_energy, hf_energy
from .systems import SYSTEMS, SystemSpec


def dump_filename(system: str, r: float) -> str:
    return f"{system}_{r:.2f}.fcidump"


def make_dump(spec: SystemSpec, r: float, path: str) -> None:
    """Run integrals + RHF + MO transform for one geometry and write the dump."""
    coords = spec.geometry(r)
    symbols = list(spec.symbols)
    basis = build_basis(symbols, coords)
    S, T, V, eri, e_nuc = ao_integrals(symbols, coords, basis)
    n_electrons = sum({"H": 1, "N": 7}[s] for s in symbols)
    scf = rhf(S, T + V, eri, e_nuc, n_electrons)
    if not scf.converged:
        raise RuntimeError(f"SCF did not converge for {spec.name} at R={r}")
    h, g = mo_transform(scf.mo_coeffs, T + V, eri)
    if spec.n_active is not None:
        h, g, core, nelec = active_space(h, g, e_nuc, n_electrons,
                                         spec.n_frozen, spec.n_active)
    else:
        core, nelec = e_nuc, n_electrons
    write_fcidump(path, h, g, core, nelec, ms2=0)


def generate_dumps(system_names: list[str], out_dir: str,
                   log=print) -> list[str]:
    """Generate all dumps for the named systems.  Returns the file paths."""
    os.makedirs(out_dir, exist_ok=True)
    paths = []
    for name in system_names:
        spec = SYSTEMS[name]
        for r in spec.grid:
            path = os.path.join(out_dir, dump_filename(name, r))
            log(f"generating {os.path.basename(path)}")
            make_dump(spec, r, path)
            paths.append(path)
    return paths


def generate_references(system_names: list[str], out_dir: str,
                        csv_path: str, log=print) -> None:
    """Solve HF/FCI/CISD/CCSD from the written dumps and tabulate the energies.

    Reading the dumps back (rather than reusing in-memory integrals) makes the
    table consistent with what any downstream consumer of the files sees.
    """
    rows = []
    for name in system_names:
        spec = SYSTEMS[name]
        for r in spec.grid:
            path = os.path.join(out_dir, dump_filename(name, r))
            n, nelec, ms2, core, h, g = read_fcidump(path)
            e_hf = hf_energy(h, g, core, nelec, ms2)
            e_fci = fci_energy(h, g, core, nelec, ms2)
            e_cisd = cisd_energy(h, g, core, nelec, ms2)
            e_ccsd = ccsd_energy(h, g, core, nelec, ms2)
            ccsd_str = "NA" if e_ccsd is None else f"{e_ccsd:.10f}"
            log(f"  {name} R={r:.2f}  HF={e_hf:.10f}  FCI={e_fci:.10f}  "
                f"CISD={e_cisd:.10f}  CCSD={ccsd_str}")
            rows.append({
                "system": name,
                "R": f"{r:.2f}",
                "E_HF": f"{e_hf:.10f}",
                "E_FCI": f"{e_fci:.10f}",
                "E_CISD": f"{e_cisd:.10f}",
                "E_CCSD": ccsd_str,
            })
    with open(csv_path, "w", newline="") as f:
        writer = csv.DictWriter(
            f, fieldnames=["system", "R", "E_HF", "E_FCI", "E_CISD", "E_CCSD"])
        writer.writeheader()
        writer.writerows(rows)


def _sha256(path: str) -> str:
    with open(path, "rb") as f:
        return hashlib.sha256(f.read()).hexdigest()


def write_manifest(system_names: list[str], out_dir: str, csv_path: str,
                   manifest_path: str) -> None:
    files = {}
    for name in system_names:
        spec = SYSTEMS[name]
        for r in spec.grid:
            fn = dump_filename(name, r)
            files[fn] = _sha256(os.path.join(out_dir, fn))
    files[os.path.basename(csv_path)] = _sha256(csv_path)
    manifest = {
        "python": sys.version.split()[0],
        "numpy": np.__version__,
        "scipy": scipy.__version__,
        "grids": {name: list(SYSTEMS[name].grid) for name in system_names},
        "sha256": files,
    }
    with open(manifest_path, "w") as f:
        json.dump(manifest, f, indent=2, sort_keys=True)
        f.write("\n")

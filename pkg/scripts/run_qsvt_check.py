#!/usr/bin/env python3
"""Sweep the circuit emulation against the matrix-level oracle.

For each random amplitude draw: decomposes the Hermitian cluster part into
Pauli strings, block-encodes it, checks the encoded block against the
subnormalized matrix, then assembles the polynomial circuit for every
requested degree in both combine modes and reports the worst state distance
from the directly evaluated ansatz.

Example:
    python3 scripts/run_qsvt_check.py data/h4_1.00.fcidump --seeds 10
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from chebvcc.ansatz import state_hcvcc
from chebvcc.engine import AnsatzEngine
from chebvcc.fcidump import load_fcidump
from chebvcc.operators import (build_cluster_operator, space_for,
                               split_hermitian)
from chebvcc.qsvt import (assemble_hcvcc_circuit, block_encode_lcu,
                          encoded_block, pauli_decompose)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("fixture", help="FCIDUMP path (at most 8 qubits)")
    parser.add_argument("--seeds", type=int, default=10)
    parser.add_argument("--degrees", type=int, nargs="+",
                        default=[0, 1, 2, 3, 4])
    parser.add_argument("--scale", type=float, default=0.2,
                        help="amplitude draw half-width")
    args = parser.parse_args(argv)

    integrals = load_fcidump(args.fixture)
    space = space_for(integrals)
    if space.n_spin_orbitals > 8:
        print("fixture exceeds the 8-qubit circuit cap", file=sys.stderr)
        return 1
    engine = AnsatzEngine(integrals)

    worst_block, worst_state = 0.0, 0.0
    for seed in range(args.seeds):
        rng = np.random.default_rng(seed)
        t = engine.amplitudes(rng.uniform(-args.scale, args.scale,
                                          engine.n_params))
        _, herm = split_hermitian(build_cluster_operator(t, space))
        dec = pauli_decompose(herm)
        block = encoded_block(block_encode_lcu(dec))
        residual = float(np.max(np.abs(
            block - herm.entries.toarray() / dec.one_norm)))
        worst_block = max(worst_block, residual)
        for d in args.degrees:
            oracle = state_hcvcc(t, space, d, normalization=dec.one_norm)
            oracle = oracle / np.linalg.norm(oracle)
            for mode in ("per-term", "even-odd"):
                psi, _ = assemble_hcvcc_circuit(t, space, d,
                                                combine_mode=mode)
                overlap = np.vdot(oracle, psi)
                aligned = psi * np.exp(-1j * np.angle(overlap))
                worst_state = max(worst_state,
                                  float(np.linalg.norm(aligned - oracle)))
        print(f"seed {seed}: block residual {residual:.3e}, "
              f"worst state distance so far {worst_state:.3e}")

    print(f"worst block residual   {worst_block:.3e}")
    print(f"worst state distance   {worst_state:.3e}")
    ok = worst_block <= 1e-10 and worst_state <= 1e-7
    print("PASS" if ok else "FAIL")
    return 0 if ok else 2


if __name__ == "__main__":
    sys.exit(main())

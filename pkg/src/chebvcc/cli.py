"""Command-line front end: single-point energies, PEC scans, QSVT checks.

Exit codes: 0 success, 1 usage or input error, 2 numerical non-convergence.
Relative fixture paths that do not exist locally are resolved against the
CHEBVCC_DATA_DIR environment variable.
"""

from __future__ import annotations

import glob as globlib
import os
import sys
from dataclasses import dataclass, field

import click
import numpy as np

from .ansatz import AnsatzSpec, energy_rayleigh, state_hcvcc
from .driver import scan_pec, _optimize_on_engine
from .engine import AnsatzEngine
from .fcidump import FcidumpError, load_fcidump
from .operators import build_hamiltonian, space_for
from .qsvt import (
    PhaseFindingError,
    assemble_hcvcc_circuit,
    block_encode_lcu,
    encoded_block,
    pauli_decompose,
)

DATA_DIR_ENV = "CHEBVCC_DATA_DIR"

_SLUGS = {
    "hf": "HF",
    "exact-vcc": "exact-VCC",
    "cvcc": "C^d",
    "trotter-vcc": "trotter-VCC",
    "ducc": "dUCC",
    "hcvcc": "HC^d",
    "hcvcc-circuit": "HC^d-circuit",
}
_NEEDS_DEGREE = ("cvcc", "hcvcc", "hcvcc-circuit")


@dataclass(frozen=True)
class RunConfig:
    """Validated settings for one CLI invocation."""

    subcommand: str
    fixtures: tuple[str, ...]
    methods: tuple[AnsatzSpec, ...] = ()
    ucc_mode: str = "exact-exponential"
    combine_mode: str = "per-term"
    gtol: float = 1e-7
    max_iter: int = 2000
    h: float = 1e-6
    output: str = "scan.csv"
    workers: int = 1
    warm_start: bool = True
    degree: int = 3
    seed: int = 42
    method_slugs: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if self.workers < 1:
            raise ValueError("worker count must be >= 1")
        for path in self.fixtures:
            if not os.path.exists(path):
                raise FileNotFoundError(f"fixture not found: {path}")


def _resolve_fixture(path: str) -> str:
    if os.path.exists(path):
        return path
    root = os.environ.get(DATA_DIR_ENV)
    if root:
        candidate = os.path.join(root, path)
        if os.path.exists(candidate):
            return candidate
    raise FileNotFoundError(f"fixture not found: {path}")


def _resolve_glob(pattern: str) -> list[str]:
    paths = sorted(globlib.glob(pattern))
    if paths:
        return paths
    root = os.environ.get(DATA_DIR_ENV)
    if root:
        return sorted(globlib.glob(os.path.join(root, pattern)))
    return []


def _spec_for(slug: str, degree: int | None, ucc_mode: str) -> AnsatzSpec:
    if slug not in _SLUGS:
        raise ValueError(f"unknown method {slug!r}; choose from "
                         + ", ".join(sorted(_SLUGS)))
    method = _SLUGS[slug]
    needs = slug in _NEEDS_DEGREE
    kwargs = {"degree": degree if needs else None}
    if method in ("trotter-VCC", "dUCC", "HC^d", "HC^d-circuit"):
        kwargs["ucc_mode"] = ucc_mode
    if needs and degree is None:
        raise ValueError(f"method {slug} requires --degree")
    return AnsatzSpec(method, **kwargs)


def _parse_method_item(item: str, ucc_mode: str) -> tuple[str, AnsatzSpec]:
    slug, _, deg = item.partition(":")
    degree = int(deg) if deg else None
    return slug, _spec_for(slug, degree, ucc_mode)


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def cmd_energy(config: RunConfig) -> int:
    """Optimize one method on one fixture; print a CSV row."""
    integrals = load_fcidump(config.fixtures[0])
    engine = AnsatzEngine(integrals)
    spec = config.methods[0]
    slug = config.method_slugs[0]
    opt = _optimize_on_engine(engine, spec, gtol=config.gtol,
                              max_iter=config.max_iter, h=config.h)
    energy = opt.energy
    if spec.method == "HC^d-circuit":
        space = space_for(integrals)
        psi, _ = assemble_hcvcc_circuit(opt.amplitudes, space, spec.degree,
                                        combine_mode=config.combine_mode)
        H = build_hamiltonian(integrals, space)
        energy = energy_rayleigh(psi, H).energy
    d = "" if spec.degree is None else str(spec.degree)
    print("method,d,energy,e_hf,e_fci,iterations,converged")
    print(f"{slug},{d},{_fmt(energy)},{_fmt(engine.hf_energy())},"
          f"{_fmt(engine.fci_energy())},{opt.iterations},"
          f"{'true' if opt.converged else 'false'}")
    return 0 if opt.converged else 2


def cmd_scan(config: RunConfig) -> int:
    """Optimize every method at every geometry; write the scan CSV."""
    result = scan_pec(list(config.fixtures), list(config.methods),
                      warm_start=config.warm_start, gtol=config.gtol,
                      max_iter=config.max_iter, workers=config.workers,
                      on_error="collect")
    result.write_csv(config.output)
    for row in result.rows:
        tag = row.method if row.d is None else f"{row.method}(d={row.d})"
        print(f"R={row.R:.2f} {tag}: {row.energy:.10f} Ha "
              f"(error {row.error:+.3e})", file=sys.stderr)
    print("method,max_abs_error")
    for name, err in sorted(result.max_error_by_method().items()):
        print(f"{name},{_fmt(err)}")
    if result.failures:
        for path, message in result.failures:
            print(f"FAILED {path}: {message}", file=sys.stderr)
        return 2
    return 0


def cmd_qsvt_verify(config: RunConfig) -> int:
    """Check block-encoding and circuit-vs-matrix agreement on one fixture."""
    integrals = load_fcidump(config.fixtures[0])
    space = space_for(integrals)
    if space.n_spin_orbitals > 8:
        print("fixture exceeds the 8-qubit circuit cap", file=sys.stderr)
        return 1
    engine = AnsatzEngine(integrals)
    rng = np.random.default_rng(config.seed)
    t = engine.amplitudes(rng.uniform(-0.2, 0.2, engine.n_params))
    from .operators import build_cluster_operator, split_hermitian
    _, herm = split_hermitian(build_cluster_operator(t, space))
    dec = pauli_decompose(herm)
    lam = dec.one_norm
    be = block_encode_lcu(dec)
    block_residual = float(np.max(np.abs(
        encoded_block(be) - herm.entries.toarray() / lam)))
    print(f"pauli_terms,{len(dec.terms)}")
    print(f"subnormalization,{_fmt(lam)}")
    print(f"block_residual,{block_residual:.3e}")
    oracle = state_hcvcc(t, space, config.degree, normalization=lam)
    oracle = oracle / np.linalg.norm(oracle)
    worst = block_residual
    try:
        for mode in ("per-term", "even-odd"):
            psi, success = assemble_hcvcc_circuit(t, space, config.degree,
                                                  combine_mode=mode)
            overlap = np.vdot(oracle, psi)
            aligned = psi * np.exp(-1j * np.angle(overlap)) if abs(overlap) \
                else psi
            distance = float(np.linalg.norm(aligned - oracle))
            worst = max(worst, distance)
            print(f"{mode}_state_distance,{distance:.3e}")
            print(f"{mode}_success_amplitude,{_fmt(success)}")
    except PhaseFindingError as exc:
        print(f"phase finding failed: {exc}", file=sys.stderr)
        return 2
    return 0 if worst < 1e-7 else 2


@click.group()
def cli():
    """Variational coupled cluster with Chebyshev-approximated exponentials."""


@cli.command("energy")
@click.option("--fixture", required=True, help="FCIDUMP path")
@click.option("--method", "method", required=True,
              help="hf|exact-vcc|cvcc|trotter-vcc|ducc|hcvcc|hcvcc-circuit")
@click.option("--degree", type=int, default=None, help="Chebyshev degree d")
@click.option("--ucc-mode", default="exact-exponential",
              type=click.Choice(["exact-exponential", "disentangled-product"]))
@click.option("--combine-mode", default="per-term",
              type=click.Choice(["per-term", "even-odd"]))
@click.option("--gtol", type=float, default=1e-7)
@click.option("--max-iter", type=int, default=2000)
@click.option("--fd-step", type=float, default=1e-6)
def _energy(fixture, method, degree, ucc_mode, combine_mode, gtol, max_iter,
            fd_step):
    spec = _spec_for(method, degree, ucc_mode)
    config = RunConfig("energy", (_resolve_fixture(fixture),), (spec,),
                       ucc_mode=ucc_mode, combine_mode=combine_mode,
                       gtol=gtol, max_iter=max_iter, h=fd_step,
                       method_slugs=(method,))
    raise SystemExit(cmd_energy(config))


@cli.command("scan")
@click.option("--fixtures", required=True, help="FCIDUMP glob pattern")
@click.option("--method", "methods", multiple=True, required=True,
              help="method slug, with :d suffix for degrees (e.g. cvcc:3)")
@click.option("--ucc-mode", default="exact-exponential",
              type=click.Choice(["exact-exponential", "disentangled-product"]))
@click.option("--output", default="scan.csv", show_default=True)
@click.option("--workers", type=int, default=1)
@click.option("--warm-start/--cold-start", default=True)
@click.option("--gtol", type=float, default=1e-7)
@click.option("--max-iter", type=int, default=2000)
def _scan(fixtures, methods, ucc_mode, output, workers, warm_start, gtol,
          max_iter):
    paths = _resolve_glob(fixtures)
    if not paths:
        raise click.ClickException(f"no fixtures match {fixtures!r}")
    parsed = [_parse_method_item(item, ucc_mode) for item in methods]
    config = RunConfig("scan", tuple(paths),
                       tuple(spec for _, spec in parsed), ucc_mode=ucc_mode,
                       output=output, workers=workers, warm_start=warm_start,
                       gtol=gtol, max_iter=max_iter,
                       method_slugs=tuple(slug for slug, _ in parsed))
    raise SystemExit(cmd_scan(config))


@cli.command("qsvt-verify")
@click.option("--fixture", required=True, help="FCIDUMP path (q <= 8)")
@click.option("--degree", type=int, default=3, show_default=True)
@click.option("--seed", type=int, default=42, show_default=True)
def _qsvt_verify(fixture, degree, seed):
    if degree < 0:
        raise click.ClickException("degree must be nonnegative")
    config = RunConfig("qsvt-verify", (_resolve_fixture(fixture),),
                       degree=degree, seed=seed)
    raise SystemExit(cmd_qsvt_verify(config))


def main(argv=None) -> int:
    try:
        cli.main(args=argv, standalone_mode=False)
    except SystemExit as exc:
        return int(exc.code or 0)
    except click.ClickException as exc:
        exc.show()
        return 1
    except (FcidumpError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

"""L-BFGS variational driver with finite-difference gradients and PEC scans."""

from __future__ import annotations

import glob as globlib
import io
import os
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
import scipy.optimize

from .ansatz import AnsatzSpec
from .engine import AnsatzEngine
from .fcidump import load_fcidump
from .operators import AmplitudeVector


@dataclass(frozen=True)
class OptResult:
    """Outcome of one energy minimization."""

    energy: float
    amplitudes: AmplitudeVector
    iterations: int
    gradient_norm: float
    converged: bool
    history: tuple[float, ...]


@dataclass(frozen=True)
class ScanRow:
    R: float
    method: str
    d: int | None
    energy: float
    e_fci: float
    e_exact_vcc: float
    error: float


@dataclass(frozen=True)
class ScanResult:
    """Potential-energy-curve scan rows, sorted by bond distance."""

    rows: tuple[ScanRow, ...]
    failures: tuple[tuple[str, str], ...] = ()

    def to_csv(self) -> str:
        out = io.StringIO()
        out.write("R,method,d,energy,e_fci,e_exact_vcc,error\n")
        for r in self.rows:
            d = "" if r.d is None else str(r.d)
            out.write(f"{r.R:.12g},{r.method},{d},{r.energy:.12g},"
                      f"{r.e_fci:.12g},{r.e_exact_vcc:.12g},{r.error:.12g}\n")
        return out.getvalue()

    def write_csv(self, path: str) -> None:
        with open(path, "w") as fh:
            fh.write(self.to_csv())

    def max_error_by_method(self) -> dict[str, float]:
        out: dict[str, float] = {}
        for r in self.rows:
            key = r.method if r.d is None else f"{r.method}(d={r.d})"
            out[key] = max(out.get(key, 0.0), abs(r.error))
        return out


def finite_diff_gradient(f, x: np.ndarray, h: float = 1e-6) -> np.ndarray:
    """Central-difference gradient (f(x+h e_i) - f(x-h e_i)) / 2h."""
    if h <= 0:
        raise ValueError("step h must be positive")
    x = np.asarray(x, dtype=float)
    g = np.empty_like(x)
    for i in range(x.size):
        step = np.zeros_like(x)
        step[i] = h
        g[i] = (f(x + step) - f(x - step)) / (2.0 * h)
    return g


def lbfgs_minimize(f, grad, x0: np.ndarray, gtol: float = 1e-7,
                   max_iter: int = 2000, memory: int = 10,
                   index_map=None) -> OptResult:
    """Unconstrained L-BFGS; returns the best evaluated point.

    Convergence means the gradient infinity norm reached gtol; line-search
    failure or an iteration cap returns best-so-far with converged=False.
    With an index_map the optimum is wrapped in an AmplitudeVector; without
    one (generic objectives) the bare array is stored.
    """

    def wrap(x):
        return x if index_map is None else AmplitudeVector(x, tuple(index_map))

    x0 = np.asarray(x0, dtype=float)
    if x0.size == 0:
        e0 = float(f(x0))
        return OptResult(e0, wrap(x0), 0, 0.0, True, (e0,))

    best: dict = {"f": np.inf, "x": x0}
    cache: dict[bytes, float] = {}

    def f_tracked(x):
        val = float(f(x))
        cache[x.tobytes()] = val
        if val < best["f"]:
            best["f"] = val
            best["x"] = np.array(x, copy=True)
        return val

    history = [f_tracked(x0)]

    def record(xk):
        key = xk.tobytes()
        history.append(cache[key] if key in cache else f_tracked(xk))

    res = scipy.optimize.minimize(
        f_tracked, x0, jac=grad, method="L-BFGS-B", callback=record,
        options={"maxiter": max_iter, "maxcor": memory, "gtol": gtol,
                 "ftol": 1e-15})
    g_final = np.asarray(grad(best["x"]), dtype=float)
    gnorm = float(np.max(np.abs(g_final))) if g_final.size else 0.0
    converged = bool(gnorm <= gtol)
    return OptResult(float(best["f"]), wrap(best["x"]), int(res.nit), gnorm,
                     converged, tuple(history))


def _optimize_on_engine(engine: AnsatzEngine, spec: AnsatzSpec,
                        x0: np.ndarray | None = None, gtol: float = 1e-7,
                        max_iter: int = 2000, h: float = 1e-6) -> OptResult:
    if spec.method == "HF":
        e0 = engine.hf_energy()
        return OptResult(e0, AmplitudeVector(np.zeros(0), ()), 0, 0.0, True,
                         (e0,))
    start = np.zeros(engine.n_params) if x0 is None \
        else np.asarray(x0, dtype=float)
    if start.shape != (engine.n_params,):
        raise ValueError(f"x0 has shape {start.shape}, expected "
                         f"({engine.n_params},)")
    raw = engine.energy_function(spec)

    def f(t):
        try:
            return raw(t)
        except ValueError as exc:
            raise ValueError(f"{exc}; amplitudes max |t| = "
                             f"{np.max(np.abs(t)):.6g}") from exc

    return lbfgs_minimize(f, lambda t: finite_diff_gradient(f, t, h), start,
                          gtol=gtol, max_iter=max_iter,
                          index_map=engine.index_map)


def optimize_ansatz(spec: AnsatzSpec, integrals, x0=None, gtol: float = 1e-7,
                    max_iter: int = 2000, index_map=None) -> OptResult:
    """Minimize the Rayleigh-quotient energy of the ansatz over amplitudes.

    x0 may be None (zero start), an array, or an AmplitudeVector whose index
    map matches the engine's.
    """
    engine = AnsatzEngine(integrals, index_map=index_map)
    if isinstance(x0, AmplitudeVector):
        if tuple(x0.index_map) != tuple(engine.index_map):
            raise ValueError("x0 index map does not match the ansatz space")
        x0 = x0.values
    return _optimize_on_engine(engine, spec, x0, gtol=gtol, max_iter=max_iter)


_FIXTURE_RE = re.compile(r"_([0-9]+(?:\.[0-9]+)?)\.fcidump$")


def _distance_of(path: str) -> float:
    m = _FIXTURE_RE.search(os.path.basename(path))
    if not m:
        raise ValueError(f"cannot parse bond distance from {path!r}")
    return float(m.group(1))


def scan_pec(fixtures, specs, warm_start: bool = True, gtol: float = 1e-7,
             max_iter: int = 2000, workers: int = 1,
             on_error: str = "raise") -> ScanResult:
    """Optimize every spec at every geometry; rows ordered by (R, spec).

    fixtures is a glob pattern or an explicit path list; file names must end
    in _<R>.fcidump.  With warm_start, each geometry seeds from the previous
    geometry's optimum for the same spec, which serializes the scan; without
    it geometries run on a bounded thread pool.  on_error="collect" records
    per-geometry failures in ScanResult.failures instead of raising.
    """
    if isinstance(fixtures, str):
        paths = sorted(globlib.glob(fixtures))
        if not paths:
            raise FileNotFoundError(f"no fixtures match {fixtures!r}")
    else:
        paths = list(fixtures)
    missing = [p for p in paths if not os.path.exists(p)]
    if missing:
        raise FileNotFoundError("missing fixtures: " + ", ".join(missing))
    specs = list(specs)
    geoms = sorted((_distance_of(p), p) for p in paths)

    def run_geometry(item, seeds):
        R, path = item
        engine = AnsatzEngine(load_fcidump(path))
        e_fci = engine.fci_energy()
        exact = _optimize_on_engine(engine, AnsatzSpec("exact-VCC"),
                                    seeds.get("exact-VCC"), gtol=gtol,
                                    max_iter=max_iter)
        rows, new_seeds = [], {"exact-VCC": exact.amplitudes.values}
        for spec in specs:
            key = (spec.method, spec.degree)
            if spec.method == "exact-VCC":
                opt = exact
            else:
                opt = _optimize_on_engine(engine, spec, seeds.get(key),
                                          gtol=gtol, max_iter=max_iter)
            new_seeds[key] = opt.amplitudes.values
            rows.append(ScanRow(R, spec.method, spec.degree, opt.energy,
                                e_fci, exact.energy,
                                opt.energy - exact.energy))
        return rows, new_seeds

    if on_error not in ("raise", "collect"):
        raise ValueError(f"unknown on_error policy {on_error!r}")
    all_rows: list[ScanRow] = []
    failures: list[tuple[str, str]] = []

    def guarded(item, seeds):
        try:
            return run_geometry(item, seeds)
        except Exception as exc:
            if on_error == "raise":
                raise
            failures.append((item[1], str(exc)))
            return [], dict(seeds)

    if warm_start or workers <= 1:
        seeds: dict = {}
        for item in geoms:
            rows, seeds_out = guarded(item, seeds if warm_start else {})
            seeds = seeds_out
            all_rows.extend(rows)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(guarded, item, {}) for item in geoms]
            for fut in futures:
                all_rows.extend(fut.result()[0])
    return ScanResult(tuple(all_rows), tuple(failures))

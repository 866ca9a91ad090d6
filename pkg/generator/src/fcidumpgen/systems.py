"""Molecular systems and geometry grids for the fixture set."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .basis import BOHR_PER_ANGSTROM


@dataclass(frozen=True)
class SystemSpec:
    """One molecule family parameterized by a single bond length R in angstrom."""

    name: str
    symbols: tuple[str, ...]
    geometry: Callable[[float], np.ndarray]
    grid: tuple[float, ...]
    n_frozen: int = 0
    n_active: int | None = None  # None keeps the full orbital space


def _chain(n: int) -> Callable[[float], np.ndarray]:
    def geom(r: float) -> np.ndarray:
        coords = np.zeros((n, 3))
        coords[:, 2] = np.arange(n) * r * BOHR_PER_ANGSTROM
        return coords
    return geom


def _diatomic(r: float) -> np.ndarray:
    return np.array([[0.0, 0.0, 0.0], [0.0, 0.0, r * BOHR_PER_ANGSTROM]])


def _grid(start: float, stop: float, step: float) -> tuple[float, ...]:
    n = int(round((stop - start) / step)) + 1
    return tuple(round(start + k * step, 2) for k in range(n))


SYSTEMS: dict[str, SystemSpec] = {
    "h2": SystemSpec("h2", ("H", "H"), _diatomic,
                     (0.50, 0.74, 1.00, 1.50, 2.00)),
    "h4": SystemSpec("h4", ("H",) * 4, _chain(4), _grid(0.6, 2.4, 0.2)),
    "h6": SystemSpec("h6", ("H",) * 6, _chain(6), _grid(0.6, 2.2, 0.2)),
    # N2 in a (6e, 6o) valence active space: freeze the four lowest MOs
    # (1s and 2s dominated), keep the six valence orbitals.
    "n2": SystemSpec("n2", ("N", "N"), _diatomic, _grid(0.90, 2.10, 0.15),
                     n_frozen=4, n_active=6),
}

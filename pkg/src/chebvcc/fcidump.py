"""FCIDUMP parsing into an immutable integral container with symmetric lookup."""

from __future__ import annotations

import re
from dataclasses import dataclass, field

import numpy as np


class FcidumpError(ValueError):
    """Raised for malformed FCIDUMP content."""


def _canonical4(i: int, j: int, k: int, l: int) -> tuple[int, int, int, int]:
    # lexicographically smallest of the 8 real-orbital permutations
    return min(
        (i, j, k, l), (j, i, k, l), (i, j, l, k), (j, i, l, k),
        (k, l, i, j), (l, k, i, j), (k, l, j, i), (l, k, j, i),
    )


@dataclass(frozen=True)
class IntegralSet:
    """Molecular integrals in chemists' notation with 1-based spatial indices."""

    n_orbitals: int
    n_electrons: int
    ms2: int
    core_energy: float
    h1: dict[tuple[int, int], float] = field(default_factory=dict)
    h2: dict[tuple[int, int, int, int], float] = field(default_factory=dict)

    def one_body(self, p: int, q: int) -> float:
        self._check_range(p, q)
        return self.h1.get((min(p, q), max(p, q)), 0.0)

    def two_body(self, p: int, q: int, r: int, s: int) -> float:
        self._check_range(p, q, r, s)
        return self.h2.get(_canonical4(p, q, r, s), 0.0)

    def _check_range(self, *indices: int) -> None:
        for idx in indices:
            if not 1 <= idx <= self.n_orbitals:
                raise IndexError(
                    f"orbital index {idx} outside 1..{self.n_orbitals}")


def parse_fcidump(text: str) -> IntegralSet:
    """Parse FCIDUMP text.

    The header is a namelist `&FCI ... &END` (or terminated by `/`) carrying
    NORB, NELEC, and optionally MS2.  Body lines are `value i j k l`: four
    nonzero indices store a two-electron integral, two store a one-electron
    integral, and all-zero indices set the core energy.  Fortran D exponents
    are accepted.  ORBSYM and ISYM are parsed and ignored.
    """
    m = re.search(r"&FCI(.*?)(?:&END|/)", text, re.S | re.I)
    if m is None:
        raise FcidumpError("missing &FCI ... &END header")
    header = m.group(1)

    def header_int(name: str, default: int | None = None) -> int:
        hm = re.search(rf"{name}\s*=\s*(-?\d+)", header, re.I)
        if hm is None:
            if default is None:
                raise FcidumpError(f"header missing {name}")
            return default
        return int(hm.group(1))

    n_orbitals = header_int("NORB")
    n_electrons = header_int("NELEC")
    ms2 = header_int("MS2", default=0)
    if n_electrons < 1:
        raise FcidumpError(f"NELEC must be >= 1, got {n_electrons}")
    if abs(ms2) > n_electrons:
        raise FcidumpError(f"|MS2|={abs(ms2)} exceeds NELEC={n_electrons}")

    h1: dict[tuple[int, int], float] = {}
    h2: dict[tuple[int, int, int, int], float] = {}
    core = 0.0
    header_end_line = text[:m.end()].count("\n")
    for lineno, line in enumerate(text[m.end():].splitlines(),
                                  start=header_end_line + 1):
        parts = line.split()
        if not parts:
            continue
        if len(parts) != 5:
            raise FcidumpError(f"line {lineno}: expected `value i j k l`")
        try:
            value = float(parts[0].replace("D", "E").replace("d", "e"))
        except ValueError:
            raise FcidumpError(
                f"line {lineno}: non-numeric value {parts[0]!r}") from None
        try:
            i, j, k, l = (int(p) for p in parts[1:])
        except ValueError:
            raise FcidumpError(f"line {lineno}: non-integer index") from None
        nonzero = [x for x in (i, j, k, l) if x != 0]
        if any(not 0 <= x <= n_orbitals for x in (i, j, k, l)):
            raise FcidumpError(
                f"line {lineno}: index outside 0..{n_orbitals}")
        if len(nonzero) == 0:
            core = value
        elif len(nonzero) == 2 and k == 0 and l == 0:
            h1[(min(i, j), max(i, j))] = value
        elif len(nonzero) == 4:
            h2[_canonical4(i, j, k, l)] = value
        else:
            raise FcidumpError(
                f"line {lineno}: unsupported index pattern {(i, j, k, l)}")
    return IntegralSet(n_orbitals, n_electrons, ms2, core, h1, h2)


def load_fcidump(path: str) -> IntegralSet:
    with open(path) as f:
        return parse_fcidump(f.read())


def integral_lookup(integrals: IntegralSet, kind: str, indices) -> float:
    """Symmetry-aware integral access; unset entries are 0."""
    if kind == "one":
        p, q = indices
        return integrals.one_body(p, q)
    if kind == "two":
        p, q, r, s = indices
        return integrals.two_body(p, q, r, s)
    raise ValueError(f"kind must be 'one' or 'two', got {kind!r}")


def serialize_fcidump(integrals: IntegralSet) -> str:
    """Render back to FCIDUMP text with round-trip exact precision."""
    lines = [
        f"&FCI NORB={integrals.n_orbitals},NELEC={integrals.n_electrons},"
        f"MS2={integrals.ms2},",
        "  ORBSYM=" + "1," * integrals.n_orbitals,
        "  ISYM=1,",
        "&END",
    ]
    for (i, j, k, l), v in sorted(integrals.h2.items()):
        lines.append(f"{v: .17E} {i:4d} {j:4d} {k:4d} {l:4d}")
    for (i, j), v in sorted(integrals.h1.items()):
        lines.append(f"{v: .17E} {i:4d} {j:4d} {0:4d} {0:4d}")
    lines.append(f"{integrals.core_energy: .17E} {0:4d} {0:4d} {0:4d} {0:4d}")
    return "\n".join(lines) + "\n"


def dense_integrals(integrals: IntegralSet) -> tuple[np.ndarray, np.ndarray]:
    """Dense (h1, h2) arrays with 0-based indices, all symmetries filled in."""
    n = integrals.n_orbitals
    h = np.zeros((n, n))
    for (i, j), v in integrals.h1.items():
        h[i - 1, j - 1] = v
        h[j - 1, i - 1] = v
    g = np.zeros((n, n, n, n))
    for (i, j, k, l), v in integrals.h2.items():
        for (p, q, r, s) in {
            (i, j, k, l), (j, i, k, l), (i, j, l, k), (j, i, l, k),
            (k, l, i, j), (l, k, i, j), (k, l, j, i), (l, k, j, i),
        }:
            g[p - 1, q - 1, r - 1, s - 1] = v
    return h, g

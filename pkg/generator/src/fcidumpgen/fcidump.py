"""FCIDUMP reading and writing with 8-fold permutational symmetry."""

from __future__ import annotations

import re

import numpy as np

WRITE_THRESHOLD = 1e-12


def canonical_key(i: int, j: int, k: int, l: int) -> tuple[int, int, int, int]:
    """Smallest index tuple among the 8 equivalent real-orbital permutations."""
    perms = [
        (i, j, k, l), (j, i, k, l), (i, j, l, k), (j, i, l, k),
        (k, l, i, j), (l, k, i, j), (k, l, j, i), (l, k, j, i),
    ]
    return min(perms)


def write_fcidump(path: str, h: np.ndarray, g: np.ndarray, core_energy: float,
                  n_electrons: int, ms2: int = 0) -> None:
    """Write integrals in FCIDUMP format with 17 significant digits.

    The precision is enough to round-trip doubles exactly, so solvers reading
    the file back see bit-identical integrals.
    """
    n = h.shape[0]
    lines = [
        f"&FCI NORB={n},NELEC={n_electrons},MS2={ms2},",
        "  ORBSYM=" + "1," * n,
        "  ISYM=1,",
        "&END",
    ]

    def fmt(v: float, i: int, j: int, k: int, l: int) -> str:
        return f"{v: .17E} {i:4d} {j:4d} {k:4d} {l:4d}"

    seen = set()
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    key = canonical_key(i + 1, j + 1, k + 1, l + 1)
                    if key in seen:
                        continue
                    seen.add(key)
                    v = g[i, j, k, l]
                    if abs(v) > WRITE_THRESHOLD:
                        lines.append(fmt(v, *key))
    for i in range(n):
        for j in range(i + 1):
            v = h[i, j]
            if abs(v) > WRITE_THRESHOLD:
                lines.append(fmt(v, i + 1, j + 1, 0, 0))
    lines.append(fmt(core_energy, 0, 0, 0, 0))
    with open(path, "w") as f:
        f.write("\n".join(lines) + "\n")


def read_fcidump(path: str):
    """Parse an FCIDUMP file into dense arrays.

    Returns (n_orbitals, n_electrons, ms2, core_energy, h, g) with g in
    chemists' notation and all 8-fold symmetric entries filled in.
    """
    with open(path) as f:
        text = f.read()

    m = re.search(r"&FCI(.*?)(?:&END|/)", text, re.S | re.I)
    if m is None:
        raise ValueError(f"{path}: missing &FCI header")
    header = m.group(1)

    def field(name: str, default=None) -> int:
        fm = re.search(rf"{name}\s*=\s*(-?\d+)", header, re.I)
        if fm is None:
            if default is None:
                raise ValueError(f"{path}: missing {name}")
            return default
        return int(fm.group(1))

    n = field("NORB")
    nelec = field("NELEC")
    ms2 = field("MS2", default=0)

    h = np.zeros((n, n))
    g = np.zeros((n, n, n, n))
    core = 0.0
    body = text[m.end():]
    for line in body.splitlines():
        parts = line.split()
        if len(parts) != 5:
            continue
        v = float(parts[0].replace("D", "E").replace("d", "e"))
        i, j, k, l = (int(p) for p in parts[1:])
        if i == j == k == l == 0:
            core = v
        elif k == l == 0:
            h[i - 1, j - 1] = v
            h[j - 1, i - 1] = v
        else:
            for (p, q, r, s) in {
                (i, j, k, l), (j, i, k, l), (i, j, l, k), (j, i, l, k),
                (k, l, i, j), (l, k, i, j), (k, l, j, i), (l, k, j, i),
            }:
                g[p - 1, q - 1, r - 1, s - 1] = v
    return n, nelec, ms2, core, h, g

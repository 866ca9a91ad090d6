"""Shared fixtures: committed FCIDUMP data and tabulated reference energies."""

from __future__ import annotations

import csv
from pathlib import Path

import pytest

from chebvcc.fcidump import IntegralSet, load_fcidump

DATA_DIR = Path(__file__).resolve().parents[1] / "data"

_INTEGRALS_CACHE: dict[tuple[str, str], IntegralSet] = {}


def fixture_path(system: str, distance: str) -> str:
    return str(DATA_DIR / f"{system}_{distance}.fcidump")


def load_cached(system: str, distance: str) -> IntegralSet:
    key = (system, distance)
    if key not in _INTEGRALS_CACHE:
        _INTEGRALS_CACHE[key] = load_fcidump(fixture_path(system, distance))
    return _INTEGRALS_CACHE[key]


@pytest.fixture(scope="session")
def references() -> dict[tuple[str, str], dict[str, float]]:
    table = {}
    with open(DATA_DIR / "references.csv", newline="") as handle:
        for row in csv.DictReader(handle):
            table[(row["system"], row["R"])] = {
                key: float(value)
                for key, value in row.items()
                if key.startswith("E_") and value != "NA"
            }
    return table


@pytest.fixture(scope="session")
def all_fixture_paths() -> list[Path]:
    paths = sorted(DATA_DIR.glob("*.fcidump"))
    assert paths, "committed FCIDUMP fixtures are missing"
    return paths

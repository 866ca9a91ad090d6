"""FCIDUMP parsing, symmetry-aware lookup, and serialization."""

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chebvcc.fcidump import (
    FcidumpError,
    IntegralSet,
    dense_integrals,
    integral_lookup,
    load_fcidump,
    parse_fcidump,
    serialize_fcidump,
)
from conftest import fixture_path

TOY_TEXT = """\
&FCI NORB=2,NELEC=2,MS2=0,
  ORBSYM=1,1,
  ISYM=1,
&END
 0.675 1 1 1 1
 0.697 2 2 1 1
 0.181 2 1 2 1
 0.670 2 2 2 2
 -1.252 1 1 0 0
 -0.475 2 2 0 0
 0.7137D0 0 0 0 0
"""


def test_parse_toy_header_and_values():
    integrals = parse_fcidump(TOY_TEXT)
    assert integrals.n_orbitals == 2
    assert integrals.n_electrons == 2
    assert integrals.ms2 == 0
    assert integrals.core_energy == 0.7137
    assert integrals.one_body(1, 1) == -1.252
    assert integrals.one_body(2, 2) == -0.475
    assert integrals.two_body(1, 1, 1, 1) == 0.675
    assert integrals.two_body(2, 2, 1, 1) == 0.697


def test_parse_accepts_fortran_d_exponent():
    text = "&FCI NORB=1,NELEC=1,MS2=1,\n&END\n -2.5D-01 1 1 0 0\n"
    integrals = parse_fcidump(text)
    assert integrals.one_body(1, 1) == -0.25
    text = text.replace("D-01", "d+01")
    assert parse_fcidump(text).one_body(1, 1) == -25.0


def test_parse_empty_body_gives_zero_integrals():
    integrals = parse_fcidump("&FCI NORB=2,NELEC=2,MS2=0,\n&END\n")
    assert integrals.core_energy == 0.0
    assert integrals.one_body(2, 1) == 0.0
    assert integrals.two_body(1, 2, 1, 2) == 0.0


def test_eightfold_symmetry_lookup():
    integrals = parse_fcidump(TOY_TEXT)
    reference = integrals.two_body(2, 2, 1, 1)
    assert reference == 0.697
    perms = [
        (2, 2, 1, 1), (1, 1, 2, 2), (2, 2, 1, 1),
        (1, 1, 2, 2), (2, 2, 1, 1), (1, 1, 2, 2),
    ]
    for p in perms:
        assert integrals.two_body(*p) == reference
    # (pq|rs) with all four distinct orbitals: check the full 8-fold orbit
    big = IntegralSet(4, 2, 0, 0.0, {}, {(1, 2, 3, 4): 0.33})
    orbit = [
        (1, 2, 3, 4), (2, 1, 3, 4), (1, 2, 4, 3), (2, 1, 4, 3),
        (3, 4, 1, 2), (4, 3, 1, 2), (3, 4, 2, 1), (4, 3, 2, 1),
    ]
    for p in orbit:
        assert big.two_body(*p) == 0.33
    assert big.two_body(1, 3, 2, 4) == 0.0


def test_integral_lookup_dispatch():
    integrals = parse_fcidump(TOY_TEXT)
    assert integral_lookup(integrals, "one", (2, 2)) == -0.475
    assert integral_lookup(integrals, "two", (1, 1, 2, 2)) == 0.697
    with pytest.raises(ValueError, match="kind must be 'one' or 'two'"):
        integral_lookup(integrals, "both", (1, 1))


def test_out_of_range_index_raises():
    integrals = parse_fcidump(TOY_TEXT)
    with pytest.raises(IndexError, match="outside 1..2"):
        integrals.one_body(1, 3)
    with pytest.raises(IndexError, match="outside 1..2"):
        integrals.two_body(0, 1, 1, 1)


@pytest.mark.parametrize("text, message", [
    ("NORB=2\n 1.0 1 1 1 1\n", "missing &FCI"),
    ("&FCI NELEC=2,\n&END\n", "header missing NORB"),
    ("&FCI NORB=2,\n&END\n", "header missing NELEC"),
    ("&FCI NORB=2,NELEC=0,\n&END\n", "NELEC must be >= 1"),
    ("&FCI NORB=2,NELEC=2,MS2=4,\n&END\n", r"\|MS2\|=4 exceeds NELEC=2"),
    ("&FCI NORB=2,NELEC=2,\n&END\n 1.0 1 1\n", "expected `value i j k l`"),
    ("&FCI NORB=2,NELEC=2,\n&END\n x 1 1 0 0\n", "non-numeric value"),
    ("&FCI NORB=2,NELEC=2,\n&END\n 1.0 1 q 0 0\n", "non-integer index"),
    ("&FCI NORB=2,NELEC=2,\n&END\n 1.0 1 3 0 0\n", "index outside 0..2"),
    ("&FCI NORB=2,NELEC=2,\n&END\n 1.0 1 1 1 0\n", "unsupported index"),
])
def test_parse_errors(text, message):
    with pytest.raises(FcidumpError, match=message):
        parse_fcidump(text)


def test_parse_error_reports_line_number():
    # the offending entry sits on physical line 4 of the file
    text = "&FCI NORB=2,NELEC=2,\n&END\n 1.0 1 1 0 0\n bad line here\n"
    with pytest.raises(FcidumpError, match="line 4"):
        parse_fcidump(text)


def test_serialize_parse_round_trip_exact():
    original = load_fcidump(fixture_path("h2", "0.74"))
    reparsed = parse_fcidump(serialize_fcidump(original))
    assert reparsed.n_orbitals == original.n_orbitals
    assert reparsed.n_electrons == original.n_electrons
    assert reparsed.ms2 == original.ms2
    assert reparsed.core_energy == original.core_energy
    assert reparsed.h1 == original.h1
    assert reparsed.h2 == original.h2


def test_dense_integrals_symmetry():
    integrals = load_fcidump(fixture_path("h4", "1.00"))
    h, g = dense_integrals(integrals)
    n = integrals.n_orbitals
    assert h.shape == (n, n)
    assert g.shape == (n, n, n, n)
    assert np.allclose(h, h.T, atol=0.0)
    assert np.allclose(g, g.transpose(1, 0, 2, 3), atol=0.0)
    assert np.allclose(g, g.transpose(0, 1, 3, 2), atol=0.0)
    assert np.allclose(g, g.transpose(2, 3, 0, 1), atol=0.0)
    assert h[0, 0] == integrals.one_body(1, 1)
    assert g[1, 0, 1, 0] == integrals.two_body(2, 1, 2, 1)


def canonical_key(i, j, k, l):
    return min(
        (i, j, k, l), (j, i, k, l), (i, j, l, k), (j, i, l, k),
        (k, l, i, j), (l, k, i, j), (k, l, j, i), (l, k, j, i),
    )


@st.composite
def integral_sets(draw):
    n = draw(st.integers(min_value=1, max_value=4))
    finite = st.floats(min_value=-10, max_value=10,
                       allow_nan=False, allow_infinity=False)
    h1 = {}
    for _ in range(draw(st.integers(0, 4))):
        p = draw(st.integers(1, n))
        q = draw(st.integers(1, n))
        h1[(min(p, q), max(p, q))] = draw(finite)
    h2 = {}
    for _ in range(draw(st.integers(0, 4))):
        idx = tuple(draw(st.integers(1, n)) for _ in range(4))
        h2[canonical_key(*idx)] = draw(finite)
    return IntegralSet(n, 1, 1, draw(finite), h1, h2)


@settings(max_examples=50, deadline=None)
@given(integral_sets())
def test_round_trip_property(integrals):
    reparsed = parse_fcidump(serialize_fcidump(integrals))
    assert reparsed.core_energy == integrals.core_energy
    assert reparsed.h1 == integrals.h1


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.integers(1, 4),
       st.integers(1, 4), st.floats(-5, 5, allow_nan=False))
def test_two_body_permutation_property(p, q, r, s, value):
    n = max(p, q, r, s)
    key = canonical_key(p, q, r, s)
    integrals = IntegralSet(n, 1, 1, 0.0, {}, {key: value})
    assert integrals.two_body(p, q, r, s) == value
    assert integrals.two_body(q, p, r, s) == value
    assert integrals.two_body(p, q, s, r) == value
    assert integrals.two_body(r, s, p, q) == value
    assert integrals.two_body(s, r, q, p) == value

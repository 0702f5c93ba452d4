import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import classes
from enriq.errors import InvalidClassError, ParseError
from enriq.intlin import determinant, signature
from enriq.lattice import (
    DivisorClass,
    E,
    basis_of_lambda,
    canonical_orbit_form,
    fano_delta,
    format_divisor,
    from_basis_coords,
    gram_matrix,
    orbit_form_coeffs,
    pairing,
    parse_divisor,
    to_basis_coords,
)


def brute_pairing(x, y):
    # sum a_i b_j (1 - delta_ij) over exact thirds
    a, b = x.coeffs, y.coeffs
    return sum(a[i] * b[j] for i in range(10) for j in range(10) if i != j)


def test_delta_and_basic_pairings():
    d = fano_delta()
    assert d.t == (1,) * 10
    assert pairing(d, d) == 10
    assert pairing(E(1), E(1)) == 0
    assert pairing(d, E(5)) == 3
    L = 3 * E(9) + 2 * E(10) - d
    assert L.square() == -8
    assert (3 * d - sum((E(i) for i in range(2, 11)), E(1))).is_zero()


def test_e_pairings_match_delta_formula():
    for i, j in itertools.product(range(1, 11), repeat=2):
        assert pairing(E(i), E(j)) == (0 if i == j else 1)


def test_basis_is_unimodular_with_signature_1_9():
    g = gram_matrix(basis_of_lambda())
    assert abs(determinant(g)) == 1
    assert signature(g) == (1, 9)


def test_e10_in_basis():
    assert from_basis_coords(to_basis_coords(E(10))) == E(10)
    assert to_basis_coords(E(10)) == (-1,) * 9 + (3,)


def test_invalid_congruence_rejected():
    with pytest.raises(InvalidClassError):
        DivisorClass((1, 0, 0, 0, 0, 0, 0, 0, 0, 0))
    with pytest.raises(InvalidClassError):
        DivisorClass((1, 1, 1))


def test_halve():
    assert (2 * fano_delta()).halve() == fano_delta()
    with pytest.raises(InvalidClassError):
        fano_delta().halve()


@given(classes(), classes(), classes(), st.integers(-5, 5), st.integers(-5, 5))
def test_bilinear(x, y, z, a, b):
    assert pairing(a * x + b * y, z) == a * pairing(x, z) + b * pairing(y, z)


@given(classes(), classes())
def test_symmetric_and_matches_brute(x, y):
    assert pairing(x, y) == pairing(y, x) == brute_pairing(x, y)


@given(classes())
def test_even(x):
    assert x.square() % 2 == 0


@given(classes(), classes(), st.permutations(range(10)))
def test_permutation_equivariance(x, y, perm):
    px = DivisorClass(tuple(x.t[p] for p in perm))
    py = DivisorClass(tuple(y.t[p] for p in perm))
    assert pairing(px, py) == pairing(x, y)


@given(classes())
def test_round_trip(x):
    assert parse_divisor(format_divisor(x)) == x


@given(classes())
def test_basis_coords_round_trip(x):
    assert from_basis_coords(to_basis_coords(x)) == x


def test_canonical_orbit_form():
    d = DivisorClass.from_coeffs([0, 0, 1, 2, 1, 1, 0, 0, 0, 0])
    assert orbit_form_coeffs(canonical_orbit_form(d)) == [2, 1, 1, 1, 0, 0, 0, 0, 0, 0]
    e = parse_divisor("E1+E2+E3+E4+E5+E6-E7")
    assert orbit_form_coeffs(canonical_orbit_form(e)) == [1, 1, 1, 1, 1, 1, 0, 0, 0, -1]
    assert orbit_form_coeffs(fano_delta()) == ["1/3"] * 10


@given(classes(), st.permutations(range(10)))
def test_orbit_form_invariant(x, perm):
    px = DivisorClass(tuple(x.t[p] for p in perm))
    c = canonical_orbit_form(x)
    assert canonical_orbit_form(px) == c
    assert canonical_orbit_form(c) == c


@pytest.mark.parametrize(
    "text, t",
    [
        ("2E1+E2+E3+E4", (6, 3, 3, 3, 0, 0, 0, 0, 0, 0)),
        ("3Delta - E10", (3, 3, 3, 3, 3, 3, 3, 3, 3, 0)),
        ("2*Delta", (2,) * 10),
        ("-E1 + E2", (-3, 3, 0, 0, 0, 0, 0, 0, 0, 0)),
        ("5/3E1+2/3E2+2/3E3+2/3E4-1/3E5-1/3E6-1/3E7-1/3E8-1/3E9-1/3E10",
         (5, 2, 2, 2, -1, -1, -1, -1, -1, -1)),
        ("0", (0,) * 10),
        ("E1 - E1", (0,) * 10),
    ],
)
def test_parse(text, t):
    assert parse_divisor(text).t == t


@pytest.mark.parametrize(
    "text, pos",
    [("", 0), ("E11", 1), ("E", 1), ("2E1 +", 5), ("E1 E2", 3), ("1/2E1", 2), ("3", 1), ("2*", 2)],
)
def test_parse_errors(text, pos):
    with pytest.raises(ParseError) as exc:
        parse_divisor(text)
    assert exc.value.position == pos
    assert exc.value.expected


def test_parse_congruence_error_is_both_kinds():
    with pytest.raises(ParseError) as exc:
        parse_divisor("1/3E1+E2")
    assert isinstance(exc.value, InvalidClassError)


def test_format():
    assert format_divisor(parse_divisor("2E1+E2-E10")) == "2E1+E2-E10"
    assert format_divisor(DivisorClass.zero()) == "0"
    assert format_divisor(fano_delta()).startswith("1/3E1+1/3E2")
    assert DivisorClass.from_coeffs([Fraction(5, 3)] + [Fraction(2, 3)] * 9).t == (5,) + (2,) * 9

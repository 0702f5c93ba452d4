import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from enriq.errors import NegativeInputError, NonPositiveSquareError, VerificationError
from enriq.lattice import DivisorClass, E, canonical_orbit_form, fano_delta, orbit_form_coeffs, parse_divisor
from enriq.ulrich import (
    UlrichSolution,
    conjecture_check,
    construct_ulrich_pair,
    delta_multiple,
    enumerate_ulrich_lines,
    four_squares,
    is_ulrich_line,
    orbit_classes,
    orbits_to_json,
    ulrich_L,
)

DELTA = fano_delta()


@pytest.mark.parametrize("n, expected", [(0, (0, 0, 0, 0)), (1, (1, 0, 0, 0)), (7, (2, 1, 1, 1)), (28, (5, 1, 1, 1))])
def test_four_squares_examples(n, expected):
    assert four_squares(n) == expected


@given(st.integers(0, 3000))
def test_four_squares_is_greatest(n):
    c = four_squares(n)
    assert sum(x * x for x in c) == n and list(c) == sorted(c, reverse=True)


def test_four_squares_matches_brute_force():
    for n in range(200):
        reps = [
            c for c in itertools.product(range(15), repeat=4)
            if sum(x * x for x in c) == n and list(c) == sorted(c, reverse=True)
        ]
        assert four_squares(n) == max(reps)


def test_four_squares_negative():
    with pytest.raises(NegativeInputError):
        four_squares(-1)


def test_construct_examples():
    d1, d2 = construct_ulrich_pair(1)
    assert d1.t == (5, 2, 2, 2, -1, -1, -1, -1, -1, -1)
    assert d2.t == (4, 1, 1, 1, -2, -2, -2, -2, -2, -2)
    assert construct_ulrich_pair(0) == (E(1) - E(2), E(1) - E(2))
    d1, _ = construct_ulrich_pair(3)
    pairs = 2 * (E(1) - E(2)) + (E(3) - E(4)) + (E(5) - E(6)) + (E(7) - E(8))
    assert d1 == 2 * DELTA - ulrich_L() + pairs
    assert ulrich_L().dot(DELTA) == 5 and ulrich_L().square() == -8


@given(st.integers(-200, 200))
def test_construct_any_k(k):
    d1, d2 = construct_ulrich_pair(k)
    assert d1.square() == d2.square() == -2
    assert d1 - d2 == k * DELTA


def test_is_ulrich_line():
    assert is_ulrich_line(parse_divisor("2E1+E2+E3+E4"), DELTA)
    assert is_ulrich_line(parse_divisor("4E1+E2+E3+E4+E5+E6+E7"), 2 * DELTA)
    assert not is_ulrich_line(DELTA, DELTA)


def test_solution_validation():
    with pytest.raises(VerificationError):
        UlrichSolution(DELTA, 0 * DELTA, -DELTA, DELTA)


def test_enumerate_delta():
    sols = enumerate_ulrich_lines(DELTA)
    assert len(sols) == 1680
    ds = {s.D for s in sols}
    assert len(ds) == 1680
    for s in sols:
        assert is_ulrich_line(s.D, DELTA)
        assert s.D.dot(DELTA) == 15
        assert 3 * DELTA - s.D in ds
    orbits = orbit_classes(sols)
    assert orbits_to_json(orbits) == [
        {"form": [2, 1, 1, 1, 0, 0, 0, 0, 0, 0], "count": 840},
        {"form": [1, 1, 1, 1, 1, 1, 0, 0, 0, -1], "count": 840},
    ]
    assert sols[0].D == parse_divisor("2E1+E2+E3+E4")


def test_enumerate_rejects_nonpositive():
    with pytest.raises(NonPositiveSquareError):
        enumerate_ulrich_lines(E(1))


def test_enumerate_other_polarisation():
    H = DELTA + E(1)  # H^2 = 10 + 6 = 16
    sols = enumerate_ulrich_lines(H)
    for s in sols:
        assert is_ulrich_line(s.D, H)
    # F -> -F symmetry
    ds = {s.D for s in sols}
    assert all(3 * H - d in ds for d in ds)


def test_orbit_classes_empty():
    assert orbit_classes([]) == []


def test_conjecture_examples():
    r = conjecture_check(DELTA, 0)
    assert r.status == "witness" and r.witness == construct_ulrich_pair(1)
    r = conjecture_check(DivisorClass.zero(), 0)
    assert r.witness == (E(1) - E(2), E(1) - E(2))
    H = E(1) - E(2)
    r = conjecture_check(H, 3)
    assert r.status == "witness"
    d1, d2 = r.witness
    assert d1.square() == d2.square() == -2 and d1 - d2 == H
    # regression value recorded from the search
    assert (d1, d2) == (parse_divisor("-E2+E10"), parse_divisor("-E1+E10"))


def test_conjecture_positive_square_decides():
    H = DELTA + E(1)
    r = conjecture_check(H, 0)
    assert r.complete and r.method == "enumeration" and r.status == "witness"


def test_conjecture_bound_zero_reports_not_found():
    r = conjecture_check(E(1) - E(2), 0)
    assert r.status == "not-found-within-bound" and not r.complete and r.bound == 0
    assert r.to_json()["bound"] == 0


def test_delta_multiple():
    assert delta_multiple(3 * DELTA) == 3
    assert delta_multiple(E(1)) is None

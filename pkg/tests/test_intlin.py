import itertools
import random

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from conftest import classes
from enriq.errors import NotDefiniteError, TargetPositiveError, ZeroClassError
from enriq.intlin import (
    DEGENERATE,
    INDEFINITE,
    NEGATIVE_DEFINITE,
    GramLattice,
    box_search,
    charpoly,
    classify_definiteness,
    coordinate_bounds,
    determinant,
    hnf_kernel,
    inclusion_matrix,
    inverse_diagonal,
    is_saturated,
    orthogonal_complement,
    parity_coset,
    signature,
    smith_invariants,
    solve_mod2,
    vectors_in_window,
    vectors_of_norm,
    write_vectors_csv,
)
from enriq.lattice import E, fano_delta, pairing

sympy = pytest.importorskip("sympy")


def small_grams():
    """Negative-definite symmetric Grams of rank <= 4, entries in [-6, 0]."""

    @st.composite
    def gen(draw):
        k = draw(st.integers(1, 4))
        g = [[0] * k for _ in range(k)]
        for i in range(k):
            g[i][i] = draw(st.integers(-6, -1))
        # |g_ij| <= min diagonal keeps most draws definite
        for i in range(k):
            for j in range(i + 1, k):
                m = min(-g[i][i], -g[j][j])
                g[i][j] = g[j][i] = draw(st.integers(-m, 0))
        assume(classify_definiteness(g) == NEGATIVE_DEFINITE)
        return g

    return gen()


def test_determinant_and_charpoly_match_sympy():
    rng = random.Random(3)
    for _ in range(20):
        k = rng.randint(1, 6)
        m = [[rng.randint(-5, 5) for _ in range(k)] for _ in range(k)]
        sm = sympy.Matrix(m)
        assert determinant(m) == sm.det()
        x = sympy.symbols("x")
        assert [sympy.Rational(c.numerator, c.denominator) for c in charpoly(m)] == \
            sympy.Poly(sm.charpoly(x).as_expr(), x).all_coeffs()


def test_signature_simple():
    assert signature([[1, 0], [0, -1]]) == (1, 1)
    assert signature([[-2]]) == (0, 1)
    assert classify_definiteness([[0]]) == DEGENERATE
    assert classify_definiteness([[1]]) == INDEFINITE


def test_hnf_kernel():
    rows = [[2, 4, 6], [1, 1, 1]]
    ker = hnf_kernel(rows)
    assert len(ker) == 1
    for v in ker:
        assert all(sum(r * x for r, x in zip(row, v)) == 0 for row in rows)
    assert ker[0] in ([1, -2, 1], [-1, 2, -1])


def test_smith_invariants_match_sympy():
    from sympy.matrices.normalforms import smith_normal_form

    rng = random.Random(11)
    for _ in range(20):
        r, c = rng.randint(1, 5), rng.randint(1, 5)
        m = [[rng.randint(-6, 6) for _ in range(c)] for _ in range(r)]
        snf = smith_normal_form(sympy.Matrix(m), domain=sympy.ZZ)
        expected = [abs(snf[i, i]) for i in range(min(r, c)) if snf[i, i] != 0]
        assert smith_invariants(m) == sorted(expected)


def test_solve_mod2():
    cols = [[1, 0, 1], [0, 1, 1]]
    assert solve_mod2(cols, [1, 1, 0]) == [1, 1]
    assert solve_mod2(cols, [1, 0, 0]) is None


@pytest.mark.parametrize("h", [fano_delta(), 2 * fano_delta(), E(1), E(1) - E(2), 3 * E(9) + 2 * E(10) - fano_delta()])
def test_complement_orthogonal_saturated(h):
    lat = orthogonal_complement(h)
    assert lat.rank == 9
    assert all(pairing(b, h) == 0 for b in lat.basis)
    assert is_saturated(lat)
    from sympy.matrices.normalforms import smith_normal_form

    snf = smith_normal_form(sympy.Matrix(inclusion_matrix(lat)), domain=sympy.ZZ)
    assert [abs(snf[i, i]) for i in range(9)] == [1] * 9


def test_complement_definiteness():
    assert orthogonal_complement(fano_delta()).definiteness == NEGATIVE_DEFINITE
    assert orthogonal_complement(E(1)).definiteness == DEGENERATE
    assert orthogonal_complement(E(1) - E(2)).definiteness == INDEFINITE
    with pytest.raises(ZeroClassError):
        orthogonal_complement(0 * E(1))


@given(classes(bound=4))
def test_complement_definite_iff_positive(h):
    assume(not h.is_zero())
    lat = orthogonal_complement(h)
    assert (lat.definiteness == NEGATIVE_DEFINITE) == (h.square() > 0)


def test_small_examples():
    assert vectors_of_norm(GramLattice.from_gram([[-2]]), -8) == [(-2,), (2,)]
    assert vectors_of_norm(GramLattice.from_gram([[-2, 0], [0, -2]]), -4) == [
        (-1, -1), (-1, 1), (1, -1), (1, 1)]
    lat = orthogonal_complement(fano_delta())
    assert vectors_of_norm(lat, 0) == [(0,) * 9]
    with pytest.raises(TargetPositiveError):
        vectors_of_norm(lat, 2)
    with pytest.raises(NotDefiniteError):
        vectors_of_norm(orthogonal_complement(E(1)), -2)


def test_box_search_examples():
    lat = orthogonal_complement(E(1) - E(2))
    assert box_search(lat, 0, 0) == [(0,) * 9]
    assert box_search(GramLattice.from_gram([[0]]), 0, 2) == [(-2,), (-1,), (0,), (1,), (2,)]


def test_box_search_monotone():
    lat = orthogonal_complement(E(1) - E(2))
    small = set(box_search(lat, -2, 1))
    big = set(box_search(lat, -2, 2))
    assert small <= big and len(big) > len(small)


@given(small_grams(), st.integers(-20, 0))
def test_fincke_pohst_equals_box_oracle(g, n):
    lat = GramLattice.from_gram(g)
    bounds = coordinate_bounds(lat, n)
    fp = vectors_of_norm(lat, n)
    box = box_search(lat, n, bounds)
    assert fp == box
    # independent brute force over the same box
    brute = sorted(
        v for v in itertools.product(*(range(-b, b + 1) for b in bounds)) if lat.norm(v) == n
    )
    assert fp == brute
    assert set(fp) == {tuple(-x for x in v) for v in fp}


@given(small_grams(), st.integers(-20, 0))
def test_window_is_union_of_norms(g, n):
    lat = GramLattice.from_gram(g)
    win = vectors_in_window(lat, n)
    union = sorted(v for m in range(n, 1) for v in vectors_of_norm(lat, m))
    assert win == union


@given(small_grams())
def test_inverse_diagonal_matches_sympy(g):
    lat = GramLattice.from_gram(g)
    inv = (-sympy.Matrix(g)).inv()
    assert [sympy.Rational(x.numerator, x.denominator) for x in inverse_diagonal(lat)] == [
        inv[i, i] for i in range(len(g))]


def test_parity_coset_characterises_halving():
    h = fano_delta()
    lat = orthogonal_complement(h)
    s = parity_coset(lat, h)
    rng = random.Random(5)
    for _ in range(200):
        v = [rng.randint(-3, 3) for _ in range(9)]
        F = lat.combine(v)
        inside = all((x - y) % 2 == 0 for x, y in zip(v, s))
        assert (F + h).is_divisible_by_two() == inside


def test_parallel_split_matches_serial():
    lat = orthogonal_complement(fano_delta())
    par = parity_coset(lat, fano_delta())
    serial = vectors_of_norm(lat, -18, parity=par)
    split = vectors_of_norm(lat, -18, parity=par, mapper=map)
    assert serial == split and len(serial) == 1680


def test_limit_returns_prefix():
    lat = orthogonal_complement(fano_delta())
    few = vectors_of_norm(lat, -18, limit=5)
    assert len(few) == 5 and all(lat.norm(v) == -18 for v in few)


def test_csv_dump(tmp_path):
    lat = GramLattice.from_gram([[-2, 0], [0, -2]])
    p = tmp_path / "v.csv"
    write_vectors_csv(p, lat, vectors_of_norm(lat, -4))
    rows = p.read_text().strip().splitlines()
    assert rows[0] == "v0,v1,norm"
    assert rows[1] == "-1,-1,-4" and len(rows) == 5

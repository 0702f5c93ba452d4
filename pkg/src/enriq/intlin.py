"""Exact integer linear algebra and vector enumeration in Gram lattices.

Orthogonal complements are computed as integer kernels through a column
Hermite reduction, and all vectors of a given norm in a negative-definite
lattice are listed by a Fincke-Pohst recursion driven by an exact rational
LDL^T factorisation (rescaled to integers before it reaches the kernels).
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd, isqrt, lcm
from typing import Callable, Iterable, Sequence

from . import kernels
from .errors import (
    NegativeInputError,
    NotDefiniteError,
    TargetPositiveError,
    VerificationError,
    ZeroClassError,
)
from .lattice import (
    DivisorClass,
    basis_of_lambda,
    from_basis_coords,
    gram_matrix,
    pairing,
    to_basis_coords,
)

NEGATIVE_DEFINITE = "negative-definite"
INDEFINITE = "indefinite"
DEGENERATE = "degenerate"

Mapper = Callable[[Callable, Iterable], Iterable]


# -- dense exact helpers -----------------------------------------------------


def determinant(m: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant."""
    a = [list(map(int, row)) for row in m]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k]:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[-1][-1]


def leading_minors(m: Sequence[Sequence[int]]) -> list[int]:
    return [determinant([row[:i] for row in m[:i]]) for i in range(1, len(m) + 1)]


def charpoly(m: Sequence[Sequence[int]]) -> list[Fraction]:
    """Coefficients of det(xI - m), highest degree first (Faddeev-LeVerrier)."""
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    coeffs = [Fraction(1)]
    mk = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{k-1} I
        prod = [[sum(a[i][l] * mk[l][j] for l in range(n)) for j in range(n)] for i in range(n)]
        for i in range(n):
            prod[i][i] += coeffs[-1]
        mk = prod
        am = [[sum(a[i][l] * mk[l][j] for l in range(n)) for j in range(n)] for i in range(n)]
        coeffs.append(-sum(am[i][i] for i in range(n)) / k)
    return coeffs


def signature(gram: Sequence[Sequence[int]]) -> tuple[int, int]:
    """(positive, negative) inertia of a symmetric integer matrix.

    Descartes' rule of signs is exact for a polynomial with only real roots,
    which the characteristic polynomial of a symmetric matrix is.
    """
    cp = charpoly(gram)
    n = len(gram)
    zero = 0
    while cp and cp[-1] == 0:
        cp.pop()
        zero += 1

    def changes(seq):
        s = [x for x in seq if x != 0]
        return sum(1 for u, v in zip(s, s[1:]) if (u > 0) != (v > 0))

    pos = changes(cp)
    neg = changes([c * (-1) ** (len(cp) - 1 - i) for i, c in enumerate(cp)])
    if pos + neg + zero != n:
        raise VerificationError("inertia does not add up")
    return pos, neg


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def hnf_kernel(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Basis of {x in Z^n : rows . x = 0} via unimodular column reduction.

    The returned vectors are columns of a unimodular transform, so the kernel
    they span is saturated in Z^n.
    """
    a = [list(map(int, r)) for r in rows]
    n = len(a[0]) if a else 0
    u = [[int(i == j) for j in range(n)] for i in range(n)]  # columns of U

    def colop(p, j, x, y, s, t):
        # (col_p, col_j) <- (x col_p + y col_j, s col_p + t col_j)
        for mat in (a, u):
            for row in mat:
                cp, cj = row[p], row[j]
                row[p], row[j] = x * cp + y * cj, s * cp + t * cj

    p = 0
    for r in range(len(a)):
        if p >= n:
            break
        for j in range(p + 1, n):
            if a[r][j]:
                ap, aj = a[r][p], a[r][j]
                g, x, y = _ext_gcd(ap, aj)
                colop(p, j, x, y, -aj // g, ap // g)
        if a[r][p]:
            if a[r][p] < 0:
                for mat in (a, u):
                    for row in mat:
                        row[p] = -row[p]
            p += 1
    return [[u[i][j] for i in range(n)] for j in range(p, n)]


def smith_invariants(m: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero invariant factors of an integer matrix."""
    a = [list(map(int, r)) for r in m]
    rows = len(a)
    cols = len(a[0]) if a else 0
    out = []
    t = 0
    while t < min(rows, cols):
        nz = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j]]
        if not nz:
            break
        _, pi, pj = min(nz)
        a[t], a[pi] = a[pi], a[t]
        for row in a:
            row[t], row[pj] = row[pj], row[t]
        while True:
            piv = a[t][t]
            dirty = False
            for i in range(t + 1, rows):
                q = a[i][t] // piv
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t]:
                    dirty = True
            for j in range(t + 1, cols):
                q = a[t][j] // piv
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                if a[t][j]:
                    dirty = True
            if not dirty:
                bad = [
                    (i, j)
                    for i in range(t + 1, rows)
                    for j in range(t + 1, cols)
                    if a[i][j] % piv
                ]
                if not bad:
                    break
                i, _ = bad[0]
                a[t] = [x + y for x, y in zip(a[t], a[i])]
                continue
            nz = [(abs(a[i][t]), i, t) for i in range(t, rows) if a[i][t]]
            nz += [(abs(a[t][j]), t, j) for j in range(t, cols) if a[t][j]]
            _, pi, pj = min(nz)
            a[t], a[pi] = a[pi], a[t]
            for row in a:
                row[t], row[pj] = row[pj], row[t]
        out.append(abs(a[t][t]))
        t += 1
    return out


def solve_mod2(columns: Sequence[Sequence[int]], rhs: Sequence[int]) -> list[int] | None:
    """Some s in {0,1}^k with sum s_i columns[i] = rhs over GF(2), or None."""
    k = len(columns)
    n = len(rhs)
    rows = [[columns[j][i] & 1 for j in range(k)] + [rhs[i] & 1] for i in range(n)]
    piv_cols = []
    r = 0
    for c in range(k):
        pr = next((i for i in range(r, n) if rows[i][c]), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        for i in range(n):
            if i != r and rows[i][c]:
                rows[i] = [x ^ y for x, y in zip(rows[i], rows[r])]
        piv_cols.append(c)
        r += 1
    if any(rows[i][k] for i in range(r, n)):
        return None
    s = [0] * k
    for i, c in enumerate(piv_cols):
        s[c] = rows[i][k]
    return s


# -- Gram lattices ------------------------------------------------------------


def classify_definiteness(gram: Sequence[Sequence[int]]) -> str:
    minors = leading_minors(gram)
    if not minors:
        return NEGATIVE_DEFINITE
    if minors[-1] == 0:
        return DEGENERATE
    if all((-1) ** (i + 1) * m > 0 for i, m in enumerate(minors)):
        return NEGATIVE_DEFINITE
    return INDEFINITE


@dataclass(frozen=True)
class GramLattice:
    """Sublattice of Num(Y) given by a basis and its Gram matrix."""

    basis: tuple[DivisorClass, ...]
    gram: tuple[tuple[int, ...], ...]
    definiteness: str
    _fp: dict = field(default_factory=dict, compare=False, repr=False)

    @classmethod
    def from_basis(cls, basis: Sequence[DivisorClass]) -> "GramLattice":
        gram = tuple(tuple(row) for row in gram_matrix(basis))
        return cls(tuple(basis), gram, classify_definiteness(gram))

    @classmethod
    def from_gram(cls, gram: Sequence[Sequence[int]]) -> "GramLattice":
        """Abstract lattice given only by its Gram matrix (no ambient basis)."""
        g = tuple(tuple(int(x) for x in row) for row in gram)
        if any(g[i][j] != g[j][i] for i in range(len(g)) for j in range(len(g))):
            raise ValueError("Gram matrix must be symmetric")
        return cls((), g, classify_definiteness(g))

    @property
    def rank(self) -> int:
        return len(self.gram)

    def norm(self, v: Sequence[int]) -> int:
        g = self.gram
        return sum(v[i] * g[i][j] * v[j] for i in range(len(v)) for j in range(len(v)))

    def combine(self, v: Sequence[int]) -> DivisorClass:
        """The class sum(v_i basis_i)."""
        if not self.basis:
            raise ValueError("lattice has no ambient basis")
        t = [0] * 10
        for c, b in zip(v, self.basis):
            if c:
                for i in range(10):
                    t[i] += c * b.t[i]
        return DivisorClass(tuple(t))

    @cached_property
    def ldl(self) -> tuple[list[Fraction], list[list[Fraction]]]:
        """Exact factorisation -gram = U^T diag(d) U, U unit upper triangular."""
        return ldl_decomposition(self.gram)


def ldl_decomposition(gram: Sequence[Sequence[int]]):
    k = len(gram)
    a = [[Fraction(-x) for x in row] for row in gram]
    d = []
    mu = [[Fraction(int(i == j)) for j in range(k)] for i in range(k)]
    for i in range(k):
        if a[i][i] <= 0:
            raise NotDefiniteError("Gram matrix is not negative definite")
        d.append(a[i][i])
        for j in range(i + 1, k):
            mu[i][j] = a[i][j] / a[i][i]
        for r in range(i + 1, k):
            for c in range(i + 1, k):
                a[r][c] -= a[r][i] * a[i][c] / a[i][i]
    return d, mu


def _pairwise_reduce(basis: list[DivisorClass], form: Callable) -> list[DivisorClass]:
    """Greedy pairwise size reduction: b_i -= round(<b_i,b_j>/<b_j,b_j>) b_j.

    Every step strictly shrinks some form value, so this terminates for a
    positive-definite ``form``.
    """
    basis = list(basis)
    k = len(basis)
    g = [[form(x, y) for y in basis] for x in basis]
    changed = True
    while changed:
        changed = False
        for i in range(k):
            for j in range(k):
                if i == j or 2 * abs(g[i][j]) <= g[j][j]:
                    continue
                q = Fraction(g[i][j], g[j][j])
                q = int(q.numerator * 2 + q.denominator) // (2 * q.denominator)
                if not q:
                    continue
                basis[i] = basis[i] - q * basis[j]
                for l in range(k):
                    g[i][l] = form(basis[i], basis[l])
                    g[l][i] = g[i][l]
                changed = True
    basis.sort(key=lambda b: (form(b, b), [-x for x in b.t]))
    return basis


def _euclid(x: DivisorClass, y: DivisorClass) -> int:
    return sum(a * b for a, b in zip(x.t, y.t))


def orthogonal_complement(h: DivisorClass, reduce: bool = True) -> GramLattice:
    """Saturated basis of {x : x.h = 0}.

    The kernel of x -> x.h is taken in the coordinates of
    :func:`basis_of_lambda`; it is then size reduced (with respect to -pairing
    when the complement is definite, otherwise Euclidean on t-coordinates),
    which is a unimodular change of basis.
    """
    if h.is_zero():
        raise ZeroClassError("orthogonal complement of the zero class is all of Lambda")
    lam = basis_of_lambda()
    row = [pairing(b, h) for b in lam]
    kernel = hnf_kernel([row])
    basis = [from_basis_coords(v) for v in kernel]
    if reduce:
        if h.square() > 0:
            basis = _pairwise_reduce(basis, lambda x, y: -pairing(x, y))
        else:
            basis = _pairwise_reduce(basis, _euclid)
    lat = GramLattice.from_basis(basis)
    if any(pairing(b, h) for b in lat.basis) or lat.rank != 9:
        raise VerificationError("complement basis is not orthogonal to H")
    return lat


def inclusion_matrix(lat: GramLattice) -> list[list[int]]:
    """10 x rank matrix of basis coordinates in the Z-basis E1..E9, Delta."""
    cols = [to_basis_coords(b) for b in lat.basis]
    return [[c[i] for c in cols] for i in range(10)]


def is_saturated(lat: GramLattice) -> bool:
    inv = smith_invariants(inclusion_matrix(lat))
    return len(inv) == lat.rank and all(x == 1 for x in inv)


def parity_coset(lat: GramLattice, target: DivisorClass) -> list[int] | None:
    """Residues s (mod 2) such that sum v_i b_i - target lies in 2*Lambda iff v = s mod 2.

    Returns None when no vector of ``lat`` is congruent to ``target``
    modulo 2*Lambda.  Uniqueness of s holds because ``lat`` is saturated.
    """
    cols = [to_basis_coords(b) for b in lat.basis]
    return solve_mod2(cols, to_basis_coords(target))


# -- enumeration ---------------------------------------------------------------


def _require_definite(lat: GramLattice):
    if lat.definiteness != NEGATIVE_DEFINITE:
        raise NotDefiniteError(f"lattice is {lat.definiteness}, not negative definite")


def _fp_data(lat: GramLattice):
    if "data" not in lat._fp:
        d, mu = lat.ldl
        k = len(d)
        deltas = []
        acc = Fraction(1)
        for x in d:
            acc *= x
            if acc.denominator != 1:
                raise VerificationError("leading minor is not an integer")
            deltas.append(int(acc))
        bmat = []
        for i in range(k):
            row = []
            for j in range(k):
                x = mu[i][j] * deltas[i]
                if x.denominator != 1:
                    raise VerificationError("scaled LDL entry is not an integer")
                row.append(int(x))
            bmat.append(row)
        wden = [deltas[i] * (deltas[i - 1] if i else 1) for i in range(k)]
        p = lcm(*wden) if wden else 1
        weights = [p // x for x in wden]
        lat._fp["data"] = (weights, bmat, p)
    return lat._fp["data"]


def inverse_diagonal(lat: GramLattice) -> list[Fraction]:
    """Diagonal of (-gram)^{-1}, computed from the LDL^T factors."""
    d, mu = lat.ldl
    k = len(d)
    # rows of U^{-1} by back substitution
    uinv = [[Fraction(int(i == j)) for j in range(k)] for i in range(k)]
    for i in range(k - 1, -1, -1):
        for j in range(i + 1, k):
            uinv[i][j] = -sum(mu[i][l] * uinv[l][j] for l in range(i + 1, j + 1))
    return [sum(uinv[i][l] ** 2 / d[l] for l in range(k)) for i in range(k)]


def coordinate_bounds(lat: GramLattice, n: int) -> list[int]:
    """b_i with |v_i| <= b_i for every v of norm >= n (Cauchy-Schwarz)."""
    _require_definite(lat)
    N = -n
    if N < 0:
        raise TargetPositiveError(f"target norm {n} is positive")
    out = []
    for x in inverse_diagonal(lat):
        q = N * x
        out.append(isqrt(q.numerator // q.denominator))
    return out


def _fp_task(args):
    return kernels.fp_enumerate(*args)


def _enumerate(lat, N, exact, parity, limit, mapper):
    weights, bmat, p = _fp_data(lat)
    budget = N * p
    k = lat.rank
    cb = max(coordinate_bounds(lat, -N), default=0)
    if k == 0:
        return kernels.fp_enumerate(weights, bmat, budget, exact, parity, None, limit, cb)
    if mapper is None or limit:
        return kernels.fp_enumerate(weights, bmat, budget, exact, parity, None, limit, cb)
    top = isqrt(budget // weights[-1]) // bmat[-1][-1]
    tasks = [
        (weights, bmat, budget, exact, parity, (x, x), 0, cb) for x in range(-top, top + 1)
    ]
    out = []
    for chunk in mapper(_fp_task, tasks):
        out.extend(chunk)
    return out


def vectors_of_norm(
    lat: GramLattice,
    n: int,
    parity: Sequence[int] | None = None,
    limit: int = 0,
    mapper: Mapper | None = None,
) -> list[tuple[int, ...]]:
    """All integer v with v^T gram v == n, sorted lexicographically.

    ``parity`` restricts each coordinate modulo 2 (see :func:`parity_coset`);
    ``limit`` > 0 stops after that many hits (the returned prefix is then
    sorted but not necessarily the lexicographically smallest ones);
    ``mapper`` is a map-like callable used to split the outermost coordinate.
    """
    _require_definite(lat)
    if n > 0:
        raise TargetPositiveError(f"target norm {n} is positive")
    return sorted(_enumerate(lat, -n, True, parity, limit, mapper))


def vectors_in_window(
    lat: GramLattice,
    n_min: int,
    parity: Sequence[int] | None = None,
    mapper: Mapper | None = None,
    limit: int = 0,
) -> list[tuple[int, ...]]:
    """All v with n_min <= v^T gram v <= 0, sorted lexicographically.

    ``limit`` behaves as in :func:`vectors_of_norm`.
    """
    _require_definite(lat)
    if n_min > 0:
        raise TargetPositiveError(f"window bound {n_min} is positive")
    return sorted(_enumerate(lat, -n_min, False, parity, limit, mapper))


def box_search(
    lat: GramLattice,
    n: int,
    bound: int | Sequence[int],
    parity: Sequence[int] | None = None,
    limit: int = 0,
) -> list[tuple[int, ...]]:
    """All v with |v_i| <= bound (per coordinate if a sequence) and norm n."""
    bounds = [bound] * lat.rank if isinstance(bound, int) else list(bound)
    if len(bounds) != lat.rank:
        raise ValueError("need one bound per coordinate")
    if any(b < 0 for b in bounds):
        raise NegativeInputError("box bound must be non-negative")
    return sorted(kernels.box_enumerate(lat.gram, n, bounds, parity, limit))


def write_vectors_csv(path, lat: GramLattice, vectors: Iterable[Sequence[int]]) -> None:
    """One row per vector: coordinates, then norm."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow([f"v{i}" for i in range(lat.rank)] + ["norm"])
        for v in vectors:
            w.writerow(list(v) + [lat.norm(v)])

"""The (2,2,2) model in (P^1)^3 and its relation to the classical sextic.

A monomial of tridegree (2,2,2) is recorded by the exponents (i, j, k) of
u1, v1, w1; those of u0, v0, w0 are 2-i, 2-j, 2-k.  The involution negating
u1, v1, w1 fixes a monomial exactly when i + j + k is even.
"""

from __future__ import annotations

import itertools
import random
from typing import Iterable, Mapping, NamedTuple

DEGREE = 2


class TriMonomial(NamedTuple):
    i: int
    j: int
    k: int

    @property
    def invariant(self) -> bool:
        return (self.i + self.j + self.k) % 2 == 0

    def label(self) -> str:
        parts = []
        for name, e in zip("uvw", self):
            for idx, p in ((0, DEGREE - e), (1, e)):
                if p == 1:
                    parts.append(f"{name}{idx}")
                elif p > 1:
                    parts.append(f"{name}{idx}^{p}")
        return "*".join(parts)


class FixedPoint(NamedTuple):
    """Each entry 0 selects [1:0] and 1 selects [0:1] on that factor."""

    eu: int
    ev: int
    ew: int

    def coords(self) -> tuple[tuple[int, int], ...]:
        return tuple((1, 0) if e == 0 else (0, 1) for e in self)

    def vertex(self) -> TriMonomial:
        """The only invariant monomial not vanishing here."""
        return TriMonomial(2 * self.eu, 2 * self.ev, 2 * self.ew)


def invariant_monomials() -> list[TriMonomial]:
    return [
        TriMonomial(*m) for m in itertools.product(range(3), repeat=3) if sum(m) % 2 == 0
    ]


def vertex_monomials() -> list[TriMonomial]:
    return [m for m in invariant_monomials() if all(e % 2 == 0 for e in m)]


def face_monomials() -> list[TriMonomial]:
    return [m for m in invariant_monomials() if sorted(m).count(1) == 2]


def fixed_points() -> list[FixedPoint]:
    return [FixedPoint(*e) for e in itertools.product((0, 1), repeat=3)]


class TriPolynomial:
    """Invariant (2,2,2) form as a map monomial -> integer coefficient."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[tuple[int, int, int], int] | None = None):
        clean = {}
        for m, c in (coeffs or {}).items():
            m = TriMonomial(*m)
            if not all(0 <= e <= DEGREE for e in m):
                raise ValueError(f"exponents {tuple(m)} out of range 0..2")
            if not m.invariant:
                raise ValueError(f"monomial {m.label()} is not invariant")
            if c:
                clean[m] = int(c)
        self.coeffs = dict(sorted(clean.items()))

    @classmethod
    def from_json(cls, data: Mapping[str, int]) -> "TriPolynomial":
        coeffs = {}
        for key, c in data.items():
            parts = key.split(",")
            if len(parts) != 3:
                raise ValueError(f"bad monomial key {key!r}, want 'i,j,k'")
            coeffs[tuple(int(x) for x in parts)] = c
        return cls(coeffs)

    def to_json(self) -> dict[str, int]:
        return {f"{m.i},{m.j},{m.k}": c for m, c in self.coeffs.items()}

    @classmethod
    def random(cls, q: int, seed: int) -> "TriPolynomial":
        rng = random.Random(seed)
        return cls({m: rng.randrange(q) for m in invariant_monomials()})

    def __eq__(self, other):
        return isinstance(other, TriPolynomial) and self.coeffs == other.coeffs

    def __repr__(self):
        return f"TriPolynomial({self.to_json()})"

    def evaluate(self, point, q: int | None = None) -> int:
        """Value at ((u0,u1),(v0,v1),(w0,w1)); reduced mod q if given."""
        (u0, u1), (v0, v1), (w0, w1) = point
        total = 0
        for (i, j, k), c in self.coeffs.items():
            total += (
                c
                * u0 ** (2 - i) * u1**i
                * v0 ** (2 - j) * v1**j
                * w0 ** (2 - k) * w1**k
            )
        return total % q if q else total


def vertex_coefficient(p: TriPolynomial, f: FixedPoint, q: int | None = None) -> int:
    return p.evaluate(f.coords(), q)


def avoids_all_fixed_points(p: TriPolynomial, q: int | None = None) -> bool:
    return all(vertex_coefficient(p, f, q) != 0 for f in fixed_points())


def fixed_point_conditions() -> list[list[int]]:
    """8 x 14 matrix: row f holds the values of the invariant monomials at f."""
    mons = invariant_monomials()
    return [[TriPolynomial({m: 1}).evaluate(f.coords()) for m in mons] for f in fixed_points()]


def matrix_rank(rows: Iterable[Iterable[int]]) -> int:
    from fractions import Fraction

    a = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    cols = len(a[0]) if a else 0
    for c in range(cols):
        piv = next((r for r in range(rank, len(a)) if a[r][c]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        for r in range(len(a)):
            if r != rank and a[r][c]:
                f = a[r][c] / a[rank][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[rank])]
        rank += 1
    return rank


# -- sextic model ----------------------------------------------------------------

SEXTIC_VARS = "xyzw"


def sextic_image(m) -> tuple[int, int, int, int]:
    """Exponents of (x, y, z, w) for an invariant (2,2,2) monomial."""
    i, j, k = m
    if (i + j + k) % 2:
        raise ValueError(f"monomial {tuple(m)} is not invariant")
    return (
        3 - (i + j + k) // 2,
        1 + (i - j + k) // 2,
        1 + (i + j - k) // 2,
        1 + (-i + j + k) // 2,
    )


def sextic_label(exps) -> str:
    parts = []
    for v, e in zip(SEXTIC_VARS, exps):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return "".join(parts) or "1"


def to_sextic_form(p: TriPolynomial) -> tuple[dict, dict]:
    """Split p's image into the xyzw-free part and the quadric Q with
    image = tetra + xyzw * Q.  Keys are exponent tuples."""
    tetra, quad = {}, {}
    for m, c in p.coeffs.items():
        e = sextic_image(m)
        if all(x >= 1 for x in e):
            quad[tuple(x - 1 for x in e)] = c
        else:
            tetra[e] = c
    return tetra, quad


# -- finite-field sampling -----------------------------------------------------


def projective_line(q: int) -> list[tuple[int, int]]:
    return [(1, a) for a in range(q)] + [(0, 1)]


def _chart_terms(pt, e):
    """(value, derivative) of the factor monomial in the affine chart of pt."""
    s0, s1 = pt
    if s0 == 1:
        # variable s1/s0, monomial x^e
        x, p = s1, e
    else:
        x, p = s0, DEGREE - e
    val = x**p if p else 1
    der = p * x ** (p - 1) if p else 0
    return val, der


def _is_prime(q: int) -> bool:
    return q >= 2 and all(q % d for d in range(2, int(q**0.5) + 1))


def singular_scan_fq(p: TriPolynomial, q: int) -> dict:
    """Points of (P^1)^3 over F_q where p and its three chart partials vanish.

    A necessary condition for singularity only; also reports whether p
    vanishes at any of the eight fixed points.
    """
    if not _is_prime(q) or q > 31:
        raise ValueError(f"q must be a prime <= 31, got {q}")
    line = projective_line(q)
    suspicious = []
    checked = 0
    zeros = 0
    for pu in line:
        for pv in line:
            for pw in line:
                checked += 1
                f = du = dv = dw = 0
                for (i, j, k), c in p.coeffs.items():
                    a, da = _chart_terms(pu, i)
                    b, db = _chart_terms(pv, j)
                    g, dg = _chart_terms(pw, k)
                    f += c * a * b * g
                    du += c * da * b * g
                    dv += c * a * db * g
                    dw += c * a * b * dg
                if f % q:
                    continue
                zeros += 1
                if du % q == 0 and dv % q == 0 and dw % q == 0:
                    suspicious.append((pu, pv, pw))
    hits = [f for f in fixed_points() if vertex_coefficient(p, f, q) == 0]
    return {
        "q": q,
        "points_checked": checked,
        "zeros": zeros,
        "suspicious": suspicious,
        "fixed_point_hits": hits,
        "avoids_fixed_points": not hits,
    }

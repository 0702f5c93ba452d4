"""Ulrich line-bundle classes: constructions, complete enumeration, and the
difference-of-(-2)-classes check.

For a polarization H, a class D is Ulrich exactly when D1 = D - H and
D2 = D - 2H both have square -2.  Writing F = D1 + D2, F is orthogonal to H
with F^2 = -8 - H^2, and D = (F + 3H)/2.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import isqrt
from typing import Sequence

from .errors import NegativeInputError, NonPositiveSquareError, VerificationError
from .intlin import (
    NEGATIVE_DEFINITE,
    Mapper,
    box_search,
    orthogonal_complement,
    parity_coset,
    vectors_of_norm,
)
from .lattice import (
    DivisorClass,
    E,
    canonical_orbit_form,
    fano_delta,
    orbit_form_coeffs,
    pairing,
)


@dataclass(frozen=True)
class UlrichSolution:
    D: DivisorClass
    D1: DivisorClass
    D2: DivisorClass
    H: DivisorClass

    def __post_init__(self):
        if self.D1 != self.D - self.H or self.D2 != self.D - 2 * self.H:
            raise VerificationError("D1, D2 do not match D - H, D - 2H")
        if self.D1.square() != -2 or self.D2.square() != -2:
            raise VerificationError(f"{self.D} is not Ulrich for {self.H}")

    @classmethod
    def from_F(cls, F: DivisorClass, H: DivisorClass) -> "UlrichSolution":
        D1 = (F + H).halve()
        return cls(D1 + H, D1, D1 - H, H)

    def to_json(self) -> dict:
        return {"D": self.D.to_json(), "D1": self.D1.to_json(), "D2": self.D2.to_json()}


def four_squares(n: int) -> tuple[int, int, int, int]:
    """Lexicographically greatest non-increasing (c1..c4) with sum of squares n."""
    if n < 0:
        raise NegativeInputError(f"four_squares needs n >= 0, got {n}")

    def search(rest, parts, cap):
        if parts == 0:
            return () if rest == 0 else None
        hi = min(cap, isqrt(rest))
        for c in range(hi, -1, -1):
            # the remaining parts cannot exceed c each
            if c * c * parts < rest:
                break
            tail = search(rest - c * c, parts - 1, c)
            if tail is not None:
                return (c,) + tail
        return None

    out = search(n, 4, isqrt(n))
    if out is None:  # pragma: no cover - Lagrange
        raise VerificationError(f"no four-square representation of {n}")
    return out


def _pairs_part(c: Sequence[int]) -> DivisorClass:
    out = DivisorClass.zero()
    for i, ci in enumerate(c):
        out = out + ci * (E(2 * i + 1) - E(2 * i + 2))
    return out


# the k = 1 pair, written out in tripled coordinates
_K1_D1 = DivisorClass((5, 2, 2, 2, -1, -1, -1, -1, -1, -1))
_K1_D2 = DivisorClass((4, 1, 1, 1, -2, -2, -2, -2, -2, -2))


def ulrich_L() -> DivisorClass:
    """L = 3E9 + 2E10 - Delta, with L.Delta = 5 and L^2 = -8."""
    return 3 * E(9) + 2 * E(10) - fano_delta()


def construct_ulrich_pair(k: int) -> tuple[DivisorClass, DivisorClass]:
    """(-2)-classes D1, D2 with D1 - D2 = k * Delta, for any integer k."""
    delta = fano_delta()
    if k < 0:
        d1, d2 = construct_ulrich_pair(-k)
        d1, d2 = d2, d1
    elif k == 0:
        d1 = d2 = E(1) - E(2)
    elif k == 1:
        d1, d2 = _K1_D1, _K1_D2
    elif k % 2 == 0:
        base = _pairs_part(four_squares((5 * k * k + 4) // 4))
        d1 = (k // 2) * delta + base
        d2 = d1 - k * delta
    else:
        base = _pairs_part(four_squares((5 * k * k - 17) // 4))
        d1 = ((k + 1) // 2) * delta - ulrich_L() + base
        d2 = d1 - k * delta
    if d1.square() != -2 or d2.square() != -2 or d1 - d2 != k * delta:
        raise VerificationError(f"constructed pair for k={k} fails the Ulrich equations")
    return d1, d2


def is_ulrich_line(D: DivisorClass, H: DivisorClass) -> bool:
    return (D - H).square() == -2 and (D - 2 * H).square() == -2


def _sort_key(sol: UlrichSolution):
    return tuple(-x for x in sol.D.t)


def enumerate_ulrich_lines(H: DivisorClass, mapper: Mapper | None = None) -> list[UlrichSolution]:
    """Every Ulrich class D for H (H^2 > 0), sorted by decreasing t-coordinates.

    F = D1 + D2 runs over the vectors of norm -8 - H^2 in the complement of
    H; only the residue class of F modulo 2 for which (F + H)/2 is integral
    is enumerated, and each hit is re-checked by halving.
    """
    h2 = H.square()
    if h2 <= 0:
        raise NonPositiveSquareError(f"H^2 = {h2} must be positive")
    lat = orthogonal_complement(H)
    par = parity_coset(lat, H)
    if par is None:
        return []
    sols = []
    for v in vectors_of_norm(lat, -8 - h2, parity=par, mapper=mapper):
        F = lat.combine(v)
        if not (F + H).is_divisible_by_two():
            raise VerificationError("parity residue produced a non-integral D1")
        sols.append(UlrichSolution.from_F(F, H))
    sols.sort(key=_sort_key)
    return sols


def orbit_classes(solutions: Sequence[UlrichSolution]) -> list[tuple[DivisorClass, int]]:
    """(canonical orbit form of D, number of solutions in that orbit), sorted."""
    counts = Counter(canonical_orbit_form(s.D) for s in solutions)
    return sorted(counts.items(), key=lambda kv: tuple(-x for x in kv[0].t))


def orbits_to_json(orbits) -> list[dict]:
    return [{"form": orbit_form_coeffs(form), "count": n} for form, n in orbits]


@dataclass(frozen=True)
class ConjectureResult:
    """Outcome of a search for (-2)-classes D1, D2 with D1 - D2 = H.

    ``status`` is "witness", "none" (complete search, no witness) or
    "not-found-within-bound" (semi-decision exhausted its box).
    """

    H: DivisorClass
    status: str
    witness: tuple[DivisorClass, DivisorClass] | None
    complete: bool
    method: str
    bound: int | None = None

    def to_json(self) -> dict:
        out = {
            "H": self.H.to_json(),
            "status": self.status,
            "complete": self.complete,
            "method": self.method,
            "witness": None,
        }
        if self.witness is not None:
            out["witness"] = {"D1": self.witness[0].to_json(), "D2": self.witness[1].to_json()}
        if self.bound is not None:
            out["bound"] = self.bound
        return out


def delta_multiple(H: DivisorClass) -> int | None:
    """k with H = k * Delta, or None."""
    k = H.t[0]
    return k if all(x == k for x in H.t) else None


def conjecture_check(H: DivisorClass, bound: int) -> ConjectureResult:
    if bound < 0:
        raise NegativeInputError("bound must be non-negative")
    k = delta_multiple(H)
    if k is not None:
        return ConjectureResult(H, "witness", construct_ulrich_pair(k), True, "construction")
    h2 = H.square()
    lat = orthogonal_complement(H)
    par = parity_coset(lat, H)
    if h2 > 0:
        hits = [] if par is None else vectors_of_norm(lat, -8 - h2, parity=par, limit=1)
        if not hits:
            return ConjectureResult(H, "none", None, True, "enumeration")
        sol = UlrichSolution.from_F(lat.combine(hits[0]), H)
        return ConjectureResult(H, "witness", (sol.D1, sol.D2), True, "enumeration")
    hits = [] if par is None else box_search(lat, -8 - h2, bound, parity=par, limit=1)
    # a definite answer is possible only if the parity class is empty
    if not hits:
        status = "none" if par is None else "not-found-within-bound"
        return ConjectureResult(H, status, None, par is None, "box-search", bound)
    F = lat.combine(hits[0])
    D1 = (F + H).halve()
    D2 = D1 - H
    if D1.square() != -2 or D2.square() != -2:
        raise VerificationError("box-search witness fails D1^2 = D2^2 = -2")
    return ConjectureResult(H, "witness", (D1, D2), True, "box-search", bound)

"""Numerical invariants of higher-rank Ulrich bundles.

Riemann-Roch pins down c1.H and c2 for an Ulrich bundle of rank r; the rest
of this module is the dimension bookkeeping behind the extension
construction of stable Ulrich bundles for H = Delta.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from fractions import Fraction
from math import ceil
from typing import Sequence

from .errors import ChainStuckError, InvalidClassError, NonPositiveSquareError
from .intlin import Mapper, orthogonal_complement, parity_coset, vectors_in_window
from .lattice import E, DivisorClass, canonical_orbit_form, fano_delta, orbit_form_coeffs
from .ulrich import enumerate_ulrich_lines, is_ulrich_line


@dataclass(frozen=True)
class ChernData:
    rank: int
    c1: DivisorClass
    c2: int

    def to_json(self) -> dict:
        return {"rank": self.rank, "c1": self.c1.to_json(), "c2": self.c2}


def required_c1_dot_H(r: int, H: DivisorClass) -> int:
    # H^2 is even, so 3 r H^2 / 2 is an integer
    return 3 * r * H.square() // 2


def c2_of(r: int, H: DivisorClass, c1: DivisorClass) -> int:
    return c1.square() // 2 - (H.square() - 1) * r


def g_norm_window(r: int, H: DivisorClass) -> tuple[int, int]:
    """Allowed range of (2 c1 - 3 r H)^2."""
    h2 = H.square()
    return 8 * (h2 - 1) * r - 9 * r * r * h2, 0


def admissible_chern_search(
    r: int, H: DivisorClass, mapper: Mapper | None = None, limit: int = 0
) -> tuple[list[ChernData], bool]:
    """All (c1, c2) passing the Riemann-Roch and c2 >= 0 constraints.

    G = 2 c1 - 3 r H ranges over the complement of H with G^2 in
    :func:`g_norm_window` (the lower end is exactly c2 >= 0).  For r = 1 the
    bundle is a line bundle, so c2 must vanish and only those classes are
    kept.  With ``limit`` > 0 the search stops after that many lattice
    vectors; the flag returned is False when it did.
    """
    h2 = H.square()
    if h2 <= 0:
        raise NonPositiveSquareError(f"H^2 = {h2} must be positive")
    if r < 1:
        raise ValueError("rank must be positive")
    lat = orthogonal_complement(H)
    shift = 3 * r * H
    par = parity_coset(lat, shift)
    if par is None:
        return [], True
    lo, _ = g_norm_window(r, H)
    vecs = vectors_in_window(lat, lo, parity=par, mapper=mapper, limit=limit)
    complete = not limit or len(vecs) < limit
    out = []
    for v in vecs:
        c1 = (lat.combine(v) + shift).halve()
        c2 = c2_of(r, H, c1)
        if c2 < 0 or (r == 1 and c2 != 0):
            continue
        out.append(ChernData(r, c1, c2))
    out.sort(key=lambda c: tuple(-x for x in c.c1.t))
    return out, complete


def enumerate_admissible_chern(
    r: int, H: DivisorClass, mapper: Mapper | None = None
) -> list[ChernData]:
    """Complete list from :func:`admissible_chern_search`.

    The count grows quickly with r (already tens of millions for r = 2 and
    H = Delta); use the search function with a limit for exploration.
    """
    return admissible_chern_search(r, H, mapper)[0]


def moduli_dim(r: int, c1: DivisorClass) -> int:
    return c1.square() - 19 * r * r + 1


def ext1_dim(rank_F: int, c1_F: DivisorClass, D: DivisorClass) -> int:
    """-chi(F, O(D)) = c1(F).D - 19 rk(F).

    Equals ext^1 only under hypotheses that cannot be checked numerically
    (F and O(D) stable, non-isomorphic, of equal slope, O(D) != F(K)).
    """
    return c1_F.dot(D) - 19 * rank_F


@dataclass(frozen=True)
class InductionReport:
    rank: int
    slope_ok: bool
    ext1: int
    hodge_bound: int
    hodge_ok: bool
    printed_bound: Fraction
    printed_bound_ok: bool
    ext_locus_dim: int
    modular_dim: int
    strict: bool

    def to_json(self) -> dict:
        out = asdict(self)
        out["printed_bound"] = str(self.printed_bound)
        return out


def induction_step_report(
    rank_F: int, c1_F: DivisorClass, D: DivisorClass, H: DivisorClass
) -> InductionReport:
    """Numbers attached to extensions 0 -> O(D) -> E -> F -> 0.

    ``hodge_bound`` is the ceiling of c1_F^2/(2 rk) + rk D^2/2, which follows
    from (c1_F - rk D)^2 <= 0; ``printed_bound`` is the same expression with
    rk D^2 in place of rk D^2/2, kept for comparison only.
    """
    r = rank_F + 1
    dot = c1_F.dot(D)
    c1sq = c1_F.square()
    d2 = D.square()
    exact = Fraction(c1sq, 2 * rank_F) + Fraction(d2 * rank_F, 2)
    printed = Fraction(c1sq, 2 * rank_F) + d2 * rank_F
    ext1 = ext1_dim(rank_F, c1_F, D)
    ext_locus = c1sq + dot - 19 * r * r + 19 * r
    modular = (c1_F + D).square() - 19 * r * r + 1
    hb = ceil(exact)
    return InductionReport(
        rank=r,
        slope_ok=c1_F.dot(H) == rank_F * D.dot(H),
        ext1=ext1,
        hodge_bound=hb,
        hodge_ok=dot >= hb,
        printed_bound=printed,
        printed_bound_ok=dot >= printed,
        ext_locus_dim=ext_locus,
        modular_dim=modular,
        strict=modular > ext_locus,
    )


def wild_family(r: int) -> tuple[DivisorClass, int]:
    """c1 = 3k Delta + eps (E7 + E8 + E9 + 2 E10) for r = 2k + eps, and its dimension."""
    if r < 1:
        raise ValueError("rank must be positive")
    k, eps = divmod(r, 2)
    c1 = 3 * k * fano_delta() + eps * (E(7) + E(8) + E(9) + 2 * E(10))
    dim = 14 * k * k + 14 * k * eps - eps * eps + 1
    if dim != moduli_dim(r, c1):
        raise AssertionError(f"dimension formula disagrees with c1^2 - 19r^2 + 1 at r={r}")
    return c1, dim


def decompose_into_ulrich_semigroup(
    c1: DivisorClass,
    H: DivisorClass,
    max_depth: int = 8,
    solutions: Sequence | None = None,
) -> list[DivisorClass] | None:
    """Write c1 as a sum of Ulrich classes for H, or return None.

    Every Ulrich class has D.H = 3H^2/2, which fixes the number of summands.
    Summands are chosen in the enumeration order (non-decreasing index).
    """
    h2 = H.square()
    if h2 <= 0:
        raise NonPositiveSquareError(f"H^2 = {h2} must be positive")
    slope = 3 * h2 // 2
    m, rem = divmod(c1.dot(H), slope)
    if rem or m < 1 or m > max_depth:
        return None
    sols = solutions if solutions is not None else enumerate_ulrich_lines(H)
    classes = [s.D for s in sols]
    index = {d: i for i, d in enumerate(classes)}

    def rec(rest, parts, start):
        if parts == 1:
            i = index.get(rest)
            return [rest] if i is not None and i >= start else None
        for i in range(start, len(classes)):
            found = rec(rest - classes[i], parts - 1, i)
            if found is not None:
                return [classes[i]] + found
        return None

    return rec(c1, m, 0)


@dataclass
class ChainReport:
    rank: int
    partners: list[DivisorClass]
    steps: list[InductionReport]
    c1: DivisorClass
    dim: int
    hypothesis_violations: list[int]

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "partners": [d.to_json() for d in self.partners],
            "steps": [s.to_json() for s in self.steps],
            "c1": self.c1.to_json(),
            "dim": self.dim,
            "hypothesis_violations": self.hypothesis_violations,
        }


def build_stable_chain(
    r: int, partners: Sequence[DivisorClass] | None = None, H: DivisorClass | None = None
) -> ChainReport:
    """Iterated extensions of Ulrich line classes up to rank r.

    With ``partners`` given they are used as D(1), ..., D(r) (and must be
    Ulrich); otherwise D(1) is the first Ulrich class in enumeration order and
    each later D(i) is the first class whose extension group is nonzero.
    The running c1 is checked against c1^2 >= 19 rk^2 - 1 at every step.
    """
    H = fano_delta() if H is None else H
    if r < 1:
        raise ValueError("rank must be positive")
    if partners is not None:
        partners = list(partners)
        if len(partners) != r:
            raise InvalidClassError(f"need {r} partner classes, got {len(partners)}")
        bad = [str(d) for d in partners if not is_ulrich_line(d, H)]
        if bad:
            raise InvalidClassError(f"not Ulrich for {H}: {', '.join(bad)}")
        pool = None
    else:
        pool = [s.D for s in enumerate_ulrich_lines(H)]
        partners = [pool[0]]
    c1 = partners[0]
    steps: list[InductionReport] = []
    violations = []
    if c1.square() < 19 - 1:
        violations.append(1)
    for rk in range(1, r):
        if pool is None:
            D = partners[rk]
        else:
            D = next((d for d in pool if ext1_dim(rk, c1, d) > 0), None)
            if D is None:
                raise ChainStuckError(
                    f"no Ulrich partner with positive ext1 at rank {rk}",
                    {"rank": rk, "c1": c1.to_json()},
                )
            partners.append(D)
        rep = induction_step_report(rk, c1, D, H)
        if rep.ext1 <= 0:
            raise ChainStuckError(
                f"partner {D} has ext1 = {rep.ext1} at rank {rk}",
                {"rank": rk, "c1": c1.to_json(), "D": D.to_json()},
            )
        steps.append(rep)
        c1 = c1 + D
        if c1.square() < 19 * (rk + 1) ** 2 - 1:
            violations.append(rk + 1)
    return ChainReport(r, partners, steps, c1, moduli_dim(r, c1), violations)


def chern_table_rows(data: Sequence[ChernData]) -> list[list]:
    """CSV rows (r, c1 orbit form, c2, dim)."""
    return [
        [c.rank, " ".join(map(str, orbit_form_coeffs(canonical_orbit_form(c.c1)))), c.c2,
         moduli_dim(c.rank, c.c1)]
        for c in data
    ]

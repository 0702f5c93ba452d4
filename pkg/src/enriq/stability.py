"""Lattice side of the stability argument for the cotangent bundle.

A destabilising line subbundle O(D) of the cotangent bundle would have
D.Delta = 0, i.e. D = sum a_i E_i with integer a_i summing to zero.  The
argument needs three indices t with (2E_t - D)^2 < 0.
"""

from __future__ import annotations

import time
from typing import Sequence

from . import kernels
from .errors import NegativeInputError, NonZeroSumError, ZeroClassError
from .intlin import Mapper
from .lattice import E, DivisorClass, fano_delta

N = 10


def _check_zero_sum(a: Sequence[int]) -> tuple[int, ...]:
    a = tuple(int(x) for x in a)
    if len(a) != N:
        raise ValueError(f"expected {N} coefficients")
    if sum(a):
        raise NonZeroSumError(f"coefficients {a} do not sum to zero")
    return a


def cotangent_classes() -> dict[str, DivisorClass]:
    """The twists Delta - 2E_i (i = 1, 2, 3) and Delta - 2E_1 - 2E_2 - 2E_3."""
    d = fano_delta()
    out = {f"Delta-2E{i}": d - 2 * E(i) for i in (1, 2, 3)}
    out["Delta-2E1-2E2-2E3"] = d - 2 * E(1) - 2 * E(2) - 2 * E(3)
    return out


def verify_cotangent_ulrich_classes() -> dict:
    """Squares of the twisted resolution terms; all must be -2 (acyclic)."""
    squares = {name: c.square() for name, c in cotangent_classes().items()}
    # squares are even functions, so the Serre-dual twists -(...) agree
    mirrored = {f"-({name})": (-c).square() for name, c in cotangent_classes().items()}
    return {
        "squares": squares,
        "mirrored": mirrored,
        "all_minus_two": all(v == -2 for v in list(squares.values()) + list(mirrored.values())),
    }


def square_2Et_minus_D(a: Sequence[int], t: int) -> int:
    """(2E_t - D)^2 = 4 a_t - sum a_i^2 for a zero-sum integer class D."""
    a = _check_zero_sum(a)
    if not 1 <= t <= N:
        raise ValueError(f"index {t} out of range 1..{N}")
    return 4 * a[t - 1] - sum(x * x for x in a)


def bad_set(a: Sequence[int]) -> list[int]:
    """Indices t (1-based) with (2E_t - D)^2 >= 0."""
    a = _check_zero_sum(a)
    sq = sum(x * x for x in a)
    return [t for t in range(1, N + 1) if 4 * a[t - 1] >= sq]


def witness_triple(a: Sequence[int]) -> tuple[bool, tuple[int, ...]]:
    """(True, (i, j, k)) for the first three zero coordinates, else
    (False, indices of the nonzero coordinates) as a certificate."""
    a = _check_zero_sum(a)
    if not any(a):
        raise ZeroClassError("D must be nonzero")
    zeros = [i + 1 for i, x in enumerate(a) if x == 0]
    if len(zeros) >= 3:
        return True, tuple(zeros[:3])
    return False, tuple(i + 1 for i, x in enumerate(a) if x != 0)


def _scan_task(args):
    bound, firsts = args
    return kernels.zero_sum_scan(N, bound, firsts)


def _merge(parts: list[dict], cap: int = 100) -> dict:
    out = {
        "checked": 0,
        "bad_nonempty": 0,
        "few_zero_empty_bad": 0,
        "n_claim_i": 0,
        "n_claim_ii": 0,
        "n_witness_fail": 0,
        "claim_i": [],
        "claim_ii": [],
        "witness_fail": [],
    }
    for p in parts:
        for key in ("checked", "bad_nonempty", "few_zero_empty_bad", "n_claim_i", "n_claim_ii",
                    "n_witness_fail"):
            out[key] += p[key]
        for key in ("claim_i", "claim_ii", "witness_fail"):
            out[key].extend(p[key])
    for key in ("claim_i", "claim_ii", "witness_fail"):
        out[key] = sorted(out[key])[:cap]
    return out


def stability_scan(bound: int, mapper: Mapper | None = None) -> dict:
    """Exhaustive check over nonzero zero-sum a with |a_i| <= bound.

    Whenever the bad set is nonempty, verifies that at most five a_i are
    nonzero, that every bad index has a_t >= 1, and that a witness triple
    exists.  Vectors with fewer than three zeros but an empty bad set are
    only counted (the argument never needs a triple for them).
    """
    if bound < 1:
        raise NegativeInputError("bound must be at least 1")
    start = time.perf_counter()
    firsts = [[x] for x in range(-bound, bound + 1)]
    tasks = [(bound, f) for f in firsts]
    if mapper is None:
        parts = [_scan_task(t) for t in tasks]
    else:
        parts = list(mapper(_scan_task, tasks))
    stats = _merge(parts)
    violations = (
        [{"claim": "at-most-5-nonzero", "a": list(v)} for v in stats["claim_i"]]
        + [{"claim": "bad-index-positive", "a": list(v)} for v in stats["claim_ii"]]
        + [{"claim": "witness-triple", "a": list(v)} for v in stats["witness_fail"]]
    )
    return {
        "bound": bound,
        "checked": stats["checked"],
        "bad_set_nonempty": stats["bad_nonempty"],
        "violation_counts": {
            "at-most-5-nonzero": stats["n_claim_i"],
            "bad-index-positive": stats["n_claim_ii"],
            "witness-triple": stats["n_witness_fail"],
        },
        "violations": violations,
        "few_zeros_empty_bad_set": stats["few_zero_empty_bad"],
        "elapsed_ms": round((time.perf_counter() - start) * 1000),
    }

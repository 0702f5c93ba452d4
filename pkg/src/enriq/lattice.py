"""Exact arithmetic in Num(Y) = U + E8(-1), presented on the classes E1..E10.

A class sum(a_i E_i) has a_i in (1/3)Z with all a_i congruent modulo Z, and
E_i.E_j = 1 - delta_ij.  We store the tripled coordinates t_i = 3 a_i, which
are integers that are pairwise congruent modulo 3.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import CongruenceParseError, InvalidClassError, ParseError, VerificationError

RANK = 10


def _check_t(t: Sequence[int]) -> tuple[int, ...]:
    if type(t) is tuple and len(t) == RANK and all(type(x) is int for x in t):
        r = t[0] % 3
        if all(x % 3 == r for x in t):
            return t
    if len(t) != RANK:
        raise InvalidClassError(f"expected {RANK} coordinates, got {len(t)}")
    out = []
    for x in t:
        if isinstance(x, bool) or int(x) != x:
            raise InvalidClassError(f"tripled coordinate {x!r} is not an integer")
        out.append(int(x))
    r = out[0] % 3
    if any(x % 3 != r for x in out):
        raise InvalidClassError(
            f"coordinates {out} are not congruent mod 3 (need a_i - a_j in Z)"
        )
    return tuple(out)


@dataclass(frozen=True, slots=True)
class DivisorClass:
    """Element of the lattice, stored as tripled E-coordinates."""

    t: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "t", _check_t(self.t))

    @classmethod
    def from_coeffs(cls, coeffs: Iterable) -> "DivisorClass":
        """Build from the E-coefficients a_i (ints or Fractions with denominator 3)."""
        t = []
        for a in coeffs:
            x = Fraction(a) * 3
            if x.denominator != 1:
                raise InvalidClassError(f"coefficient {a} is not in (1/3)Z")
            t.append(int(x))
        return cls(tuple(t))

    @classmethod
    def _raw(cls, t: tuple[int, ...]) -> "DivisorClass":
        # for results of lattice operations, which are valid by construction
        obj = object.__new__(cls)
        object.__setattr__(obj, "t", t)
        return obj

    @classmethod
    def zero(cls) -> "DivisorClass":
        return cls((0,) * RANK)

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, 3) for x in self.t)

    @property
    def is_integral(self) -> bool:
        """True when every a_i is an integer."""
        return self.t[0] % 3 == 0

    def is_zero(self) -> bool:
        return not any(self.t)

    def __add__(self, other):
        if not isinstance(other, DivisorClass):
            return NotImplemented
        return DivisorClass._raw(tuple(a + b for a, b in zip(self.t, other.t)))

    def __sub__(self, other):
        if not isinstance(other, DivisorClass):
            return NotImplemented
        return DivisorClass._raw(tuple(a - b for a, b in zip(self.t, other.t)))

    def __neg__(self):
        return DivisorClass._raw(tuple(-a for a in self.t))

    def __mul__(self, k):
        if isinstance(k, bool) or not isinstance(k, int):
            return NotImplemented
        return DivisorClass._raw(tuple(k * a for a in self.t))

    __rmul__ = __mul__

    def halve(self) -> "DivisorClass":
        """Return x with 2x = self; raises if self is not in 2*Lambda."""
        if any(a % 2 for a in self.t):
            raise InvalidClassError(f"{format_divisor(self)} is not divisible by 2")
        return DivisorClass._raw(tuple(a // 2 for a in self.t))

    def is_divisible_by_two(self) -> bool:
        # halving keeps the mod-3 congruence since 2 is a unit mod 3
        return not any(a % 2 for a in self.t)

    def dot(self, other: "DivisorClass") -> int:
        return pairing(self, other)

    def square(self) -> int:
        return pairing(self, self)

    def to_json(self) -> dict:
        return {"t": list(self.t), "pretty": format_divisor(self)}

    def __str__(self):
        return format_divisor(self)


def pairing(x: DivisorClass, y: DivisorClass) -> int:
    """Intersection number of two classes."""
    sx = sum(x.t)
    sy = sum(y.t)
    num = sx * sy - sum(a * b for a, b in zip(x.t, y.t))
    q, rem = divmod(num, 9)
    if rem:
        raise VerificationError(f"inexact pairing {num}/9 for {x.t}, {y.t}")
    return q


def E(i: int) -> DivisorClass:
    """The class E_i, 1 <= i <= 10."""
    if not 1 <= i <= RANK:
        raise InvalidClassError(f"E index {i} out of range 1..{RANK}")
    t = [0] * RANK
    t[i - 1] = 3
    return DivisorClass(tuple(t))


def fano_delta() -> DivisorClass:
    return DivisorClass((1,) * RANK)


def basis_of_lambda() -> list[DivisorClass]:
    """A Z-basis of the lattice: E1, ..., E9, Delta."""
    return [E(i) for i in range(1, RANK)] + [fano_delta()]


def to_basis_coords(d: DivisorClass) -> tuple[int, ...]:
    """Coordinates of ``d`` in the basis returned by :func:`basis_of_lambda`."""
    # the E10 coefficient comes from Delta alone
    c10 = d.t[-1]
    return tuple((x - c10) // 3 for x in d.t[:-1]) + (c10,)


def from_basis_coords(c: Sequence[int]) -> DivisorClass:
    if len(c) != RANK:
        raise InvalidClassError(f"expected {RANK} basis coordinates, got {len(c)}")
    c10 = int(c[-1])
    return DivisorClass(tuple(3 * int(x) + c10 for x in c[:-1]) + (c10,))


def gram_matrix(classes: Sequence[DivisorClass]) -> list[list[int]]:
    return [[pairing(a, b) for b in classes] for a in classes]


def canonical_orbit_form(d: DivisorClass) -> DivisorClass:
    """Representative of the orbit under permutations of the E_i."""
    return DivisorClass(tuple(sorted(d.t, reverse=True)))


def orbit_form_coeffs(d: DivisorClass) -> list:
    """Sorted E-coefficients, as ints when integral and 'p/3' strings otherwise."""
    out = []
    for x in sorted(d.t, reverse=True):
        f = Fraction(x, 3)
        out.append(int(f) if f.denominator == 1 else f"{f.numerator}/3")
    return out


# -- text form ---------------------------------------------------------------


def _fmt_term(x: int, name: str) -> str:
    """|x|/3 times name, for tripled coordinate x != 0."""
    n = abs(x)
    if n % 3:
        return f"{n}/3{name}"
    n //= 3
    return name if n == 1 else f"{n}{name}"


def format_divisor(d: DivisorClass) -> str:
    """Render as e.g. ``2E1+E2-E10`` or ``5/3E1+2/3E2-1/3E5``."""
    parts = []
    for i, x in enumerate(d.t, start=1):
        if x == 0:
            continue
        body = _fmt_term(x, f"E{i}")
        if x < 0:
            parts.append("-" + body)
        else:
            parts.append(("+" if parts else "") + body)
    return "".join(parts) if parts else "0"


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message, *expected):
        raise ParseError(message, self.pos, expected)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def integer(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("missing integer", "integer")
        return int(self.text[start : self.pos])

    def term(self) -> list[Fraction]:
        coef = None
        if self.peek().isdigit():
            coef = Fraction(self.integer())
            if self.peek() == "/":
                self.pos += 1
                at = self.pos
                if self.peek().isdigit() and self.integer() == 3:
                    coef /= 3
                else:
                    self.pos = at
                    self.error("only thirds are allowed as denominators", "'3'")
            if self.peek() == "*":
                self.pos += 1
                if not self.peek() or self.peek() not in "ED":
                    self.error("dangling '*'", "'E<n>'", "'Delta'")
        ch = self.peek()
        vec = [Fraction(0)] * RANK
        if ch == "E":
            self.pos += 1
            at = self.pos
            if not self.peek().isdigit():
                self.error("missing index after 'E'", "integer 1..10")
            idx = self.integer()
            if not 1 <= idx <= RANK:
                self.pos = at
                self.error(f"index E{idx} out of range", "integer 1..10")
            vec[idx - 1] = Fraction(1)
        elif self.text.startswith("Delta", self.pos):
            self.pos += len("Delta")
            vec = [Fraction(1, 3)] * RANK
        elif coef is not None:
            if coef != 0:
                self.error("a bare constant term must be 0", "'E<n>'", "'Delta'")
            return vec
        else:
            self.error("unexpected input", "integer", "'E<n>'", "'Delta'")
        c = Fraction(1) if coef is None else coef
        return [c * v for v in vec]

    def expr(self) -> DivisorClass:
        total = [Fraction(0)] * RANK
        sign = 1
        if self.peek() in ("+", "-") and self.peek():
            sign = -1 if self.peek() == "-" else 1
            self.pos += 1
        while True:
            term = self.term()
            total = [a + sign * b for a, b in zip(total, term)]
            ch = self.peek()
            if not ch:
                break
            if ch not in "+-":
                self.error("unexpected character", "'+'", "'-'", "end of input")
            sign = -1 if ch == "-" else 1
            self.pos += 1
        return DivisorClass.from_coeffs(total)


def parse_divisor(text: str) -> DivisorClass:
    """Parse expressions such as ``3Delta - E10`` or ``2E1+E2+E3+E4``.

    Grammar (whitespace ignored; a leading sign is also accepted)::

        expr := term (('+'|'-') term)*
        term := [coef ['*']] atom | coef
        atom := 'E' int(1..10) | 'Delta'
        coef := int | int '/3'
    """
    if not text.strip():
        raise ParseError("empty expression", 0, ("integer", "'E<n>'", "'Delta'"))
    parser = _Parser(text)
    try:
        return parser.expr()
    except InvalidClassError as exc:
        if isinstance(exc, ParseError):
            raise
        raise CongruenceParseError(str(exc), 0, ("coefficients whose thirds agree",)) from None

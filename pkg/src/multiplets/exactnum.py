"""Exact arithmetic for real amplitudes of the form sign * sqrt(p/q).

Every amplitude in a coupled-basis expansion is a single product of
Clebsch-Gordan coefficients, hence a signed square root of a rational.
This module provides that one value type. Sums are closed only when the
operands are rational multiples of the same radical; anything else raises
:class:`NotClosedError`, which callers treat as a cue to drop to floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

__all__ = ["NotClosedError", "SignedRadical", "radical_sum"]


class NotClosedError(ArithmeticError):
    """The exact result is not of the form sign * sqrt(p/q)."""


def _squarefree_split(n: int) -> tuple[int, int]:
    """Write n >= 1 as s*s*d with d squarefree; return (s, d)."""
    s, d = 1, 1
    m = n
    f = 2
    while f * f <= m:
        if m % f == 0:
            e = 0
            while m % f == 0:
                m //= f
                e += 1
            s *= f ** (e // 2)
            if e % 2:
                d *= f
        f += 1
    return s, d * m  # leftover m is 1 or a prime with exponent 1


def _is_square(r: Fraction) -> bool:
    p, q = r.numerator, r.denominator
    return math.isqrt(p) ** 2 == p and math.isqrt(q) ** 2 == q


@dataclass(frozen=True)
class SignedRadical:
    """The exact real number ``sign * sqrt(radicand)``.

    ``sign`` is -1, 0 or +1 and ``radicand`` is a non-negative rational.
    ``Fraction`` keeps the radicand in lowest terms with a positive
    denominator, and the zero value is canonically (0, 0), so equality
    and hashing are structural.
    """

    sign: int
    radicand: Fraction

    def __post_init__(self) -> None:
        if self.sign not in (-1, 0, 1):
            raise ValueError(f"sign must be -1, 0 or +1, got {self.sign!r}")
        if not isinstance(self.radicand, Fraction):
            object.__setattr__(self, "radicand", Fraction(self.radicand))
        if self.radicand < 0:
            raise ValueError(f"radicand must be non-negative, got {self.radicand}")
        if (self.sign == 0) != (self.radicand == 0):
            raise ValueError("sign is zero exactly when the radicand is zero")

    @classmethod
    def zero(cls) -> "SignedRadical":
        return cls(0, Fraction(0))

    @classmethod
    def one(cls) -> "SignedRadical":
        return cls(1, Fraction(1))

    @classmethod
    def sqrt(cls, radicand: Fraction | int, sign: int = 1) -> "SignedRadical":
        """sign * sqrt(radicand) for a non-negative rational radicand."""
        radicand = Fraction(radicand)
        if radicand == 0:
            return cls.zero()
        return cls(sign, radicand)

    @classmethod
    def from_rational(cls, value: Fraction | int) -> "SignedRadical":
        """The rational ``value`` itself, stored as sign * sqrt(value**2)."""
        value = Fraction(value)
        if value == 0:
            return cls.zero()
        return cls(1 if value > 0 else -1, value * value)

    def __bool__(self) -> bool:
        return self.sign != 0

    def __neg__(self) -> "SignedRadical":
        return SignedRadical(-self.sign, self.radicand)

    def __mul__(self, other: "SignedRadical") -> "SignedRadical":
        if not isinstance(other, SignedRadical):
            return NotImplemented
        sign = self.sign * other.sign
        if sign == 0:
            return SignedRadical.zero()
        return SignedRadical(sign, self.radicand * other.radicand)

    def __add__(self, other: "SignedRadical") -> "SignedRadical":
        if not isinstance(other, SignedRadical):
            return NotImplemented
        return radical_sum((self, other))

    def __sub__(self, other: "SignedRadical") -> "SignedRadical":
        if not isinstance(other, SignedRadical):
            return NotImplemented
        return radical_sum((self, -other))

    def squared(self) -> Fraction:
        """The exact square; equals the radicand for any valid value."""
        return self.radicand

    def canonical(self) -> tuple[Fraction, int]:
        """Rewrite as coefficient * sqrt(d) with d squarefree.

        Returns (coefficient, d); zero is (0, 0). Two radicals can be
        added exactly iff their d values agree (or either is zero).
        """
        if self.sign == 0:
            return Fraction(0), 0
        p, q = self.radicand.numerator, self.radicand.denominator
        s, d = _squarefree_split(p * q)
        return Fraction(self.sign * s, q), d

    def is_rational(self) -> bool:
        return self.sign == 0 or _is_square(self.radicand)

    def as_rational(self) -> Fraction:
        """Exact rational value; raises NotClosedError when irrational."""
        if self.sign == 0:
            return Fraction(0)
        if not _is_square(self.radicand):
            raise NotClosedError(f"{self} is irrational")
        p, q = self.radicand.numerator, self.radicand.denominator
        return Fraction(self.sign * math.isqrt(p), math.isqrt(q))

    def to_float(self) -> float:
        """Nearest double; exact whenever the radicand is a perfect square."""
        if self.sign == 0:
            return 0.0
        if _is_square(self.radicand):
            return float(self.as_rational())
        return self.sign * math.sqrt(float(self.radicand))

    def to_json_dict(self) -> dict:
        """JSON form {"sign": s, "num": "p", "den": "q"} for sign*sqrt(p/q)."""
        return {
            "sign": self.sign,
            "num": str(self.radicand.numerator),
            "den": str(self.radicand.denominator),
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "SignedRadical":
        try:
            sign = int(data["sign"])
            num = int(data["num"])
            den = int(data["den"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed radical {data!r}") from exc
        return cls(sign, Fraction(num, den))

    def __str__(self) -> str:
        if self.sign == 0:
            return "0"
        prefix = "-" if self.sign < 0 else ""
        if _is_square(self.radicand):
            return prefix + str(abs(self.as_rational()))
        return f"{prefix}sqrt({self.radicand})"

    def __repr__(self) -> str:
        return f"SignedRadical({self.sign}, {self.radicand!r})"


def radical_sum(terms: Iterable[SignedRadical]) -> SignedRadical:
    """Exact sum of radicals, or NotClosedError if it leaves the domain.

    Terms are grouped by squarefree kernel and the rational coefficients
    are summed per group, so orderings that would trip a pairwise add
    (e.g. sqrt(2) + sqrt(3) - sqrt(3) - sqrt(2)) still sum exactly.
    """
    groups: dict[int, Fraction] = {}
    for term in terms:
        coeff, kernel = term.canonical()
        if kernel == 0:
            continue
        total = groups.get(kernel, Fraction(0)) + coeff
        if total == 0:
            groups.pop(kernel, None)
        else:
            groups[kernel] = total
    if not groups:
        return SignedRadical.zero()
    if len(groups) > 1:
        parts = ", ".join(f"{c}*sqrt({d})" for d, c in sorted(groups.items()))
        raise NotClosedError(f"sum is not a single radical: {parts}")
    (kernel, coeff), = groups.items()
    sign = 1 if coeff > 0 else -1
    return SignedRadical(sign, coeff * coeff * kernel)

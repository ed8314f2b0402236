"""Negative (ceiling-based) continued fraction expansions.

A rational x > 1 has a unique expansion

    x = a0 - 1/(a1 - 1/(a2 - ... - 1/ak))

with every ai >= 2.  These expansions drive two things elsewhere in the
package: converting a rationally framed surgery curve into a chain of
integrally framed curves, and reading off stabilization budgets for
Legendrian realizations of negative contact surgeries.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable


@dataclass(frozen=True)
class NegCF:
    """Expansion terms, outermost first.  All terms >= 2."""

    terms: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.terms:
            raise ValueError("empty expansion")
        for a in self.terms:
            if a < 2:
                raise ValueError(f"term {a} < 2")

    def __len__(self) -> int:
        return len(self.terms)

    def value(self) -> Fraction:
        return neg_cf_value(self.terms)


def neg_cf_expand(x: Fraction | int) -> NegCF:
    """Expand a rational x > 1 into its negative continued fraction.

    Each step takes the ceiling and recurses on 1/(ceil(x) - x); since
    0 < ceil(x) - x < 1 at every step where the remainder is nonzero,
    every term from the second on is >= 2, and x > 1 forces the first
    term >= 2 as well.  Denominators strictly decrease, so this always
    terminates.
    """
    x = Fraction(x)
    if x <= 1:
        raise ValueError(f"need x > 1, got {x}")
    terms: list[int] = []
    while True:
        a = math.ceil(x)
        terms.append(a)
        if x == a:
            return NegCF(tuple(terms))
        x = 1 / (a - x)


def neg_cf_value(terms: Iterable[int]) -> Fraction:
    """Evaluate a0 - 1/(a1 - 1/(... - 1/ak)) exactly."""
    seq = list(terms)
    if not seq:
        raise ValueError("empty expansion")
    acc = Fraction(seq[-1])
    for a in reversed(seq[:-1]):
        if acc == 0:
            raise ValueError("division by zero while folding expansion")
        acc = a - Fraction(1, 1) / acc
    return acc


def parse_rational(text: str) -> Fraction:
    """Strict 'p' or 'p/q' with q > 0 written in digits, no spaces inside."""
    m = re.fullmatch(r"(-?\d+)(?:/(\d+))?", text.strip())
    if not m:
        raise ValueError(f"bad rational {text!r}")
    p = int(m.group(1))
    q = int(m.group(2)) if m.group(2) else 1
    if q == 0:
        raise ValueError("zero denominator")
    return Fraction(p, q)


def format_rational(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

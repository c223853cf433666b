"""Polynomials in q with half-integer exponents and nonnegative integer coefficients."""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import lru_cache

DEN = 2


def _num(exponent) -> int:
    e = Fraction(exponent) * DEN
    if e.denominator != 1:
        raise ValueError(f"exponent {exponent} is not a multiple of 1/{DEN}")
    return int(e)


class QPoly:
    """Sum of coeff * q^(num / 2); zero coefficients are never stored."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @staticmethod
    def monomial(exponent=0, coeff: int = 1) -> "QPoly":
        return QPoly({_num(exponent): coeff})

    @staticmethod
    def from_exponents(exponents) -> "QPoly":
        return QPoly(Counter(_num(e) for e in exponents))

    def __add__(self, other: "QPoly") -> "QPoly":
        out = Counter(self.terms)
        out.update(other.terms)
        return QPoly(out)

    def __mul__(self, other: "QPoly") -> "QPoly":
        out = Counter()
        for a, x in self.terms.items():
            for b, y in other.terms.items():
                out[a + b] += x * y
        return QPoly(out)

    def __eq__(self, other) -> bool:
        return isinstance(other, QPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def stretch(self, factor) -> "QPoly":
        """Substitute q -> q^factor."""
        return QPoly({_num(Fraction(k, DEN) * factor): v for k, v in self.terms.items()})

    def at_one(self) -> int:
        return sum(self.terms.values())

    def items(self) -> list[tuple[Fraction, int]]:
        return [(Fraction(k, DEN), v) for k, v in sorted(self.terms.items())]

    def to_json(self) -> dict:
        return {"den": DEN, "terms": [[k, v] for k, v in sorted(self.terms.items())]}

    @staticmethod
    def from_json(data: dict) -> "QPoly":
        if data.get("den", DEN) != DEN:
            raise ValueError("unsupported denominator")
        return QPoly({k: v for k, v in data["terms"]})

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.items():
            mono = "1" if e == 0 else ("q" if e == 1 else f"q^{e}")
            parts.append(mono if c == 1 else (f"{c}" if e == 0 else f"{c}*{mono}"))
        return " + ".join(parts)


ZERO = QPoly()
ONE = QPoly.monomial(0)


@lru_cache(maxsize=None)
def _qbinom_coeffs(top: int, bottom: int) -> tuple:
    """Coefficients of the Gaussian binomial [top choose bottom] by the q-Pascal rule."""
    if bottom < 0 or bottom > top:
        return ()
    if bottom in (0, top):
        return (1,)
    left = _qbinom_coeffs(top - 1, bottom - 1)
    right = _qbinom_coeffs(top - 1, bottom)
    size = max(len(left), len(right) + bottom)
    out = [0] * size
    for k, c in enumerate(left):
        out[k] += c
    for k, c in enumerate(right):
        out[k + bottom] += c
    return tuple(out)


def qbinom(top: int, bottom: int, step=1) -> QPoly:
    """Gaussian binomial [top choose bottom] in the variable q^step."""
    return QPoly({_num(k * Fraction(step)): c for k, c in enumerate(_qbinom_coeffs(top, bottom))})

"""Dense integer polynomials with exact arithmetic.

Coefficients are stored lowest degree first with trailing zeros trimmed,
matching the usual generating-function conventions (f-polynomials,
Ehrhart polynomials, h*-numerators, Eulerian polynomials).
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Iterable

__all__ = ["IntPolynomial", "geometric_sum", "one_minus_z_power"]


class IntPolynomial:
    """Immutable integer polynomial, coefficients low degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable) -> None:
        cs = []
        for c in coeffs:
            if isinstance(c, Fraction):
                if c.denominator != 1:
                    raise ValueError(f"non-integer coefficient {c}")
                c = int(c)
            elif not isinstance(c, int):
                raise ValueError(f"non-integer coefficient {c!r}")
            cs.append(c)
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("IntPolynomial is immutable")

    @classmethod
    def zero(cls) -> "IntPolynomial":
        return cls([])

    @classmethod
    def one(cls) -> "IntPolynomial":
        return cls([1])

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> "IntPolynomial":
        return cls([0] * degree + [coeff])

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial at -1."""
        return len(self.coeffs) - 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __call__(self, t):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPolynomial(out)

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        out = list(self.coeffs) + [0] * max(0, len(other.coeffs) - len(self.coeffs))
        for i, c in enumerate(other.coeffs):
            out[i] -= c
        return IntPolynomial(out)

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        if not self or not other:
            return IntPolynomial.zero()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    def scaled(self, k: int) -> "IntPolynomial":
        return IntPolynomial([k * c for c in self.coeffs])

    def divide_exact(self, divisor: "IntPolynomial") -> "IntPolynomial":
        """Exact polynomial division; raises ValueError on any remainder."""
        if not divisor:
            raise ValueError("division by zero polynomial")
        rem = [Fraction(c) for c in self.coeffs]
        div = [Fraction(c) for c in divisor.coeffs]
        if len(rem) < len(div):
            if any(rem):
                raise ValueError("inexact polynomial division")
            return IntPolynomial.zero()
        out = [Fraction(0)] * (len(rem) - len(div) + 1)
        lead = div[-1]
        for k in reversed(range(len(out))):
            q = rem[k + len(div) - 1] / lead
            out[k] = q
            if q:
                for j, d in enumerate(div):
                    rem[k + j] -= q * d
        if any(rem):
            raise ValueError("inexact polynomial division")
        return IntPolynomial(out)

    def __eq__(self, other) -> bool:
        return isinstance(other, IntPolynomial) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"IntPolynomial({list(self.coeffs)})"

    def pretty(self, var: str = "t") -> str:
        """Human form, highest degree first, e.g. 't^2 + 6t + 6'."""
        if not self.coeffs:
            return "0"
        parts = []
        for d in reversed(range(len(self.coeffs))):
            c = self.coeffs[d]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if d == 0:
                term = str(mag)
            else:
                head = "" if mag == 1 else str(mag)
                term = f"{head}{var}" if d == 1 else f"{head}{var}^{d}"
            parts.append((sign, term))
        lead_sign, lead_term = parts[0]
        text = ("-" if lead_sign == "-" else "") + lead_term
        for sign, term in parts[1:]:
            text += f" {sign} {term}"
        return text


def geometric_sum(length: int) -> IntPolynomial:
    """1 + z + ... + z^(length-1)."""
    if length < 1:
        raise ValueError("length must be >= 1")
    return IntPolynomial([1] * length)


def one_minus_z_power(k: int) -> IntPolynomial:
    """(1 - z)^k expanded."""
    if k < 0:
        raise ValueError("negative power")
    return IntPolynomial([(-1) ** i * comb(k, i) for i in range(k + 1)])

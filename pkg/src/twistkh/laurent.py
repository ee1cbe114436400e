"""Exact integer Laurent polynomials in one variable."""

from __future__ import annotations

import re
from typing import Iterable, Mapping


class LaurentPolynomial:
    """Sparse Laurent polynomial with integer coefficients.

    Stored as ``{exponent: coefficient}`` without zero entries. ``var`` only
    affects printing and equality ignores it.
    """

    __slots__ = ("_coeffs", "var")

    def __init__(self, coeffs: Mapping[int, int] | None = None, var: str = "q"):
        self._coeffs = {int(e): int(c) for e, c in (coeffs or {}).items() if c}
        self.var = var

    @classmethod
    def monomial(cls, exponent: int, coefficient: int = 1, var: str = "q") -> "LaurentPolynomial":
        return cls({exponent: coefficient}, var)

    @classmethod
    def constant(cls, c: int, var: str = "q") -> "LaurentPolynomial":
        return cls({0: c}, var)

    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._coeffs)

    def terms(self) -> list[tuple[int, int]]:
        return sorted(self._coeffs.items())

    def is_zero(self) -> bool:
        return not self._coeffs

    def min_degree(self) -> int:
        return min(self._coeffs)

    def max_degree(self) -> int:
        return max(self._coeffs)

    def _wrap(self, other) -> "LaurentPolynomial":
        if isinstance(other, LaurentPolynomial):
            return other
        if isinstance(other, int):
            return LaurentPolynomial.constant(other, self.var)
        return NotImplemented

    def __add__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return other
        out = dict(self._coeffs)
        for e, c in other._coeffs.items():
            out[e] = out.get(e, 0) + c
        return LaurentPolynomial(out, self.var)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial({e: -c for e, c in self._coeffs.items()}, self.var)

    def __sub__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return other
        out: dict[int, int] = {}
        for e1, c1 in self._coeffs.items():
            for e2, c2 in other._coeffs.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPolynomial(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self._coeffs) != 1:
                raise ValueError("only monomials can be inverted")
            ((e, c),) = self._coeffs.items()
            if c not in (1, -1):
                raise ValueError("monomial coefficient must be a unit")
            return LaurentPolynomial({e * k: c ** (-k)}, self.var)
        result = LaurentPolynomial.constant(1, self.var)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPolynomial.constant(other)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(frozenset(self._coeffs.items()))

    def shift(self, k: int) -> "LaurentPolynomial":
        """Multiply by ``var**k``."""
        return LaurentPolynomial({e + k: c for e, c in self._coeffs.items()}, self.var)

    def divmod(self, divisor: "LaurentPolynomial") -> tuple["LaurentPolynomial", "LaurentPolynomial"]:
        """Divide by ``divisor`` after clearing both to ordinary polynomials.

        Writes ``self = q^a P`` and ``divisor = q^b D`` with ``P(0), D(0) != 0``
        and runs integer long division of ``P`` by ``D``.  The remainder is
        returned as ``q^a R``; it is zero iff the division is exact.
        """
        if divisor.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return LaurentPolynomial({}, self.var), LaurentPolynomial({}, self.var)
        a, b = self.min_degree(), divisor.min_degree()
        rem = {e - a: c for e, c in self._coeffs.items()}
        den = {e - b: c for e, c in divisor._coeffs.items()}
        dtop = max(den)
        lead = den[dtop]
        quot: dict[int, int] = {}
        while rem and max(rem) >= dtop:
            top = max(rem)
            if rem[top] % lead:
                break
            k = rem[top] // lead
            quot[top - dtop] = k
            for e, c in den.items():
                v = rem.get(e + top - dtop, 0) - k * c
                if v:
                    rem[e + top - dtop] = v
                else:
                    rem.pop(e + top - dtop, None)
        q = LaurentPolynomial(quot, self.var).shift(a - b)
        r = LaurentPolynomial(rem, self.var).shift(a)
        return q, r

    def substitute_square(self, image: "LaurentPolynomial") -> "LaurentPolynomial":
        """Replace ``var**2`` by ``image``; all exponents must be even."""
        out = LaurentPolynomial({}, image.var)
        for e, c in self._coeffs.items():
            if e % 2:
                raise ValueError(f"odd exponent {e} cannot be rewritten in {self.var}^2")
            out = out + (image ** (e // 2)) * c
        return out

    def __repr__(self):
        return f"LaurentPolynomial({self._coeffs!r}, var={self.var!r})"

    def __str__(self):
        if not self._coeffs:
            return "0"
        parts = []
        for e, c in self.terms():
            if e == 0:
                mono, body = "", str(abs(c))
            else:
                mono = self.var if e == 1 else f"{self.var}^{e}"
                body = mono if abs(c) == 1 else f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def to_json(self) -> dict[str, int]:
        return {str(e): c for e, c in self.terms()}

    @classmethod
    def from_json(cls, data: Mapping[str, int], var: str = "q") -> "LaurentPolynomial":
        return cls({int(e): c for e, c in data.items()}, var)

    @classmethod
    def parse(cls, text: str, var: str = "q") -> "LaurentPolynomial":
        """Inverse of ``str``: ``"q^-2 + 1 - 2*q^3"``."""
        text = text.replace(" ", "")
        if text in ("", "0"):
            return cls({}, var)
        if text[0] not in "+-":
            text = "+" + text
        term_re = re.compile(
            rf"([+-])(?:(\d+)(?:\*{var}(?:\^(-?\d+))?)?|{var}(?:\^(-?\d+))?)"
        )
        out: dict[int, int] = {}
        pos = 0
        for m in term_re.finditer(text):
            if m.start() != pos:
                raise ValueError(f"cannot parse polynomial near {text[pos:]!r}")
            pos = m.end()
            sign = -1 if m.group(1) == "-" else 1
            if m.group(2) is not None:
                c = int(m.group(2))
                if "*" in m.group(0):
                    e = int(m.group(3)) if m.group(3) is not None else 1
                else:
                    e = 0
            else:
                c = 1
                e = int(m.group(4)) if m.group(4) is not None else 1
            out[e] = out.get(e, 0) + sign * c
        if pos != len(text):
            raise ValueError(f"cannot parse polynomial near {text[pos:]!r}")
        return cls(out, var)


def q_plus_q_inverse(var: str = "q") -> LaurentPolynomial:
    return LaurentPolynomial({1: 1, -1: 1}, var)


def poly_sum(polys: Iterable[LaurentPolynomial], var: str = "q") -> LaurentPolynomial:
    total = LaurentPolynomial({}, var)
    for p in polys:
        total = total + p
    return total

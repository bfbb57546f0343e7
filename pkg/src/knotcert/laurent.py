"""Exact integer Laurent polynomials with half-integer exponents.

Exponents are stored doubled, so ``q^(1/2)`` has key ``1`` and ``q^3`` has
key ``6``.  Coefficients are Python ints (arbitrary precision).  Instances are
immutable and hashable.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping

MAX_DERIVATIVE_ORDER = 16

_TERM_RE = re.compile(
    r"\s*([+-])?\s*(\d+)?\s*\*?\s*(?:([A-Za-z])(?:\^\(?(-?\d+)(?:/(\d+))?\)?)?)?\s*"
)


class LaurentPoly:
    """Immutable Laurent polynomial ``sum c_k x^(k/2)`` over the integers."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, int] = {}
        for key, coeff in items:
            if not isinstance(key, int) or isinstance(key, bool):
                raise TypeError(f"doubled exponent must be int, got {key!r}")
            acc[key] = acc.get(key, 0) + int(coeff)
        self._terms = {k: c for k, c in sorted(acc.items()) if c}
        self._hash = None

    # construction ---------------------------------------------------------

    @classmethod
    def monomial(cls, exponent: int | Fraction = 0, coeff: int = 1) -> LaurentPoly:
        doubled = Fraction(exponent) * 2
        if doubled.denominator != 1:
            raise ValueError(f"exponent {exponent} is not a multiple of 1/2")
        return cls({int(doubled): coeff})

    @classmethod
    def constant(cls, c: int) -> LaurentPoly:
        return cls({0: c})

    @classmethod
    def from_coefficients(cls, low: int | Fraction, coeffs: Iterable[int], step: int | Fraction = 1):
        """Polynomial with ``coeffs`` on exponents ``low, low+step, ...``."""
        lo, st = Fraction(low) * 2, Fraction(step) * 2
        if lo.denominator != 1 or st.denominator != 1:
            raise ValueError("exponents must be multiples of 1/2")
        return cls((int(lo + i * st), c) for i, c in enumerate(coeffs))

    @classmethod
    def parse(cls, text: str, var: str | None = None) -> LaurentPoly:
        """Inverse of :meth:`to_str`; accepts ``-q^9 + 2q^3/2 - 1`` style input."""
        s = text.strip()
        if s in ("", "0"):
            return cls()
        terms: dict[int, int] = {}
        pos = 0
        first = True
        while pos < len(s):
            m = _TERM_RE.match(s, pos)
            if m is None or m.end() == pos:
                raise ValueError(f"cannot parse polynomial at column {pos + 1}: {text!r}")
            sign, digits, name, num, den = m.groups()
            if sign is None and not first:
                raise ValueError(f"missing operator at column {pos + 1}: {text!r}")
            if digits is None and name is None:
                raise ValueError(f"empty term at column {pos + 1}: {text!r}")
            if name is not None and var is not None and name != var:
                raise ValueError(f"unexpected variable {name!r} (expected {var!r})")
            coeff = int(digits) if digits is not None else 1
            if sign == "-":
                coeff = -coeff
            if name is None:
                key = 0
            elif num is None:
                key = 2
            else:
                e = Fraction(int(num), int(den) if den else 1) * 2
                if e.denominator != 1:
                    raise ValueError(f"exponent {num}/{den} is not a multiple of 1/2")
                key = int(e)
            terms[key] = terms.get(key, 0) + coeff
            pos = m.end()
            first = False
        return cls(terms)

    # inspection -----------------------------------------------------------

    @property
    def terms(self) -> dict[int, int]:
        """Copy of the ``doubled exponent -> coefficient`` map."""
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coefficient(self, exponent: int | Fraction) -> int:
        return self._terms.get(int(Fraction(exponent) * 2), 0)

    def exponents(self) -> list[Fraction]:
        return [Fraction(k, 2) for k in self._terms]

    def is_zero(self) -> bool:
        return not self._terms

    def has_integer_exponents(self) -> bool:
        return all(k % 2 == 0 for k in self._terms)

    def min_exponent(self) -> Fraction:
        return Fraction(min(self._terms), 2)

    def max_exponent(self) -> Fraction:
        return Fraction(max(self._terms), 2)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    # arithmetic -----------------------------------------------------------

    def __add__(self, other) -> LaurentPoly:
        other = _coerce(other)
        if other is NotImplemented:
            return other
        acc = dict(self._terms)
        for k, c in other._terms.items():
            acc[k] = acc.get(k, 0) + c
        return LaurentPoly(acc)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly({k: -c for k, c in self._terms.items()})

    def __sub__(self, other) -> LaurentPoly:
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> LaurentPoly:
        return (-self) + other

    def __mul__(self, other) -> LaurentPoly:
        other = _coerce(other)
        if other is NotImplemented:
            return other
        acc: dict[int, int] = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                k = k1 + k2
                acc[k] = acc.get(k, 0) + c1 * c2
        return LaurentPoly(acc)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> LaurentPoly:
        if n < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials have Laurent inverses")
            ((k, c),) = self._terms.items()
            if c not in (1, -1):
                raise ValueError("monomial with non-unit coefficient is not invertible")
            return LaurentPoly({k * n: c**n if n % 2 == 0 else c})
        result = LaurentPoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, exponent: int | Fraction) -> LaurentPoly:
        """Multiply by ``x^exponent``."""
        d = Fraction(exponent) * 2
        if d.denominator != 1:
            raise ValueError("shift must be a multiple of 1/2")
        d = int(d)
        return LaurentPoly({k + d: c for k, c in self._terms.items()})

    def scale_exponents(self, factor: int | Fraction) -> LaurentPoly:
        """Substitute ``x -> x^factor``; the result must keep half-integer exponents."""
        out = {}
        for k, c in self._terms.items():
            nk = Fraction(k) * factor
            if nk.denominator != 1:
                raise ValueError(f"x -> x^{factor} leaves half-integer exponents")
            out[int(nk)] = c
        return LaurentPoly(out)

    def substitute_inverse(self) -> LaurentPoly:
        return LaurentPoly({-k: c for k, c in self._terms.items()})

    def derivative(self, order: int = 1) -> LaurentPoly:
        if order < 0 or order > MAX_DERIVATIVE_ORDER:
            raise ValueError(f"derivative order must be in [0, {MAX_DERIVATIVE_ORDER}], got {order}")
        if not self.has_integer_exponents():
            # half-integer powers would need rational coefficients
            raise ValueError("derivative requires integer exponents")
        terms = {k // 2: c for k, c in self._terms.items()}
        for _ in range(order):
            terms = {e - 1: c * e for e, c in terms.items() if e != 0}
        return LaurentPoly({2 * e: c for e, c in terms.items()})

    def eval_at_one(self) -> int:
        return sum(self._terms.values())

    def evaluate(self, x: Fraction | int) -> Fraction:
        """Exact value at a rational point; only integer exponents are allowed."""
        if not self.has_integer_exponents():
            raise ValueError("evaluate requires integer exponents")
        x = Fraction(x)
        return sum((c * x ** (k // 2) for k, c in self._terms.items()), Fraction(0))

    # rendering ------------------------------------------------------------

    def to_str(self, var: str = "q", descending: bool = False) -> str:
        if not self._terms:
            return "0"
        items = sorted(self._terms.items(), reverse=descending)
        parts = []
        for i, (k, c) in enumerate(items):
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                exp = Fraction(k, 2)
                mono = var if exp == 1 else f"{var}^{exp}"
                body = mono if mag == 1 else f"{mag}{mono}"
            if i == 0:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append((" - " if c < 0 else " + ") + body)
        return "".join(parts)

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"LaurentPoly({self.to_str()!r})"


def _coerce(x):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return LaurentPoly.constant(x)
    return NotImplemented


ZERO = LaurentPoly()
ONE = LaurentPoly.constant(1)


def add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a + b


def mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a * b


def substitute_inverse(p: LaurentPoly) -> LaurentPoly:
    return p.substitute_inverse()


def derivative(p: LaurentPoly, order: int = 1) -> LaurentPoly:
    return p.derivative(order)


def eval_at_one(p: LaurentPoly) -> int:
    return p.eval_at_one()

"""Exact integer polynomial arithmetic and generating-function utilities.

Polynomials are dense coefficient tuples over Python ints, so coefficients
never overflow.  The same class holds length generating functions in ``z``,
R- and Kazhdan-Lusztig polynomials in ``q``, and their ``v``-normalised
forms; the variable name is purely notational.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence


def _trim(coeffs: Sequence[int]) -> tuple[int, ...]:
    end = len(coeffs)
    while end and coeffs[end - 1] == 0:
        end -= 1
    return tuple(coeffs[:end])


class IntPoly:
    """A univariate polynomial with exact integer coefficients.

    ``coeffs[i]`` is the coefficient of the degree-``i`` term; trailing
    zeros are trimmed, so the zero polynomial has an empty tuple.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        object.__setattr__(self, "coeffs", _trim(tuple(coeffs)))

    def __setattr__(self, name, value):
        raise AttributeError("IntPoly is immutable")

    @property
    def degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = IntPoly([other])
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __neg__(self) -> "IntPoly":
        return IntPoly([-c for c in self.coeffs])

    def __add__(self, other) -> "IntPoly":
        if isinstance(other, int):
            other = IntPoly([other])
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPoly([x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __sub__(self, other) -> "IntPoly":
        if isinstance(other, int):
            other = IntPoly([other])
        return self + (-other)

    def __rsub__(self, other) -> "IntPoly":
        return IntPoly([other]) - self

    def __mul__(self, other) -> "IntPoly":
        if isinstance(other, int):
            return IntPoly([other * c for c in self.coeffs])
        if not isinstance(other, IntPoly):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(out)

    __rmul__ = __mul__

    def __divmod__(self, other: "IntPoly"):
        """Polynomial division; the divisor must have leading coefficient +-1."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        lead = other.coeffs[-1]
        if lead not in (1, -1):
            raise ValueError("divisor must have unit leading coefficient")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return IntPoly(), self
        quot = [0] * (dq + 1)
        for k in range(dq, -1, -1):
            c = rem[k + other.degree]
            if c % lead:  # lead is a unit, never triggers
                raise ArithmeticError
            f = c // lead
            quot[k] = f
            if f:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= f * b
        return IntPoly(quot), IntPoly(rem)

    def exact_div(self, other: "IntPoly") -> "IntPoly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ValueError(f"{self!r} is not divisible by {other!r}")
        return q

    def __call__(self, x):
        """Evaluate via Horner; x may be an int or a Fraction."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def shift(self, k: int) -> "IntPoly":
        """Multiply by the k-th power of the variable."""
        if self.is_zero():
            return self
        return IntPoly((0,) * k + self.coeffs)

    def reversed(self) -> "IntPoly":
        """Coefficient mirror: x^deg * p(1/x).  Zero maps to zero."""
        return IntPoly(tuple(reversed(self.coeffs)))

    def truncate(self, k: int) -> "IntPoly":
        """Drop all terms of degree greater than k."""
        return IntPoly(self.coeffs[: k + 1])

    def __repr__(self):
        if self.is_zero():
            return "IntPoly(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append(f"{c}*x" if c != 1 else "x")
            else:
                terms.append(f"{c}*x^{i}" if c != 1 else f"x^{i}")
        return f"IntPoly({' + '.join(terms)})"


ZERO = IntPoly()
ONE = IntPoly([1])


def is_palindromic(p: IntPoly) -> bool:
    """True iff the coefficient sequence reads the same in both directions.

    The zero polynomial is rejected: it has no degree to mirror around.
    """
    if p.is_zero():
        raise ValueError("palindromicity is undefined for the zero polynomial")
    return p.coeffs == tuple(reversed(p.coeffs))


def quantum_poly(a: int) -> IntPoly:
    """1 + x + ... + x^(a-1), the rank generating function of a chain of a points."""
    if a < 1:
        raise ValueError(f"quantum polynomial needs a >= 1, got {a}")
    return IntPoly((1,) * a)


def validate_quantum_shape(shape: Sequence[int]) -> tuple[int, ...]:
    shape = tuple(shape)
    if any(a < 2 for a in shape):
        raise ValueError(f"shape entries must be >= 2: {shape}")
    if any(a > b for a, b in zip(shape, shape[1:])):
        raise ValueError(f"shape must be weakly increasing: {shape}")
    return shape


def quantum_factorizations(p: IntPoly) -> set[tuple[int, ...]]:
    """All multisets (a_1 <= ... <= a_N), a_i >= 2, with p = prod quantum_poly(a_i).

    Returns the empty set when no factorization exists, and {()} exactly
    when p == 1.  Recursive trial division with a lower bound keeps the
    shapes weakly increasing and deduplicated.
    """
    if p.is_zero() or p(0) != 1:
        raise ValueError("input must be nonzero with constant term 1")
    out: set[tuple[int, ...]] = set()

    def rec(rem: IntPoly, lo: int, acc: tuple[int, ...]):
        if rem == ONE:
            out.add(acc)
            return
        for a in range(lo, rem.degree + 2):
            q, r = divmod(rem, quantum_poly(a))
            if r.is_zero():
                rec(q, a, acc + (a,))

    rec(p, 2, ())
    return out


class SeriesTruncation:
    """The first k+1 coefficients of a formal power series."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Iterable[int], order: int):
        coeffs = tuple(coeffs)
        if len(coeffs) != order + 1:
            raise ValueError(f"expected {order + 1} coefficients, got {len(coeffs)}")
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "order", order)

    def __setattr__(self, name, value):
        raise AttributeError("SeriesTruncation is immutable")

    def __eq__(self, other):
        if not isinstance(other, SeriesTruncation):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.coeffs, self.order))

    def as_poly(self) -> IntPoly:
        return IntPoly(self.coeffs)

    def mul_poly(self, p: IntPoly) -> "SeriesTruncation":
        prod = self.as_poly() * p
        c = prod.coeffs + (0,) * (self.order + 1 - len(prod.coeffs))
        return SeriesTruncation(c[: self.order + 1], self.order)

    def __repr__(self):
        return f"SeriesTruncation({list(self.coeffs)}, order={self.order})"


def truncated_rational(numer: IntPoly, denom: IntPoly, k: int) -> SeriesTruncation:
    """Coefficients of numer/denom through order k by exact long division."""
    if denom.is_zero() or denom(0) == 0:
        raise ValueError("denominator must be invertible at 0")
    d0 = Fraction(denom(0))
    out: list[Fraction] = []
    for j in range(k + 1):
        n_j = numer.coeffs[j] if j < len(numer.coeffs) else 0
        acc = Fraction(n_j)
        for i in range(max(0, j - denom.degree), j):
            acc -= out[i] * denom.coeffs[j - i]
        out.append(acc / d0)
    ints = []
    for c in out:
        if c.denominator != 1:
            raise ValueError("series has non-integer coefficients")
        ints.append(int(c))
    return SeriesTruncation(ints, k)

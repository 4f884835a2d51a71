"""Exact arithmetic in the integers localized at a prime ``l``.

Every nonzero element factors uniquely as ``unit * l**v``; the valuation ``v``
and the unit part drive the coefficient conditions of the Groebner engine.

Two coefficient rings are defined here for use inside polynomials:

``ZlRing``
    the discrete valuation ring Z_(l); raw coefficients are ``gmpy2.mpq``.
``FpRing``
    the residue field F_l; raw coefficients are Python ints in ``[0, l)``.

Polynomials store raw coefficients for speed; ``DvrScalar`` is the public,
self-describing value type.
"""

from __future__ import annotations

import math
import re

import gmpy2
from gmpy2 import mpq, mpz

INF = math.inf

_SCALAR_RE = re.compile(r"^\s*([+-]?)\s*(\d+)\s*(?:/\s*(\d+))?\s*$")


class DefringError(Exception):
    """Base class for errors raised by this package."""


class NotIntegralError(DefringError, ValueError):
    pass


class NotDivisibleError(DefringError, ArithmeticError):
    pass


def _check_prime(l):
    l = int(l)
    if l < 2 or not gmpy2.is_prime(l):
        raise ValueError(f"l must be a prime, got {l}")
    return l


def _val_int(n, l):
    """Exponent of ``l`` in the nonzero integer ``n``."""
    if n == 0:
        return INF
    return int(gmpy2.remove(mpz(n), l)[1])


def _to_mpq(value):
    if isinstance(value, DvrScalar):
        return value._q
    if isinstance(value, str):
        m = _SCALAR_RE.match(value)
        if not m:
            raise ValueError(f"malformed scalar {value!r}")
        sign, num, den = m.groups()
        q = mpq(int(num), int(den) if den else 1)
        return -q if sign == "-" else q
    return mpq(value)


class ZlRing:
    """Coefficient ring Z_(l) with ``gmpy2.mpq`` raw elements."""

    is_field = False
    modulus = 0

    def __init__(self, l):
        self.l = _check_prime(l)

    def __eq__(self, other):
        return type(other) is ZlRing and other.l == self.l

    def __hash__(self):
        return hash(("Z_(l)", self.l))

    def __repr__(self):
        return f"ZlRing({self.l})"

    def convert(self, value):
        q = _to_mpq(value)
        if q.denominator % self.l == 0:
            raise NotIntegralError(f"{q} is not integral at {self.l}")
        return q

    def valuation(self, c):
        if c == 0:
            return INF
        return _val_int(c.numerator, self.l)

    def unit_part(self, c):
        v = self.valuation(c)
        return c / self.l ** v

    def normalizer(self, c):
        """Unit ``u`` such that ``u * c`` is a power of ``l``."""
        return 1 / self.unit_part(c)

    def quo(self, a, b):
        """Exact quotient ``a / b``; requires ``v(b) <= v(a)``."""
        return a / b

    def remainder(self, c, v):
        """Canonical representative of ``c`` modulo ``l**v`` in ``[0, l**v)``."""
        if v == 0:
            return mpq(0)
        m = self.l ** v
        return mpq((int(c.numerator) * pow(int(c.denominator), -1, m)) % m)

    def text(self, c):
        if c.denominator == 1:
            return str(c.numerator)
        return f"{c.numerator}/{c.denominator}"


class FpRing:
    """Prime field F_p with int raw elements."""

    is_field = True

    def __init__(self, p):
        self.l = _check_prime(p)
        self.modulus = self.l

    def __eq__(self, other):
        return type(other) is FpRing and other.l == self.l

    def __hash__(self):
        return hash(("F_p", self.l))

    def __repr__(self):
        return f"FpRing({self.l})"

    def convert(self, value):
        q = _to_mpq(value)
        if q.denominator % self.l == 0:
            raise NotIntegralError(f"{q} is not integral at {self.l}")
        return int(q.numerator) * pow(int(q.denominator), -1, self.l) % self.l

    def valuation(self, c):
        return INF if c == 0 else 0

    def unit_part(self, c):
        return c

    def normalizer(self, c):
        return pow(c, -1, self.l)

    def quo(self, a, b):
        return a * pow(b, -1, self.l) % self.l

    def remainder(self, c, v):
        return 0

    def text(self, c):
        return str(c)


class DvrScalar:
    """An element ``numerator/denominator`` of Z_(l), ``l`` not dividing the denominator.

    >>> x = DvrScalar("-3/2", 3)
    >>> x.valuation(), x.unit_part(), x.residue()
    (1, DvrScalar('-1/2', l=3), 0)
    """

    __slots__ = ("_q", "l")

    def __init__(self, value, l):
        l = _check_prime(l)
        q = _to_mpq(value)
        if q.denominator % l == 0:
            raise NotIntegralError(f"{q} is not integral at {l}")
        self._q = q
        self.l = l

    @classmethod
    def parse(cls, text, l):
        return cls(text, l)

    @property
    def numerator(self):
        return int(self._q.numerator)

    @property
    def denominator(self):
        return int(self._q.denominator)

    @property
    def value(self):
        return self._q

    def _coerce(self, other):
        if isinstance(other, DvrScalar):
            if other.l != self.l:
                raise ValueError("scalars over different primes")
            return other._q
        if isinstance(other, (int, type(mpq()), type(mpz()))):
            return mpq(other)
        from fractions import Fraction

        if isinstance(other, Fraction):
            return mpq(other.numerator, other.denominator)
        return NotImplemented

    def _wrap(self, q):
        return DvrScalar(q, self.l)

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self._q + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self._q - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(o - self._q)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self._q * o)

    __rmul__ = __mul__

    def __neg__(self):
        return self._wrap(-self._q)

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** -n
        return self._wrap(self._q**n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o == 0:
            raise ZeroDivisionError("division by zero")
        if self._q != 0 and _val_int(o.numerator, self.l) > self.valuation():
            raise NotDivisibleError(f"{o} does not divide {self._q} in Z_({self.l})")
        return self._wrap(self._q / o)

    def inverse(self):
        if self.valuation() != 0:
            raise NotDivisibleError(f"{self} is not a unit at {self.l}")
        return self._wrap(1 / self._q)

    def divides(self, other):
        """``self | other`` in Z_(l), i.e. ``v(self) <= v(other)``."""
        o = self._coerce(other)
        if self._q == 0:
            return o == 0
        return o == 0 or _val_int(o.numerator, self.l) >= self.valuation()

    def __eq__(self, other):
        if isinstance(other, DvrScalar):
            return self.l == other.l and self._q == other._q
        try:
            return self._q == mpq(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((self._q, self.l))

    def __bool__(self):
        return self._q != 0

    def valuation(self):
        return _val_int(self._q.numerator, self.l)

    def unit_part(self):
        if self._q == 0:
            raise ValueError("no unit part of zero")
        return self._wrap(self._q / self.l ** self.valuation())

    def residue(self):
        if self._q.denominator % self.l == 0:
            raise NotIntegralError(f"{self._q} is not integral at {self.l}")
        return int(self._q.numerator) * pow(int(self._q.denominator), -1, self.l) % self.l

    def __str__(self):
        q = self._q
        return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"

    def __repr__(self):
        return f"DvrScalar('{self}', l={self.l})"


def valuation(x):
    return x.valuation()


def unit_part(x):
    return x.unit_part()


def residue(x):
    return x.residue()

"""Exact scalar fields and rational functions in one variable t.

Two scalar fields are supported: the rationals (fractions.Fraction) and
prime fields F_p.  No floating point is used anywhere.

A RationalFunction is a normalized ratio of polynomials: numerator and
denominator share no common factor and the denominator is monic.  The
t-adic valuation and low-order Laurent coefficients are computable, which
is what the Iwahori membership tests and the coset normalization solver
consume.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union


@dataclass(frozen=True)
class FpElement:
    """Element of the prime field F_p, stored as a residue in 0..p-1."""

    value: int
    p: int

    def _coerce(self, other):
        if isinstance(other, FpElement):
            if other.p != self.p:
                raise ValueError("prime field mismatch")
            return other
        if isinstance(other, int):
            return FpElement(other % self.p, self.p)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FpElement((self.value + other.value) % self.p, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FpElement((self.value - other.value) % self.p, self.p)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FpElement((self.value * other.value) % self.p, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __neg__(self):
        return FpElement((-self.value) % self.p, self.p)

    def __bool__(self) -> bool:
        return self.value != 0

    def inverse(self) -> "FpElement":
        if self.value == 0:
            raise ZeroDivisionError("inverse of zero in a prime field")
        return FpElement(pow(self.value, self.p - 2, self.p), self.p)

    def __repr__(self) -> str:
        return f"{self.value} (mod {self.p})"


class RationalField:
    """Marker object for exact rationals."""

    characteristic = 0

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def of(self, value) -> Fraction:
        """Coerce an int, Fraction, or "a/b" string."""
        if isinstance(value, Fraction):
            return value
        if isinstance(value, int):
            return Fraction(value)
        if isinstance(value, str):
            return Fraction(value)
        raise TypeError(f"cannot coerce {value!r} into the rationals")

    def elements(self):
        raise ValueError("the rationals are not finite")

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("RationalField")

    def __repr__(self):
        return "QQ"


class PrimeField:
    """The field with p elements, p prime."""

    def __init__(self, p: int):
        if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p

    def zero(self):
        return FpElement(0, self.p)

    def one(self):
        return FpElement(1, self.p)

    def of(self, value) -> FpElement:
        if isinstance(value, FpElement):
            if value.p != self.p:
                raise ValueError("prime field mismatch")
            return value
        if isinstance(value, int):
            return FpElement(value % self.p, self.p)
        if isinstance(value, str):
            return FpElement(int(value) % self.p, self.p)
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise ZeroDivisionError("denominator divisible by p")
            return self.of(value.numerator) / self.of(value.denominator)
        raise TypeError(f"cannot coerce {value!r} into F_{self.p}")

    def elements(self):
        return tuple(FpElement(v, self.p) for v in range(self.p))

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return f"F_{self.p}"


Field = Union[RationalField, PrimeField]
QQ = RationalField()


@dataclass(frozen=True)
class Polynomial:
    """Dense polynomial in t with coefficients in a fixed field.

    Coefficients are ascending and trailing zeros are trimmed, so the
    zero polynomial has an empty coefficient tuple.
    """

    field: Field
    coeffs: tuple

    @staticmethod
    def make(field: Field, coeffs: Iterable) -> "Polynomial":
        cs = [field.of(c) if not _is_element(c) else c for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        return Polynomial(field, tuple(cs))

    @staticmethod
    def const(field: Field, value) -> "Polynomial":
        return Polynomial.make(field, [field.of(value)])

    @staticmethod
    def t(field: Field) -> "Polynomial":
        return Polynomial.make(field, [field.zero(), field.one()])

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        """Degree, with the zero polynomial at -1."""
        return len(self.coeffs) - 1

    def order(self) -> int:
        """Lowest power of t with nonzero coefficient; raises on zero."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        raise ValueError("zero polynomial has no order")

    def coeff(self, i: int):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.field.zero()

    def __add__(self, other: "Polynomial") -> "Polynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial.make(
            self.field, [self.coeff(i) + other.coeff(i) for i in range(n)]
        )

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial.make(
            self.field, [self.coeff(i) - other.coeff(i) for i in range(n)]
        )

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.field, tuple(-c for c in self.coeffs))

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        if self.is_zero() or other.is_zero():
            return Polynomial(self.field, ())
        out = [self.field.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Polynomial.make(self.field, out)

    def shifted(self, k: int) -> "Polynomial":
        """Multiply by t^k, k >= 0."""
        if k < 0:
            raise ValueError("use RationalFunction for negative powers of t")
        if self.is_zero():
            return self
        return Polynomial(self.field, (self.field.zero(),) * k + self.coeffs)

    def divmod(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        q = [self.field.zero()] * max(0, self.degree() - other.degree() + 1)
        rem = list(self.coeffs)
        d = other.degree()
        lead = other.coeffs[-1]
        for i in range(len(rem) - 1 - d, -1, -1):
            c = rem[i + d]
            if not c:
                continue
            f = c / lead
            q[i] = f
            for j, b in enumerate(other.coeffs):
                rem[i + j] = rem[i + j] - f * b
        return Polynomial.make(self.field, q), Polynomial.make(self.field, rem)

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        lead = self.coeffs[-1]
        return Polynomial(self.field, tuple(c / lead for c in self.coeffs))

    def evaluate(self, x):
        out = self.field.zero()
        for c in reversed(self.coeffs):
            out = out * x + c
        return out


def _is_element(c) -> bool:
    return isinstance(c, (Fraction, FpElement))


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic greatest common divisor by the Euclidean algorithm."""
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    return a.monic()


@dataclass(frozen=True)
class RationalFunction:
    """Normalized ratio of polynomials in t over an exact field."""

    num: Polynomial
    den: Polynomial

    @staticmethod
    def make(num: Polynomial, den: Polynomial) -> "RationalFunction":
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            return RationalFunction(num, Polynomial.const(num.field, 1))
        if den.degree() == 0:
            # constant denominator: no common factor to cancel
            lead = den.coeffs[0]
            one = Polynomial.make(num.field, [num.field.one()])
            return RationalFunction(
                Polynomial(num.field, tuple(c / lead for c in num.coeffs)), one
            )
        g = poly_gcd(num, den)
        num, den = num.divmod(g)[0], den.divmod(g)[0]
        lead = den.coeffs[-1]
        num = Polynomial(num.field, tuple(c / lead for c in num.coeffs))
        den = den.monic()
        return RationalFunction(num, den)

    @staticmethod
    def of(field: Field, value) -> "RationalFunction":
        return RationalFunction.make(
            Polynomial.const(field, value), Polynomial.const(field, 1)
        )

    @staticmethod
    def t_power(field: Field, k: int) -> "RationalFunction":
        one = Polynomial.const(field, 1)
        if k >= 0:
            return RationalFunction.make(one.shifted(k), one)
        return RationalFunction.make(one, one.shifted(-k))

    @staticmethod
    def from_laurent(field: Field, terms: Mapping[int, object]) -> "RationalFunction":
        """Build sum of c * t^k from a {k: c} mapping (k may be negative)."""
        if not terms:
            return RationalFunction.of(field, 0)
        shift = min(terms)
        width = max(terms) - shift + 1
        coeffs = [field.zero()] * width
        for k, c in terms.items():
            coeffs[k - shift] = field.of(c)
        num = Polynomial.make(field, coeffs)
        if shift >= 0:
            return RationalFunction.make(num.shifted(shift), Polynomial.const(field, 1))
        return RationalFunction.make(num, Polynomial.const(field, 1).shifted(-shift))

    @property
    def field(self) -> Field:
        return self.num.field

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        return RationalFunction.make(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __sub__(self, other: "RationalFunction") -> "RationalFunction":
        if other.is_zero():
            return self
        return RationalFunction.make(
            self.num * other.den - other.num * self.den, self.den * other.den
        )

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den)

    def __mul__(self, other: "RationalFunction") -> "RationalFunction":
        if self.is_zero() or other.is_zero():
            zero = Polynomial(self.field, ())
            return RationalFunction(zero, Polynomial.const(self.field, 1))
        return RationalFunction.make(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "RationalFunction") -> "RationalFunction":
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction.make(self.num * other.den, self.den * other.num)

    def inverse(self) -> "RationalFunction":
        return RationalFunction.of(self.field, 1) / self

    def __pow__(self, k: int) -> "RationalFunction":
        out = RationalFunction.of(self.field, 1)
        base = self if k >= 0 else self.inverse()
        for _ in range(abs(k)):
            out = out * base
        return out

    def valuation(self) -> int | None:
        """t-adic valuation; None for the zero function."""
        if self.is_zero():
            return None
        return self.num.order() - self.den.order()

    def is_integral(self) -> bool:
        """No pole at t = 0."""
        v = self.valuation()
        return v is None or v >= 0

    def coeff(self, i: int):
        """Laurent series coefficient of t^i around t = 0."""
        if self.is_zero():
            return self.field.zero()
        a, b = self.num.order(), self.den.order()
        j = i - (a - b)
        if j < 0:
            return self.field.zero()
        n0 = Polynomial.make(self.field, self.num.coeffs[a:])
        d0 = Polynomial.make(self.field, self.den.coeffs[b:])
        inv0 = self.field.one() / d0.coeff(0)
        series = []
        for k in range(j + 1):
            acc = n0.coeff(k)
            for m in range(k):
                acc = acc - series[m] * d0.coeff(k - m)
            series.append(acc * inv0)
        return series[j]

    def ev0(self):
        """Evaluate at t = 0; only defined for integral functions."""
        if not self.is_integral():
            raise ValueError("pole at t = 0")
        return self.coeff(0)

    def is_constant(self) -> bool:
        return self.den.degree() == 0 and self.num.degree() <= 0

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("rational function is not constant")
        return self.num.coeff(0)

    def is_unit_monomial(self) -> bool:
        """Of the form c * t^k with c a nonzero scalar."""
        if self.is_zero():
            return False
        num_terms = sum(1 for c in self.num.coeffs if c)
        den_terms = sum(1 for c in self.den.coeffs if c)
        return num_terms == 1 and den_terms == 1

    def __str__(self) -> str:
        def poly_str(p: Polynomial) -> str:
            if p.is_zero():
                return "0"
            parts = []
            for i, c in enumerate(p.coeffs):
                if not c:
                    continue
                cs = str(c.value if isinstance(c, FpElement) else c)
                if i == 0:
                    parts.append(cs)
                else:
                    tpow = "t" if i == 1 else f"t^{i}"
                    parts.append(tpow if cs == "1" else f"{cs}*{tpow}")
            return " + ".join(parts)

        if self.den.degree() == 0:
            return poly_str(self.num)
        return f"({poly_str(self.num)})/({poly_str(self.den)})"

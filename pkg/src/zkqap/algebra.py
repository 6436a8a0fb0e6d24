"""Prime-field scalars and dense univariate polynomials over them.

Polynomials store plain ints in ``[0, p)``, lowest degree first, with trailing
zeros stripped. :class:`FieldElement` is the scalar wrapper used at API
boundaries; hot paths work on ints and go through :mod:`zkqap.kernels`.
"""
from __future__ import annotations

import math
from random import Random
from functools import lru_cache
from typing import Iterable, Sequence, Union

import gmpy2

from . import kernels
from .errors import DivisionByZeroPolynomial, DuplicateAbscissa, NotPrime, ZeroInverse

# Mersenne prime 2^61 - 1: wide enough that every integer worked example
# embeds without wrapping, narrow enough for the 64-bit compiled kernels.
DEFAULT_MODULUS = (1 << 61) - 1


class Field:
    """The prime field Z/pZ. Elements are created by calling the field."""

    __slots__ = ("p",)

    def __init__(self, p: int):
        p = int(p)
        if p < 2 or not gmpy2.is_prime(p):
            raise NotPrime(f"modulus {p} is not prime")
        self.p = p

    def __call__(self, value) -> FieldElement:
        if isinstance(value, FieldElement):
            if value.field.p != self.p:
                raise ValueError("element belongs to a different field")
            return value
        return FieldElement(int(value) % self.p, self)

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return f"Field({self.p})"

    @property
    def zero(self) -> FieldElement:
        return FieldElement(0, self)

    @property
    def one(self) -> FieldElement:
        return FieldElement(1, self)

    def frac(self, num: int, den: int) -> FieldElement:
        """The field image of the rational ``num/den``."""
        return self(num) / self(den)

    def random(self, rng: Random, nonzero: bool = False) -> FieldElement:
        lo = 1 if nonzero else 0
        return FieldElement(rng.randrange(lo, self.p), self)

    def signed(self, value) -> int:
        """Representative in ``(-p/2, p/2]``; used for display."""
        v = int(value) % self.p
        return v - self.p if v > self.p // 2 else v


@lru_cache(maxsize=None)
def default_field() -> Field:
    return Field(DEFAULT_MODULUS)


def _coerce(field: Field, value) -> int:
    if isinstance(value, FieldElement):
        if value.field.p != field.p:
            raise ValueError("element belongs to a different field")
        return value.value
    return int(value) % field.p


class FieldElement:
    """An element of a prime field; immutable."""

    __slots__ = ("value", "field")

    def __init__(self, value: int, field: Field):
        self.value = value % field.p
        self.field = field

    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.field.p != self.field.p:
                raise ValueError("elements belong to different fields")
            return other.value
        if isinstance(other, int):
            return other % self.field.p
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.value + o, self.field)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.value - o, self.field)

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(o - self.value, self.field)

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.value * o, self.field)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self * FieldElement(o, self.field).inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(o, self.field) * self.inverse()

    def __neg__(self):
        return FieldElement(-self.value, self.field)

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return FieldElement(pow(self.value, e, self.field.p), self.field)

    def inverse(self) -> FieldElement:
        if self.value == 0:
            raise ZeroInverse("0 has no multiplicative inverse")
        return FieldElement(pow(self.value, -1, self.field.p), self.field)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field.p == other.field.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.field.p
        return NotImplemented

    def __hash__(self):
        return hash(self.value)

    def __int__(self):
        return self.value

    __index__ = __int__

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"FieldElement({self.value}, p={self.field.p})"

    def __str__(self):
        return str(self.field.signed(self.value))


def field_inverse(a: FieldElement) -> FieldElement:
    return a.inverse()


def field_pow(g: FieldElement, e: int) -> FieldElement:
    """Square-and-multiply exponentiation for ``e >= 0``."""
    if e < 0:
        raise ValueError("exponent must be non-negative")
    p = g.field.p
    base, result = g.value, 1
    while e:
        if e & 1:
            result = result * base % p
        base = base * base % p
        e >>= 1
    return FieldElement(result, g.field)


Scalar = Union[int, FieldElement]


class Polynomial:
    """Dense polynomial, ``coeffs[k]`` is the coefficient of ``x**k``."""

    __slots__ = ("field", "coeffs")

    def __init__(self, coeffs: Iterable[Scalar] = (), field: Field | None = None):
        field = field or default_field()
        self.field = field
        self.coeffs = _strip([_coerce(field, c) for c in coeffs])

    @classmethod
    def _trusted(cls, field: Field, coeffs: list) -> Polynomial:
        # coefficients already reduced mod p
        obj = cls.__new__(cls)
        obj.field = field
        obj.coeffs = _strip(coeffs)
        return obj

    @classmethod
    def zero(cls, field: Field | None = None) -> Polynomial:
        return cls((), field)

    @classmethod
    def constant(cls, c: Scalar, field: Field | None = None) -> Polynomial:
        return cls([c], field)

    @classmethod
    def x(cls, field: Field | None = None) -> Polynomial:
        return cls([0, 1], field)

    @classmethod
    def from_roots(cls, roots: Iterable[Scalar], field: Field | None = None) -> Polynomial:
        field = field or default_field()
        p = field.p
        out = [1]
        for r in roots:
            r = _coerce(field, r)
            nxt = [0] * (len(out) + 1)
            for k, c in enumerate(out):
                nxt[k + 1] += c
                nxt[k] -= r * c
            out = [c % p for c in nxt]
        return cls._trusted(field, out)

    @property
    def degree(self) -> int | float:
        """Degree, or ``-math.inf`` for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else -math.inf

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> FieldElement:
        return FieldElement(self.coeffs[-1] if self.coeffs else 0, self.field)

    def coefficient(self, k: int) -> FieldElement:
        return FieldElement(self.coeffs[k] if k < len(self.coeffs) else 0, self.field)

    def _check(self, other: Polynomial):
        if other.field.p != self.field.p:
            raise ValueError("polynomials over different fields")

    def _lift(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, FieldElement)):
            return Polynomial([other], self.field)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        p = self.field.p
        out = list(a)
        for k, c in enumerate(b):
            out[k] = (out[k] + c) % p
        return Polynomial._trusted(self.field, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return Polynomial._trusted(self.field, [(-c) % p for c in self.coeffs])

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement)):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        return Polynomial._trusted(
            self.field, kernels.poly_mul(self.coeffs, other.coeffs, self.field.p)
        )

    __rmul__ = __mul__

    def scale(self, k: Scalar) -> Polynomial:
        k = _coerce(self.field, k)
        p = self.field.p
        return Polynomial._trusted(self.field, [c * k % p for c in self.coeffs])

    def __call__(self, x: Scalar) -> FieldElement:
        return poly_eval(self, x)

    def divrem(self, den: Polynomial) -> tuple[Polynomial, Polynomial]:
        return poly_divrem(self, den)

    def __divmod__(self, den):
        return poly_divrem(self, den)

    def __floordiv__(self, den):
        return poly_divrem(self, den)[0]

    def __mod__(self, den):
        return poly_divrem(self, den)[1]

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.field.p == other.field.p and self.coeffs == other.coeffs
        if isinstance(other, (int, FieldElement)):
            return self == Polynomial([other], self.field)
        return NotImplemented

    def __hash__(self):
        return hash((tuple(self.coeffs), self.field.p))

    def __len__(self):
        return len(self.coeffs)

    def __repr__(self):
        return f"Polynomial({self.coeffs!r}, p={self.field.p})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.field.signed(self.coeffs[k])
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                body = ("" if mag == 1 else str(mag)) + ("x" if k == 1 else f"x^{k}")
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def _strip(coeffs: list) -> list:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def poly_eval(f: Polynomial, x: Scalar) -> FieldElement:
    """Horner evaluation."""
    xv = _coerce(f.field, x)
    return FieldElement(kernels.poly_eval(f.coeffs, xv, f.field.p), f.field)


def poly_divrem(num: Polynomial, den: Polynomial) -> tuple[Polynomial, Polynomial]:
    num._check(den)
    if den.is_zero:
        raise DivisionByZeroPolynomial("division by the zero polynomial")
    q, r = kernels.poly_divrem(num.coeffs, den.coeffs, num.field.p)
    return Polynomial._trusted(num.field, q), Polynomial._trusted(num.field, r)


def interpolate(points: Sequence[tuple[Scalar, Scalar]], field: Field | None = None) -> Polynomial:
    """Lagrange interpolation through ``points``; O(n^2)."""
    if not points:
        raise ValueError("need at least one point")
    if field is None:
        field = next((v.field for pt in points for v in pt if isinstance(v, FieldElement)), None)
        field = field or default_field()
    p = field.p
    xs = [_coerce(field, x) for x, _ in points]
    ys = [_coerce(field, y) for _, y in points]
    if len(set(xs)) != len(xs):
        raise DuplicateAbscissa("interpolation points share an x-coordinate")
    master = Polynomial.from_roots(xs, field).coeffs
    basis, weights = [], []
    for xi, yi in zip(xs, ys):
        quotient, _ = kernels.synthetic_div(master, xi, p)
        denom = kernels.poly_eval(quotient, xi, p)
        basis.append(quotient)
        weights.append(yi * pow(denom, -1, p) % p)
    return Polynomial._trusted(field, kernels.lincomb(basis, weights, p))


@lru_cache(maxsize=32)
def _vanishing(p: int, d: int) -> Polynomial:
    return Polynomial.from_roots(range(1, d + 1), Field(p))


def vanishing_poly(d: int, field: Field | None = None) -> Polynomial:
    """(x - 1)(x - 2)...(x - d)."""
    if d < 1:
        raise ValueError("degree must be positive")
    field = field or default_field()
    return _vanishing(field.p, d)


@lru_cache(maxsize=8)
def _basis(p: int, d: int) -> tuple:
    t = _vanishing(p, d).coeffs
    out = []
    for j in range(1, d + 1):
        quotient, _ = kernels.synthetic_div(t, j, p)
        w = pow(kernels.poly_eval(quotient, j, p), -1, p)
        out.append(tuple(c * w % p for c in quotient))
    return tuple(out)


def lagrange_basis(d: int, field: Field | None = None) -> tuple:
    """Coefficient vectors of the Lagrange basis over the points 1..d.

    ``lagrange_basis(d)[j - 1]`` evaluates to 1 at ``j`` and 0 at every other
    point of the domain.
    """
    field = field or default_field()
    return _basis(field.p, d)


def lagrange_basis_at(d: int, s: Scalar, field: Field | None = None) -> list[int]:
    """Values of every basis polynomial over 1..d at the point ``s``; O(d)."""
    field = field or default_field()
    p = field.p
    s = _coerce(field, s)
    if 1 <= s <= d:
        return [1 if j == s else 0 for j in range(1, d + 1)]
    # barycentric weights: 1 / prod_{k != j} (j - k) = (-1)^(d-j) / ((j-1)! (d-j)!)
    fact = [1] * (d + 1)
    for k in range(1, d + 1):
        fact[k] = fact[k - 1] * k % p
    t_s = 1
    for k in range(1, d + 1):
        t_s = t_s * (s - k) % p
    out = []
    for j in range(1, d + 1):
        denom = fact[j - 1] * fact[d - j] * (s - j) % p
        if (d - j) & 1:
            denom = -denom % p
        out.append(t_s * pow(denom, -1, p) % p)
    return out


def interpolate_domain(values: Sequence[Scalar], field: Field | None = None) -> Polynomial:
    """Polynomial taking ``values[j - 1]`` at ``x = j`` for j in 1..len(values)."""
    field = field or default_field()
    d = len(values)
    if d == 0:
        raise ValueError("need at least one value")
    ys = [_coerce(field, y) for y in values]
    rows, ks = [], []
    basis = _basis(field.p, d)
    for j, y in enumerate(ys):
        if y:
            rows.append(basis[j])
            ks.append(y)
    if not rows:
        return Polynomial.zero(field)
    return Polynomial._trusted(field, kernels.lincomb(rows, ks, field.p))

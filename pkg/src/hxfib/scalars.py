"""Exact scalar tower.

Everything downstream computes in one of four rings: arbitrary-precision
rationals, Gaussian rationals, dense univariate polynomials over either,
and the quadratic extension Q[x][s]/(s^2 - m) in which the characteristic
roots of the recurrence live.  All values are immutable and all operations
are pure, so instances can be shared freely.

Coefficients are exact rationals rather than floats on purpose: every
identity check in this package is an exact ring equality, and floats
cannot distinguish a theorem from a near miss.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Union

#: The base exact scalar: arbitrary-precision reduced fractions.  The
#: stdlib type already guarantees the invariants we rely on (positive
#: denominator, gcd-reduced, unique zero).
Rational = Fraction

RationalLike = Union[int, Fraction]

NEG_INF = float("-inf")


class NotDivisible(ArithmeticError):
    """Exact division failed: the divisor does not divide the dividend."""


class DivisorZero(ZeroDivisionError):
    """Exact division by zero was requested."""


class ModulusMismatch(ValueError):
    """Quadratic-extension elements with different moduli were combined."""


class NonRealResult(ArithmeticError):
    """A value expected to be plain rational kept an imaginary or radical
    part; this always signals a fault upstream, never a data error."""


def binomial(n: int, k: int) -> int:
    """n choose k, with 0 whenever k > n so summation bounds need no
    special casing."""
    if n < 0 or k < 0:
        raise ValueError("binomial requires nonnegative arguments")
    return math.comb(n, k)


class GaussRational:
    """Gaussian rational a + b*i with i^2 = -1, over `Rational` parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: RationalLike = 0, im: RationalLike = 0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussRational is immutable")

    def _coerce(self, other):
        if isinstance(other, GaussRational):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussRational(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussRational(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        norm = o.re * o.re + o.im * o.im
        if not norm:
            raise ZeroDivisionError("division by zero GaussRational")
        return GaussRational(
            (self.re * o.re + self.im * o.im) / norm,
            (self.im * o.re - self.re * o.im) / norm,
        )

    def __neg__(self):
        return GaussRational(-self.re, -self.im)

    def conjugate(self) -> "GaussRational":
        return GaussRational(self.re, -self.im)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussRational({self.re!r}, {self.im!r})"


#: The imaginary unit.
I = GaussRational(0, 1)


def _lcm(a: int, b: int) -> int:
    return a * (b // math.gcd(a, b))


class Poly:
    """Dense univariate polynomial, constant term first.

    The zero polynomial is the empty coefficient tuple and its degree is
    the distinguished value `NEG_INF`.  Coefficients may be ints,
    `Rational`, `GaussRational`, or (for truncated series work) other
    `Poly` or ring values supporting +, *, unary -, bool and ==.

    Rational-coefficient polynomials are stored as an integer coefficient
    vector over one shared positive denominator, reduced so that the
    representation is canonical; this keeps sums and convolutions in
    plain integer arithmetic.  `den == 0` marks the generic-coefficient
    mode.  Either way the public face is the `coeffs` tuple.
    """

    __slots__ = ("num", "den")

    def __init__(self, coeffs: Iterable = ()):
        cs = list(coeffs)
        while cs and not cs[-1]:
            cs.pop()
        if not cs:
            object.__setattr__(self, "num", ())
            object.__setattr__(self, "den", 1)
            return
        rational = True
        den = 1
        for c in cs:
            if isinstance(c, Fraction):
                d = c.denominator
                if d != 1:
                    den = _lcm(den, d)
            elif not isinstance(c, int):
                rational = False
                break
        if not rational:
            object.__setattr__(self, "num", tuple(cs))
            object.__setattr__(self, "den", 0)
            return
        if den == 1:
            nums = [c if isinstance(c, int) else c.numerator for c in cs]
        else:
            nums = []
            for c in cs:
                v = c * den
                nums.append(v if isinstance(v, int) else v.numerator)
        nums, den = _reduce_content(nums, den)
        object.__setattr__(self, "num", tuple(nums))
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def _rational(cls, nums: list, den: int) -> "Poly":
        """Internal constructor from an integer vector and denominator."""
        n = len(nums)
        while n and not nums[n - 1]:
            n -= 1
        if n != len(nums):
            del nums[n:]
        if not nums:
            den = 1
        elif den != 1:
            nums, den = _reduce_content(nums, den)
        obj = object.__new__(cls)
        object.__setattr__(obj, "num", tuple(nums))
        object.__setattr__(obj, "den", den)
        return obj

    @classmethod
    def _raw(cls, num: tuple, den: int) -> "Poly":
        # caller guarantees canonical form
        obj = object.__new__(cls)
        object.__setattr__(obj, "num", num)
        object.__setattr__(obj, "den", den)
        return obj

    @classmethod
    def constant(cls, c) -> "Poly":
        return cls((c,))

    @classmethod
    def monomial(cls, k: int, c=1) -> "Poly":
        return cls((0,) * k + (c,))

    @property
    def coeffs(self) -> tuple:
        """Coefficients, constant term first, in canonical form."""
        if self.den in (0, 1):
            return self.num
        d = self.den
        return tuple(Fraction(v, d) for v in self.num)

    @property
    def degree(self):
        """Degree, or `NEG_INF` for the zero polynomial."""
        return len(self.num) - 1 if self.num else NEG_INF

    def coefficient(self, k: int):
        """Coefficient of x^k (0 beyond the stored range)."""
        if not 0 <= k < len(self.num):
            return 0
        if self.den in (0, 1):
            return self.num[k]
        return Fraction(self.num[k], self.den)

    def is_rational(self) -> bool:
        return self.den != 0

    def _coerce(self, other):
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction, GaussRational)):
            return Poly((other,))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den and o.den:
            a, da, b, db = self.num, self.den, o.num, o.den
            if len(a) < len(b):
                a, da, b, db = b, db, a, da
            if da == db:
                out = list(a)
                for i, v in enumerate(b):
                    out[i] += v
                return Poly._rational(out, da)
            den = _lcm(da, db)
            ma, mb = den // da, den // db
            out = [v * ma for v in a]
            for i, v in enumerate(b):
                out[i] += v * mb
            return Poly._rational(out, den)
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly(out)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __neg__(self):
        if self.den:
            return Poly._raw(tuple(-v for v in self.num), self.den)
        return Poly._raw(tuple(-c for c in self.num), 0)

    def __mul__(self, other):
        if isinstance(other, Poly):
            return self._mul_poly(other)
        if isinstance(other, (int, Fraction, GaussRational)):
            return self._scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, GaussRational)):
            return self._scale(other)
        return NotImplemented

    def _scale(self, s):
        if not s or not self.num:
            return _ZERO
        if s == 1:
            return self
        if s == -1:
            return -self
        if self.den:
            if isinstance(s, int):
                return Poly._rational([v * s for v in self.num], self.den)
            if isinstance(s, Fraction):
                p, q = s.numerator, s.denominator
                return Poly._rational([v * p for v in self.num], self.den * q)
        return Poly(tuple(c * s for c in self.coeffs))

    def _mul_poly(self, other: "Poly") -> "Poly":
        if not self.num or not other.num:
            return _ZERO
        if self.den and other.den:
            a, b = self.num, other.num
            if len(a) > len(b):
                a, b = b, a
            out = [0] * (len(a) + len(b) - 1)
            for i, ai in enumerate(a):
                if ai:
                    for j, bj in enumerate(b):
                        out[i + j] += ai * bj
            return Poly._rational(out, self.den * other.den)
        a, b = self.coeffs, other.coeffs
        n = len(a) + len(b) - 1
        out = [None] * n
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                if not bj:
                    continue
                t = ai * bj
                out[i + j] = t if out[i + j] is None else out[i + j] + t
        zero = a[0] * 0
        return Poly([zero if c is None else c for c in out])

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative polynomial power")
        result = _ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def eval(self, t):
        """Horner evaluation at `t`; `t` may belong to an extension ring."""
        cs = self.coeffs
        if not cs:
            return t * 0
        acc = cs[-1]
        for c in reversed(cs[:-1]):
            acc = acc * t + c
        return acc

    def compose(self, other: "Poly") -> "Poly":
        """self(other(x)), via Horner over polynomials."""
        value = self.eval(other)
        if isinstance(value, Poly):
            return value
        return Poly((value,))

    def derivative(self) -> "Poly":
        if self.den:
            return Poly._rational(
                [self.num[i] * i for i in range(1, len(self.num))], self.den
            )
        cs = self.num
        return Poly(tuple(cs[i] * i for i in range(1, len(cs))))

    def divexact(self, divisor: "Poly") -> "Poly":
        """Exact quotient self / divisor.

        Raises `DivisorZero` for a zero divisor and `NotDivisible` when
        the division leaves a remainder; a raised `NotDivisible` is how a
        failed identity check surfaces.
        """
        if not isinstance(divisor, Poly):
            divisor = Poly((divisor,))
        if not divisor.num:
            raise DivisorZero("exact division by the zero polynomial")
        if not self.num:
            return _ZERO
        dq = len(divisor.num) - 1
        if len(self.num) - 1 < dq:
            raise NotDivisible(f"degree {self.degree} < divisor degree {dq}")
        rem = list(self.coeffs)
        qc = divisor.coeffs
        lead = Fraction(qc[-1]) if isinstance(qc[-1], int) else qc[-1]
        out = [0] * (len(rem) - dq)
        for k in range(len(out) - 1, -1, -1):
            c = rem[k + dq]
            if not c:
                continue
            t = c / lead
            out[k] = t
            for i in range(dq):
                if qc[i]:
                    rem[k + i] = rem[k + i] - t * qc[i]
        if any(rem[:dq]):
            raise NotDivisible("nonzero remainder in exact division")
        return Poly(out)

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den and o.den:
            return self.num == o.num and self.den == o.den
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly({list(self.coeffs)!r})"


def _reduce_content(nums: list, den: int):
    """Divide out gcd(content, den) so (nums, den) is canonical."""
    if den == 1:
        return nums, 1
    g = den
    for v in nums:
        if v:
            g = math.gcd(g, v)
            if g == 1:
                return nums, den
    return [v // g for v in nums], den // g


_ZERO = Poly()
_ONE = Poly((1,))

ZERO = _ZERO
ONE = _ONE
X = Poly((0, 1))


def as_poly(value) -> Poly:
    """Coerce an int, Rational, or Poly to a Poly over the rationals."""
    if isinstance(value, Poly):
        return value
    if isinstance(value, (int, Fraction)):
        return Poly((value,))
    raise TypeError(f"cannot interpret {value!r} as a polynomial")


def poly_sum(polys) -> Poly:
    """Sum of many polynomials; rational summands are combined over one
    common denominator in integer arithmetic."""
    ps = [p for p in polys if p.num]
    if not ps:
        return _ZERO
    if len(ps) == 1:
        return ps[0]
    if all(p.den for p in ps):
        den = 1
        for p in ps:
            if p.den != 1:
                den = _lcm(den, p.den)
        out = [0] * max(len(p.num) for p in ps)
        for p in ps:
            m = den // p.den
            if m == 1:
                for i, v in enumerate(p.num):
                    out[i] += v
            else:
                for i, v in enumerate(p.num):
                    out[i] += v * m
        return Poly._rational(out, den)
    acc = ps[0]
    for p in ps[1:]:
        acc = acc + p
    return acc


class QuadExt:
    """Element a + b*s of Q[x][s]/(s^2 - modulus).

    The modulus travels with the element; combining elements that carry
    different moduli is a hard `ModulusMismatch` error rather than a
    silent coercion, because a context may hold many extensions at once.
    """

    __slots__ = ("a", "b", "modulus")

    def __init__(self, a, b, modulus):
        object.__setattr__(self, "a", as_poly(a))
        object.__setattr__(self, "b", as_poly(b))
        object.__setattr__(self, "modulus", as_poly(modulus))

    def __setattr__(self, name, value):
        raise AttributeError("QuadExt is immutable")

    @classmethod
    def zero(cls, modulus) -> "QuadExt":
        return cls(_ZERO, _ZERO, modulus)

    @classmethod
    def one(cls, modulus) -> "QuadExt":
        return cls(_ONE, _ZERO, modulus)

    @classmethod
    def radical(cls, modulus) -> "QuadExt":
        """The element s itself."""
        return cls(_ZERO, _ONE, modulus)

    @classmethod
    def from_poly(cls, p, modulus) -> "QuadExt":
        return cls(p, _ZERO, modulus)

    def _check(self, other: "QuadExt"):
        if self.modulus != other.modulus:
            raise ModulusMismatch(
                f"cannot combine s^2={self.modulus!r} with s^2={other.modulus!r}"
            )

    def __add__(self, other):
        if isinstance(other, QuadExt):
            self._check(other)
            return QuadExt(self.a + other.a, self.b + other.b, self.modulus)
        if isinstance(other, (int, Fraction, Poly)):
            return QuadExt(self.a + other, self.b, self.modulus)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, QuadExt):
            self._check(other)
            return QuadExt(self.a - other.a, self.b - other.b, self.modulus)
        if isinstance(other, (int, Fraction, Poly)):
            return QuadExt(self.a - other, self.b, self.modulus)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.modulus)

    def __mul__(self, other):
        if isinstance(other, QuadExt):
            self._check(other)
            a, b, c, d = self.a, self.b, other.a, other.b
            return QuadExt(a * c + (b * d) * self.modulus, a * d + b * c, self.modulus)
        if isinstance(other, (int, Fraction, Poly)):
            return QuadExt(self.a * other, self.b * other, self.modulus)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Poly)):
            return QuadExt(self.a * other, self.b * other, self.modulus)
        return NotImplemented

    def __pow__(self, n: int) -> "QuadExt":
        if n < 0:
            raise ValueError("negative power in quadratic extension")
        result = QuadExt.one(self.modulus)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def conjugate(self) -> "QuadExt":
        """The s -> -s conjugate (a ring automorphism)."""
        return QuadExt(self.a, -self.b, self.modulus)

    def divexact_by_s(self) -> "QuadExt":
        """Exact quotient by s, requiring modulus | a.

        (b + (a/m) s) * s == a + b s, so this inverts multiplication by s.
        A `NotDivisible` here means a malformed closed-form numerator and
        is always a test failure, never expected behaviour.
        """
        return QuadExt(self.b, self.a.divexact(self.modulus), self.modulus)

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __eq__(self, other):
        if isinstance(other, QuadExt):
            return (
                self.modulus == other.modulus
                and self.a == other.a
                and self.b == other.b
            )
        if isinstance(other, (int, Fraction, Poly)):
            return not self.b and self.a == as_poly(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b, self.modulus))

    def __repr__(self):
        return f"QuadExt({self.a!r}, {self.b!r}, s^2={self.modulus!r})"


def root_modulus(h) -> Poly:
    """The discriminant-style modulus h^2 + 4 attached to a given h."""
    h = as_poly(h)
    return h * h + 4


def quad_from_alpha(h) -> QuadExt:
    """The root (h + s)/2 of v^2 - h v - 1 = 0, with s^2 = h^2 + 4."""
    h = as_poly(h)
    half = Fraction(1, 2)
    return QuadExt(h * half, Poly((half,)), root_modulus(h))


def quad_from_beta(h) -> QuadExt:
    """The conjugate root (h - s)/2."""
    h = as_poly(h)
    half = Fraction(1, 2)
    return QuadExt(h * half, Poly((-half,)), root_modulus(h))

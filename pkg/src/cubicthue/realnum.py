"""Certified midpoint-radius real arithmetic.

Every analytic quantity in the engine (roots, logarithms, linear forms,
reduction ratios) flows through :class:`CertifiedReal`, a thin wrapper
around mpmath's outward-rounded interval type that keeps exact dyadic
endpoints accessible as :class:`fractions.Fraction` values.  Operations
never guess: whenever an enclosure straddles a forbidden region the
operation raises and the caller escalates precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Union

from mpmath import iv
from mpmath.libmp import to_rational

from .errors import IndeterminateSignError, PrecisionInsufficientError

Rational = Union[int, Fraction]

DEFAULT_PRECISION = 256


def reduction_precision(Q: int) -> int:
    """Working bits for Baker-Davenport work at denominator bound Q:
    ~40 guard digits beyond Q^2."""
    digits10 = len(str(Q))
    return math.ceil(3.33 * (2 * digits10 + 40))


def _mpf_to_fraction(x) -> Fraction:
    p, q = to_rational(x)
    return Fraction(int(p), int(q))


def _fraction_to_iv(r: Rational):
    r = Fraction(r)
    return iv.mpf(int(r.numerator)) / iv.mpf(int(r.denominator))


class CertifiedReal:
    """An enclosure [lower, upper] of an exact real number, tagged with
    the working precision (bits) used to produce it."""

    __slots__ = ("_ival", "precision")

    def __init__(self, ival, precision: int):
        self._ival = ival
        self.precision = precision

    # -- construction -------------------------------------------------

    @classmethod
    def from_rational(cls, r: Rational, precision: int = DEFAULT_PRECISION) -> "CertifiedReal":
        old = iv.prec
        try:
            iv.prec = precision
            return cls(_fraction_to_iv(r), precision)
        finally:
            iv.prec = old

    @classmethod
    def from_endpoints(cls, lo: Rational, hi: Rational,
                       precision: int = DEFAULT_PRECISION) -> "CertifiedReal":
        if not Fraction(lo) <= Fraction(hi):
            raise ValueError("lower endpoint exceeds upper endpoint")
        old = iv.prec
        try:
            iv.prec = precision
            a = _fraction_to_iv(lo)
            b = _fraction_to_iv(hi)
            return cls(iv.mpf([a.a, b.b]), precision)
        finally:
            iv.prec = old

    @classmethod
    def hull(cls, values: Iterable["CertifiedReal"]) -> "CertifiedReal":
        vals = list(values)
        if not vals:
            raise ValueError("empty hull")
        prec = max(v.precision for v in vals)
        old = iv.prec
        try:
            iv.prec = prec
            lo = min((v._ival.a for v in vals))
            hi = max((v._ival.b for v in vals))
            return cls(iv.mpf([lo, hi]), prec)
        finally:
            iv.prec = old

    # -- exact endpoint access ----------------------------------------

    @property
    def lower(self) -> Fraction:
        return _mpf_to_fraction(self._ival._mpi_[0])

    @property
    def upper(self) -> Fraction:
        return _mpf_to_fraction(self._ival._mpi_[1])

    @property
    def midpoint(self) -> Fraction:
        lo, hi = self.lower, self.upper
        return (lo + hi) / 2

    @property
    def radius(self) -> Fraction:
        lo, hi = self.lower, self.upper
        return (hi - lo) / 2

    @property
    def width(self) -> Fraction:
        return self.upper - self.lower

    # -- predicates ---------------------------------------------------

    def contains(self, r: Rational) -> bool:
        return self.lower <= Fraction(r) <= self.upper

    def contains_zero(self) -> bool:
        return self.contains(0)

    def overlaps(self, other: "CertifiedReal") -> bool:
        return self.lower <= other.upper and other.lower <= self.upper

    def is_positive(self) -> bool:
        return self.lower > 0

    def is_negative(self) -> bool:
        return self.upper < 0

    def sign(self) -> int:
        if self.is_positive():
            return 1
        if self.is_negative():
            return -1
        if self.lower == self.upper == 0:
            return 0
        raise IndeterminateSignError(
            "enclosure [%s, %s] straddles zero" % (self.lower, self.upper))

    # -- arithmetic ---------------------------------------------------

    def _binop(self, other, op):
        if isinstance(other, (int, Fraction)):
            other = CertifiedReal.from_rational(other, self.precision)
        prec = max(self.precision, other.precision)
        old = iv.prec
        try:
            iv.prec = prec
            return CertifiedReal(op(self._ival, other._ival), prec)
        finally:
            iv.prec = old

    def __add__(self, other):
        return self._binop(other, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binop(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return self._binop(other, lambda a, b: b - a)

    def __mul__(self, other):
        return self._binop(other, lambda a, b: a * b)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CertifiedReal.from_rational(other, self.precision)
        if other.contains_zero():
            raise IndeterminateSignError("division by enclosure containing zero")
        return self._binop(other, lambda a, b: a / b)

    def __rtruediv__(self, other):
        if self.contains_zero():
            raise IndeterminateSignError("division by enclosure containing zero")
        return self._binop(other, lambda a, b: b / a)

    def __neg__(self):
        old = iv.prec
        try:
            iv.prec = self.precision
            return CertifiedReal(-self._ival, self.precision)
        finally:
            iv.prec = old

    def __abs__(self):
        old = iv.prec
        try:
            iv.prec = self.precision
            return CertifiedReal(abs(self._ival), self.precision)
        finally:
            iv.prec = old

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise TypeError("only integer powers are supported")
        if k < 0:
            if self.contains_zero():
                raise IndeterminateSignError("negative power of enclosure containing zero")
            return 1 / self.__pow__(-k)
        old = iv.prec
        try:
            iv.prec = self.precision
            return CertifiedReal(self._ival ** k, self.precision)
        finally:
            iv.prec = old

    def log(self) -> "CertifiedReal":
        if not self.is_positive():
            raise IndeterminateSignError(
                "log requires an enclosure strictly above zero, got [%s, %s]"
                % (self.lower, self.upper))
        old = iv.prec
        try:
            iv.prec = self.precision
            return CertifiedReal(iv.log(self._ival), self.precision)
        finally:
            iv.prec = old

    # -- serialization ------------------------------------------------

    def __float__(self) -> float:
        return float(self.midpoint)

    def as_decimal_string(self, digits: int = 30) -> str:
        mid = self.midpoint
        rad = self.radius
        return "%s ± %s @ %d bits" % (
            _decimal(mid, digits), _decimal(rad, 3), self.precision)

    def __repr__(self):
        return "CertifiedReal(%s)" % self.as_decimal_string(20)


def _decimal(r: Fraction, digits: int) -> str:
    if r == 0:
        return "0"
    sign = "-" if r < 0 else ""
    r = abs(r)
    e = math.floor(math.log10(float(r))) if float(r) > 0 else -400
    scaled = r / Fraction(10) ** e
    # one leading digit plus `digits` following
    q = int(scaled * 10 ** digits)
    s = str(q)
    return "%s%s.%se%+d" % (sign, s[0], s[1:] or "0", e)


# -- module-level operation surface ------------------------------------


def enclose_rational(r: Rational, precision: int = DEFAULT_PRECISION) -> CertifiedReal:
    return CertifiedReal.from_rational(r, precision)


def arith(a: CertifiedReal, b: CertifiedReal, op: str) -> CertifiedReal:
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op == "*":
        return a * b
    if op == "/":
        return a / b
    raise ValueError("unknown operator %r" % op)


def power(a: CertifiedReal, k: int) -> CertifiedReal:
    return a ** k


def log_certified(a: CertifiedReal) -> CertifiedReal:
    return a.log()


@dataclass(frozen=True)
class Convergent:
    p: int
    q: int
    index: int

    @property
    def value(self) -> Fraction:
        return Fraction(self.p, self.q)


def _convergents_of_fraction(x: Fraction, Q: int) -> List[Convergent]:
    """All continued-fraction convergents of an exact rational with q <= Q."""
    out: List[Convergent] = []
    pm1, qm1, pm2, qm2 = 1, 0, 0, 1
    num, den = x.numerator, x.denominator
    idx = 0
    while den != 0:
        a = num // den
        p = a * pm1 + pm2
        q = a * qm1 + qm2
        if q > Q:
            break
        out.append(Convergent(p, q, idx))
        idx += 1
        pm2, qm2, pm1, qm1 = pm1, qm1, p, q
        num, den = den, num - a * den
    return out


def continued_fraction_convergents(x: CertifiedReal, Q: int) -> List[Convergent]:
    """Convergents p/q (q <= Q) of the exact real enclosed by x.

    With a zero-radius input the expansion is the exact Euclidean one.
    Otherwise both endpoints are expanded in lockstep; a disagreement in
    any partial quotient before the denominator exceeds Q means the
    enclosure is too wide to pin down the expansion.
    """
    if Q < 1:
        raise ValueError("Q must be >= 1")
    lo, hi = x.lower, x.upper
    if lo == hi:
        return _convergents_of_fraction(lo, Q)
    out: List[Convergent] = []
    pm1, qm1, pm2, qm2 = 1, 0, 0, 1
    idx = 0
    while True:
        fa = lo.numerator // lo.denominator
        fb = hi.numerator // hi.denominator
        if fa != fb:
            raise PrecisionInsufficientError(
                "endpoints disagree on partial quotient %d (denominator %d <= Q=%d)"
                % (idx, qm1, Q))
        p = fa * pm1 + pm2
        q = fa * qm1 + qm2
        if q > Q:
            return out
        out.append(Convergent(p, q, idx))
        idx += 1
        pm2, qm2, pm1, qm1 = pm1, qm1, p, q
        frac_lo, frac_hi = lo - fa, hi - fa
        if frac_lo == 0 or frac_hi == 0:
            # an endpoint terminated; the true expansion beyond this
            # point is not determined by the enclosure
            raise PrecisionInsufficientError(
                "endpoint expansion terminated at denominator %d <= Q=%d" % (qm1, Q))
        lo, hi = 1 / frac_hi, 1 / frac_lo


def _dist_to_nearest_int(r: Fraction) -> Fraction:
    fl = r.numerator // r.denominator
    return min(r - fl, fl + 1 - r)


def nearest_integer_distance(x: CertifiedReal) -> CertifiedReal:
    """Enclosure of the distance from the enclosed real to the nearest
    integer; always a subset of [0, 1/2]."""
    lo, hi = x.lower, x.upper
    if hi - lo >= 1:
        return CertifiedReal.from_endpoints(0, Fraction(1, 2), x.precision)
    dlo, dhi = _dist_to_nearest_int(lo), _dist_to_nearest_int(hi)
    out_lo = min(dlo, dhi)
    out_hi = max(dlo, dhi)
    # an integer inside the interval pulls the minimum to 0
    if lo.numerator // lo.denominator < hi.numerator // hi.denominator or lo.denominator == 1:
        out_lo = Fraction(0)
    # a half-integer inside pulls the maximum to 1/2
    s, t = lo - Fraction(1, 2), hi - Fraction(1, 2)
    if math.ceil(s) <= math.floor(t):
        out_hi = Fraction(1, 2)
    return CertifiedReal.from_endpoints(out_lo, out_hi, x.precision)

"""Classification of solutions into types I/II/III and certified
recovery of the unit-equation exponents (delta, n, m) with their growth
bounds.

The unit representation under test is
    x - y*theta_i = (-1)^delta * (t - theta_i)^n * theta_i^(-m)
in all three real embeddings simultaneously.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from .errors import (IndeterminateSignError, PrecisionInsufficientError,
                     VerificationFailedError)
from .forms import evaluate, family_form
from .realnum import CertifiedReal
from .roots import RootTriple, isolate_roots

ROUNDING_TOLERANCE = Fraction(1, 100)


class SolutionType(enum.Enum):
    SMALL = "Small"
    TYPE_I = "TypeI"
    TYPE_II = "TypeII"
    TYPE_III = "TypeIII"
    NONE = "None"


def _interval_endpoints(which: int, t: int, y_abs: int) -> Tuple[Fraction, Fraction]:
    c113 = Fraction(113, 100)
    cy = 1 - Fraction(1, y_abs ** 3)
    if which == 1:
        t5 = Fraction(t) ** 5
        return (-c113 / t5, -cy / t5)
    if which == 2:
        t5 = Fraction(t) ** 5
        return (t + cy / t5, t + c113 / t5)
    t8 = Fraction(t) ** 8
    return (t ** 4 - 2 * t - c113 / t8, t ** 4 - 2 * t - cy / t8)


def classify(t: int, x: int, y: int) -> SolutionType:
    """Membership of x/y in I_1/I_2/I_3 (endpoints depend on |y|),
    decided by exact rational comparison; |y| <= 1 is Small."""
    if t < 10:
        raise ValueError("classification intervals are defined for t >= 10")
    if abs(y) <= 1:
        return SolutionType.SMALL
    r = Fraction(x, y)
    for which, tag in ((1, SolutionType.TYPE_I), (2, SolutionType.TYPE_II),
                       (3, SolutionType.TYPE_III)):
        lo, hi = _interval_endpoints(which, t, abs(y))
        if lo < r < hi:
            return tag
    return SolutionType.NONE


@dataclass(frozen=True)
class ExponentPair:
    delta: int
    n: int
    m: int
    residual: CertifiedReal

    def as_tuple(self) -> Tuple[int, int, int]:
        return (self.delta, self.n, self.m)


def _linear_units(t: int, x: int, y: int, roots: RootTriple):
    """x - y*theta_i for the three embeddings, as enclosures."""
    return tuple(x - th * y for th in roots.thetas)


def recover_exponents(t: int, x: int, y: int,
                      precision: int = 320,
                      max_escalations: int = 6) -> ExponentPair:
    """Solve the log-linear system for (n, m), round, fix delta by sign
    and certify the unit representation in all three embeddings."""
    if t < 2:
        raise ValueError("recovery requires t >= 2")
    if evaluate(family_form(3, t), x, y) != 1:
        raise ValueError("(%d, %d) is not a solution at t=%d" % (x, y, t))
    last_err: Exception = PrecisionInsufficientError("not attempted")
    for attempt in range(max_escalations + 1):
        prec = precision * 2 ** attempt
        try:
            return _recover_at_precision(t, x, y, prec)
        except (IndeterminateSignError, PrecisionInsufficientError) as err:
            last_err = err
    raise PrecisionInsufficientError(
        "exponent recovery for t=%d, (%d,%d) failed after escalation: %s"
        % (t, x, y, last_err))


def _recover_at_precision(t: int, x: int, y: int, prec: int) -> ExponentPair:
    roots = isolate_roots(t, prec)
    units = _linear_units(t, x, y, roots)
    logs_u = [abs(u).log() for u in units]
    logs_te = [abs(t - th).log() for th in roots.thetas]
    logs_th = [abs(th).log() for th in roots.thetas]
    # 2x2 solve on embeddings 1 and 2:  l_i = n*u_i - m*v_i
    u1, u2 = logs_te[0], logs_te[1]
    v1, v2 = logs_th[0], logs_th[1]
    l1, l2 = logs_u[0], logs_u[1]
    det = u2 * v1 - u1 * v2
    n_enc = (l2 * v1 - l1 * v2) / det
    m_enc = (l2 * u1 - l1 * u2) / det
    n = _round_mid(n_enc)
    m = _round_mid(m_enc)
    residual = CertifiedReal.hull([abs(n_enc - n), abs(m_enc - m)])
    if not residual.upper < ROUNDING_TOLERANCE:
        raise PrecisionInsufficientError(
            "rounding deviation %s exceeds tolerance" % float(residual.upper))
    # delta from the sign of the first embedding
    unit_vals = [_signed_unit(t - th, th, n, m) for th in roots.thetas]
    s_solution = units[0].sign()
    s_unit = unit_vals[0].sign()
    delta = 0 if s_solution == s_unit else 1
    sign_factor = -1 if delta else 1
    for u, w in zip(units, unit_vals):
        diff = u - sign_factor * w
        if not diff.contains_zero():
            raise VerificationFailedError(
                "unit representation (delta=%d, n=%d, m=%d) fails for t=%d, (%d,%d)"
                % (delta, n, m, t, x, y))
        # reject sloppy containment: the difference must be pinned near 0
        if abs(u).upper > 0 and diff.width > abs(u).upper:
            raise PrecisionInsufficientError("containment check too wide")
    return ExponentPair(delta, n, m, residual)


def _signed_unit(base1: CertifiedReal, base2: CertifiedReal, n: int, m: int) -> CertifiedReal:
    return (base1 ** n) * (base2 ** (-m))


def _round_mid(enc: CertifiedReal) -> int:
    mid = enc.midpoint
    return (2 * mid.numerator + mid.denominator) // (2 * mid.denominator)


def k_relation(sol_type: SolutionType, n: int, m: int) -> int:
    """The integer combination governing exponent growth: k = 3n-m-1
    (type I), k = n-3m-1 (type II), s = n+m (type III)."""
    if sol_type == SolutionType.TYPE_I:
        return 3 * n - m - 1
    if sol_type == SolutionType.TYPE_II:
        return n - 3 * m - 1
    if sol_type == SolutionType.TYPE_III:
        return n + m
    raise ValueError("k relation is defined for types I/II/III only")


@dataclass(frozen=True)
class GrowthBound:
    sol_type: SolutionType
    t: int
    bound: CertifiedReal


_GROWTH = {
    SolutionType.TYPE_I: (Fraction(86, 10), 6),
    SolutionType.TYPE_II: (Fraction(35, 10), 3),
    SolutionType.TYPE_III: (Fraction(98, 10), 3),
}


def growth_lower_bound(sol_type: SolutionType, t: int,
                       precision: int = 128) -> GrowthBound:
    """Lower bound on max{|m|, |n|} for a hypothetical non-special
    solution of the given type: c * t^p * ln t."""
    if t < 10:
        raise ValueError("growth bounds hold for t >= 10")
    try:
        coef, p = _GROWTH[sol_type]
    except KeyError:
        raise ValueError("growth bound defined for types I/II/III only")
    T = CertifiedReal.from_rational(t, precision)
    return GrowthBound(sol_type, t, coef * T ** p * T.log())


def special_exponent_solutions(sol_type: SolutionType, t: int):
    """The solution attached to the degenerate exponent case of each
    type (I: k=0, II: m=0, III: m=n0), verified exactly."""
    if t < 2:
        raise ValueError("requires t >= 2")
    if sol_type == SolutionType.TYPE_I:
        pair = (1 - t ** 3, t ** 8 - 3 * t ** 5 + 3 * t * t)
    elif sol_type == SolutionType.TYPE_II:
        pair = (t, 1)
    elif sol_type == SolutionType.TYPE_III:
        pair = (t ** 4 - 2 * t, 1)
    else:
        raise ValueError("special solutions exist for types I/II/III only")
    if evaluate(family_form(3, t), *pair) != 1:
        raise VerificationFailedError("special solution check failed at t=%d" % t)
    return pair

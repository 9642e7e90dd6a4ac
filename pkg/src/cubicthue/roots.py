"""Certified real roots of P(x) = F_{3,t}(x,1) and certification of the
sixteen kappa-interval claims underpinning the asymptotic analysis.

Root enclosures come from exact-rational sign bisection: every bracket
endpoint is a dyadic rational at which P is evaluated exactly, so the
sign changes are unconditional.  For t >= 10 the series expansions of
the roots hand us isolating windows for free; smaller t falls back to
critical-point splitting of the full range.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

from .errors import PrecisionInsufficientError
from .realnum import CertifiedReal

# published target interval for each kappa index
KAPPA_TARGETS: Dict[int, Tuple[Fraction, Fraction]] = {
    1: (Fraction(3), Fraction("3.1")),
    2: (Fraction(8), Fraction("8.03")),
    3: (Fraction(5), Fraction("5.02")),
    4: (Fraction("1.8"), Fraction("2.2")),
    5: (Fraction("7.99"), Fraction("8.03")),
    6: (Fraction(3), Fraction("3.01")),
    7: (Fraction("3.8"), Fraction("4.3")),
    8: (Fraction(0), Fraction("3.1")),
    9: (Fraction(0), Fraction("1.1")),
    10: (Fraction("4.9"), Fraction(5)),
    11: (Fraction("4.5"), Fraction("7.7")),
    12: (Fraction("4.5"), Fraction("5.7")),
    13: (Fraction("2.9"), Fraction("3.1")),
    14: (Fraction("25.9"), Fraction("26.6")),
    15: (Fraction("2.9"), Fraction("3.1")),
    16: (Fraction("-0.1"), Fraction("0.1")),
}

T_ONLY_KAPPAS = (1, 2, 3, 5, 6, 9, 10, 12, 13, 15, 16)
ENVELOPE_KAPPAS = (4, 7, 8, 11, 14)


def default_precision(t: int) -> int:
    """Scales with t so that kappa extraction (which multiplies root
    errors by up to t^12) keeps ~60 certified bits."""
    return 14 * abs(t).bit_length() + 200


def cubic_coeffs(t: int) -> Tuple[int, int, int]:
    """(B, C, D) of P(x) = x^3 + B x^2 + C x + D for F_{3,t}."""
    return (-(t ** 4 - t), t ** 5 - 2 * t * t, 1)


def _eval_monic_cubic(B: int, C: int, D: int, x: Fraction) -> Fraction:
    return ((x + B) * x + C) * x + D


def _bisect(B: int, C: int, D: int, lo: Fraction, hi: Fraction,
            width: Fraction) -> Tuple[Fraction, Fraction]:
    flo = _eval_monic_cubic(B, C, D, lo)
    fhi = _eval_monic_cubic(B, C, D, hi)
    if flo == 0:
        return (lo - width / 4, lo + width / 4)
    if fhi == 0:
        return (hi - width / 4, hi + width / 4)
    if (flo < 0) == (fhi < 0):
        raise PrecisionInsufficientError("no sign change over bracket")
    while hi - lo > width:
        mid = (lo + hi) / 2
        fm = _eval_monic_cubic(B, C, D, mid)
        if fm == 0:
            return (mid - width / 4, mid + width / 4)
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi, fhi = mid, fm
    return lo, hi


def isolate_real_roots_monic_cubic(B: int, C: int, D: int,
                                   width: Fraction) -> List[Tuple[Fraction, Fraction]]:
    """Certified brackets (width-limited, sign-change validated) of all
    simple real roots of x^3 + B x^2 + C x + D, via critical-point
    splitting into monotone pieces."""
    M = 1 + max(abs(B), abs(C), abs(D))
    lo, hi = Fraction(-M), Fraction(M)
    disc4 = B * B - 3 * C
    cut_points: List[Fraction] = [lo]
    if disc4 > 0:
        s0 = math.isqrt(disc4)
        # critical points (-B -+ sqrt(disc4))/3, bracketed by isqrt
        c1_lo, c1_hi = Fraction(-B - s0 - 1, 3), Fraction(-B - s0, 3)
        c2_lo, c2_hi = Fraction(-B + s0, 3), Fraction(-B + s0 + 1, 3)
        for c in (c1_lo, c1_hi, c2_lo, c2_hi):
            if lo < c < hi:
                cut_points.append(c)
    cut_points.append(hi)
    out = []
    for a, b in zip(cut_points, cut_points[1:]):
        fa = _eval_monic_cubic(B, C, D, a)
        fb = _eval_monic_cubic(B, C, D, b)
        if fa == 0:
            if not any(br[0] <= a <= br[1] for br in out):
                out.append((a - width / 4, a + width / 4))
            continue
        if fb != 0 and (fa < 0) != (fb < 0):
            out.append(_bisect(B, C, D, a, b, width))
    # trailing exact-root endpoint
    fb = _eval_monic_cubic(B, C, D, hi)
    if fb == 0 and not any(br[0] <= hi <= br[1] for br in out):
        out.append((hi - width / 4, hi + width / 4))
    return out


@dataclass(frozen=True)
class RootTriple:
    theta1: CertifiedReal
    theta2: CertifiedReal
    theta3: CertifiedReal
    t: int
    precision: int

    @property
    def thetas(self) -> Tuple[CertifiedReal, CertifiedReal, CertifiedReal]:
        return (self.theta1, self.theta2, self.theta3)


def isolate_roots(t: int, precision: Optional[int] = None) -> RootTriple:
    """The three certified real roots theta1 < theta2 < theta3 of
    F_{3,t}(x,1); requires positive discriminant (t not in {0,1})."""
    if t in (0, 1):
        raise ValueError("discriminant is non-positive for t in {0,1}")
    if precision is None:
        precision = default_precision(t)
    B, C, D = cubic_coeffs(t)
    # kappa extraction multiplies root errors by up to t^12 ~ 2^(12 lg t),
    # and the enclosures must separate values ~t^-3 from the interval
    # endpoints, so nearly the full working precision goes into the bracket
    width = Fraction(1, 2 ** max(precision - 8, 32))
    if t >= 10:
        t5 = Fraction(t) ** 5
        t8 = Fraction(t) ** 8
        brackets = [
            _bisect(B, C, D, -2 / t5, Fraction(0), width),
            _bisect(B, C, D, Fraction(t), t + 2 / t5, width),
            _bisect(B, C, D, t ** 4 - 2 * t - 2 / t8, Fraction(t ** 4 - 2 * t), width),
        ]
    else:
        brackets = isolate_real_roots_monic_cubic(B, C, D, width)
        if len(brackets) != 3:
            raise PrecisionInsufficientError(
                "expected 3 separated real roots for t=%d, found %d" % (t, len(brackets)))
        brackets.sort()
    for (a, b), (c, _) in zip(brackets, brackets[1:]):
        if not b < c:
            raise PrecisionInsufficientError("root enclosures overlap at t=%d" % t)
    enc = [CertifiedReal.from_endpoints(a, b, precision) for a, b in brackets]
    return RootTriple(enc[0], enc[1], enc[2], t, precision)


def _kappa_t_only_expr(j: int, t: int, roots: RootTriple) -> CertifiedReal:
    th1, th2, th3 = roots.thetas
    prec = roots.precision
    T = CertifiedReal.from_rational(t, prec)
    lnt = T.log()
    if j == 1:
        return -(th1 * T ** 11) - T ** 6 - 2 * T ** 3
    if j == 2:
        return (th2 - T) * T ** 11 - T ** 6 - 3 * T ** 3
    if j == 3:
        return (T ** 4 - 2 * T - th3) * T ** 11 - T ** 3
    if j == 5:
        return T ** 6 * (9 * lnt - 6 / T ** 3 - ((th3 - T) / (th2 - T)).log())
    if j == 6:
        return T ** 6 * (3 * lnt - 2 / T ** 3 - (th3 / th2).log())
    if j == 9:
        return T ** 3 * (T ** 3 - 3 - (th3 - T) / (T - th1))
    if j == 10:
        return (th3 / abs(th1) - T ** 9 + 4 * T ** 6) / T ** 3
    if j == 12:
        return T ** 6 * (3 * lnt - 3 / T ** 3 - ((th3 - T) / (T - th1)).log())
    if j == 13:
        return T ** 6 * (9 * lnt - 4 / T ** 3 - (th3 / abs(th1)).log())
    if j == 15:
        return T ** 3 * (6 * lnt - ((T - th1) / (th2 - T)).log())
    if j == 16:
        return T ** 6 * (6 * lnt - 2 / T ** 3 - (th2 / abs(th1)).log())
    raise ValueError("kappa_%d is not determined by t alone" % j)


def kappa_t_only(j: int, t: int, roots: Optional[RootTriple] = None,
                 precision: Optional[int] = None) -> CertifiedReal:
    """Enclosure of kappa_j for the indices fixed by t alone, obtained
    by inverting the defining series identity."""
    if j not in T_ONLY_KAPPAS:
        raise ValueError("kappa_%d depends on the solution interval" % j)
    if t < 10:
        raise ValueError("kappa claims are certified for t >= 10 only")
    if roots is None:
        roots = isolate_roots(t, precision)
    return _kappa_t_only_expr(j, t, roots)


def _solution_ratio_hull(which: int, t: int) -> Tuple[Fraction, Fraction]:
    """The x/y range swept by |y| in [2, inf) for the given solution
    type: the hull of I_1, I_2 or I_3."""
    c113 = Fraction(113, 100)
    c875 = Fraction(7, 8)  # 1 - 1/|y|^3 at its extreme |y|=2
    if which == 1:
        t5 = Fraction(t) ** 5
        return (-c113 / t5, -c875 / t5)
    if which == 2:
        t5 = Fraction(t) ** 5
        return (t + c875 / t5, t + c113 / t5)
    if which == 3:
        t8 = Fraction(t) ** 8
        return (t ** 4 - 2 * t - c113 / t8, t ** 4 - 2 * t - c875 / t8)
    raise ValueError(which)


def _envelope(lo: Fraction, hi: Fraction, prec: int, pieces: int,
              f: Callable[[CertifiedReal], CertifiedReal]) -> CertifiedReal:
    step = (hi - lo) / pieces
    vals = []
    for i in range(pieces):
        r = CertifiedReal.from_endpoints(lo + i * step, lo + (i + 1) * step, prec)
        vals.append(f(r))
    return CertifiedReal.hull(vals)


def kappa_envelope(j: int, t: int, roots: Optional[RootTriple] = None,
                   precision: Optional[int] = None, pieces: int = 16) -> CertifiedReal:
    """Enclosure of the solution-dependent kappa_j with the entire
    admissible x/y interval substituted as an interval operand
    (subdivided to control dependency widening)."""
    if j not in ENVELOPE_KAPPAS:
        raise ValueError("kappa_%d is determined by t alone" % j)
    if t < 10:
        raise ValueError("kappa claims are certified for t >= 10 only")
    if roots is None:
        roots = isolate_roots(t, precision)
    th1, th2, th3 = roots.thetas
    prec = roots.precision
    T = CertifiedReal.from_rational(t, prec)
    lnt = T.log()
    if j in (4, 7):
        lo, hi = _solution_ratio_hull(1, t)
        if j == 4:
            f = lambda r: T ** 3 * (T ** 3 - 2 - (r - th3) / (r - th2))
        else:
            f = lambda r: T ** 6 * (3 * lnt - 2 / T ** 3 - ((r - th3) / (r - th2)).log())
    elif j in (8, 11):
        lo, hi = _solution_ratio_hull(2, t)
        if j == 8:
            f = lambda r: T ** 3 * (T ** 3 - 3 - (th3 - r) / (r - th1))
        else:
            f = lambda r: T ** 6 * (3 * lnt - 3 / T ** 3 - ((th3 - r) / (r - th1)).log())
    else:
        lo, hi = _solution_ratio_hull(3, t)
        five_halves = Fraction(5, 2)
        c259 = Fraction(25, 3)
        f = lambda r: T ** 12 * (((r - th1) / (r - th2)).log()
                                 - 1 / T ** 3 - five_halves / T ** 6 - c259 / T ** 9)
    return _envelope(lo, hi, prec, pieces, f)


@dataclass(frozen=True)
class KappaRow:
    j: int
    enclosure: CertifiedReal
    target: Tuple[Fraction, Fraction]
    passed: bool

    def to_json(self, t: int) -> dict:
        return {
            "schema": 1,
            "t": t,
            "kappa": self.j,
            "lower": float(self.enclosure.lower),
            "upper": float(self.enclosure.upper),
            "target": [float(self.target[0]), float(self.target[1])],
            "pass": self.passed,
        }


@dataclass(frozen=True)
class KappaReport:
    t: int
    rows: Tuple[KappaRow, ...]

    @property
    def all_pass(self) -> bool:
        return all(r.passed for r in self.rows)

    def to_jsonl(self) -> str:
        return "\n".join(json.dumps(r.to_json(self.t)) for r in self.rows)


def verify_kappas(t: int, precision: Optional[int] = None) -> KappaReport:
    """All sixteen kappa enclosures checked against the claimed target
    intervals; failures are recorded, never raised."""
    if t < 10:
        raise ValueError("kappa claims are certified for t >= 10 only")
    roots = isolate_roots(t, precision)
    rows = []
    for j in range(1, 17):
        if j in T_ONLY_KAPPAS:
            enc = kappa_t_only(j, t, roots)
        else:
            enc = kappa_envelope(j, t, roots)
        lo, hi = KAPPA_TARGETS[j]
        passed = lo < enc.lower and enc.upper < hi
        rows.append(KappaRow(j, enc, (lo, hi), passed))
    return KappaReport(t, tuple(rows))


def intervals_disjoint(t: int, y_abs: int = 2) -> bool:
    """sup I1 < inf I2 < sup I2 < inf I3 at the given |y|."""
    c113 = Fraction(113, 100)
    cy = 1 - Fraction(1, y_abs ** 3)
    t5 = Fraction(t) ** 5
    t8 = Fraction(t) ** 8
    sup1 = -cy / t5
    inf2, sup2 = t + cy / t5, t + c113 / t5
    inf3 = t ** 4 - 2 * t - c113 / t8
    return sup1 < inf2 < sup2 < inf3

"""Siegel identity, the three linear forms in logarithms, their upper
bounds, Matveev's explicit lower bound, and the absolute bound on t.

Constants are carried as exact rationals where the source analysis gives
them exactly (7.7, 7.9, 8.9, 3.5, 8.6, 9.8, 27.65, 1.07e15).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from mpmath import mp

from .errors import HeightBoundViolatedError
from .realnum import CertifiedReal
from .roots import RootTriple, isolate_roots

# decay rates of |Lambda_which| in the exponent size
LAMBDA_DECAY = {1: Fraction(77, 10), 2: Fraction(79, 10), 3: Fraction(89, 10)}

# n/log(35n) cap per unit of log^2 t, derived from the Matveev constant
EXPONENT_CAP = 107 * 10 ** 13

CONTRADICTION_COEFF = {
    1: (Fraction(77, 10) * Fraction(86, 10), 6),   # decay * growth, t^6
    2: (Fraction(2765, 100), 3),
    3: (Fraction(89, 10) * Fraction(98, 10), 3),
}


def siegel_residual(t: int, x: int, y: int,
                    roots: Optional[RootTriple] = None,
                    precision: Optional[int] = None) -> CertifiedReal:
    """(th2-th3)(x-y*th1) + (th3-th1)(x-y*th2) + (th1-th2)(x-y*th3);
    an algebraic identity, so the enclosure must contain 0 for any
    integers x, y."""
    if roots is None:
        roots = isolate_roots(t, precision)
    th1, th2, th3 = roots.thetas
    return ((th2 - th3) * (x - th1 * y)
            + (th3 - th1) * (x - th2 * y)
            + (th1 - th2) * (x - th3 * y))


@dataclass(frozen=True)
class LogLinearForm:
    which: int
    t: int
    coefficients: Tuple[int, int, int]        # (b1, b2, b3) on (alpha1, alpha2, alpha3)
    log_arguments: Tuple[CertifiedReal, CertifiedReal, CertifiedReal]
    value: CertifiedReal


def lambda_log_arguments(which: int, roots: RootTriple
                         ) -> Tuple[CertifiedReal, CertifiedReal, CertifiedReal]:
    """(alpha1, alpha2, alpha3) with Lambda = m log a1 + n log a2 + log a3."""
    th1, th2, th3 = roots.thetas
    T = CertifiedReal.from_rational(roots.t, roots.precision)
    if which == 1:
        return (th3 / th2, (T - th2) / (T - th3), (th1 - th3) / (th1 - th2))
    if which == 2:
        return (abs(th3 / th1), abs((T - th1) / (T - th3)), (th3 - th2) / (th2 - th1))
    if which == 3:
        return (abs(th2 / th1), abs((T - th1) / (T - th2)), (th3 - th2) / (th3 - th1))
    raise ValueError("which must be 1, 2 or 3")


def lambda_value(which: int, t: int, n: int, m: int,
                 roots: Optional[RootTriple] = None,
                 precision: Optional[int] = None) -> LogLinearForm:
    """Certified enclosure of Lambda_which at integer exponents (n, m)."""
    if roots is None:
        roots = isolate_roots(t, precision)
    a1, a2, a3 = lambda_log_arguments(which, roots)
    value = m * a1.log() + n * a2.log() + a3.log()
    return LogLinearForm(which, t, (m, n, 1), (a1, a2, a3), value)


def lambda_upper_bound(which: int, t: int, exponent_size: int) -> float:
    """ln 2 - c * exponent_size * ln t with c in {7.7, 7.9, 8.9}."""
    c = LAMBDA_DECAY[which]
    return math.log(2) - float(c) * exponent_size * math.log(t)


@dataclass(frozen=True)
class MatveevInput:
    nlogs: int
    D: int
    chi: int
    A: Tuple[float, ...]
    B: float

    def __post_init__(self):
        if self.chi not in (1, 2):
            raise ValueError("chi must be 1 or 2")
        if len(self.A) != self.nlogs:
            raise ValueError("need one A_i per logarithm")
        if any(a <= 0 for a in self.A):
            raise ValueError("A_i must be positive")

    @property
    def omega(self) -> float:
        return math.prod(self.A)


def matveev_C(n: int, chi: int) -> float:
    return (16 / (math.factorial(n) * chi) * math.e ** n * (2 * n + 1 + 2 * chi)
            * (n + 2) * (4 * n + 4) ** (n + 1) * (math.e * n / 2) ** chi)


def matveev_C0(n: int, D: int) -> float:
    return math.log(math.exp(4.4 * n + 7) * n ** 5.5 * D * D * math.log(math.e * D))


def matveev_W0(B: float, D: int) -> float:
    return math.log(1.5 * math.e * B * D * math.log(math.e * D))


def matveev_bound(inp: MatveevInput) -> float:
    """Lower bound for ln|Lambda|: -C * C0 * W0 * D^2 * Omega."""
    C = matveev_C(inp.nlogs, inp.chi)
    C0 = matveev_C0(inp.nlogs, inp.D)
    W0 = matveev_W0(inp.B, inp.D)
    return -C * C0 * W0 * inp.D ** 2 * inp.omega


def matveev_family_coefficient() -> float:
    """Coefficient K in ln|Lambda_2| > -K * ln^3 t * ln(35 n), from the
    family parameterization D=6, chi=1, A = (18, 18, 36) * ln t, B=n/2.
    The W0 prefactor 1.5 e (n/2) 6 ln(6e) is below 35 n, so ln(35 n)
    majorizes W0."""
    C = matveev_C(3, 1)
    C0 = matveev_C0(3, 6)
    return C * C0 * 36 * (18 * 18 * 36)


def w0_prefactor() -> float:
    """1.5 e B D ln(eD) per unit of n at B=n/2, D=6; must be <= 35."""
    return 1.5 * math.e * 0.5 * 6 * math.log(6 * math.e)


@dataclass(frozen=True)
class FamilyMatveevResult:
    which: int
    t: int
    coefficient: float
    height_checks: Tuple[bool, bool, bool]

    def bound_ln(self, t: int, n: int) -> float:
        return -self.coefficient * math.log(t) ** 3 * math.log(35 * n)

    def describe(self) -> str:
        return "ln|Lambda_%d| > -%.6g * ln(t)^3 * ln(35*n)" % (self.which, self.coefficient)


def check_height_bounds(roots: RootTriple) -> Tuple[bool, bool, bool]:
    """Certified checks of the three displayed height inequalities
    against 6 ln t and 3 ln t."""
    th1, th2, th3 = roots.thetas
    t = roots.t
    T = CertifiedReal.from_rational(t, roots.precision)
    lnt = T.log()
    h_diff = Fraction(2, 3) * ((th3 - th2) * (th3 - th1) * (th2 - th1)).log()
    h_ratio = Fraction(1, 6) * ((th3 / th1) ** 2).log()
    h_unit = Fraction(1, 6) * (((T - th3) / (T - th2)) ** 2).log()
    return (
        h_diff.upper < (6 * lnt).lower,
        h_ratio.upper < (3 * lnt).lower,
        h_unit.upper < (3 * lnt).lower,
    )


def matveev_for_family(which: int, t: int,
                       roots: Optional[RootTriple] = None,
                       precision: Optional[int] = None) -> FamilyMatveevResult:
    """Instantiate Matveev's bound for the family at this t: verify the
    height bounds numerically and return the (t-independent) coefficient
    of ln^3 t * ln(35 n)."""
    if t < 10:
        raise ValueError("family parameterization assumes t >= 10")
    if roots is None:
        roots = isolate_roots(t, precision)
    checks = check_height_bounds(roots)
    if not all(checks):
        raise HeightBoundViolatedError(
            "height inequality failed at t=%d: %s" % (t, checks))
    if not w0_prefactor() <= 35:
        raise HeightBoundViolatedError("W0 prefactor exceeds 35")
    return FamilyMatveevResult(which, t, matveev_family_coefficient(), checks)


def _growth_feasible(t, dps: int = 60) -> bool:
    """Can the forced growth n >= 3.5 t^3 ln t coexist with the Matveev
    cap n / ln(35 n) < 1.07e15 ln^2 t?"""
    with mp.workdps(dps):
        tt = mp.mpf(t)
        g = mp.mpf("3.5") * tt ** 3 * mp.log(tt)
        return g / mp.log(35 * g) < mp.mpf(EXPONENT_CAP) * mp.log(tt) ** 2


def derive_t_max(which: int = 2) -> Tuple[int, float]:
    """Largest integer t compatible with both the growth bound and the
    Matveev cap (monotone bisection), plus the matching n ceiling."""
    if which != 2:
        raise ValueError("the binding bound comes from Lambda_2")
    lo, hi = 10, 10 ** 7
    if not _growth_feasible(lo) or _growth_feasible(hi):
        raise AssertionError("feasibility predicate lost its bracket")
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if _growth_feasible(mid):
            lo = mid
        else:
            hi = mid
    with mp.workdps(60):
        tt = mp.mpf(lo)
        n = mp.mpf("1e18")
        for _ in range(200):
            n = mp.mpf(EXPONENT_CAP) * mp.log(tt) ** 2 * mp.log(35 * n)
        n_max = float(n)
    return lo, n_max


def contradiction_threshold(which: int, t: int) -> float:
    """The combined upper bound on ln|Lambda_which| at the growth
    threshold: -27.65 t^3 ln^2 t for which=2 and the analogous decay x
    growth products for which=1,3."""
    coef, p = CONTRADICTION_COEFF[which]
    return -float(coef) * t ** p * math.log(t) ** 2

"""Integer binary cubic forms, the parametric families, their known
solution sets, and GL2(Z) actions.  Everything here is exact integer
arithmetic."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import List, Optional, Sequence, Tuple

Matrix = Tuple[Tuple[int, int], Tuple[int, int]]

IDENTITY: Matrix = ((1, 0), (0, 1))


@dataclass(frozen=True)
class BinaryCubicForm:
    """a*x^3 + b*x^2*y + c*x*y^2 + d*y^3 with integer coefficients."""

    a: int
    b: int
    c: int
    d: int

    def __call__(self, x: int, y: int) -> int:
        return evaluate(self, x, y)

    @property
    def coefficients(self) -> Tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def discriminant(self) -> int:
        return discriminant(self)

    def to_json(self) -> dict:
        return {"a": self.a, "b": self.b, "c": self.c, "d": self.d}

    @classmethod
    def from_json(cls, rec: dict) -> "BinaryCubicForm":
        return cls(rec["a"], rec["b"], rec["c"], rec["d"])

    def __str__(self):
        return "(%d)x^3 + (%d)x^2y + (%d)xy^2 + (%d)y^3" % self.coefficients


@dataclass(frozen=True)
class FamilyId:
    index: int
    t: int

    def __post_init__(self):
        if self.index not in (1, 2, 3, 4):
            raise ValueError("family index must be 1..4")


@dataclass(frozen=True)
class SolutionSet:
    t: int
    solutions: Tuple[Tuple[int, int], ...]

    def restricted(self, y_bound: int) -> Tuple[Tuple[int, int], ...]:
        return tuple(s for s in self.solutions if abs(s[1]) <= y_bound)

    def __contains__(self, pair):
        return tuple(pair) in self.solutions

    def __len__(self):
        return len(self.solutions)


def evaluate(F: BinaryCubicForm, x: int, y: int) -> int:
    return ((F.a * x + F.b * y) * x + F.c * y * y) * x + F.d * y ** 3


def discriminant(F: BinaryCubicForm) -> int:
    a, b, c, d = F.coefficients
    return (18 * a * b * c * d - 4 * b ** 3 * d + b * b * c * c
            - 4 * a * c ** 3 - 27 * a * a * d * d)


def family_form(index, t: Optional[int] = None) -> BinaryCubicForm:
    if isinstance(index, FamilyId):
        index, t = index.index, index.t
    if t is None:
        raise TypeError("parameter t required")
    if index == 1:
        return BinaryCubicForm(1, -(t + 1), t, 1)
    if index == 2:
        return BinaryCubicForm(1, 0, -t * t, 1)
    if index == 3:
        return BinaryCubicForm(1, -(t ** 4 - t), t ** 5 - 2 * t * t, 1)
    if index == 4:
        return BinaryCubicForm(1, -(t ** 4 + 4 * t), t ** 5 + 3 * t * t, 1)
    raise ValueError("family index must be 1..4")


def family_discriminant_poly(t: int) -> int:
    """The closed form of disc(F_{3,t}) as a polynomial in t."""
    return (t ** 18 - 10 * t ** 15 + 41 * t ** 12 - 90 * t ** 9
            + 102 * t ** 6 - 40 * t ** 3 - 27)


def known_solutions(t: int) -> SolutionSet:
    """The complete solution set of F_{3,t}(x,y)=1 (degenerate duplicates
    at t in {0,1} removed; the extra pair (6,-5) appears at t=-1)."""
    sols = [
        (1, 0),
        (0, 1),
        (t, 1),
        (t ** 4 - 2 * t, 1),
        (1 - t ** 3, t ** 8 - 3 * t ** 5 + 3 * t * t),
    ]
    if t == -1:
        sols.append((6, -5))
    F = family_form(3, t)
    uniq = sorted(set(sols))
    for (x, y) in uniq:
        assert evaluate(F, x, y) == 1, (t, x, y)
    return SolutionSet(t, tuple(uniq))


def _det(M: Matrix) -> int:
    return M[0][0] * M[1][1] - M[0][1] * M[1][0]


def matrix_to_json(M: Matrix) -> Tuple[int, int, int, int]:
    return (M[0][0], M[0][1], M[1][0], M[1][1])


def matrix_from_json(row_major: Sequence[int]) -> Matrix:
    m11, m12, m21, m22 = row_major
    return ((m11, m12), (m21, m22))


def matmul(M: Matrix, N: Matrix) -> Matrix:
    return (
        (M[0][0] * N[0][0] + M[0][1] * N[1][0], M[0][0] * N[0][1] + M[0][1] * N[1][1]),
        (M[1][0] * N[0][0] + M[1][1] * N[1][0], M[1][0] * N[0][1] + M[1][1] * N[1][1]),
    )


def apply_gl2(F: BinaryCubicForm, M: Matrix) -> BinaryCubicForm:
    """Coefficients of F(m11*x + m12*y, m21*x + m22*y); M must be
    unimodular."""
    if _det(M) not in (1, -1):
        raise ValueError("matrix must have determinant +-1, got %d" % _det(M))
    (m11, m12), (m21, m22) = M
    # convolve the linear substitutions power by power
    u = (m11, m12)  # x -> m11 X + m12 Y
    v = (m21, m22)  # y -> m21 X + m22 Y
    coeffs = [0, 0, 0, 0]
    for (weight, lin_x_pow, lin_y_pow) in (
        (F.a, 3, 0), (F.b, 2, 1), (F.c, 1, 2), (F.d, 0, 3),
    ):
        term = [1]
        for _ in range(lin_x_pow):
            term = _lin_mul(term, u)
        for _ in range(lin_y_pow):
            term = _lin_mul(term, v)
        for i, coef in enumerate(term):
            coeffs[i] += weight * coef
    return BinaryCubicForm(*coeffs)


def _lin_mul(poly: List[int], lin: Tuple[int, int]) -> List[int]:
    p, q = lin
    out = [0] * (len(poly) + 1)
    for i, coef in enumerate(poly):
        out[i] += coef * p
        out[i + 1] += coef * q
    return out


def gl2_equivalent_search(F: BinaryCubicForm, G: BinaryCubicForm,
                          entry_bound: int) -> Optional[Matrix]:
    """Brute-force search for a unimodular M with apply_gl2(F, M) == G
    and all |entries| <= entry_bound.  Returns None when no witness
    exists within the bound."""
    if entry_bound < 1:
        raise ValueError("entry_bound must be >= 1")
    if F == G:
        return IDENTITY
    rng = range(-entry_bound, entry_bound + 1)
    # the first column determines G's leading coefficient, the second
    # its trailing coefficient; prefilter both
    first_cols = [(u, v) for u, v in product(rng, rng) if evaluate(F, u, v) == G.a]
    second_cols = [(u, v) for u, v in product(rng, rng) if evaluate(F, u, v) == G.d]
    for (m11, m21) in first_cols:
        for (m12, m22) in second_cols:
            M = ((m11, m12), (m21, m22))
            if _det(M) not in (1, -1):
                continue
            if apply_gl2(F, M) == G:
                return M
    return None

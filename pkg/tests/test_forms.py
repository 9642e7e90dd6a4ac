import random

import pytest

from cubicthue import forms
from cubicthue.forms import (BinaryCubicForm, IDENTITY, apply_gl2, discriminant,
                             evaluate, family_discriminant_poly, family_form,
                             gl2_equivalent_search, known_solutions, matmul,
                             matrix_from_json, matrix_to_json)

SWAP = ((0, 1), (1, 0))


def test_evaluate_leading_coefficient():
    for t in (-5, 0, 3, 1000):
        assert evaluate(family_form(3, t), 1, 0) == 1


def test_evaluate_published_extra_solution():
    F = family_form(3, -1)
    assert F == BinaryCubicForm(1, -2, -3, 1)
    assert evaluate(F, 6, -5) == 1


def test_evaluate_type_one_solution_t2():
    F = family_form(3, 2)
    assert F == BinaryCubicForm(1, -14, 24, 1)
    assert evaluate(F, -7, 172) == 1


def test_discriminant_table_normalization():
    assert discriminant(BinaryCubicForm(1, -1, -2, 1)) == 49
    assert discriminant(BinaryCubicForm(1, 0, 0, 0)) == 0


def test_discriminant_family_polynomial():
    for t in range(-100, 101):
        assert discriminant(family_form(3, t)) == family_discriminant_poly(t)


def test_discriminant_sign_over_family():
    for t in range(-100, 101):
        d = discriminant(family_form(3, t))
        if t in (0, 1):
            assert d <= 0
        else:
            assert d > 0


def test_family_form_instantiation():
    assert family_form(3, 2) == BinaryCubicForm(1, -14, 24, 1)
    assert family_form(1, 0) == BinaryCubicForm(1, -1, 0, 1)
    assert family_form(4, 1) == BinaryCubicForm(1, -5, 4, 1)


def test_family_form_rejects_bad_index():
    with pytest.raises(ValueError):
        family_form(5, 1)


def test_known_solutions_t2():
    assert set(known_solutions(2).solutions) == {
        (1, 0), (0, 1), (2, 1), (12, 1), (-7, 172)}


def test_known_solutions_t_minus_one():
    assert set(known_solutions(-1).solutions) == {
        (1, 0), (0, 1), (-1, 1), (3, 1), (2, 7), (6, -5)}


def test_known_solutions_always_evaluate_to_one():
    # known_solutions itself asserts F=1 for each member
    for t in range(-1000, 1001):
        sols = known_solutions(t)
        assert len(sols) >= 2


def test_known_solutions_degenerate_dedup():
    # at t=0: (t,1)=(0,1) and (t^4-2t,1)=(0,1) collapse
    assert len(known_solutions(0)) < 5
    assert len(known_solutions(1)) < 5


def test_apply_gl2_family_identity():
    M = lambda t: ((1, -t), (0, 1))
    for t in range(-20, 21):
        assert apply_gl2(family_form(3, -t), M(t)) == family_form(4, t)


def test_apply_gl2_identity_matrix():
    F = BinaryCubicForm(1, 2, -5, 1)
    assert apply_gl2(F, IDENTITY) == F


def test_apply_gl2_family1_swap_shift():
    for t in range(-15, 16):
        assert apply_gl2(family_form(1, -t), SWAP) == family_form(1, t - 1)


def test_apply_gl2_rejects_non_unimodular():
    with pytest.raises(ValueError):
        apply_gl2(family_form(3, 2), ((2, 0), (0, 1)))


def test_apply_gl2_composes():
    rng = random.Random(1)
    F = family_form(3, 3)
    mats = [((1, 0), (0, 1)), ((1, 1), (0, 1)), ((1, 0), (1, 1)),
            ((0, 1), (1, 0)), ((1, -1), (0, 1)), ((-1, 0), (0, 1))]
    for _ in range(200):
        M = rng.choice(mats)
        N = rng.choice(mats)
        assert apply_gl2(apply_gl2(F, M), N) == apply_gl2(F, matmul(M, N))


def test_discriminant_gl2_invariant():
    rng = random.Random(2)
    mats = [((1, 1), (0, 1)), ((1, 0), (1, 1)), ((0, 1), (1, 0)),
            ((1, -2), (0, 1)), ((-1, 0), (0, 1))]
    for t in (-7, -1, 2, 5):
        F = family_form(3, t)
        M = IDENTITY
        for _ in range(6):
            M = matmul(M, rng.choice(mats))
        assert discriminant(apply_gl2(F, M)) == discriminant(F)


def test_gl2_search_cross_family_equivalences():
    # F_{2,0} and F_{3,0} coincide, so the identity is a witness
    M = gl2_equivalent_search(family_form(2, 0), family_form(3, 0), 3)
    assert M is not None
    assert apply_gl2(family_form(2, 0), M) == family_form(3, 0)

    M = gl2_equivalent_search(family_form(1, 4), family_form(3, -1), 20)
    assert M is not None
    assert M[0][0] * M[1][1] - M[0][1] * M[1][0] in (1, -1)
    assert apply_gl2(family_form(1, 4), M) == family_form(3, -1)


def test_gl2_search_self_returns_identity():
    F = family_form(3, 7)
    assert gl2_equivalent_search(F, F, 2) == IDENTITY


def test_gl2_search_none_found():
    # discriminants differ, so no witness can exist
    assert gl2_equivalent_search(family_form(3, 2), family_form(3, 3), 2) is None


def test_form_json_roundtrip():
    F = BinaryCubicForm(1, 9, -12, -21)
    assert BinaryCubicForm.from_json(F.to_json()) == F
    M = ((1, -3), (0, 1))
    assert matrix_from_json(matrix_to_json(M)) == M


def test_family_id_validation():
    with pytest.raises(ValueError):
        forms.FamilyId(7, 1)


def test_solution_set_restriction():
    sols = known_solutions(2)
    assert (-7, 172) in sols
    assert (-7, 172) not in sols.restricted(100)
    assert (2, 1) in sols.restricted(100)

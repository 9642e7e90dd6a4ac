import json
import math
import random
from fractions import Fraction

import pytest

from cubicthue import reduction
from cubicthue.realnum import CertifiedReal, _convergents_of_fraction
from cubicthue.reduction import (ReductionInstance, baker_davenport,
                                 build_instance, contradiction_check,
                                 reduce_single, reverify_verdict, verify_range)


def test_build_instance_which2_t10():
    inst = build_instance(2, 10)
    beta_abs = abs(inst.beta)
    # |beta| = |ln((t-th1)/(t-th3))| ~ 3 ln 10 - small
    assert 6.5 < float(beta_abs.lower) < 3 * math.log(10)
    assert inst.gamma1.width < Fraction(1, 10 ** 122)
    assert inst.gamma2.width < Fraction(1, 10 ** 120)


def test_build_instance_which3():
    inst = build_instance(3, 10)
    assert inst.which == 3
    assert abs(inst.beta).lower > 0


def test_build_instance_rejects_small_t():
    with pytest.raises(ValueError):
        build_instance(2, 9)


def test_baker_davenport_success_t10():
    inst = build_instance(2, 10)
    verdict = baker_davenport(inst)
    assert verdict.success
    assert 1 <= verdict.q <= inst.Q
    assert verdict.q_norm_lower >= Fraction(101 * inst.A, 100) + 2
    # |Lambda_2| > |beta| / Q^2 > 10^-120 here since |beta| > 1
    assert verdict.lambda_lower_ln > math.log(10 ** -120)
    assert reverify_verdict(inst, verdict)
    assert contradiction_check(2, 10, verdict)


def test_contradiction_margins():
    for t in (10, 576241):
        outcome = reduce_single(2, t)
        assert outcome.status == "success"
        assert outcome.contradiction
        assert outcome.margin > 100
    # fabricated verdict below the threshold fails the check
    fake = reduction.Verdict(True, 1, 1, Fraction(1), -10 ** 9, None, 1)
    assert not contradiction_check(2, 10, fake)


def test_contradiction_check_requires_success():
    with pytest.raises(ValueError):
        contradiction_check(2, 10, reduction.Verdict(False, None, None, None,
                                                     None, None, 0))


def _exact_instance(g1, g2, A, Q, prec=420):
    """Instance whose gamma values enclose the given rationals, built
    through enclosure division so the widths are realistic."""
    beta = CertifiedReal.from_rational(Fraction(3, 2), prec)
    alpha = CertifiedReal.from_rational(g1 * Fraction(3, 2), prec)
    delta = CertifiedReal.from_rational(g2 * Fraction(3, 2), prec)
    return ReductionInstance(2, 10, alpha, beta, delta, A, Q,
                             alpha / beta, delta / beta, prec)


def _oracle_first_convergent(g1, g2, A, Q):
    thr = Fraction(101 * A, 100) + 2
    for conv in _convergents_of_fraction(g1, Q):
        prod = conv.q * g2
        dist = min(prod - math.floor(prod), math.floor(prod) + 1 - prod)
        if conv.q * dist >= thr:
            return (conv.p, conv.q)
    return None


def test_degenerate_integer_gamma2_fails():
    rng = random.Random(71)
    g1 = Fraction(rng.getrandbits(300), 2 ** 299)
    inst = _exact_instance(g1, Fraction(2), A=10 ** 3, Q=10 ** 9)
    verdict = baker_davenport(inst)
    assert not verdict.success
    assert verdict.convergents_scanned > 0


def test_synthetic_log_instance_matches_oracle():
    import mpmath
    prec = 420
    old = mpmath.iv.prec
    try:
        mpmath.iv.prec = prec
        alpha = CertifiedReal(mpmath.iv.log(2), prec)
        beta = CertifiedReal(mpmath.iv.log(3), prec)
        delta = CertifiedReal(mpmath.iv.log(mpmath.iv.mpf(5) / 4), prec)
    finally:
        mpmath.iv.prec = old
    A, Q = 10 ** 3, 10 ** 10
    inst = ReductionInstance(2, 10, alpha, beta, delta, A, Q,
                             alpha / beta, delta / beta, prec)
    verdict = baker_davenport(inst)
    # oracle on high-precision rational stand-ins for the gamma values
    g1 = inst.gamma1.midpoint
    g2 = inst.gamma2.midpoint
    want = _oracle_first_convergent(g1, g2, A, Q)
    assert verdict.success == (want is not None)
    if want is not None:
        assert (verdict.p, verdict.q) == want
        assert reverify_verdict(inst, verdict)


def test_synthetic_instances_match_oracle_batch():
    rng = random.Random(72)
    matched = 0
    for _ in range(100):
        g1 = Fraction(rng.getrandbits(300), 2 ** 299)
        g2 = Fraction(rng.getrandbits(300), 2 ** 299)
        A = rng.randrange(10 ** 3, 10 ** 6)
        inst = _exact_instance(g1, g2, A, Q=10 ** 9)
        verdict = baker_davenport(inst)
        want = _oracle_first_convergent(g1, g2, A, 10 ** 9)
        assert verdict.success == (want is not None)
        if want is not None:
            assert (verdict.p, verdict.q) == want
            matched += 1
    assert matched > 50   # failures should be rare for random targets


def test_reduce_single_outcome_record():
    outcome = reduce_single(2, 11)
    assert outcome.status == "success" and outcome.escalations == 0
    rec = outcome.to_json()
    assert rec["schema"] == 1 and rec["t"] == 11
    assert json.dumps(rec)


def test_verify_range_empty():
    report = verify_range(2, 30, 20)
    assert report.outcomes == []
    assert report.all_success


def test_verify_range_rejects_low_start():
    with pytest.raises(ValueError):
        verify_range(2, 5, 20)


def test_verify_range_deterministic_across_workers():
    r1 = verify_range(2, 10, 30)
    r4 = verify_range(2, 10, 30, workers=4)
    assert r1.to_jsonl() == r4.to_jsonl()
    assert r1.cumulative_hash() == r4.cumulative_hash()
    assert r1.all_success


def test_verify_range_extra_ts_sorted_dedup():
    report = verify_range(2, 10, 12, extra_ts=[11, 500])
    assert [o.t for o in report.outcomes] == [10, 11, 12, 500]


def test_verify_range_checkpoint_resume(tmp_path):
    ck = str(tmp_path / "ck.json")
    full = verify_range(2, 10, 20, checkpoint_path=ck)
    state = json.load(open(ck))
    assert state["last_t"] == 20
    assert state["hash"] == full.cumulative_hash()
    # resuming with a complete checkpoint does no further work
    again = verify_range(2, 10, 20, checkpoint_path=ck)
    assert again.outcomes == []
    # checkpoint for different parameters is ignored
    other = verify_range(2, 10, 12, A=10 ** 6, checkpoint_path=ck)
    assert [o.t for o in other.outcomes] == [10, 11, 12]


def test_csv_summary_shape():
    report = verify_range(2, 10, 12)
    lines = report.to_csv_summary().strip().splitlines()
    assert lines[0].startswith("t,status,precision")
    assert len(lines) == 4


def test_escalation_soundness():
    # higher starting precision must not change the verdict
    base = reduce_single(2, 13)
    finer = reduce_single(2, 13, precision=2 * reduction.reduction_precision(reduction.DEFAULT_Q))
    assert base.status == finer.status == "success"
    assert base.q == finer.q


def test_reverify_rejects_tampered_verdict():
    inst = build_instance(2, 10)
    verdict = baker_davenport(inst)
    bad = reduction.Verdict(True, verdict.p + 1, verdict.q, verdict.q_norm_lower,
                            verdict.lambda_lower_ln, verdict.margin, 1)
    assert not reverify_verdict(inst, bad)
    assert not reverify_verdict(inst, reduction.Verdict(False, None, None, None,
                                                        None, None, 0))

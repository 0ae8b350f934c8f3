from fractions import Fraction

import pytest

from heisenkit.engine import QGHA
from heisenkit.families import to_qgha
from heisenkit.scalars import Scalar, TPoly
from heisenkit.skewpbw import (
    InconsistentClaim,
    SkewPBWClaim,
    Violation,
    check_graded_extension,
    extract_sigma_delta,
    freeness_over_subring,
    recheck_certificate,
    verify,
    verify_condition_iii,
    verify_condition_iv,
)

t = TPoly.t()
p, q, c, e = Scalar.params("p q c e")
GH = to_qgha({"family": "gaddis", "p": "p", "q": "q"})
HH = to_qgha({"family": "hayashi", "p": "p", "q": "q"})


def test_condition_iii_gaddis():
    res = verify_condition_iii(SkewPBWClaim(GH, "K[t]"), GH.t(), "x")
    assert str(res.c) == "{p}*t" and res.remainder.is_zero()


def test_condition_iii_trivial_unit():
    res = verify_condition_iii(SkewPBWClaim(GH, "K[t]"), GH.one(), "y")
    assert res.c == GH.one()


def test_condition_iii_violation_over_K():
    A = to_qgha({"family": "gha", "f": "t^2 + 1"})
    res = verify_condition_iv(SkewPBWClaim(A, "K"), 0, 1)
    assert isinstance(res, Violation) and not res


def test_condition_iv():
    A = QGHA(q, t.scale(p) + e, (t * t).scale(c))
    res = verify_condition_iv(SkewPBWClaim(A, "K[t]"), 0, 1)
    assert res.d == A.scalar(q)
    assert str(res.tails["1"]) == "{c}*t^2"
    bad = verify_condition_iv(SkewPBWClaim(A, "K"), 0, 2)
    assert isinstance(bad, Violation)


def test_condition_iv_commutative():
    A = QGHA(1, t, TPoly())
    for i, j in [(0, 1), (0, 2), (1, 2)]:
        res = verify_condition_iv(SkewPBWClaim(A, "K"), i, j)
        assert res.d == A.one() and all(v.is_zero() for v in res.tails.values())


def test_needs_i_less_than_j():
    with pytest.raises(ValueError):
        verify_condition_iv(SkewPBWClaim(GH, "K[t]"), 1, 0)


def test_sigma_delta():
    sd = extract_sigma_delta(SkewPBWClaim(GH, "K[t]"))
    assert str(sd["x"].sigma["t"]) == "{p}*t" and sd["x"].delta["t"].is_zero()
    assert str(sd["y"].sigma["t"]) == "{1/p}*t"
    A = QGHA(q, t.scale(p) + e, t)
    assert extract_sigma_delta(SkewPBWClaim(A, "K[t]"))["y"].sigma["t"] == A.t() * p + e


def test_sigma_delta_rejects_failed_claim():
    A = to_qgha({"family": "gha", "f": "t^2"})
    with pytest.raises(InconsistentClaim):
        extract_sigma_delta(SkewPBWClaim(A, "K[t]"))


def test_graded_extension():
    w1 = {"t": 1, "x": 1, "y": 1}
    assert check_graded_extension(SkewPBWClaim(HH, "K[t]"), w1).graded
    gh = check_graded_extension(SkewPBWClaim(GH, "K[t]"), w1)
    assert gh.condition_i and not gh.condition_ii and not gh.graded
    assert not check_graded_extension(SkewPBWClaim(GH, "K[t]"), {"t": 2}).graded
    assert check_graded_extension(SkewPBWClaim(QGHA(q, t.scale(p), TPoly()), "K[t]"), w1).graded


def test_freeness():
    H2 = to_qgha({"family": "gha", "f": "t^2 + 1"})
    assert freeness_over_subring(SkewPBWClaim(H2, "R_xt"), 3)
    assert not freeness_over_subring(SkewPBWClaim(H2, "K[t]"), 3)
    assert freeness_over_subring(SkewPBWClaim(QGHA(q, t.scale(p) + e, t), "K[t]"), 3)


def test_certificate_rechecks_and_flags():
    claim = SkewPBWClaim(QGHA(q, t.scale(p) + e, t * t), "K[t]")
    cert = verify(claim, maxdeg=4)
    assert cert.holds and cert.bijective and cert.endomorphism_type
    assert recheck_certificate(cert, claim)
    d = cert.to_dict()
    assert d["holds"] and d["note"].startswith("bounded")


def test_q_zero_is_not_skew_pbw():
    cert = verify(SkewPBWClaim(QGHA(0, t.scale(Fraction(2)), t), "K[t]"), maxdeg=4)
    assert not cert.holds
    assert any(v.condition == "iv" for v in cert.violations)


def test_claim_validation():
    with pytest.raises(ValueError):
        SkewPBWClaim(GH, "K[t]", ("t", "x"))
    with pytest.raises(ValueError):
        SkewPBWClaim(GH, "Z")

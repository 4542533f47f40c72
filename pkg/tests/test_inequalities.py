"""Exact inequalities, Q-ratio bounds, and threshold scanning."""

import json
from fractions import Fraction

import pytest

from regover.inequalities import (
    InequalityError,
    LOGCONCAVE_THRESHOLDS,
    QBOUND_THRESHOLDS,
    TURAN3_THRESHOLDS,
    ThresholdReport,
    check_logconcave,
    check_subadditivity,
    check_turan3,
    jia_criterion,
    logconcave_equality,
    q_bounds,
    q_ratio,
    scan_thresholds,
    verify_q_containment,
)
from regover.numerics import PrecisionExhausted
from regover.qseries import pk

KS = list(range(2, 10))


class TestSubadditivity:
    def test_basic_true(self):
        assert check_subadditivity(3, 5, 4)

    def test_k2_counterexamples(self):
        # genuine failures of strict log-subadditivity at k=2
        for a, b in [(2, 1), (2, 2), (3, 2), (4, 2), (5, 2)]:
            assert not check_subadditivity(2, a, b)

    def test_k2_holds_from_total_8(self):
        for total in range(8, 30):
            for b in range(1, total // 2 + 1):
                assert check_subadditivity(2, total - b, b)

    def test_preconditions(self):
        with pytest.raises(InequalityError):
            check_subadditivity(1, 3, 2)
        with pytest.raises(InequalityError):
            check_subadditivity(2, 1, 2)  # a < b
        with pytest.raises(InequalityError):
            check_subadditivity(5, 2, 2)  # a + b < k


class TestQRatio:
    def test_exact_small_value(self):
        # p2: 1, 2, 2, 4, ... so Q(1) = 1*2 / 2^2
        r = q_ratio(2, 1)
        assert r.value == Fraction(pk(2, 0) * pk(2, 2), pk(2, 1) ** 2)
        assert r.value == Fraction(1, 2)

    def test_rejects_n_zero(self):
        with pytest.raises(InequalityError):
            q_ratio(2, 0)

    def test_logconcave_iff_q_below_one(self):
        for n in (5, 21, 100):
            assert check_logconcave(2, n) == (q_ratio(2, n).value < 1)


class TestLogConcavity:
    # exact equality points p(n)^2 == p(n-1) p(n+1), exhaustively known
    EQUALITIES = {
        2: (),
        3: (1, 6),
        4: (1, 2, 7),
        5: (1, 2, 8),
        6: (1, 2),
        7: (1, 2),
        8: (1, 2),
        9: (1, 2),
    }
    # strict violations (weak failures are a subset: only these are < )
    STRICT_FAILURES = {
        2: (2, 5, 7, 11, 14, 17, 20),
        3: (3,),
        4: (4,),
        5: (5,),
        6: (),
        7: (),
        8: (),
        9: (),
    }

    def test_k3_n6_is_exact_equality(self):
        assert (pk(3, 5), pk(3, 6), pk(3, 7)) == (16, 24, 36)
        assert logconcave_equality(3, 6)
        assert not check_logconcave(3, 6)
        assert check_logconcave(3, 6, strict=False)

    @pytest.mark.parametrize("k", KS)
    def test_exhaustive_to_200(self, k):
        for n in range(1, 201):
            eq = logconcave_equality(k, n)
            strict = check_logconcave(k, n)
            weak = check_logconcave(k, n, strict=False)
            assert eq == (n in self.EQUALITIES[k])
            assert (not weak) == (n in self.STRICT_FAILURES[k])
            assert strict == (weak and not eq)

    def test_rejects_n_zero(self):
        with pytest.raises(InequalityError):
            check_logconcave(2, 0)


class TestTuran3:
    @pytest.mark.parametrize("k", KS)
    def test_holds_above_published_threshold(self, k):
        n0 = TURAN3_THRESHOLDS[k]
        for n in range(n0, n0 + 50):
            assert check_turan3(k, n)

    def test_k2_fails_below(self):
        assert not check_turan3(2, 64)

    def test_implied_by_jia_criterion(self):
        # whenever the sufficiency criterion fires on (Q(n), Q(n+1)), the
        # third-order Turan inequality must hold at n+1
        for k, n in [(2, 6000), (3, 400), (4, 500), (5, 1200)]:
            u, v = q_ratio(k, n).value, q_ratio(k, n + 1).value
            if jia_criterion(u, v):
                assert check_turan3(k, n + 1)


class TestJiaCriterion:
    def test_accepts_known_good_pair(self):
        u, v = q_ratio(2, 6000).value, q_ratio(2, 6001).value
        assert Fraction(15, 16) <= u < v < 1
        assert jia_criterion(u, v)

    def test_rejects_equal_and_reversed(self):
        u = q_ratio(2, 6000).value
        assert not jia_criterion(u, u)
        assert not jia_criterion(u, u - Fraction(1, 10**9))

    def test_rejects_below_15_16(self):
        assert not jia_criterion(Fraction(1, 2), Fraction(3, 4))

    def test_rejects_outside_unit_interval(self):
        assert not jia_criterion(Fraction(15, 16), Fraction(17, 16))

    def test_boundary_algebra(self):
        # (v - u)^2 vs (1 - u)^3 decided exactly at a contrived boundary
        u = Fraction(15, 16)
        gap_cubed = (1 - u) ** 3  # 1/4096
        v = u + Fraction(1, 64)  # (v-u)^2 = 1/4096 exactly: not strict
        assert not jia_criterion(u, v)
        assert jia_criterion(u, v - Fraction(1, 10**6))
        assert (v - u) ** 2 == gap_cubed


class TestQBounds:
    def test_below_threshold_names_it(self):
        with pytest.raises(InequalityError, match="5652"):
            q_bounds(2, 5651)

    def test_rejects_bad_k(self):
        with pytest.raises(InequalityError):
            q_bounds(10, 100)

    @pytest.mark.parametrize("k", KS)
    def test_lower_below_upper_below_one(self, k):
        n = QBOUND_THRESHOLDS[k]
        lo, hi = q_bounds(k, n)
        assert lo.hi < hi.lo
        assert float(hi.hi) < 1

    @pytest.mark.parametrize("k", [2, 3, 4, 5])
    def test_containment_at_and_past_threshold(self, k):
        n0 = QBOUND_THRESHOLDS[k]
        for n in (n0, n0 + 37, n0 + 250):
            assert verify_q_containment(k, n)

    def test_containment_k2_spot(self):
        assert verify_q_containment(2, 6000)

    def test_bounds_tighten_with_n(self):
        lo1, hi1 = q_bounds(3, 400)
        lo2, hi2 = q_bounds(3, 4000)
        assert (hi2.hi - lo2.lo) < (hi1.hi - lo1.lo)


class TestScan:
    def test_logconcave_observed_matches_published(self):
        for k in KS:
            r = scan_thresholds(k, "logconcave", 120)
            assert r.observed_min_threshold == LOGCONCAVE_THRESHOLDS[k], (k, r)
            assert r.paper_threshold == LOGCONCAVE_THRESHOLDS[k]
            assert r.exceptions_below == TestLogConcavity.STRICT_FAILURES[k]
            assert r.equalities == TestLogConcavity.EQUALITIES[k]

    def test_turan3_observed_matches_published(self):
        for k in KS:
            r = scan_thresholds(k, "turan3", 120)
            assert r.observed_min_threshold == TURAN3_THRESHOLDS[k], (k, r)
            assert r.equalities == ()

    def test_subadd_k2(self):
        r = scan_thresholds(2, "subadd", 60)
        assert r.exceptions_below == ((2, 1), (2, 2), (3, 2), (4, 2), (5, 2))
        assert r.observed_min_threshold == 8

    def test_subadd_k3_clean(self):
        r = scan_thresholds(3, "subadd", 60)
        assert r.exceptions_below == ()
        assert r.observed_min_threshold == 3

    def test_rejects_short_horizon(self):
        with pytest.raises(InequalityError):
            scan_thresholds(2, "turan3", 64)
        with pytest.raises(InequalityError):
            scan_thresholds(5, "subadd", 4)

    def test_rejects_unknown_property(self):
        with pytest.raises(InequalityError):
            scan_thresholds(2, "unimodal", 100)

    def test_report_serialization(self):
        r = scan_thresholds(3, "logconcave", 50)
        d = json.loads(r.to_json())
        assert d["k"] == 3 and d["property"] == "logconcave"
        assert d["equalities"] == [1, 6]
        assert isinstance(d["exceptions_below"], list)

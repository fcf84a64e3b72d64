import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tilerank import (
    Importance,
    Ordering,
    PerfError,
    Performance,
    canonical_score,
    canonicalize,
    catalog_score,
    compare,
    conditional_probabilistic_score,
    performance_from_counts,
    ranking_score,
)
from tilerank.perf import OMEGA, event

from conftest import random_fixed_prior, random_performances


class TestPerformance:
    def test_from_counts_toy_table(self):
        p = performance_from_counts(56, 24, 6, 14)
        assert p.as_tuple() == pytest.approx((0.56, 0.24, 0.06, 0.14), abs=1e-15)

    def test_from_counts_degenerate_all_tn(self):
        assert performance_from_counts(1, 0, 0, 0).as_tuple() == (1.0, 0.0, 0.0, 0.0)

    def test_from_counts_symmetric(self):
        assert performance_from_counts(2, 2, 2, 2).as_tuple() == (0.25, 0.25, 0.25, 0.25)

    def test_empty_matrix_rejected(self):
        with pytest.raises(PerfError, match="empty confusion matrix"):
            performance_from_counts(0, 0, 0, 0)

    def test_negative_rejected(self):
        with pytest.raises(PerfError):
            Performance(0.5, -0.1, 0.3, 0.3)

    def test_probabilities_kept_verbatim(self):
        p = Performance(0.5, 0.25, 0.125, 0.125)
        assert p.as_tuple() == (0.5, 0.25, 0.125, 0.125)

    def test_normalization_invariant(self):
        rng = np.random.default_rng(11)
        for _ in range(1000):
            counts = rng.integers(0, 500, size=4)
            if counts.sum() == 0:
                continue
            p = performance_from_counts(*counts)
            assert abs(sum(p.as_tuple()) - 1.0) <= 1e-12

    def test_priors_and_rates(self, p1_skewed):
        assert p1_skewed.priors == pytest.approx((0.8, 0.2), abs=1e-15)
        assert p1_skewed.rates == pytest.approx((0.62, 0.38), abs=1e-15)


class TestConditionalScores:
    def test_tpr_of_p1(self, p1_skewed):
        v = conditional_probabilistic_score(event("tp"), event("fn", "tp"), p1_skewed)
        assert v == pytest.approx(0.7, abs=1e-12)

    def test_accuracy_as_unconditional(self, p1_skewed):
        v = conditional_probabilistic_score(event("tn", "tp"), OMEGA, p1_skewed)
        assert v == pytest.approx(0.70, abs=1e-12)

    def test_undefined_on_zero_condition(self):
        p = Performance(1, 0, 0, 0)
        assert conditional_probabilistic_score(event("tp"), event("fp", "tp"), p) is None

    @pytest.mark.parametrize(
        "e1,e2",
        [
            (frozenset(), frozenset({"tn"})),
            (frozenset({"tn"}), frozenset({"tn"})),
            (frozenset({"tn", "tp"}), frozenset({"tn"})),
            (frozenset({"fp"}), frozenset({"tn", "tp"})),
        ],
    )
    def test_invalid_nesting_rejected(self, e1, e2, p1_skewed):
        with pytest.raises(PerfError):
            conditional_probabilistic_score(e1, e2, p1_skewed)

    def test_unknown_outcome_rejected(self):
        with pytest.raises(PerfError):
            event("tn", "bogus")


class TestRankingScore:
    def test_tnr_importance(self, p1_skewed):
        assert ranking_score(Importance(1, 1, 0, 0), p1_skewed) == pytest.approx(0.7, abs=1e-12)

    def test_uniform(self):
        p = Performance(0.25, 0.25, 0.25, 0.25)
        assert ranking_score(Importance(0.5, 0.5, 0.5, 0.5), p) == 0.5

    def test_f1_importance_by_hand(self, p2_skewed):
        # independent evaluation of the weighted-fraction formula
        i = Importance(0.0, 0.5, 0.5, 1.0)
        num = 0.5 * 0 + 1.0 * p2_skewed.tp
        den = 0.5 * p2_skewed.fp + 0.5 * p2_skewed.fn + 1.0 * p2_skewed.tp
        expect = num / den
        assert expect == pytest.approx(0.16 / 0.38, abs=1e-12)
        assert ranking_score(i, p2_skewed) == pytest.approx(expect, abs=1e-15)
        # cross-route: F1 = 2 J+ / (J+ + 1)
        jp = catalog_score("J+", p2_skewed)
        assert ranking_score(i, p2_skewed) == pytest.approx(2 * jp / (jp + 1), abs=1e-12)

    def test_undefined(self):
        p = Performance(1, 0, 0, 0)
        assert ranking_score(Importance(0, 1, 0, 1), p) is None

    def test_importance_validation(self):
        with pytest.raises(PerfError):
            Importance(0, 1, 1, 0)
        with pytest.raises(PerfError):
            Importance(1, 0, 0, 1)
        with pytest.raises(PerfError):
            Importance(-1, 1, 1, 1)

    def test_range_invariant(self):
        rng = np.random.default_rng(3)
        for p in random_performances(5, 300):
            a, b = rng.random(2)
            v = canonical_score(a, b, p)
            if v is not None:
                assert 0.0 <= v <= 1.0


class TestCanonicalize:
    @pytest.mark.parametrize("beta", [0.25, 0.5, 1.0, 2.0, 4.0])
    def test_fbeta_importance(self, beta):
        b2 = beta**2
        coord = canonicalize(Importance(0.0, 1 / (1 + b2), b2 / (1 + b2), 1.0))
        assert coord.a == 1.0
        assert coord.b == pytest.approx(b2 / (1 + b2), abs=1e-15)

    def test_tnr_at_origin(self):
        coord = canonicalize(Importance(1, 1, 0, 0))
        assert (coord.a, coord.b) == (0.0, 0.0)

    def test_scale_invariance_of_coordinate(self):
        coord = canonicalize(Importance(3, 3, 3, 3))
        assert (coord.a, coord.b) == (0.5, 0.5)

    def test_soundness_on_random_pairs(self):
        # sign of score differences survives canonicalization
        rng = np.random.default_rng(17)
        perfs = random_performances(23, 400)
        for _ in range(400):
            i = Importance(*(rng.random(4) + 1e-3))
            coord = canonicalize(i)
            p1, p2 = perfs[rng.integers(len(perfs))], perfs[rng.integers(len(perfs))]
            r1, r2 = ranking_score(i, p1), ranking_score(i, p2)
            c1 = canonical_score(coord.a, coord.b, p1)
            c2 = canonical_score(coord.a, coord.b, p2)
            assert (r1 is None) == (c1 is None)
            if r1 is None or r2 is None:
                continue
            if abs(r1 - r2) > 1e-12:
                assert math.copysign(1, r1 - r2) == math.copysign(1, c1 - c2)

    @given(
        i_tn=st.floats(0.01, 10),
        i_fp=st.floats(0.01, 10),
        i_fn=st.floats(0.01, 10),
        i_tp=st.floats(0.01, 10),
        lam=st.floats(0.01, 50),
        mu=st.floats(0.01, 50),
    )
    @settings(max_examples=150, deadline=None)
    def test_scale_invariance_property(self, i_tn, i_fp, i_fn, i_tp, lam, mu):
        # scaling the satisfying and unsatisfying sides independently never
        # reorders performances
        base = Importance(i_tn, i_fp, i_fn, i_tp)
        scaled = Importance(i_tn * lam, i_fp * mu, i_fn * mu, i_tp * lam)
        for p1, p2 in zip(random_performances(1, 25), random_performances(2, 25)):
            r1, r2 = ranking_score(base, p1), ranking_score(base, p2)
            s1, s2 = ranking_score(scaled, p1), ranking_score(scaled, p2)
            d1, d2 = r1 - r2, s1 - s2
            if abs(d1) > 1e-12 or abs(d2) > 1e-12:
                assert d1 * d2 >= 0


class TestCornerIdentities:
    CORNERS = [((0, 0), "TNR"), ((1, 1), "TPR"), ((0, 1), "NPV"), ((1, 0), "PPV"), ((0.5, 0.5), "A")]

    def test_exact_match_including_undefined(self):
        perfs = random_performances(29, 500)
        perfs += [Performance(1, 0, 0, 0), Performance(0, 0, 0, 1), Performance(0, 1, 1, 0)]
        for p in perfs:
            for (a, b), name in self.CORNERS:
                got = canonical_score(a, b, p)
                want = catalog_score(name, p)
                assert (got is None) == (want is None)
                if got is not None:
                    assert got == pytest.approx(want, abs=1e-12)


class TestOrderingEqualities:
    PAIRS = [("JY", "BA", 1), ("F1", "J+", 1), ("SNPV", "NPV", 1), ("SPPV", "PPV", 1),
             ("PLR", "PPV", 1), ("NLR", "NPV", -1)]

    @pytest.mark.parametrize("name_a,name_b,direction", PAIRS)
    def test_sign_agreement_fixed_priors(self, name_a, name_b, direction):
        perfs = random_fixed_prior(101, 120, 0.7)
        vals_a = [catalog_score(name_a, p) for p in perfs]
        vals_b = [catalog_score(name_b, p) for p in perfs]
        for i in range(len(perfs)):
            for j in range(i + 1, len(perfs)):
                if None in (vals_a[i], vals_a[j], vals_b[i], vals_b[j]):
                    continue
                da = vals_a[i] - vals_a[j]
                db = vals_b[i] - vals_b[j]
                if abs(da) > 1e-12 or abs(db) > 1e-12:
                    assert da * (direction * db) >= 0, (name_a, name_b, da, db)


class TestCompare:
    def test_accuracy_orders_balanced_toy(self):
        p1 = Performance(0.35, 0.15, 0.15, 0.35)
        p2 = Performance(0.25, 0.25, 0.10, 0.40)
        acc = Importance(0.5, 0.5, 0.5, 0.5)
        assert (p1.tn + p1.tp, p2.tn + p2.tp) == (0.70, 0.65)
        assert compare(p1, p2, acc) is Ordering.BETTER
        assert compare(p2, p1, acc) is Ordering.WORSE

    def test_reflexive(self, p1_skewed):
        assert compare(p1_skewed, p1_skewed, Importance(1, 2, 3, 4)) is Ordering.EQUIVALENT

    def test_incomparable_outside_domain(self):
        p = Performance(1, 0, 0, 0)
        q = Performance(0, 0, 0, 1)
        ppv_importance = Importance(0, 1, 0, 1)
        assert compare(p, q, ppv_importance) is Ordering.INCOMPARABLE
        assert compare(p, p, ppv_importance) is Ordering.EQUIVALENT

import math

import pytest

from tilerank import CatalogError, Performance, catalog_score
from tilerank.catalog import SCORE_NAMES, fbeta_b
from tilerank.ops import no_skill

from conftest import FIG5_TABLES, random_performances


def test_ba_of_p2_any_prior_variant():
    for table in FIG5_TABLES.values():
        p2 = Performance(*table["P2"])
        assert catalog_score("BA", p2) == pytest.approx(0.65, abs=1e-12)


def test_kappa_of_no_skill_is_zero():
    for p in random_performances(31, 100):
        ns = no_skill(p)
        k = catalog_score("kappa", ns)
        if k is not None:
            assert k == pytest.approx(0.0, abs=1e-12)


def test_p4_symmetric_case():
    p = Performance(0.4, 0.1, 0.1, 0.4)
    conds = [catalog_score(n, p) for n in ("TNR", "TPR", "NPV", "PPV")]
    assert conds == [pytest.approx(0.8, abs=1e-15)] * 4
    harmonic = 4.0 / sum(1.0 / v for v in conds)
    assert catalog_score("P4", p) == pytest.approx(harmonic, abs=1e-15)
    assert catalog_score("P4", p) == pytest.approx(0.8, abs=1e-12)


def test_fbeta_limits():
    for p in random_performances(37, 50):
        ppv = catalog_score("PPV", p)
        tpr = catalog_score("TPR", p)
        f0 = catalog_score("Fbeta", p, beta=0.0)
        finf = catalog_score("Fbeta", p, beta=math.inf)
        assert (f0 is None) == (ppv is None)
        assert (finf is None) == (tpr is None)
        if ppv is not None:
            assert f0 == pytest.approx(ppv, abs=1e-15)
        if tpr is not None:
            assert finf == pytest.approx(tpr, abs=1e-15)


def test_fbeta_matches_direct_formula():
    for p in random_performances(41, 50):
        for beta in (0.5, 1.0, 2.0):
            b2 = beta * beta
            den = (1 + b2) * p.tp + b2 * p.fn + p.fp
            want = None if den == 0 else (1 + b2) * p.tp / den
            got = catalog_score("Fbeta", p, beta=beta)
            assert (got is None) == (want is None)
            if want is not None:
                assert got == pytest.approx(want, abs=1e-12)


def test_fbeta_b_monotone_and_stable():
    vals = [fbeta_b(b) for b in (0.0, 0.5, 1.0, 2.0, 1e4, 1e200, math.inf)]
    assert vals[0] == 0.0 and vals[-1] == 1.0
    assert all(x < y or (x == y == 1.0) for x, y in zip(vals, vals[1:]))
    assert fbeta_b(1.0) == 0.5


def test_det_confusion_equals_prior_weighted_youden():
    for p in random_performances(43, 200):
        jy = catalog_score("JY", p)
        if jy is None:
            continue
        want = p.prior_neg * p.prior_pos * jy
        assert catalog_score("detC", p) == pytest.approx(want, abs=1e-15)


def test_standardized_values_two_routes():
    # each standardized score has a TNR/TPR form and an NPV/PPV transform form
    for p in random_performances(47, 200):
        tnr, tpr = catalog_score("TNR", p), catalog_score("TPR", p)
        npv_, ppv_ = catalog_score("NPV", p), catalog_score("PPV", p)
        pn, pp = p.priors
        snpv = catalog_score("SNPV", p)
        if snpv is not None and npv_ is not None and pn > 0 and pp > 0:
            alt = npv_ * pp / (npv_ * (pp - pn) + pn)
            assert snpv == pytest.approx(alt, abs=1e-9)
        sppv = catalog_score("SPPV", p)
        if sppv is not None and ppv_ is not None and pn > 0 and pp > 0:
            alt = ppv_ * pn / (ppv_ * (pn - pp) + pp)
            assert sppv == pytest.approx(alt, abs=1e-9)
        nlr = catalog_score("NLR", p)
        if nlr is not None and snpv not in (None, 0.0):
            assert nlr == pytest.approx((1 - snpv) / snpv, abs=1e-9)
        plr = catalog_score("PLR", p)
        if plr is not None and sppv is not None and sppv != 1.0:
            assert plr == pytest.approx(sppv / (1 - sppv), rel=1e-9)


def test_weighted_accuracy_special_weights():
    for p in random_performances(53, 100):
        pn, pp = p.priors
        if pn == 0 or pp == 0:
            continue
        ba = catalog_score("BA", p)
        assert catalog_score("WA", p, weights=(0.5, 0.5)) == pytest.approx(ba, abs=1e-15)
        acc = catalog_score("A", p)
        wa_prior = catalog_score("WA", p, weights=(pn, pp))
        assert wa_prior == pytest.approx(acc, abs=1e-12)


def test_simple_transforms():
    for p in random_performances(59, 60):
        assert catalog_score("S", p) == pytest.approx(2 * catalog_score("A", p) - 1, abs=1e-15)
        assert catalog_score("BI", p) == pytest.approx(p.rate_pos - p.prior_pos, abs=1e-15)
        g = catalog_score("Gmean", p)
        tnr, tpr = catalog_score("TNR", p), catalog_score("TPR", p)
        if g is not None:
            assert g == pytest.approx(math.sqrt(tnr * tpr), abs=1e-15)
        m = catalog_score("markedness", p)
        if m is not None:
            assert m == pytest.approx(catalog_score("NPV", p) + catalog_score("PPV", p) - 1, abs=1e-15)
        a = catalog_score("ACP", p)
        if a is not None:
            assert a == pytest.approx((tnr + tpr + catalog_score("NPV", p) + catalog_score("PPV", p)) / 4, abs=1e-15)


def test_undefined_propagation_constant_negative():
    p = Performance(1, 0, 0, 0)
    assert catalog_score("TPR", p) is None
    assert catalog_score("PPV", p) is None
    assert catalog_score("NPV", p) == 1.0
    assert catalog_score("kappa", p) is None  # expected accuracy is 1
    assert catalog_score("P4", p) is None
    assert catalog_score("A", p) == 1.0


def test_unknown_and_reserved_names():
    p = Performance(0.25, 0.25, 0.25, 0.25)
    with pytest.raises(CatalogError):
        catalog_score("not-a-score", p)
    with pytest.raises(CatalogError, match="reserved"):
        catalog_score("ScottPi", p)
    with pytest.raises(CatalogError, match="reserved"):
        catalog_score("FleissKappa", p)


def test_parameter_validation():
    p = Performance(0.25, 0.25, 0.25, 0.25)
    with pytest.raises(ValueError):
        catalog_score("TNR", p, beta=2.0)
    with pytest.raises(ValueError):
        catalog_score("BA", p, weights=(1, 2))
    with pytest.raises(ValueError):
        catalog_score("WA", p, weights=(0, 0))


def test_vut_via_catalog():
    from tilerank.stats import vut

    p = Performance(0.56, 0.24, 0.06, 0.14)
    assert catalog_score("VUT", p) == vut(p)
    assert "VUT" in SCORE_NAMES

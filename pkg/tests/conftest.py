import sys

import numpy as np
import pytest

from tilerank import Entity, Performance


def pytest_runtest_logreport(report):
    # one visible pass/fail line per acceptance criterion
    if report.when != "call" or "test_acceptance" not in str(report.nodeid):
        return
    name = report.nodeid.split("::")[-1]
    status = "PASS" if report.passed else ("FAIL" if report.failed else "SKIP")
    sys.stdout.write(f"\nACCEPTANCE {name}: {status}\n")
    sys.stdout.flush()

# The four-classifier toy rosters at three priors: always-negative, a
# TNR=TPR=0.7 classifier, a TNR=0.5/TPR=0.8 classifier, always-positive.
FIG5_TABLES = {
    0.2: {
        "P-": (0.80, 0.00, 0.20, 0.00),
        "P1": (0.56, 0.24, 0.06, 0.14),
        "P2": (0.40, 0.40, 0.04, 0.16),
        "P+": (0.00, 0.80, 0.00, 0.20),
    },
    0.5: {
        "P-": (0.50, 0.00, 0.50, 0.00),
        "P1": (0.35, 0.15, 0.15, 0.35),
        "P2": (0.25, 0.25, 0.10, 0.40),
        "P+": (0.00, 0.50, 0.00, 0.50),
    },
    0.8: {
        "P-": (0.20, 0.00, 0.80, 0.00),
        "P1": (0.14, 0.06, 0.24, 0.56),
        "P2": (0.10, 0.10, 0.16, 0.64),
        "P+": (0.00, 0.20, 0.00, 0.80),
    },
}


def toy_roster(pi_pos: float) -> list[Entity]:
    return [Entity(name, Performance(*comps)) for name, comps in FIG5_TABLES[pi_pos].items()]


def random_performances(seed: int, n: int) -> list[Performance]:
    comps = np.random.default_rng(seed).dirichlet((1.0, 1.0, 1.0, 1.0), size=n)
    return [Performance(*row) for row in comps]


def random_fixed_prior(seed: int, n: int, prior_neg: float) -> list[Performance]:
    rng = np.random.default_rng(seed)
    u = rng.random((n, 2))
    tn = prior_neg * u[:, 0]
    tp = (1.0 - prior_neg) * u[:, 1]
    return [
        Performance(t, prior_neg - t, (1.0 - prior_neg) - s, s) for t, s in zip(tn, tp)
    ]


@pytest.fixture
def p1_skewed() -> Performance:
    return Performance(0.56, 0.24, 0.06, 0.14)


@pytest.fixture
def p2_skewed() -> Performance:
    return Performance(0.40, 0.40, 0.04, 0.16)

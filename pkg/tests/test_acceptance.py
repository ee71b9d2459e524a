"""The thirteen acceptance criteria, run once per session and reported one
line each at the end of the pytest run."""
import os

import pytest

from qvol.acceptance import Settings
from qvol.cli import run_verify_all

pytestmark = pytest.mark.slow

RESULTS: dict[int, object] = {}

KNOWN_FALSE = {
    7: "the specialization fails whenever k2 = s >= 1; every sample with k2 <= s - 1 holds",
    11: "the product form with a trace weight disagrees with enumeration for n = 2, a >= 1",
    12: "the top coefficient in [m]_q is not the q-volume; the limit coefficient is",
}


@pytest.fixture(scope="session")
def reports():
    if not RESULTS:
        threads = int(os.environ.get("QVOL_THREADS", os.cpu_count() or 1))
        for rep in run_verify_all(Settings(), list(range(1, 14)), threads):
            RESULTS[rep.number] = rep
    return RESULTS


def criterion(k):
    marks = [pytest.mark.xfail(reason=KNOWN_FALSE[k], strict=True)] if k in KNOWN_FALSE else []
    return pytest.param(k, marks=marks, id=f"criterion-{k:02d}")


@pytest.mark.parametrize("k", [criterion(k) for k in range(1, 14)])
def test_criterion(reports, k):
    rep = reports[k]
    print(rep.summary())
    for f in rep.failures[:3]:
        print("   ", f.identity, f.params)
    assert rep.checks > 0
    assert rep.passed, rep.summary()


def test_known_false_criteria_fail_only_where_expected(reports):
    bad = {k: {name for name, (_, b) in reports[k].counts.items() if b} for k in KNOWN_FALSE}
    assert bad[7] == {"andrews-askey"}
    assert bad[11] == {"shifted-trace-product", "shifted-integral-product"}
    assert bad[12] == {"leading-equals-volume"}
    for f in reports[7].failures:
        assert f.params["k2"] == f.params["s"] >= 1

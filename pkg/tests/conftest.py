import itertools

import numpy as np
import pytest

from veronuc.gf import Field

_acceptance_results = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _acceptance_results.append((marker.args[0], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_results:
        return
    terminalreporter.section("acceptance criteria")
    for label, outcome in sorted(_acceptance_results, key=lambda r: int(r[0].split(":")[0][2:])):
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"[{verdict}] {label}")


SMALL_FIELDS = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (2, 4)]


@pytest.fixture(params=SMALL_FIELDS, ids=lambda pk: f"GF({pk[0]}^{pk[1]})")
def small_field(request):
    return Field(*request.param)


def all_vectors(field, n):
    """Every vector of field^n as an encoded tuple."""
    return list(itertools.product(range(field.q), repeat=n))


def span_set(field, rows, n):
    """All linear combinations of ``rows`` (encoded), by enumeration."""
    rows = [np.asarray(r, dtype=np.int64) for r in rows]
    out = set()
    for coeffs in itertools.product(range(field.q), repeat=len(rows)):
        acc = np.zeros(n, dtype=np.int64)
        for c, r in zip(coeffs, rows):
            acc = field.vadd(acc, field.vmul(c, r))
        out.add(tuple(int(v) for v in acc))
    return out

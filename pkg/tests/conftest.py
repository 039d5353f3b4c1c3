import numpy as np
import pytest


def crandn(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


@pytest.fixture
def rng():
    return np.random.default_rng(20241015)


# acceptance bookkeeping: criterion -> list of (case, passed)
ACCEPTANCE = {}


def record(criterion, case, passed):
    ACCEPTANCE.setdefault(criterion, []).append((case, bool(passed)))
    return bool(passed)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        cases = ACCEPTANCE[k]
        failed = [c for c, ok in cases if not ok]
        status = "PASS" if not failed else "FAIL"
        detail = f"{len(cases) - len(failed)}/{len(cases)} cases"
        if failed:
            detail += "; failing: " + ", ".join(failed)
        tr.write_line(f"criterion {k}: {status} ({detail})")

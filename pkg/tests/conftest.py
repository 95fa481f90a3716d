import contextlib

import numpy as np
import pytest

from grflab.space import make_params

ACCEPTANCE = {}


@contextlib.contextmanager
def criterion(number: int, title: str):
    """Record PASS/FAIL for an acceptance criterion; failures still raise.

    Parametrized tests share one entry: details merge and a FAIL sticks.
    """
    _, ok, info = ACCEPTANCE.get(number, (title, True, {}))
    try:
        yield info
    except BaseException:
        ACCEPTANCE[number] = (title, False, info)
        raise
    ACCEPTANCE[number] = (title, ok, info)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        title, ok, info = ACCEPTANCE[number]
        detail = ", ".join(f"{k}={v}" for k, v in info.items())
        terminalreporter.write_line(f"criterion {number:2d} {'PASS' if ok else 'FAIL'}: {title}"
                                    + (f" [{detail}]" if detail else ""))


def random_params(rng, n, lam_max=1.0, equal_kappa=False):
    out = []
    while len(out) < n:
        c1 = rng.uniform(1.0, 2.0)
        if c1 <= 1.0:
            continue
        k1 = rng.uniform(1e-3, 0.5)
        k2 = k1 if equal_kappa else rng.uniform(1e-3, 0.5)
        out.append(make_params(c1, rng.uniform(0.0, lam_max), k1, k2))
    return out


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def catalog_params():
    return make_params("10/7", "1/4", "1/2", name="su7so8so7")

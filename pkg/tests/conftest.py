import math

import pytest
from hypothesis import strategies as st

from horoboundary import DiscPoint, SparseVector, validate_params

# mpmath (40 digits) evaluations of the defining formulas; see test modules for their derivation
HALF_LOG3 = 0.5493061443340548456976  # atanh(1/2)
ACOSH_4_3 = 0.7953654612239056305279  # arccosh(4/3)
GAUGE_ORTH = 2.2152504370215301968339  # M((1,.5e1)/(1,.5e2)) by 300-step bisection in mpmath


def e(i, c=1.0):
    return SparseVector({i: c})


def sparse_vectors(max_index=12, max_size=6, max_norm=None):
    # squares of tiny coefficients underflow; keep them out of the generated data
    coef = st.floats(-1.0, 1.0, allow_subnormal=False).map(lambda c: c if abs(c) > 1e-100 else 0.0)
    raw = st.dictionaries(st.integers(0, max_index), coef, max_size=max_size).map(SparseVector)
    if max_norm is None:
        return raw

    def shrink(x):
        n = x.norm()
        return x if n <= max_norm else x * (max_norm / n)

    return raw.map(shrink)


def disc_points(max_norm=0.95, **kw):
    return sparse_vectors(max_norm=max_norm, **kw).map(DiscPoint)


@st.composite
def horo_params(draw, busemann=None):
    kind = draw(st.booleans()) if busemann is None else busemann
    d = draw(sparse_vectors(max_size=5).filter(lambda x: x.norm() > 1e-3))
    d = d / d.norm()
    if kind:
        return validate_params(d, 1.0)
    nx = draw(st.floats(0.0, 0.9))
    r = nx + (1.0 - nx) * draw(st.floats(0.05, 1.0))
    return validate_params(d * nx, r)


scales = st.floats(0.1, 10.0)


@pytest.fixture
def half_e1():
    return DiscPoint(e(1, 0.5))


def close(a, b, tol):
    return math.isclose(a, b, rel_tol=0.0, abs_tol=tol)


acceptance_key = pytest.StashKey[list]()


@pytest.fixture
def acceptance_log(request):
    return request.config.stash.setdefault(acceptance_key, [])


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(acceptance_key, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)

import numpy as np
import pytest

from sirmine import MeasureEngine, TimeSeries


def products(values, kind="ap"):
    """Engine whose per-timestamp products x*y are ``values`` (distances for mse)."""
    return MeasureEngine.from_kernel(values, kind)


def brute_left_weak(engine, tau):
    n = engine.n
    return np.array([
        not any(engine.is_strong(s, t - 1, tau) for s in range(1, t)) for t in range(1, n + 1)
    ])


def brute_right_weak(engine, tau):
    n = engine.n
    return np.array([
        not any(engine.is_strong(t, e, tau) for e in range(t, n + 1)) for t in range(1, n + 1)
    ])


def random_engine(rng, n, kind=None):
    kind = kind or rng.choice(["ap", "nap", "mse"])
    x = rng.standard_normal(n)
    y = rng.standard_normal(n)
    if kind == "mse":
        return MeasureEngine((x - y) ** 2 / 2, kind)
    return MeasureEngine.from_kernel(x * y * rng.uniform(0.5, 3), kind)


def zscored(v):
    v = np.asarray(v, dtype=float)
    return (v - v.mean()) / v.std()


def planted_pair(seed, n=300):
    """Series equal on [50,80] and [150,180]; the same signals anti-aligned on [221,282]."""
    rng = np.random.default_rng(seed)
    x = rng.standard_normal(n)
    y = rng.standard_normal(n)
    s1 = 2 * rng.standard_normal(31)
    s2 = 2 * rng.standard_normal(31)
    x[49:80] = y[49:80] = s1
    x[149:180] = y[149:180] = s2
    anti = np.concatenate([s1, s2])
    x[220:282] = anti
    y[220:282] = -anti
    return TimeSeries("a", zscored(x)), TimeSeries("b", zscored(y))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


ACCEPTANCE_LINES = []


@pytest.fixture
def criterion(request):
    """Record one acceptance line: ``criterion(ok, detail)``; the test fails if not ok."""

    def record(ok, detail):
        name = request.node.name
        ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
        assert ok, detail

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

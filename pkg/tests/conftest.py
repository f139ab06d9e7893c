import pytest

from carlfwm.dynamics import RunConfig, simulate

# criterion id -> (passed, detail); filled by test_acceptance, printed at the end
ACCEPTANCE_RESULTS: dict[str, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS):
        ok, detail = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {key}: {detail}")


_CACHE = {}


def cached_run(**kw) -> "TimeSeries":  # noqa: F821
    """Full-size simulations are shared between test modules."""
    key = tuple(sorted(kw.items()))
    if key not in _CACHE:
        _CACHE[key] = simulate(RunConfig(**kw))
    return _CACHE[key]


@pytest.fixture(scope="session")
def cold_run():
    """sigma=0, kappa=0, N=2048, dt=1e-3 over t in [0, 25]."""
    return cached_run()

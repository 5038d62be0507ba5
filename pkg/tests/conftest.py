import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", deadline=None, max_examples=300,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

P = 32003


@pytest.fixture(scope="session")
def grid():
    from cmwild.catalog import functor_grid
    return functor_grid(seed=5, max_dim=2)


@pytest.fixture(scope="session")
def reports():
    """Experiment reports, computed at most once per fixture per session."""
    from cmwild.catalog import run_experiment
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = run_experiment(name)
        return cache[name]
    return get


ACCEPTANCE: dict = {}


@pytest.fixture(scope="session")
def acceptance_log():
    """Records one verdict line per acceptance criterion; echoed in the terminal summary."""
    def record(n: int, ok: bool, detail: str) -> None:
        line = f"criterion {n}: {'PASS' if ok else 'FAIL'} ({detail})"
        ACCEPTANCE[n] = line
        print(line)
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[n])

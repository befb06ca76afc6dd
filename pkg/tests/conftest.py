import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def composite_gauss_legendre(lo, hi, panels, order=20):
    """Nodes and weights of an equal-panel Gauss-Legendre rule (numpy only)."""
    t, w = np.polynomial.legendre.leggauss(order)
    edges = np.linspace(lo, hi, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    x = (mid[:, None] + half[:, None] * t).ravel()
    wt = (half[:, None] * w).ravel()
    return x, wt


@pytest.fixture(scope="session")
def gl_rule():
    return composite_gauss_legendre


ACCEPTANCE = pytest.StashKey[dict]()


def pytest_configure(config):
    config.stash[ACCEPTANCE] = {}


@pytest.fixture
def verdict(request):
    """Record one PASS/FAIL line per acceptance criterion and fail on any miss."""
    log = request.config.stash[ACCEPTANCE]

    def report(number, title, checks):
        failed = [(name, detail) for name, ok, detail in checks if not ok]
        status = "FAIL" if failed else "PASS"
        shown = failed if failed else [(name, detail) for name, _, detail in checks]
        line = f"criterion {number:>2} {status}  {title}: " + "; ".join(f"{n} {d}" for n, d in shown)
        log[number] = line
        print(line)
        assert not failed, line

    return report


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    log = config.stash.get(ACCEPTANCE, {})
    if log:
        terminalreporter.section("acceptance criteria")
        for number in sorted(log):
            terminalreporter.write_line(log[number])

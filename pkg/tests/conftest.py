import numpy as np
import pytest

from momentreg import Bag, BagDataset, fit
from momentreg import _kernels

_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion")


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    """Trigger JIT compilation once so timed tests measure the algorithm."""
    ds = BagDataset((Bag([0.1, 0.2], 1.0), Bag([-0.3], 0.0), Bag([0.5, 0.9], 2.0)))
    fit(ds, degree_count=3)
    return _kernels.BACKEND


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    key = (marker.args[0], marker.args[1])
    failed = report.failed
    if report.when == "call" or failed:
        _CRITERIA.setdefault(key, []).append(not failed)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for (number, title), results in sorted(_CRITERIA.items()):
        status = "PASS" if all(results) else "FAIL"
        terminalreporter.write_line(f"criterion {number:>2} [{status}] {title}")


def random_dataset(rng, m, n, spread=0.2, labels=None, equal_sizes=True):
    bags = []
    for l in range(m):
        size = n if equal_sizes else int(rng.integers(1, n + 1))
        center = rng.uniform(-1.0, 1.0)
        y = rng.normal() if labels is None else labels[l]
        bags.append(Bag(center + spread * rng.uniform(-1.0, 1.0, size), y))
    return BagDataset(tuple(bags))


@pytest.fixture
def rng():
    return np.random.default_rng(20151127)


_EXPERIMENTS = {}


@pytest.fixture(scope="session")
def experiment():
    """``experiment(target)`` -> (dataset, model) at N=100, M=2000, R=0.1, d_x=10."""
    from momentreg import ExperimentConfig, generate

    def get(target, seed=42, degree_count=10):
        key = (target, seed, degree_count)
        if key not in _EXPERIMENTS:
            ds = generate(ExperimentConfig(target, N=100, M=2000, R=0.1, seed=seed))
            _EXPERIMENTS[key] = (ds, fit(ds, degree_count=degree_count))
        return _EXPERIMENTS[key]

    return get

import numpy as np
import pytest

from lipfree.generators import generate_space, instance_rng
from lipfree.metric import validate_space
from lipfree.weights import WeightFunction

ALPHAS = {
    "identity": WeightFunction.identity(),
    "shifted": WeightFunction.shifted(),
    "3t": WeightFunction.linear(3.0),
}


def line(*t):
    t = np.asarray(t, dtype=float)
    return validate_space(np.abs(t[:, None] - t[None, :]))


def random_space(seed, n, kind=None):
    rng = instance_rng(seed, 7)
    kinds = ("random_metric", "euclidean_cloud", "sphere_shell", "line", "path_graph")
    return generate_space(kind or kinds[seed % len(kinds)], n, rng)


@pytest.fixture(params=sorted(ALPHAS))
def alpha(request):
    return ALPHAS[request.param]


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[k][1])

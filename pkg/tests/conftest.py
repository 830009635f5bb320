import numpy as np
import pytest

from codes.families import make_code
from graph.exponent import load_exponent_matrix
from graph.gldpc import generalize, lift


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False,
                     help="run long statistical acceptance tests")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def hamming():
    return make_code("hamming_7_4")


@pytest.fixture(scope="session")
def hamming_lifted_code():
    """g_r4_1, ZC=34, rows 1-3 Hamming: N=476, rate 2/7."""
    exp = load_exponent_matrix("g_r4_1", 34)
    return generalize(lift(exp), {0: "hamming_7_4", 1: "hamming_7_4", 2: "hamming_7_4"})


@pytest.fixture(scope="session")
def mixed_code():
    exp = load_exponent_matrix("g_r4_4")
    return generalize(lift(exp), {0: "shortened_hamming_6_3", 2: "hamming_7_4"})


@pytest.fixture
def small_config():
    """Tiny BEC experiment on the g_r4_1 code with ZC=4."""
    return {
        "code": {
            "exponent_matrix": [
                [0, -1, 0, -1, 0, -1, 0, -1, 0, -1, 0, -1, 0, -1],
                [-1, 0, -1, 0, -1, 0, -1, 0, -1, 0, -1, 0, -1, 0],
                [0, -1, -1, 3, -1, 1, 2, -1, -1, 1, 3, -1, 3, -1],
                [-1, 0, 2, -1, 0, -1, -1, 2, 0, -1, -1, 3, -1, 3],
            ],
            "lifting_size": 4,
            "subcodes": {1: "hamming_7_4", 2: "hamming_7_4", 3: "hamming_7_4"},
        },
        "channel": {"type": "bec", "parameters": [0.2, 0.4]},
        "decoder": {"mode": "layered", "schedules": ["1,2,3,4", "4,1,2,3"], "max_iterations": 3},
        "run": {"trials": 64, "seed": 7, "batch_size": 16},
    }

from pathlib import Path

import numpy as np
import pytest

from lidbounds import datasets

DATA_DIR = Path(__file__).parent / "data"
MNIST_IMAGES = DATA_DIR / "mnist5k-images-idx3-ubyte.gz"
MNIST_LABELS = DATA_DIR / "mnist5k-labels-idx1-ubyte.gz"


@pytest.fixture(scope="session")
def mnist():
    return datasets.load_mnist(MNIST_IMAGES, MNIST_LABELS)


@pytest.fixture(scope="session")
def mnist_1000(mnist):
    return datasets.subsample(mnist, 1000, seed=0)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    from tests import test_acceptance

    if test_acceptance.REPORT:
        terminalreporter.section("acceptance criteria")
        for line in sorted(test_acceptance.REPORT):
            terminalreporter.write_line(line)

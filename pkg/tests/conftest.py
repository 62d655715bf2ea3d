import numpy as np
import pytest

from effectorder import HermFactor, Ring, SpinFactor, algebra

# one representative of every factor kind, at modest size
FACTOR_KINDS = [
    HermFactor(3, Ring.REAL),
    HermFactor(1, Ring.REAL),
    HermFactor(2, Ring.COMPLEX),
    HermFactor(2, Ring.QUATERNION),
    SpinFactor(3),
]

MIXED = algebra(HermFactor(1), HermFactor(2), SpinFactor(3))


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def assert_close(a, b, tol=1e-10):
    __tracebackhide__ = True
    assert np.max(np.abs(np.asarray(a) - np.asarray(b))) <= tol

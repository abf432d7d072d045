from functools import lru_cache

import pytest

from awb import fixtures as fx
from awb.extensions import uce
from awb.tensor import tensor_self


@lru_cache(maxsize=None)
def cached_uce(name):
    return uce(fx.algebra(name))


@lru_cache(maxsize=None)
def cached_tensor_self(name):
    return tensor_self(fx.algebra(name))


@pytest.fixture(scope="session")
def pairs():
    return fx.compatible_pairs()


@pytest.fixture(scope="session")
def sum_ideal():
    """``T(M_2)⊕T(M_2)`` with its first summand."""
    return fx.algebra("t_m2_sum"), fx._first_factor(fx.QQ)

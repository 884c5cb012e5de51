"""Empirical rates are never slower than the worst-case guarantee T^(-alpha/n)."""
import pytest

from holderopt import AlgoParams, holder_norm, multi_basin, optimize
from holderopt import analysis as an

TS = [2**k for k in range(6, 13)]


def slope(obj, alpha):
    pairs = [(T, an.regrets(optimize(obj, AlgoParams.minimax(obj.n, T, 1.0, obj.C, alpha))).average) for T in TS]
    return an.rate_fit(pairs)[0]


@pytest.mark.parametrize("n, alpha", [(1, 0.5), (2, 0.5), (2, 0.8), (3, 0.5)])
def test_holder_norm_rate_at_least_guaranteed(n, alpha):
    obj = holder_norm(n, 1.0, alpha, (0.3, 0.65, 0.45)[:n])
    assert slope(obj, alpha) <= -alpha / n + 0.15


def test_multi_basin_rate_at_least_guaranteed():
    obj = multi_basin()
    assert slope(obj, obj.alpha) <= -obj.alpha / obj.n + 0.15

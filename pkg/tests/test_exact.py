import pytest

from metric_median import (
    GenSpec,
    LineMetric,
    TaryParams,
    UniformMetric,
    UsageError,
    cost,
    exact_median,
    find_median,
    generate,
    pseudo_median_bruteforce,
    verify_ratio,
)
from metric_median.exact import all_costs

from conftest import family


def test_exact_examples():
    r = exact_median(LineMetric(4))
    assert (r.index, r.opt_cost) == (1, 4.0)
    u = exact_median(UniformMetric(16))
    assert (u.index, u.opt_cost) == (0, 15.0)
    one = exact_median(LineMetric(1))
    assert (one.index, one.opt_cost) == (0, 0.0)


@pytest.mark.parametrize("n", [3, 40, 512])
def test_exact_is_minimum(n):
    for name, m in family(n, seed=n).items():
        if name == "graph" and n > 100:
            continue
        r = exact_median(m)
        costs = all_costs(m)
        assert all(r.opt_cost <= c for c in costs)
        for i in range(0, n, max(1, n // 16)):
            assert costs[i] == cost(m, i)


def test_pseudo_median_examples():
    assert pseudo_median_bruteforce(LineMetric(4), TaryParams.build(4, 2)) == 0
    assert pseudo_median_bruteforce(UniformMetric(4), TaryParams.build(4, 2)) == 0
    assert pseudo_median_bruteforce(LineMetric(1), TaryParams.build(1, 2)) == 0


@pytest.mark.parametrize("seed", range(10))
def test_pseudo_median_agrees_with_dp_on_integer_metrics(seed):
    n = 8 + 3 * seed
    m = generate(GenSpec("graph", n, seed=seed, density=0.5))
    for h in (2, 3):
        assert pseudo_median_bruteforce(m, TaryParams.build(n, h)) == find_median(m, h).index


def test_verify_examples():
    rep = verify_ratio(LineMetric(4), 2)
    assert (rep.ratio, rep.bound, rep.passed) == (1.5, 4, True)
    rep = verify_ratio(UniformMetric(16), 3)
    assert (rep.ratio, rep.bound, rep.passed) == (1.0, 6, True)
    rep = verify_ratio(LineMetric(1), 2)
    assert (rep.ratio, rep.passed) == (1.0, True)


def test_verify_propagates_usage_errors():
    with pytest.raises(UsageError):
        verify_ratio(LineMetric(4), 1)

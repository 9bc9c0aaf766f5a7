import math
from collections import Counter

import pytest
from hypothesis import given, strategies as st

from flashcards import rng


def test_splitmix64_reference_vector():
    # First outputs of the reference SplitMix64 generator seeded with 0.
    assert rng.splitmix64(0) == 0xE220A8397B1DCDAF
    assert rng.splitmix64(0x9E3779B97F4A7C15) == 0x6E789E6AA1B965F4


def test_word_is_pure():
    assert rng.word(7, 100, 0) == rng.word(7, 100, 0)
    assert rng.word(7, 100, 0) != rng.word(7, 101, 0)
    assert rng.word(7, 100, 0) != rng.word(8, 100, 0)
    assert rng.word(7, 100, 0) != rng.word(7, 100, 1)


@given(st.integers(min_value=0, max_value=2 ** 64), st.integers(min_value=0, max_value=10 ** 12),
       st.integers(min_value=1, max_value=10 ** 6))
def test_randbelow_range(seed, draw, n):
    assert 0 <= rng.randbelow(seed, draw, n) < n


@given(st.integers(min_value=0, max_value=2 ** 64), st.integers(min_value=0, max_value=10 ** 12))
def test_uniform_range(seed, draw):
    assert 0.0 <= rng.uniform(seed, draw) < 1.0


def test_randbelow_is_roughly_uniform():
    n, draws = 7, 70000
    freq = Counter(rng.randbelow(3, d, n) for d in range(draws))
    expected = draws / n
    chi2 = sum((freq[i] - expected) ** 2 / expected for i in range(n))
    assert chi2 < 22.5  # 0.999 quantile for 6 degrees of freedom


@pytest.mark.parametrize("lam", [0.5, 3, 9.5, 10, 37, 250])
def test_poisson_moments_and_pmf(lam):
    draws = 40000
    xs = [rng.poisson(11, d, lam) for d in range(draws)]
    mean = sum(xs) / draws
    var = sum((x - mean) ** 2 for x in xs) / draws
    se = math.sqrt(lam / draws)
    assert abs(mean - lam) < 5 * se
    assert abs(var / lam - 1) < 0.06
    # Mode frequency against the exact pmf.
    mode = math.floor(lam)
    pmf = math.exp(mode * math.log(lam) - lam - math.lgamma(mode + 1))
    freq = sum(1 for x in xs if x == mode) / draws
    assert abs(freq - pmf) < 5 * math.sqrt(pmf * (1 - pmf) / draws)


def test_poisson_edge_cases():
    assert rng.poisson(1, 1, 0) == 0
    with pytest.raises(ValueError):
        rng.poisson(1, 1, -1)
    with pytest.raises(ValueError):
        rng.randbelow(1, 1, 0)

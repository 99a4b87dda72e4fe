import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from laip.stats import StatsError, betainc_regularized, t_sf_two_tailed, welch_t_test

from oracles import p_two_tailed_by_quadrature, welch_by_hand

# Frozen before the implementation was trusted: t and df by hand algebra
# (means 3 and 4, both variances 2.5, so t = -1/sqrt(0.5+0.5) and the
# Welch-Satterthwaite ratio collapses to 8); p by adaptive quadrature of the
# t density.
WORKED_PAIR = ([1.0, 2.0, 3.0, 4.0, 5.0], [2.0, 3.0, 4.0, 5.0, 6.0])
WORKED_T = -1.0
WORKED_DF = 8.0
WORKED_P = 0.346593507087


def test_identical_samples_give_t0_p1():
    result = welch_t_test([1, 2, 3], [1, 2, 3])
    assert result.t == 0.0
    assert result.p == 1.0
    assert not result.degenerate


def test_worked_pair():
    result = welch_t_test(*WORKED_PAIR)
    assert result.t == pytest.approx(WORKED_T, abs=1e-12)
    assert result.df == pytest.approx(WORKED_DF, abs=1e-12)
    assert result.p == pytest.approx(WORKED_P, abs=1e-6)


def test_worked_pair_against_hand_recomputation():
    t, df = welch_by_hand(*WORKED_PAIR)
    result = welch_t_test(*WORKED_PAIR)
    assert result.t == pytest.approx(t, abs=1e-12)
    assert result.df == pytest.approx(df, abs=1e-12)


def test_twenty_fixed_seed_pairs_match_quadrature_oracle():
    rng = np.random.default_rng(424242)
    for _ in range(20):
        n_a = int(rng.integers(2, 15))
        n_b = int(rng.integers(2, 15))
        a = (rng.standard_normal(n_a) * rng.uniform(0.5, 3.0) + rng.uniform(-2, 2)).tolist()
        b = (rng.standard_normal(n_b) * rng.uniform(0.5, 3.0) + rng.uniform(-2, 2)).tolist()
        t_hand, df_hand = welch_by_hand(a, b)
        result = welch_t_test(a, b)
        assert result.t == pytest.approx(t_hand, abs=1e-9)
        assert result.df == pytest.approx(df_hand, abs=1e-9)
        assert result.p == pytest.approx(p_two_tailed_by_quadrature(t_hand, df_hand), abs=1e-6)


def test_sample_too_small():
    with pytest.raises(StatsError, match=">= 2"):
        welch_t_test([1.0], [1.0, 2.0])


def test_degenerate_zero_variance_equal_means():
    result = welch_t_test([2.0, 2.0], [2.0, 2.0, 2.0])
    assert (result.t, result.p, result.degenerate) == (0.0, 1.0, True)


def test_degenerate_zero_variance_different_means():
    result = welch_t_test([1.0, 1.0], [2.0, 2.0])
    assert result.p == 0.0
    assert result.degenerate
    assert result.t == -math.inf
    assert welch_t_test([2.0, 2.0], [1.0, 1.0]).t == math.inf


def test_antisymmetry():
    a, b = WORKED_PAIR
    forward = welch_t_test(a, b)
    backward = welch_t_test(b, a)
    assert forward.t == pytest.approx(-backward.t, abs=1e-12)
    assert forward.p == pytest.approx(backward.p, abs=1e-12)
    assert forward.df == pytest.approx(backward.df, abs=1e-12)


samples = st.lists(st.floats(-50, 50, allow_subnormal=False), min_size=2, max_size=10)


@settings(max_examples=60, deadline=None)
@given(samples, samples, st.floats(0.1, 10), st.floats(-20, 20))
def test_t_invariant_under_affine_map(a, b, c, d):
    base = welch_t_test(a, b)
    mapped = welch_t_test([c * x + d for x in a], [c * x + d for x in b])
    if base.degenerate or mapped.degenerate:
        assert base.degenerate == mapped.degenerate
        return
    assert mapped.t == pytest.approx(base.t, abs=1e-9, rel=1e-9)


@settings(max_examples=60, deadline=None)
@given(samples, samples, st.floats(-20, 20))
def test_p_invariant_under_common_shift(a, b, d):
    base = welch_t_test(a, b)
    shifted = welch_t_test([x + d for x in a], [x + d for x in b])
    if base.degenerate or shifted.degenerate:
        return
    assert shifted.p == pytest.approx(base.p, abs=1e-9)


def test_betainc_boundaries():
    assert betainc_regularized(2.0, 3.0, 0.0) == 0.0
    assert betainc_regularized(2.0, 3.0, 1.0) == 1.0


def test_betainc_symmetric_half():
    # I_{1/2}(a, a) = 1/2 for any a
    for a in (0.5, 1.0, 3.5, 10.0):
        assert betainc_regularized(a, a, 0.5) == pytest.approx(0.5, abs=1e-12)


def test_betainc_closed_form():
    # I_x(1, b) = 1 - (1-x)^b
    for x in (0.1, 0.4, 0.9):
        for b in (1.0, 2.0, 5.0):
            assert betainc_regularized(1.0, b, x) == pytest.approx(1 - (1 - x) ** b, abs=1e-12)


@settings(max_examples=40, deadline=None)
@given(st.floats(-30, 30, allow_subnormal=False), st.floats(1, 200))
def test_tail_probability_matches_quadrature(t, df):
    assert t_sf_two_tailed(t, df) == pytest.approx(p_two_tailed_by_quadrature(t, df), abs=1e-8)

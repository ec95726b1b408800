from itertools import product
from math import sqrt

import numpy as np
import pytest
from hypothesis import given, strategies as st

from pamlab import simplex
from pamlab.errors import DegenerateGap, WrongRegime
from pamlab.params import make_profile


def test_gaps_and_weights():
    w = simplex.gaps([0.25, 0.5, 0.75], 1.0)
    np.testing.assert_allclose(w, [0.25, 0.25, 0.25])
    np.testing.assert_allclose(simplex.mixing_weights(w), [1, sqrt(0.5), sqrt(0.5)])
    w = simplex.gaps([0.1, 0.9], 1.0)
    np.testing.assert_allclose(w, [0.8, 0.1])
    np.testing.assert_allclose(simplex.mixing_weights(w), [1, sqrt(8 / 9)])
    np.testing.assert_allclose(simplex.gaps([1.0], 2.0), [1.0])


@pytest.mark.parametrize("s,t", [([0.5, 0.5], 1.0), ([0.2, 0.1], 1.0), ([0.5], 0.5), ([-0.1], 1.0)])
def test_degenerate_gaps(s, t):
    with pytest.raises(DegenerateGap):
        simplex.gaps(s, t)


def _brute_force(n):
    words = []
    for word in product((0, 1, 2), repeat=n):
        if sum(word) != n - 1:
            continue
        if any(a == b and a != 1 for a, b in zip(word, word[1:])):
            continue
        words.append(word)
    return words


@pytest.mark.parametrize("n", range(1, 9))
def test_alphabet_against_brute_force(n):
    assert simplex.alpha_multipliers(n) == _brute_force(n)


def test_alphabet_examples():
    p = make_profile(0.6, [0.1])
    a = simplex.alphabet_constant(p)
    assert a == pytest.approx(0.4)
    assert set(simplex.enumerate_alpha(p, 2)) == {(0, a), (a, 0)}
    assert set(simplex.enumerate_alpha(p, 3)) == {(0, a, a), (a, 0, a), (a, a, 0), (0, 2 * a, 0)}
    assert simplex.enumerate_alpha(p, 1) == [(0.0,)]


def test_case_split():
    assert simplex.case_split(make_profile(0.6, [0.1])) is simplex.Case.CaseI
    assert simplex.case_split(make_profile(0.6, [0.9])) is simplex.Case.CaseII
    assert simplex.case_split(make_profile(0.6, [0.5])) is simplex.Case.CaseII
    with pytest.raises(WrongRegime):
        simplex.enumerate_alpha(make_profile(0.6, [0.9]), 2)


def test_simplex_samples_are_ordered():
    s = simplex.sample_simplex(np.random.default_rng(1), 4, 1000, t=2.0)
    assert s.shape == (1000, 4) and np.all(np.diff(s, axis=1) >= 0) and s.max() < 2.0
    assert simplex.simplex_volume(3, 2.0) == pytest.approx(8 / 6)


@given(st.lists(st.floats(0.01, 1.0), min_size=1, max_size=6))
def test_gaps_sum_to_horizon(increments):
    s = np.cumsum(increments[:-1]) if len(increments) > 1 else np.array([0.0])
    t = float(np.sum(increments)) if len(increments) > 1 else 1.0
    w = simplex.gaps(s, t)
    assert w.sum() + s[0] == pytest.approx(t)
    lam = simplex.mixing_weights(w)
    assert lam[0] == 1 and np.all((lam > 0) & (lam < 1)[: len(lam)] | (np.arange(len(lam)) == 0))


@given(st.integers(1, 10))
def test_alphabet_words_are_admissible(n):
    for word in simplex.alpha_multipliers(n):
        assert sum(word) == n - 1 and set(word) <= {0, 1, 2}
        assert all(not (a == b != 1) for a, b in zip(word, word[1:]))

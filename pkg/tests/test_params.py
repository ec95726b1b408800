from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from pamlab.errors import EmptyDimension, InvalidInput, OutOfRange
from pamlab.params import exact, format_profile, make_profile, parse_profile, read_profile

hurst = st.floats(min_value=0.01, max_value=0.99, allow_nan=False).map(lambda x: round(x, 3))
temporal = st.floats(min_value=0.5, max_value=1.0).map(lambda x: round(x, 3))


def test_single_rough_parameter():
    p = make_profile(0.6, [0.1])
    assert (p.d, p.d_star, p.h_star_exact, p.h_total_exact, p.beta_star_exact) == (
        1, 1, Fraction(1, 10), Fraction(1, 10), 0)


def test_mixed_profile_is_reordered():
    p = make_profile(0.6, [0.8, 0.3])
    assert p.h == (0.3, 0.8)
    assert p.d_star == 1 and p.h_star_exact == Fraction(3, 10)
    assert p.h_upper_exact == Fraction(4, 5)
    assert p.beta_star_exact == Fraction(1, 5)


def test_white_time_brownian_point():
    p = make_profile(0.5, [0.5])
    assert p.d_star == 1 and p.h_star_exact == Fraction(1, 2) and p.beta_star == 0


def test_time_independent_noise_accepted():
    assert make_profile(1, [0.3]).gamma == 0.0


def test_exact_decimals():
    assert exact(0.1) == Fraction(1, 10)
    assert exact(0.58) + exact(0.12) == Fraction(7, 10)


@pytest.mark.parametrize("h0,h", [(0.49, [0.3]), (1.01, [0.3]), (0.6, [0.0]), (0.6, [1.0]), (0.6, [0.3, -0.1])])
def test_out_of_range(h0, h):
    with pytest.raises(OutOfRange):
        make_profile(h0, h)


def test_empty_dimension():
    with pytest.raises(EmptyDimension):
        make_profile(0.6, [])


def test_parse_profile_file(tmp_path):
    path = tmp_path / "p.txt"
    path.write_text("# a comment\nh0 = 0.7\n\nh = [0.3, 0.8]  # two dims\n")
    p = read_profile(path)
    assert p == make_profile(0.7, [0.8, 0.3])


@pytest.mark.parametrize("text", ["h0 = 0.7\n", "h0 = 0.7\nh = [0.3]\nh = [0.2]\n", "h0 = x\nh = [0.3]\n",
                                  "h0 = 0.7\nh = ['a']\n", "speed = 1\n"])
def test_parse_rejects(text):
    with pytest.raises(InvalidInput):
        parse_profile(text)


@given(temporal, st.lists(hurst, min_size=1, max_size=4))
def test_format_parse_round_trip(h0, h):
    p = make_profile(h0, h)
    assert parse_profile(format_profile(p)) == p


@given(temporal, st.lists(hurst, min_size=1, max_size=4), st.randoms())
def test_aggregates_ignore_order(h0, h, rnd):
    shuffled = list(h)
    rnd.shuffle(shuffled)
    a, b = make_profile(h0, h), make_profile(h0, shuffled)
    assert a == b
    assert a.h_star_exact + a.h_upper_exact == a.h_total_exact
    assert a.beta_star_exact == sum(4 * exact(x) - 3 for x in h if exact(x) >= Fraction(3, 4))

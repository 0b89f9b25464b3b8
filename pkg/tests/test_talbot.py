import cmath
import math
from fractions import Fraction

import pytest

from talbot_gauss.gauss_sum import gauss_sum_half
from talbot_gauss.optics import fractional_params, scale_to_hat, standard_params, Rational2x2
from talbot_gauss.talbot import (
    CLOSED_I, CLOSED_II, DIRECT_I, DIRECT_II, amplitude, amplitude_closed_I,
    amplitude_closed_II, amplitude_direct_I, amplitude_direct_II, pattern,
    reciprocity_gap, spot_position, standard_pattern,
)


def naive_I(n, p, q, k1=1):
    """Float p-term sum, Fresnel phase sqrt(-i)."""
    e = (p * q) % 2
    m = 2 * n + q * e
    s = sum(cmath.exp(1j * math.pi * ((m * t + q * t * t) / p + k1 * m * m / (4 * p * q)))
            for t in range(p))
    return cmath.exp(-0.25j * math.pi) / math.sqrt(p) * s


def naive_II(n, p, q, k3=0):
    e = (p * q) % 2
    m = 2 * n + q * e
    s = sum(cmath.exp(1j * math.pi * ((m * t - p * t * t) / q + k3 * m * m / (4 * q * q)))
            for t in range(q))
    return s / math.sqrt(q)


def coprime_pairs(limit):
    return [(p, q) for p in range(1, limit + 1) for q in range(1, limit + 1)
            if math.gcd(p, q) == 1]


def test_single_term_cases():
    params = standard_params(1, 1)
    assert abs(amplitude_direct_II(0, params) - 1) < 1e-15
    assert abs(amplitude_direct_I(0, params) - 1) < 1e-15


def test_small_examples():
    for n in range(-4, 5):
        assert abs(abs(amplitude_direct_I(n, standard_params(2, 1))) - 1) < 1e-12
        assert abs(abs(amplitude_direct_II(n, standard_params(1, 2))) - 1) < 1e-12
        assert abs(amplitude_direct_I(n, standard_params(3, 2))
                   - amplitude_closed_I(n, 3, 2)) < 1e-9
        assert abs(amplitude_direct_II(n, standard_params(2, 3))
                   - amplitude_direct_I(n, standard_params(2, 3))) < 1e-9
    for n in range(-6, 7):
        assert abs(amplitude_closed_I(n, 2, 3) - amplitude_direct_I(n, standard_params(2, 3))) < 1e-9
        assert abs(amplitude_closed_II(n, 2, 3) - amplitude_direct_II(n, standard_params(2, 3))) < 1e-9


@pytest.mark.parametrize("p,q", [(1, 1), (2, 3), (3, 5), (7, 4), (9, 11), (13, 6)])
def test_direct_sums_match_naive(p, q):
    params = standard_params(p, q)
    for n in range(-q, q + 1):
        assert abs(amplitude_direct_I(n, params) - naive_I(n, p, q)) < 1e-10
        assert abs(amplitude_direct_II(n, params) - naive_II(n, p, q)) < 1e-10


def test_non_standard_kappa_terms():
    fp = fractional_params(scale_to_hat(Rational2x2(2, 3, 1, 2), 1, 1))
    for n in range(-3, 4):
        assert abs(amplitude_direct_I(n, fp) - naive_I(n, 2, 3, k1=4)) < 1e-10
        assert abs(amplitude_direct_II(n, fp) - naive_II(n, 2, 3, k3=4)) < 1e-10
    with pytest.raises(ValueError):
        amplitude(0, fp, CLOSED_I)


def test_reciprocity_sweep():
    worst = 0.0
    for p, q in coprime_pairs(30):
        worst = max(worst, reciprocity_gap(standard_params(p, q), -q, q))
    assert worst < 1e-9


def test_closed_forms_and_unit_modulus_sweep():
    for p, q in coprime_pairs(30):
        params = standard_params(p, q)
        for n in range(-q, q + 1):
            a1 = amplitude_direct_I(n, params)
            assert abs(amplitude_closed_I(n, p, q) - a1) < 1e-9, (n, p, q)
            assert abs(amplitude_closed_II(n, p, q) - amplitude_direct_II(n, params)) < 1e-9
            assert abs(abs(a1) - 1) < 1e-9


def test_q_term_is_a_half_gauss_sum():
    for p, q in coprime_pairs(12):
        e = (p * q) % 2
        for n in range(-q, q + 1):
            m = 2 * n + q * e
            g = gauss_sum_half(-p, q, Fraction(-m, 2 * p))
            expect = cmath.exp(1j * math.pi * m * m / (4 * p * q)) * g / math.sqrt(q)
            assert abs(amplitude_direct_II(n, standard_params(p, q)) - expect) < 1e-9


def test_amplitude_dispatch():
    params = standard_params(3, 5)
    values = [amplitude(2, params, v).value for v in (DIRECT_I, DIRECT_II, CLOSED_I, CLOSED_II)]
    assert max(abs(v - values[0]) for v in values) < 1e-9
    with pytest.raises(ValueError):
        amplitude(0, params, "bogus")
    with pytest.raises(ValueError):
        amplitude_closed_I(0, 2, 4)


def test_pattern_half_talbot():
    pat = standard_pattern(1, 2, 0, 3)
    assert [s.position for s in pat.spots] == [0, Fraction(1, 2), 1, Fraction(3, 2)]
    assert all(abs(s.intensity - 1) < 1e-9 for s in pat.spots)


def test_pattern_positions_and_intensity():
    assert spot_position(0, standard_params(1, 1)) == Fraction(1, 2)
    pat = pattern(standard_params(3, 5), -5, 5, DIRECT_II)
    for s in pat.spots:
        assert s.intensity == abs(s.amplitude) ** 2
        assert s.position == (Fraction(1, 2) + Fraction(s.n, 5)) / standard_params(3, 5).kappa2
    with pytest.raises(ValueError):
        pattern(standard_params(1, 1), 2, 1)

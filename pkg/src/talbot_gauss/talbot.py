"""Fractional Talbot pattern of a delta-comb grating.

At a rational propagation distance the screen field collapses onto a
lattice of spots x = (e_qp/2 + n/q)/kappa2, each carrying a Gauss-sum
amplitude.  Two direct sums (a p-term "particle" sum and a q-term "wave"
sum) and their closed forms are provided; their mutual agreement is the
Gauss reciprocity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .exact_core import exp_i_pi, jacobi, mod_inverse, parity_indicator
from .optics import FractionalParams, standard_params

DIRECT_I = "direct_I"
DIRECT_II = "direct_II"
CLOSED_I = "closed_I"
CLOSED_II = "closed_II"
VARIANTS = (DIRECT_I, DIRECT_II, CLOSED_I, CLOSED_II)

# sqrt(1/i), the Fresnel-kernel phase of the p-term sum
_SQRT_MINUS_I = exp_i_pi(Fraction(-1, 4))


@dataclass(frozen=True)
class TalbotAmplitude:
    n: int
    value: complex
    variant: str


@dataclass(frozen=True)
class Spot:
    n: int
    position: Fraction
    amplitude: complex
    intensity: float


@dataclass
class TalbotPattern:
    params: FractionalParams
    variant: str
    spots: list[Spot] = field(default_factory=list)


def _check_pq(p, q):
    if p < 1 or q < 1:
        raise ValueError(f"p and q must be positive, got p={p}, q={q}")
    if math.gcd(p, q) != 1:
        raise ValueError(f"p={p} and q={q} are not coprime")


def _m(n, p, q):
    return 2 * n + q * parity_indicator(q, p)


def amplitude_direct_I(n: int, params: FractionalParams) -> complex:
    """sqrt(-i/p) sum_{s<p} exp(i pi [(m s + q s^2)/p + k1 m^2/(4pq)]), m = 2n + q e_qp."""
    p, q = params.p, params.q
    _check_pq(p, q)
    m = _m(n, p, q)
    tail = params.kappa1_hat * Fraction(m * m, 4 * p * q)
    total = sum(exp_i_pi(Fraction(m * s + q * s * s, p) + tail) for s in range(p))
    return _SQRT_MINUS_I / math.sqrt(p) * total


def amplitude_direct_II(n: int, params: FractionalParams) -> complex:
    """sqrt(1/q) sum_{s<q} exp(i pi [(m s - p s^2)/q + k3 m^2/(4q^2)])."""
    p, q = params.p, params.q
    _check_pq(p, q)
    m = _m(n, p, q)
    tail = params.kappa3_hat * Fraction(m * m, 4 * q * q)
    total = sum(exp_i_pi(Fraction(m * s - p * s * s, q) + tail) for s in range(q))
    return total / math.sqrt(q)


def amplitude_closed_I(n: int, p: int, q: int) -> complex:
    """Closed form of the p-term amplitude for free propagation over q/p."""
    _check_pq(p, q)
    if p % 2 == 0:
        c = Fraction(q, p) * mod_inverse(q, p) ** 2 - Fraction(1, q * p)
        return jacobi(p, q) * exp_i_pi(Fraction(q - 1, 4) - c * n * n)
    if q % 2 == 0:
        c = Fraction(q, p) * mod_inverse(q, p) ** 2 - Fraction(1, q * p)
        return jacobi(q, p) * exp_i_pi(-(Fraction(p, 4) + c * n * n))
    # odd-odd: the [1/2q]_p factor enters squared, as in the q-term form
    c = (Fraction(2 * q, p) * mod_inverse(2, p) * mod_inverse(2 * q, p) ** 2
         - Fraction(1, 4 * q * p))
    return jacobi(q, p) * exp_i_pi(-(Fraction(p, 4) + c * (2 * n + q) ** 2))


def amplitude_closed_II(n: int, p: int, q: int) -> complex:
    """Closed form of the q-term amplitude for free propagation over q/p."""
    _check_pq(p, q)
    if p % 2 == 0:
        c = Fraction(p, q) * mod_inverse(p, q) ** 2
        return jacobi(p, q) * exp_i_pi(Fraction(q - 1, 4) + c * n * n)
    if q % 2 == 0:
        c = Fraction(p, q) * mod_inverse(p, q) ** 2
        return jacobi(q, p) * exp_i_pi(-(Fraction(p, 4) - c * n * n))
    c = Fraction(2 * p, q) * mod_inverse(2, q) * mod_inverse(2 * p, q) ** 2
    return jacobi(p, q) * exp_i_pi(Fraction(q - 1, 4) + c * (2 * n + q) ** 2)


def amplitude(n: int, params: FractionalParams, variant: str = DIRECT_I) -> TalbotAmplitude:
    if variant == DIRECT_I:
        v = amplitude_direct_I(n, params)
    elif variant == DIRECT_II:
        v = amplitude_direct_II(n, params)
    elif variant in (CLOSED_I, CLOSED_II):
        if not params.is_standard:
            raise ValueError("closed forms only hold for free propagation "
                             "[[1, q/p], [0, 1]]")
        fn = amplitude_closed_I if variant == CLOSED_I else amplitude_closed_II
        v = fn(n, params.p, params.q)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return TalbotAmplitude(n, v, variant)


def spot_position(n: int, params: FractionalParams) -> Fraction:
    e = parity_indicator(params.q, params.p)
    return (Fraction(e, 2) + Fraction(n, params.q)) / params.kappa2


def pattern(params: FractionalParams, n_min: int, n_max: int,
            variant: str = DIRECT_I) -> TalbotPattern:
    if n_min > n_max:
        raise ValueError(f"empty spot range {n_min}..{n_max}")
    out = TalbotPattern(params, variant)
    for n in range(n_min, n_max + 1):
        a = amplitude(n, params, variant).value
        out.spots.append(Spot(n, spot_position(n, params), a, abs(a) ** 2))
    return out


def reciprocity_gap(params: FractionalParams, n_min: int, n_max: int) -> float:
    """max_n |A^I(n) - A^II(n)| over the range."""
    return max(abs(amplitude_direct_I(n, params) - amplitude_direct_II(n, params))
               for n in range(n_min, n_max + 1))


def standard_pattern(p: int, q: int, n_min: int, n_max: int,
                     variant: str = DIRECT_I) -> TalbotPattern:
    return pattern(standard_params(p, q), n_min, n_max, variant)

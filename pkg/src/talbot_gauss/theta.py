"""Jacobi theta function and the theta form of the delta-comb screen field.

theta(u, tau) = sum_n exp(pi i (2 n u + tau n^2)), Im tau > 0.

For the physical fractional case tau is real and the series only exists as
a distribution; here it is regularized by tau -> tau + i eps.  The discrete
limit belongs to :mod:`talbot_gauss.talbot`.
"""

from __future__ import annotations

import cmath
import math

from .optics import HatSystem

RTOL = 1e-18
MAX_TERMS = 2_000_000

VARIANT_I = "I"
VARIANT_II = "II"


def _term(n: int, u: complex, tau: complex) -> complex:
    # phase reduced mod 2 before the factor pi, so large n keep full accuracy
    phase = math.fmod(2 * n * u.real, 2.0) + math.fmod(tau.real * n * n, 2.0)
    decay = -math.pi * (2 * n * u.imag + tau.imag * n * n)
    return cmath.rect(math.exp(decay), math.pi * math.fmod(phase, 2.0))


def theta(u: complex, tau: complex) -> complex:
    """Symmetric truncated sum of the theta series.

    Stops at the first |n| past the peak of the term envelope where both
    the +n and -n terms fall below RTOL * (|partial sum| + 1).
    """
    u, tau = complex(u), complex(tau)
    if tau.imag <= 0:
        raise ValueError(f"theta needs Im tau > 0, got tau = {tau}")
    # |term(n)| = exp(-pi (Im tau n^2 + 2 n Im u)) peaks near n = -Im u / Im tau
    peak = abs(u.imag) / tau.imag
    total = _term(0, u, tau)
    n = 1
    while n < MAX_TERMS:
        a, b = _term(n, u, tau), _term(-n, u, tau)
        total += a + b
        if n > peak and max(abs(a), abs(b)) < RTOL * (abs(total) + 1):
            return total
        n += 1
    raise RuntimeError(f"theta series did not converge for u={u}, tau={tau}")


def jacobi_transform_residual(u: complex, tau: complex) -> float:
    """|theta(u/tau, -1/tau) - sqrt(-i tau) exp(pi i u^2/tau) theta(u, tau)|."""
    u, tau = complex(u), complex(tau)
    lhs = theta(u / tau, -1 / tau)
    rhs = cmath.sqrt(-1j * tau) * cmath.exp(1j * math.pi * u * u / tau) * theta(u, tau)
    return abs(lhs - rhs)


def phi_theta(x2: float, ghat: HatSystem, variant: str = VARIANT_I,
              eps: float = 0.5) -> complex:
    """Regularized screen field of the delta comb in theta form.

    With tau = A/B and tau_e = tau + i eps:

    I:  sqrt(-i/B) exp(pi i D x^2/B) theta(-x/B; tau_e)
    II: sqrt(-i/B) (-i tau_e)^{-1/2} exp(pi i x^2 (D/B - 1/(B^2 tau_e)))
        * theta(x/(B tau_e); -1/tau_e)

    II is the Jacobi transform of I, so the two agree for every eps > 0;
    at eps = 0 the II prefactor is 1/sqrt(A) and the Gaussian factor is
    exp(pi i C x^2 / A).
    """
    if ghat.A == 0 or ghat.B == 0:
        raise ValueError("theta form needs A != 0 and B != 0")
    if eps <= 0:
        raise ValueError("regularization eps must be positive")
    A, B, D = float(ghat.A), float(ghat.B), float(ghat.D)
    x2 = float(x2)
    tau_e = complex(A / B, eps)
    pref = cmath.sqrt(-1j / B)
    if variant == VARIANT_I:
        return pref * cmath.exp(1j * math.pi * D * x2 * x2 / B) * theta(-x2 / B, tau_e)
    if variant == VARIANT_II:
        gauss = cmath.exp(1j * math.pi * x2 * x2 * (D / B - 1 / (B * B * tau_e)))
        return (pref / cmath.sqrt(-1j * tau_e) * gauss
                * theta(x2 / (B * tau_e), -1 / tau_e))
    raise ValueError(f"unknown variant {variant!r}")


def phi_theta_unregularized_II_prefactor(ghat: HatSystem) -> complex:
    """eps -> 0 limit of the II prefactor sqrt(-i/B) / sqrt(-i A/B)."""
    A, B = float(ghat.A), float(ghat.B)
    return cmath.sqrt(-1j / B) / cmath.sqrt(-1j * A / B)

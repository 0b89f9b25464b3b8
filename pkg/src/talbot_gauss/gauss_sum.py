"""Quadratic Gauss sums: direct evaluation, closed forms and reciprocity."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .exact_core import exp_i_pi, is_prime, jacobi

FULL = "full"
HALF = "half"


@dataclass(frozen=True)
class GaussSumValue:
    value: complex
    p: int
    q: int
    d: Fraction
    variant: str

    @property
    def abs2(self) -> float:
        return abs(self.value) ** 2


def _check(p, q):
    if q < 1:
        raise ValueError(f"q must be >= 1, got {q}")
    if math.gcd(p, q) != 1:
        raise ValueError(f"p={p} and q={q} are not coprime")


def gauss_sum_phases(p: int, q: int, d=0, variant: str = FULL) -> list[Fraction]:
    """Exponents r_c in [0, 2) so that the sum is sum_c exp(i*pi*r_c)."""
    _check(p, q)
    d = Fraction(d)
    scale = 2 if variant == FULL else 1
    if variant not in (FULL, HALF):
        raise ValueError(f"unknown variant {variant!r}")
    return [Fraction(scale * p) * (c + d) ** 2 / q % 2 for c in range(q)]


def gauss_sum_full(p: int, q: int, d=0) -> complex:
    """G(p, q, d) = sum_{c=0}^{q-1} exp(2 pi i p (c+d)^2 / q)."""
    return sum(exp_i_pi(r) for r in gauss_sum_phases(p, q, d, FULL))


def gauss_sum_half(p: int, q: int, d=0) -> complex:
    """G'(p, q, d) = sum_{c=0}^{q-1} exp(pi i p (c+d)^2 / q)."""
    return sum(exp_i_pi(r) for r in gauss_sum_phases(p, q, d, HALF))


def evaluate(p: int, q: int, d=0, variant: str = FULL) -> GaussSumValue:
    fn = gauss_sum_full if variant == FULL else gauss_sum_half
    return GaussSumValue(fn(p, q, d), p, q, Fraction(d), variant)


def closed_form_G1(q: int) -> complex:
    """G(1, q) for an odd prime q: sqrt(q) or i sqrt(q) by q mod 4."""
    if q < 3 or not is_prime(q):
        raise ValueError(f"{q} is not an odd prime")
    root = math.sqrt(q)
    return complex(root, 0) if q % 4 == 1 else complex(0, root)


def legendre_reduction(p: int, q: int) -> complex:
    """G(p, q) = (p|q) G(1, q) for an odd prime q not dividing p."""
    if math.gcd(p, q) != 1:
        raise ValueError(f"p={p} and q={q} are not coprime")
    return jacobi(p, q) * closed_form_G1(q)


@dataclass(frozen=True)
class ReciprocityReport:
    p: int
    q: int
    d: int
    lhs: complex
    rhs: complex
    residual: float
    # the classical identity needs p*q even; odd-odd pairs are only measured
    asserted: bool


def reciprocity_report(p: int, q: int, d: int = 0) -> ReciprocityReport:
    """Both sides of the Hecke/Gauss reciprocity law for (p, q, d).

    lhs = |q|^{-1/2} sum_{c mod q} exp(pi i p (c+d)^2 / q)
    rhs = exp(pi i sgn(pq)/4) |p|^{-1/2} sum_{c mod p} exp(-pi i q c^2/p - 2 pi i d c)
    """
    if p == 0 or q == 0:
        raise ValueError("p and q must be nonzero")
    if math.gcd(p, q) != 1:
        raise ValueError(f"p={p} and q={q} are not coprime")
    if Fraction(d).denominator != 1:
        raise ValueError("d must be an integer")
    d = int(d)
    aq, ap = abs(q), abs(p)
    lhs = sum(exp_i_pi(Fraction(p * (c + d) ** 2, q)) for c in range(aq))
    lhs /= math.sqrt(aq)
    rhs = sum(exp_i_pi(Fraction(-q * c * c, p) - 2 * d * c) for c in range(ap))
    rhs *= exp_i_pi(Fraction(1 if p * q > 0 else -1, 4)) / math.sqrt(ap)
    return ReciprocityReport(p, q, d, lhs, rhs, abs(lhs - rhs), (p * q) % 2 == 0)


def reciprocity_residual(p: int, q: int, d: int = 0) -> float:
    return reciprocity_report(p, q, d).residual


def reciprocity_sweep(p_max: int, q_max: int, d_max: int) -> list[ReciprocityReport]:
    """All coprime 1 <= p <= p_max, 1 <= q <= q_max, 0 <= d <= d_max, in order."""
    return [reciprocity_report(p, q, d)
            for p in range(1, p_max + 1)
            for q in range(1, q_max + 1)
            if math.gcd(p, q) == 1
            for d in range(d_max + 1)]


def modulus_law_error(q: int) -> float:
    """Relative error of |G(1, q)|^2 = q."""
    return abs(abs(gauss_sum_full(1, q)) ** 2 - q) / q


def sign_of_square(q: int) -> complex:
    """G(1, q)^2 / q, expected (-1)^{(q-1)/2} for odd q."""
    g = gauss_sum_full(1, q)
    return g * g / q


__all__ = [
    "FULL", "HALF", "GaussSumValue", "ReciprocityReport",
    "closed_form_G1", "evaluate", "gauss_sum_full", "gauss_sum_half",
    "gauss_sum_phases", "legendre_reduction", "modulus_law_error",
    "reciprocity_report", "reciprocity_residual", "reciprocity_sweep",
    "sign_of_square",
]

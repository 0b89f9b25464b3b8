"""Exact-rational Gauss (ABCD) optics.

Optical systems are unit-determinant 2x2 matrices acting on phase points
(x, u), u = dx/dz.  Every entry is a ``Fraction`` so determinant and
symplectic identities are checked exactly, not to a tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact_core import canonical_bezout, CoprimePair


def _frac(v) -> Fraction:
    if isinstance(v, float):
        # floats go through their shortest repr, not their binary expansion
        return Fraction(repr(v))
    return Fraction(v)


@dataclass(frozen=True)
class Rational2x2:
    A: Fraction
    B: Fraction
    C: Fraction
    D: Fraction

    def __post_init__(self):
        for name in "ABCD":
            object.__setattr__(self, name, _frac(getattr(self, name)))
        if self.det != 1:
            raise ValueError(f"determinant must be exactly 1, got {self.det}")

    @property
    def det(self) -> Fraction:
        return self.A * self.D - self.B * self.C

    def __matmul__(self, other):
        if isinstance(other, Rational2x2):
            return compose(self, other)
        if isinstance(other, PhasePoint):
            return other.transformed(self)
        return NotImplemented

    def inverse(self) -> Rational2x2:
        return Rational2x2(self.D, -self.B, -self.C, self.A)

    def entries(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.A, self.B, self.C, self.D)

    @classmethod
    def identity(cls) -> Rational2x2:
        return cls(1, 0, 0, 1)


@dataclass(frozen=True)
class PhasePoint:
    x: Fraction
    u: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", _frac(self.x))
        object.__setattr__(self, "u", _frac(self.u))

    def transformed(self, g: Rational2x2) -> PhasePoint:
        return PhasePoint(g.A * self.x + g.B * self.u, g.C * self.x + g.D * self.u)

    def __add__(self, other: PhasePoint) -> PhasePoint:
        return PhasePoint(self.x + other.x, self.u + other.u)


@dataclass(frozen=True)
class HatSystem:
    """Dimensionless system: x in units of the grating period a,
    propagation in units of a^2/lambda."""

    A: Fraction
    B: Fraction
    C: Fraction
    D: Fraction
    a: Fraction
    lam: Fraction

    @property
    def matrix(self) -> Rational2x2:
        return Rational2x2(self.A, self.B, self.C, self.D)

    @property
    def tau(self) -> Fraction:
        """Theta modulus A/B of the screen-field series (real axis)."""
        return self.A / self.B


@dataclass(frozen=True)
class FractionalParams:
    p: int
    q: int
    kappa1: Fraction
    kappa2: Fraction
    kappa3: Fraction
    kappa1_hat: Fraction
    kappa3_hat: Fraction

    @property
    def is_standard(self) -> bool:
        """True for the free-propagation case A = D = 1, C = 0."""
        return self.kappa1_hat == 1 and self.kappa3_hat == 0 and self.kappa2 == 1

    def printed_kappa3(self) -> Fraction:
        """(p/q)(kappa1/kappa2^2 - kappa2), the relation printed next to the
        fractional condition; reported only, it disagrees with det = 1."""
        return Fraction(self.p, self.q) * (self.kappa1 / self.kappa2 ** 2 - self.kappa2)


def compose(g2: Rational2x2, g1: Rational2x2) -> Rational2x2:
    """g2 . g1: the system g1 followed by g2."""
    return Rational2x2(
        g2.A * g1.A + g2.B * g1.C, g2.A * g1.B + g2.B * g1.D,
        g2.C * g1.A + g2.D * g1.C, g2.C * g1.B + g2.D * g1.D,
    )


def free_prop(dz) -> Rational2x2:
    return Rational2x2(1, dz, 0, 1)


def thin_lens(power) -> Rational2x2:
    return Rational2x2(1, 0, power, 1)


def symplectic(w: PhasePoint, w2: PhasePoint) -> Fraction:
    """<w, w'> = x u' - x' u."""
    return w.x * w2.u - w2.x * w.u


def optical_length(x1, x2, g: Rational2x2, z1=0, z2=0):
    """(D x2^2 - 2 x1 x2 + A x1^2) / 2B + z2 - z1.

    Exact when every argument is rational; floats fall back to float math.
    """
    if g.B == 0:
        raise ValueError("B = 0 is the imaging condition; the optical length "
                         "kernel degenerates")
    if all(not isinstance(v, float) for v in (x1, x2, z1, z2)):
        x1, x2, z1, z2 = map(Fraction, (x1, x2, z1, z2))
    else:
        x1, x2, z1, z2 = map(float, (x1, x2, z1, z2))
        A, B, D = float(g.A), float(g.B), float(g.D)
        return (D * x2 * x2 - 2 * x1 * x2 + A * x1 * x1) / (2 * B) + z2 - z1
    return (g.D * x2 ** 2 - 2 * x1 * x2 + g.A * x1 ** 2) / (2 * g.B) + z2 - z1


def scale_to_hat(g: Rational2x2, a, lam) -> HatSystem:
    """Rescale by the grating period a and wavelength lam (both rational)."""
    a, lam = _frac(a), _frac(lam)
    if a <= 0 or lam <= 0:
        raise ValueError("grating period and wavelength must be positive")
    s = a * a / lam
    return HatSystem(g.A, g.B * s, g.C / s, g.D, a, lam)


def translation_action(ghat: HatSystem, n: int, w: PhasePoint) -> PhasePoint:
    """n-fold grating translation: w + (n, -(A/B) n)."""
    if ghat.B == 0:
        raise ValueError("translation action needs B != 0")
    return PhasePoint(w.x + n, w.u - ghat.A / ghat.B * n)


def fractional_params(ghat: HatSystem) -> FractionalParams:
    if ghat.A == 0 or ghat.B == 0:
        raise ValueError("fractional parameters need A != 0 and B != 0")
    ratio = ghat.A / ghat.B  # Fraction keeps it reduced with positive denominator
    return FractionalParams(
        p=ratio.numerator,
        q=ratio.denominator,
        kappa1=ghat.D / ghat.A,
        kappa2=1 / ghat.A,
        kappa3=ghat.C,
        kappa1_hat=ghat.A * ghat.D,
        kappa3_hat=ghat.A ** 2 * ghat.C,
    )


def standard_talbot_matrix(p: int, q: int) -> Rational2x2:
    """Free propagation over q/p Talbot units: [[1, q/p], [0, 1]]."""
    CoprimePair(p, q)
    return free_prop(Fraction(q, p))


def standard_params(p: int, q: int) -> FractionalParams:
    return fractional_params(scale_to_hat(standard_talbot_matrix(p, q), 1, 1))


def talbot_decomposition(p: int, q: int) -> tuple[Rational2x2, Rational2x2]:
    """Split [[1, q/p], [0, 1]] as M1 . M2 with M2 integral in SL(2, Z).

    M1 = [[1/p, 0], [{1/q}_p, p]], M2 = [[p, q], [{-1/q}_p, {1/p}_q]].
    """
    pair = canonical_bezout(p, q)
    m1 = Rational2x2(Fraction(1, p), 0, pair.inv_q, p)
    m2 = Rational2x2(p, q, pair.inv_neg_q_mod_p, pair.inv_p)
    return m1, m2

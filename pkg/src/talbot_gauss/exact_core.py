"""Exact integer arithmetic and elementary number theory.

Everything here works on Python ints and ``fractions.Fraction`` so there is
no overflow and no rounding until a phase is finally exponentiated.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational


class NoInverseError(ValueError):
    pass


@dataclass(frozen=True)
class ModInt:
    """Residue class ``value mod modulus`` with 0 <= value < modulus."""

    value: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError(f"modulus must be >= 1, got {self.modulus}")
        object.__setattr__(self, "value", self.value % self.modulus)

    def _coerce(self, other):
        if isinstance(other, ModInt):
            if other.modulus != self.modulus:
                raise ValueError(
                    f"modulus mismatch: {self.modulus} vs {other.modulus}")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return ModInt(self.value + v, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return ModInt(self.value - v, self.modulus)

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return ModInt(v - self.value, self.modulus)

    def __mul__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return ModInt(self.value * v, self.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return ModInt(-self.value, self.modulus)

    def __int__(self):
        return self.value

    def inverse(self) -> ModInt:
        return ModInt(mod_inverse(self.value, self.modulus), self.modulus)

    def lift(self) -> int:
        """Representative in (-m/2, m/2]."""
        v = self.value
        return v - self.modulus if 2 * v > self.modulus else v


@dataclass(frozen=True)
class CoprimePair:
    p: int
    q: int

    def __post_init__(self):
        if self.p == 0 or self.q == 0:
            raise ValueError("p and q must be nonzero")
        if math.gcd(self.p, self.q) != 1:
            raise ValueError(f"p={self.p} and q={self.q} are not coprime")


@dataclass(frozen=True)
class InversePair:
    """Bezout representatives for a coprime pair (p, q).

    ``inv_p_mod_q`` is [1/p]_q, ``inv_neg_q_mod_p`` is {-1/q}_p and ``shift``
    is the n with {1/p}_q = [1/p]_q + n q.  With ``inv_p`` = {1/p}_q:
    ``p * inv_p - q * inv_neg_q_mod_p == 1`` as integers.
    """

    p: int
    q: int
    inv_p_mod_q: int
    inv_neg_q_mod_p: int
    shift: int = 0

    @property
    def inv_p(self) -> int:
        """{1/p}_q."""
        return self.inv_p_mod_q + self.shift * self.q

    @property
    def inv_q(self) -> int:
        """{1/q}_p, pinned to -{-1/q}_p."""
        return -self.inv_neg_q_mod_p

    def shifted(self, n: int) -> InversePair:
        return InversePair(self.p, self.q, self.inv_p_mod_q,
                           self.inv_neg_q_mod_p + n * self.p, self.shift + n)


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b == g == gcd(a, b) > 0."""
    if a == 0 and b == 0:
        raise ValueError("ext_gcd(0, 0) is undefined")
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        k = old_r // r
        old_r, r = r, old_r - k * r
        old_s, s = s, old_s - k * s
        old_t, t = t, old_t - k * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def mod_inverse(p: int, q: int) -> int:
    """The unique r in [1, q) with p*r = 1 mod q.

    For q == 1 every residue is 0 and the inverse is conventionally 1.
    """
    if q < 1:
        raise ValueError(f"modulus must be positive, got {q}")
    if q == 1:
        return 1
    g, s, _ = ext_gcd(p, q)
    if g != 1:
        raise NoInverseError(f"{p} has no inverse mod {q} (gcd {g})")
    return s % q


def canonical_bezout(p: int, q: int) -> InversePair:
    """Integer pair {1/p}_q, {-1/q}_p with p{1/p}_q - q{-1/q}_p = 1.

    Uses the shift n = 0: {1/p}_q = [1/p]_q and {-1/q}_p = p - [1/q]_p.
    """
    if p < 1 or q < 1:
        raise ValueError("canonical_bezout needs positive p, q")
    CoprimePair(p, q)
    inv_p = mod_inverse(p, q)
    inv_neg_q = p - mod_inverse(q, p)
    pair = InversePair(p, q, inv_p, inv_neg_q, 0)
    assert p * pair.inv_p - q * pair.inv_neg_q_mod_p == 1
    return pair


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


def legendre(p: int, s: int) -> int:
    """Legendre symbol (p|s) for an odd prime s, via Euler's criterion."""
    if s < 3 or not is_prime(s):
        raise ValueError(f"{s} is not an odd prime")
    r = pow(p % s, (s - 1) // 2, s)
    if r == 0:
        return 0
    return 1 if r == 1 else -1


def jacobi(p: int, q: int) -> int:
    """Jacobi symbol (p|q) for odd q >= 1, by reciprocity descent."""
    if q < 1 or q % 2 == 0:
        raise ValueError(f"Jacobi symbol needs odd positive q, got {q}")
    a, n, t = p % q, q, 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                t = -t
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            t = -t
        a %= n
    return t if n == 1 else 0


def parity_indicator(q: int, p: int) -> int:
    """e_{qp}: 1 if q*p is odd, else 0."""
    return (q * p) & 1


def reduce_mod2(r) -> Fraction:
    """Exact representative of a rational in [0, 2)."""
    return Fraction(r) % 2


def exp_i_pi(r) -> complex:
    """exp(i*pi*r) for rational r, reducing r mod 2 exactly first."""
    if not isinstance(r, (int, Rational)):
        raise TypeError(f"exp_i_pi needs an exact rational, got {type(r)}")
    t = reduce_mod2(r)
    # exact values at multiples of 1/2 keep roots of unity clean
    if t.denominator <= 2:
        return {Fraction(0): 1 + 0j, Fraction(1, 2): 1j,
                Fraction(1): -1 + 0j, Fraction(3, 2): -1j}[t]
    return cmath.exp(1j * math.pi * float(t))


def principal_sqrt(z: complex) -> complex:
    """Square root with argument in (-pi/2, pi/2]."""
    return cmath.sqrt(complex(z))

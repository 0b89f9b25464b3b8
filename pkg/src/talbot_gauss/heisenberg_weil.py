"""Finite Heisenberg group over Z/bZ (b odd), its Schrodinger representation
and the Weil representation of SL(2, Z/bZ).

Matrices act on functions f: Z/bZ -> C stored as length-b vectors.  The
Schrodinger matrices are monomial with root-of-unity entries; their phases
are computed as exact residues and only exponentiated at the end.
"""

from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .exact_core import ModInt, exp_i_pi, mod_inverse, parity_indicator
from .optics import Rational2x2, free_prop, standard_params
from .talbot import amplitude_direct_I

log = logging.getLogger(__name__)


def _check_odd(b: int):
    if b < 1 or b % 2 == 0:
        raise ValueError(f"Heisenberg modulus must be a positive odd integer, got {b}")


@dataclass(frozen=True)
class HeisenbergElement:
    x: ModInt
    u: ModInt
    z: ModInt

    def __post_init__(self):
        b = self.x.modulus
        if self.u.modulus != b or self.z.modulus != b:
            raise ValueError("Heisenberg element components need one modulus")
        _check_odd(b)

    @classmethod
    def of(cls, x: int, u: int, z: int, b: int) -> HeisenbergElement:
        return cls(ModInt(x, b), ModInt(u, b), ModInt(z, b))

    @classmethod
    def identity(cls, b: int) -> HeisenbergElement:
        return cls.of(0, 0, 0, b)

    @property
    def b(self) -> int:
        return self.x.modulus

    def key(self) -> tuple[int, int, int]:
        return (self.x.value, self.u.value, self.z.value)

    def __mul__(self, other):
        return h_mul(self, other)

    def inverse(self) -> HeisenbergElement:
        return HeisenbergElement(-self.x, -self.u, -self.z)


def all_elements(b: int) -> list[HeisenbergElement]:
    return [HeisenbergElement.of(x, u, z, b)
            for x in range(b) for u in range(b) for z in range(b)]


def _half(b: int) -> int:
    return (b + 1) // 2


def pairing(h1: HeisenbergElement, h2: HeisenbergElement) -> ModInt:
    """<w1, w2> = x1 u2 - x2 u1 mod b."""
    return h1.x * h2.u - h2.x * h1.u


def h_mul(h1: HeisenbergElement, h2: HeisenbergElement) -> HeisenbergElement:
    """(w1, z1)(w2, z2) = (w1 + w2, z1 + z2 + <w1, w2>/2)."""
    if h1.b != h2.b:
        raise ValueError(f"modulus mismatch: {h1.b} vs {h2.b}")
    return HeisenbergElement(h1.x + h2.x, h1.u + h2.u,
                             h1.z + h2.z + pairing(h1, h2) * _half(h1.b))


def conjugate(h1: HeisenbergElement, h2: HeisenbergElement) -> HeisenbergElement:
    """h2 h1 h2^{-1}."""
    return h_mul(h_mul(h2, h1), h2.inverse())


def dilation(gamma: int, h: HeisenbergElement) -> HeisenbergElement:
    """alpha_gamma (w, z) = (gamma w, gamma^2 z) for a unit gamma."""
    if math.gcd(gamma, h.b) != 1:
        raise ValueError(f"{gamma} is not a unit mod {h.b}")
    return HeisenbergElement(h.x * gamma, h.u * gamma, h.z * (gamma * gamma))


def _mod_matrix(g, b: int) -> tuple[int, int, int, int]:
    """(A, B, C, D) reduced mod b from a Rational2x2 with integral entries or
    a 4-sequence of ints; checks det = 1 mod b."""
    if isinstance(g, Rational2x2):
        entries = g.entries()
        if any(Fraction(e).denominator != 1 for e in entries):
            raise ValueError("matrix over Z/bZ needs integral entries")
        entries = [int(e) for e in entries]
    else:
        entries = [int(e) for e in g]
        if len(entries) != 4:
            raise ValueError("matrix needs four entries A, B, C, D")
    A, B, C, D = (e % b for e in entries)
    if (A * D - B * C) % b != 1 % b:
        raise ValueError(f"matrix {entries} is not in SL(2, Z/{b}Z)")
    return A, B, C, D


def sl2_act(g, h: HeisenbergElement) -> HeisenbergElement:
    """g . (w, z) = (g w, z)."""
    A, B, C, D = _mod_matrix(g, h.b)
    return HeisenbergElement(h.x * A + h.u * B, h.x * C + h.u * D, h.z)


def sl2_mul(g1, g2, b: int) -> tuple[int, int, int, int]:
    A1, B1, C1, D1 = _mod_matrix(g1, b)
    A2, B2, C2, D2 = _mod_matrix(g2, b)
    return ((A1 * A2 + B1 * C2) % b, (A1 * B2 + B1 * D2) % b,
            (C1 * A2 + D1 * C2) % b, (C1 * B2 + D1 * D2) % b)


def sl2_inv(g, b: int) -> tuple[int, int, int, int]:
    A, B, C, D = _mod_matrix(g, b)
    return (D, (-B) % b, (-C) % b, A)


@dataclass(frozen=True)
class CharacterParam:
    """chi(z) = exp(2 pi i p z / q) on Z/qZ."""

    p: int
    q: int

    def __post_init__(self):
        _check_odd(self.q)
        if math.gcd(self.p, self.q) != 1:
            raise ValueError(f"character needs gcd(p, q) = 1, got ({self.p}, {self.q})")

    def exponent(self, z: int) -> Fraction:
        """chi(z) = exp(i pi * exponent), exponent reduced into [0, 2)."""
        return Fraction(2 * self.p * (z % self.q), self.q) % 2

    def __call__(self, z: int) -> complex:
        return exp_i_pi(self.exponent(z))


@dataclass
class RepMatrix:
    entries: np.ndarray
    label: str
    # prefactor dropped by unitary normalization, when it is defined
    discarded_scalar: complex | None = None
    notes: dict = field(default_factory=dict)

    def unitarity_residual(self) -> float:
        m = self.entries
        return float(np.max(np.abs(m.conj().T @ m - np.eye(m.shape[0]))))


def schrodinger_monomial(h: HeisenbergElement, chi: CharacterParam) -> list[tuple[int, int]]:
    """Row x' of S(h) has one nonzero entry chi(e) at column c: [(c, e), ...].

    S(h) = chi(z - xu/2) S(x) S(u), with (S(x) f)(x') = f(x' + x) and
    (S(u) f)(x') = chi(u x') f(x').  This is a genuine representation:
    S(h1) S(h2) = S(h1 h2).
    """
    b = h.b
    if chi.q != b:
        raise ValueError(f"character modulus {chi.q} differs from group modulus {b}")
    x, u, z = h.key()
    centre = z - _half(b) * x * u
    return [((xp + x) % b, (centre + u * (xp + x)) % b) for xp in range(b)]


def _monomial_matrix(mono, b, chi) -> np.ndarray:
    m = np.zeros((b, b), dtype=complex)
    for row, (col, e) in enumerate(mono):
        m[row, col] = chi(e)
    return m


def schrodinger(h: HeisenbergElement, chi: CharacterParam) -> RepMatrix:
    mono = schrodinger_monomial(h, chi)
    return RepMatrix(_monomial_matrix(mono, h.b, chi), f"S{h.key()}")


def shift_matrix(x: int, b: int) -> np.ndarray:
    """S(x): cyclic shift power, ones on the x-th superdiagonal (wrapped)."""
    m = np.zeros((b, b), dtype=complex)
    for xp in range(b):
        m[xp, (xp + x) % b] = 1
    return m


def modulation_matrix(u: int, chi: CharacterParam) -> np.ndarray:
    """S(u) = diag(chi(u x'))."""
    return np.diag([chi(u * xp) for xp in range(chi.q)])


def central_matrix(z: int, chi: CharacterParam) -> np.ndarray:
    return chi(z) * np.eye(chi.q, dtype=complex)


def weyl_exponents(x: int, u: int, chi: CharacterParam) -> tuple[list, list, int]:
    """Monomial data of S(x)S(u) and S(u)S(x), plus the exponent x*u.

    Exact form of S(x) S(u) = chi(x u) S(u) S(x): for every row the column
    agrees and the phase exponents differ by x*u mod q.
    """
    b = chi.q
    xs = [(xp + x) % b for xp in range(b)]
    left = [(xs[xp], (u * xs[xp]) % b) for xp in range(b)]   # S(x)S(u)
    right = [(xs[xp], (u * xp) % b) for xp in range(b)]      # S(u)S(x)
    return left, right, (x * u) % b


def _lift(v: int, b: int) -> int:
    v %= b
    return v - b if 2 * v > b else v


def metaplectic_phase(ghat, b: int | None = None) -> complex:
    """s(g) = sgn(B) e^{i pi/2}.

    Over Z/bZ the sign is taken from the representative of B in (-b/2, b/2).
    """
    if b is None:
        B = ghat.B if isinstance(ghat, Rational2x2) else Fraction(ghat[1])
    else:
        B = _lift(_mod_matrix(ghat, b)[1], b)
    if B == 0:
        raise ValueError("metaplectic phase needs B != 0")
    return 1j if B > 0 else -1j


def kernel_exponent(g, x2: int, x1: int, chi: CharacterParam) -> Fraction:
    """Exponent r with kernel entry exp(i pi r) for B invertible mod b.

    (2 pi/eta) Q with Q = (2B)^{-1} (D x2^2 - 2 x1 x2 + A x1^2) mod b and
    eta = q/p.
    """
    b = chi.q
    A, B, C, D = _mod_matrix(g, b)
    inv2b = mod_inverse(2 * B, b)
    Q = inv2b * (D * x2 * x2 - 2 * x1 * x2 + A * x1 * x1)
    return chi.exponent(Q)


def weil_kernel(g, x2, x1, chi: CharacterParam) -> complex:
    """Bare kernel entry G(x2; x1) = exp((2 pi i/eta) Q), prefactor omitted."""
    return exp_i_pi(kernel_exponent(g, int(x2), int(x1), chi))


def _literal_prefactor(A: int, B: int, b: int, chi: CharacterParam) -> complex | None:
    a, bb = _lift(A, b), _lift(B, b)
    if a == 0 or bb == 0:
        return None
    return cmath.sqrt(1j * a * chi.p / (bb * chi.q))


def weil_matrix(g, chi: CharacterParam) -> RepMatrix:
    """Unitary matrix W(g) with S(g' h) = W S(h) W^{-1} up to a scalar, where
    g' = [[A, -B], [-C, D]] is g conjugated by diag(1, -1).

    B invertible: W[x2, x1] = G(x2; x1)/sqrt(b).
    B = 0: g = [[A, 0], [C, D]], D = A^{-1}, and (W f)(x2) = chi(C D x2^2 / 2) f(D x2).
    """
    b = chi.q
    A, B, C, D = _mod_matrix(g, b)
    label = f"W({A},{B},{C},{D})"
    if B % b == 0:
        w = np.zeros((b, b), dtype=complex)
        k = _half(b) * C * D
        for x2 in range(b):
            w[x2, (D * x2) % b] = chi(k * x2 * x2)
        return RepMatrix(w, label, None, {"branch": "permutation"})
    if math.gcd(B, b) != 1:
        raise ValueError(f"B = {B} is neither 0 nor invertible mod {b}")
    w = np.array([[weil_kernel((A, B, C, D), x2, x1, chi) for x1 in range(b)]
                  for x2 in range(b)], dtype=complex)
    w /= math.sqrt(b)
    # W[0, 0] = 1/sqrt(b) > 0 already, which fixes the global phase
    pref = _literal_prefactor(A, B, b, chi)
    if pref is not None:
        log.debug("%s: discarded prefactor %s", label, pref)
    return RepMatrix(w, label, pref, {"branch": "kernel"})


def projective_residual(x: np.ndarray, y: np.ndarray) -> tuple[float, complex]:
    """min over unimodular c of max|x - c y|, with c from the largest entry of y."""
    idx = np.unravel_index(np.argmax(np.abs(y)), y.shape)
    if abs(y[idx]) == 0:
        return float(np.max(np.abs(x))), 1 + 0j
    c = x[idx] / y[idx]
    if abs(c) == 0:
        return float(np.max(np.abs(x - y))), 1 + 0j
    c /= abs(c)
    return float(np.max(np.abs(x - c * y))), complex(c)


def reflect(g, b: int) -> tuple[int, int, int, int]:
    """diag(1, -1) g diag(1, -1) = [[A, -B], [-C, D]] mod b."""
    A, B, C, D = _mod_matrix(g, b)
    return (A, (-B) % b, (-C) % b, D)


def intertwine_residual(g, h: HeisenbergElement, chi: CharacterParam) -> float:
    """Projective residual of S(g' . h) = W(g) S(h) W(g)^{-1}, g' = reflect(g).

    For T and J the reflection coincides with the inverse.
    """
    w = weil_matrix(g, chi).entries
    target = schrodinger(sl2_act(reflect(g, h.b), h), chi).entries
    conj = w @ schrodinger(h, chi).entries @ w.conj().T
    return projective_residual(target, conj)[0]


@dataclass(frozen=True)
class CompositionReport:
    g1: tuple
    g2: tuple
    factor: complex        # W(g1) W(g2) = factor * W(g1 g2)
    residual: float        # projective residual after removing the phase
    modulus_error: float   # | |factor| - 1 |


def kernel_composition(g1, g2, chi: CharacterParam) -> CompositionReport:
    """Compare W(g1) W(g2) with W(g1 g2); the leftover scalar is the cocycle."""
    b = chi.q
    w12 = weil_matrix(sl2_mul(g1, g2, b), chi).entries
    prod = weil_matrix(g1, chi).entries @ weil_matrix(g2, chi).entries
    idx = np.unravel_index(np.argmax(np.abs(w12)), w12.shape)
    factor = complex(prod[idx] / w12[idx])
    residual, _ = projective_residual(prod, w12)
    report = CompositionReport(_mod_matrix(g1, b), _mod_matrix(g2, b), factor,
                               residual, abs(abs(factor) - 1))
    log.debug("cocycle %s x %s -> %s", report.g1, report.g2, factor)
    return report


def metaplectic_cocycle(g1: Rational2x2, g2: Rational2x2) -> complex:
    """s(g1) s(g2) / s(g1 g2) for rational systems with all B != 0."""
    return metaplectic_phase(g1) * metaplectic_phase(g2) / metaplectic_phase(g1 @ g2)


@dataclass(frozen=True)
class BridgeReport:
    n: int
    p: int
    q: int
    x2: Fraction
    weil_value: complex
    talbot_value: complex
    phase: complex
    residual: float


def weil_sum(x2: Fraction, p: int, q: int) -> complex:
    """Weil kernel of g = [[1, 1], [0, 1]] with eta = p/q, summed against
    chi = 1 over the translation orbit x1 in Z/pZ, tuned to 1/sqrt(p).

    Keeps the metaplectic phase sqrt(s(g)) = e^{i pi/4} of the kernel.
    """
    g = free_prop(1)
    eta = Fraction(p, q)
    total = 0j
    for x1 in range(p):
        Q = (g.D * x2 ** 2 - 2 * x1 * x2 + g.A * x1 * x1) / (2 * g.B)
        total += exp_i_pi(2 * Q / eta)
    return cmath.sqrt(metaplectic_phase(g)) / math.sqrt(p) * total


def weil_vs_talbot(n: int, p: int, q: int) -> BridgeReport:
    """Weil-kernel route vs the p-term Talbot amplitude at spot n.

    The kernel is evaluated at x2 = (q e_pq - 2n)/(2q); the two prefactor
    conventions differ by the fixed phase 1/s(g), which is applied, not fitted.
    """
    if p < 1 or q < 1 or q % 2 == 0:
        raise ValueError(f"bridge needs p >= 1 and odd q >= 1, got p={p}, q={q}")
    if math.gcd(p, q) != 1:
        raise ValueError(f"p={p} and q={q} are not coprime")
    x2 = Fraction(q * parity_indicator(p, q) - 2 * n, 2 * q)
    wv = weil_sum(x2, p, q)
    tv = amplitude_direct_I(n, standard_params(p, q))
    phase = 1 / metaplectic_phase(free_prop(1))
    return BridgeReport(n, p, q, x2, wv, tv, phase, abs(phase * wv - tv))


def cayley_table(b: int) -> tuple[list[tuple[int, int, int]], list[list[int]]]:
    """Elements in (x, u, z) lexicographic order and the index table of h_i h_j."""
    _check_odd(b)
    elems = all_elements(b)
    index = {h.key(): i for i, h in enumerate(elems)}
    table = [[index[h_mul(a, c).key()] for c in elems] for a in elems]
    return [h.key() for h in elems], table


GENERATORS_SL2 = {
    "T": (1, 1, 0, 1),
    "J": (0, -1, 1, 0),
}


def generator_elements(b: int) -> Sequence[HeisenbergElement]:
    return (HeisenbergElement.of(1, 0, 0, b), HeisenbergElement.of(0, 1, 0, b),
            HeisenbergElement.of(0, 0, 1, b))

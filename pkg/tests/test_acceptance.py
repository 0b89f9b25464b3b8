"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line."""

import itertools
import math
import random
from fractions import Fraction

import pytest

from talbot_gauss.exact_core import is_prime, legendre
from talbot_gauss.gauss_sum import closed_form_G1, gauss_sum_full, reciprocity_sweep
from talbot_gauss.heisenberg_weil import (
    CharacterParam, HeisenbergElement, all_elements, intertwine_residual,
    kernel_composition, schrodinger, weil_matrix, weil_vs_talbot, weyl_exponents,
)
from talbot_gauss.optics import (
    PhasePoint, Rational2x2, standard_params, standard_talbot_matrix, symplectic,
    talbot_decomposition,
)
from talbot_gauss.talbot import (
    amplitude_closed_I, amplitude_closed_II, amplitude_direct_I, amplitude_direct_II,
)
from talbot_gauss.theta import jacobi_transform_residual

TOL = 1e-9


@pytest.fixture
def report(capsys):
    def emit(label, ok, detail):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] {label}: {detail}")
        assert ok, f"{label}: {detail}"
    return emit


def coprime_pairs(limit):
    return [(p, q) for p in range(1, limit + 1) for q in range(1, limit + 1)
            if math.gcd(p, q) == 1]


def sl2_mod(b):
    return [(A, B, C, D) for A, B, C, D in itertools.product(range(b), repeat=4)
            if (A * D - B * C) % b == 1]


def test_c01_gauss_sum_closed_forms(report):
    worst, count = 0.0, 0
    for q in range(3, 200, 2):
        if not is_prime(q):
            continue
        g1 = closed_form_G1(q)
        for p in range(1, q):
            worst = max(worst, abs(gauss_sum_full(p, q) - legendre(p, q) * g1))
            count += 1
    report("C1 Gauss-sum closed forms", worst < TOL, f"{count} cases, max error {worst:.3g}")


def test_c02_modulus_law(report):
    worst = max(abs(abs(gauss_sum_full(1, q)) ** 2 - q) / q for q in range(1, 501, 2))
    report("C2 modulus law |G(1,q)|^2 = q", worst < TOL, f"odd q <= 500, max rel error {worst:.3g}")


def test_c03_hecke_reciprocity(report):
    reports = reciprocity_sweep(40, 40, 5)
    asserted = [r.residual for r in reports if r.asserted]
    logged = [r.residual for r in reports if not r.asserted]
    worst = max(asserted)
    report("C3 Hecke reciprocity (pq even)", worst < TOL,
           f"{len(asserted)} asserted, max residual {worst:.3g}; "
           f"{len(logged)} odd-odd logged, max {max(logged):.3g}")


def _talbot_sweep():
    rows = []
    for p, q in coprime_pairs(30):
        params = standard_params(p, q)
        for n in range(-q, q + 1):
            rows.append((amplitude_direct_I(n, params), amplitude_direct_II(n, params),
                         amplitude_closed_I(n, p, q), amplitude_closed_II(n, p, q)))
    return rows


@pytest.fixture(scope="module")
def talbot_sweep():
    return _talbot_sweep()


def test_c04_wave_particle_reciprocity(report, talbot_sweep):
    gap = max(abs(a - b) for a, b, _, _ in talbot_sweep)
    closed = max(max(abs(c1 - a), abs(c2 - b)) for a, b, c1, c2 in talbot_sweep)
    report("C4 A_I = A_II and closed forms", gap < TOL and closed < TOL,
           f"{len(talbot_sweep)} spots, max |A_I - A_II| {gap:.3g}, "
           f"max closed-vs-direct {closed:.3g}")


def test_c05_unit_intensity(report, talbot_sweep):
    worst = max(abs(abs(v) - 1) for row in talbot_sweep for v in row)
    report("C5 unit intensity", worst < TOL, f"max ||A| - 1| {worst:.3g}")


def test_c06_sl2z_decomposition(report):
    bad = 0
    pairs = coprime_pairs(100)
    for p, q in pairs:
        m1, m2 = talbot_decomposition(p, q)
        integral = all(Fraction(e).denominator == 1 for e in m2.entries())
        if not (integral and m2.det == 1 and m1 @ m2 == standard_talbot_matrix(p, q)):
            bad += 1
    report("C6 SL(2,Z) decomposition", bad == 0, f"{len(pairs)} pairs, {bad} failures")


def test_c07_symplectic_invariance(report):
    rng = random.Random(7)

    def rat():
        return Fraction(rng.randint(-50, 50), rng.randint(1, 30))

    bad = 0
    for _ in range(1000):
        A = rat() or Fraction(1)
        B, C = rat(), rat()
        g = Rational2x2(A, B, C, (1 + B * C) / A)
        w1, w2 = PhasePoint(rat(), rat()), PhasePoint(rat(), rat())
        bad += symplectic(g @ w1, g @ w2) != symplectic(w1, w2)
    report("C7 symplectic invariance", bad == 0, f"1000 rational instances, {bad} mismatches")


def test_c08_theta_identities(report):
    grid = [(u, complex(0, t)) for t in (0.5, 1, 2) for u in (0, 0.3, 0.7 + 0.2j)]
    worst = max(jacobi_transform_residual(u, tau) for u, tau in grid)
    report("C8 Jacobi imaginary transformation", worst < 1e-10,
           f"{len(grid)} grid points, max residual {worst:.3g}")


@pytest.mark.parametrize("b", [3, 5, 7])
def test_c09_heisenberg_weil(report, b):
    rng = random.Random(b)
    elems = all_elements(b)
    e = HeisenbergElement.identity(b)
    triples = (itertools.product(elems, repeat=3) if b == 3
               else [(rng.choice(elems), rng.choice(elems), rng.choice(elems)) for _ in range(5000)])
    axioms = all((x * y) * z == x * (y * z) for x, y, z in triples)
    axioms &= all(h * h.inverse() == e and h * e == h == e * h for h in elems)

    weyl = True
    for p in range(1, b):
        if math.gcd(p, b) != 1:
            continue
        chi = CharacterParam(p, b)
        for x, u in itertools.product(range(b), repeat=2):
            left, right, xu = weyl_exponents(x, u, chi)
            weyl &= all(cl == cr and (el - er - xu) % b == 0
                        for (cl, el), (cr, er) in zip(left, right))

    chi = CharacterParam(1, b)
    group = sl2_mod(b)
    unit = max(schrodinger(h, chi).unitarity_residual() for h in elems)
    unit = max(unit, max(weil_matrix(g, chi).unitarity_residual() for g in group))
    gens = (HeisenbergElement.of(1, 0, 0, b), HeisenbergElement.of(0, 1, 0, b))
    inter = max(intertwine_residual(g, h, chi) for g in group for h in gens)
    comps = [kernel_composition(rng.choice(group), rng.choice(group), chi) for _ in range(300)]
    comp = max(max(c.residual, c.modulus_error) for c in comps)

    ok = axioms and weyl and unit < TOL and inter < TOL and comp < TOL
    report(f"C9 Heisenberg/Weil b={b}", ok,
           f"axioms {'exact' if axioms else 'BROKEN'}, Weyl {'exact' if weyl else 'BROKEN'}, "
           f"unitarity {unit:.3g}, intertwining {inter:.3g} over |SL2|={len(group)}, "
           f"composition {comp:.3g}")


def test_c10_bridge(report):
    worst, count = 0.0, 0
    for q in (1, 3, 5):
        for p in range(1, q + 3):
            if math.gcd(p, q) != 1:
                continue
            for n in range(-q, q + 1):
                worst = max(worst, weil_vs_talbot(n, p, q).residual)
                count += 1
    report("C10 Weil kernel vs Talbot amplitude", worst < TOL,
           f"{count} cases, max residual {worst:.3g}")

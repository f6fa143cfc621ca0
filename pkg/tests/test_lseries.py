import cmath
import math

import numpy as np
import pytest

from maassforge import lseries as ls
from maassforge.classforms import ClassGroup
from maassforge.heckechar import make_class_character
from maassforge.quadfield import QuadField


@pytest.fixture(scope="module")
def cg229():
    return ClassGroup(QuadField(229))


@pytest.fixture(scope="module")
def psi229(cg229):
    return make_class_character(cg229, 1)


def test_count_table_matches_ideal_enumeration(cg229):
    F = cg229.field
    table = ls.get_table(cg229, 500)
    ref: dict[int, list[int]] = {}
    for I in F.enumerate_ideals(500):
        ref.setdefault(I.norm(), [0] * 3)[cg229.dlog(I)] += 1
    for n in range(1, 501):
        assert tuple(ref.get(n, [0, 0, 0])) == table.rows[n]


def test_coefficients_pinned_values(psi229):
    b = ls.hecke_l_coeffs(psi229, 20)
    assert b[1] == 1
    assert abs(b[2]) < 1e-12           # 2 inert
    assert abs(b[3] - (-1)) < 1e-12    # zeta3 + zeta3^2 = -1
    assert abs(b[4] - 1) < 1e-12       # (2)O_F, principal
    assert abs(b[9]) < 1e-12           # zeta3^2 + 1 + zeta3 = 0


def test_rankin_coeffs(psi229):
    b2 = ls.rankin_coeffs(psi229, 20)
    assert b2[1] == 1.0
    assert abs(b2[2]) < 1e-24
    assert abs(b2[9]) < 1e-24
    assert np.all(b2 >= -1e-30)


def test_multiplicativity_exact(psi229):
    assert ls.multiplicativity_failures(psi229, 200) == 0


def test_hecke_recursion_exact_all_fields():
    for D in (229, 445, 401):
        cg = ClassGroup(QuadField(D))
        psi = make_class_character(cg, 1)
        for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47):
            if D % p == 0:
                continue
            assert ls.hecke_recursion_residual(psi, p, r_max=4) == 0, (D, p)


def test_satake_parameters(psi229):
    F = psi229.field
    # split p: unit-modulus parameters multiplying to psi((p)) = 1
    a, b = ls.satake_params(psi229, 3)
    assert abs(abs(a) - 1) < 1e-12 and abs(abs(b) - 1) < 1e-12
    assert abs(a * b - 1) < 1e-12
    # inert p: alpha + beta = 0, alpha*beta = -psi(pO_F) = -1
    a, b = ls.satake_params(psi229, 2)
    assert abs(a + b) < 1e-12 and abs(a * b + 1) < 1e-12
    # ramified: single parameter
    (a,) = ls.satake_params(psi229, 229)
    assert abs(abs(a) - 1) < 1e-12


def test_euler_factor_matches_coefficients(psi229):
    # partial Euler product approximates partial Dirichlet sum at s = 3
    s = 3.0
    b = ls.hecke_l_coeffs(psi229, 5000)
    n = np.arange(5001, dtype=np.float64)
    n[0] = 1
    lhs = complex(np.sum(b[1:] / n[1:] ** s))
    prod = 1.0 + 0j
    from maassforge.quadfield import _primes_up_to

    for p in _primes_up_to(5000):
        prod *= ls.euler_factor(psi229, p, s)
    assert abs(lhs - prod) < 1e-9


def test_rankin_local_factor_matches_prime_power_series(cg229, psi229):
    table = ls.get_table(cg229, 1)
    zeta = np.exp(2j * np.pi * np.arange(3) / 3)
    for p in (2, 3, 5, 7, 11, 229):
        s = 2.0
        brute = sum(
            abs(complex(np.dot(table.prime_power_vector(p, e), zeta))) ** 2 * p ** (-s * e)
            for e in range(0, 80)
        )
        assert abs(brute - ls.rankin_local_factor(psi229, p, s)) < 1e-12


def test_rankin_residual_decreases(psi229):
    r1 = ls.rankin_euler_identity_residual(psi229, 2.0, 1000)
    r2 = ls.rankin_euler_identity_residual(psi229, 2.0, 2000)
    r3 = ls.rankin_euler_identity_residual(psi229, 2.0, 8000)
    assert r1 > r2 > r3
    assert r2 < 0.75 * r1  # doubling X reduces the residual


def test_l_value_dual_routes_agree(psi229):
    rep = ls.l_value_at_1(psi229.power(2))
    assert rep["cutoff_agreement"] < 1e-9
    assert rep["oracle_agreement"] < 1e-7


def test_l_value_split_point_invariance(psi229):
    psi2 = psi229.power(2)
    v = [ls.l_value_at_1_afe(psi2, cutoff=c) for c in (0.5, 1.0, 2.0, 4.0)]
    assert max(v) - min(v) < 1e-11


def test_l_value_trivial_character_rejected(cg229):
    with pytest.raises(ValueError):
        ls.l_value_at_1(make_class_character(cg229, 0))


def test_l_value_445_genus_factorization():
    # L(1, psi^2) over Q(sqrt445) factors as L(1, chi_5) L(1, chi_89)
    cg = ClassGroup(QuadField(445))
    psi2 = make_class_character(cg, 1).power(2)
    lhs = ls.l_value_at_1_afe(psi2)
    rhs = ls.dirichlet_l1_real(5) * ls.dirichlet_l1_real(89)
    assert abs(lhs - rhs) < 1e-8


def test_dirichlet_l1_real_pinned():
    # L(1, chi_5) = 2 log((1+sqrt5)/2)/sqrt5
    ref = 2 * math.log((1 + math.sqrt(5)) / 2) / math.sqrt(5)
    assert abs(ls.dirichlet_l1_real(5) - ref) < 1e-14

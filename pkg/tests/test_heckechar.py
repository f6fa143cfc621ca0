from fractions import Fraction

import pytest

from maassforge.classforms import ClassGroup
from maassforge.heckechar import (
    DirichletCharacterModP,
    check_gauss_norm_lemma,
    check_gauss_twisting,
    gauss_sum_quadratic_field,
    gauss_sum_rational,
    make_class_character,
    norm_composed_character,
)
from maassforge.quadfield import QuadField, _primes_up_to


def test_character_values_are_exact_roots_of_unity():
    cg = ClassGroup(QuadField(229))
    psi = make_class_character(cg, 1)
    for I in cg.field.enumerate_ideals(50):
        e = psi.exponent(I)
        assert isinstance(e, Fraction)
        assert (e * 3) % 1 == 0  # h = 3: all values are cube roots of unity


def test_character_is_multiplicative():
    cg = ClassGroup(QuadField(401))
    psi = make_class_character(cg, 2)
    ids = cg.field.enumerate_ideals(60)
    for I in ids[:25]:
        for J in ids[:25]:
            assert (psi.exponent(I * J) - psi.exponent(I) - psi.exponent(J)) % 1 == 0


def test_orders_and_powers():
    cg = ClassGroup(QuadField(445))
    psi = make_class_character(cg, 1)
    assert psi.order() == 4
    assert psi.power(2).order() == 2
    assert psi.power(4).is_trivial()
    assert psi.conjugate().index == 3


def test_norm_induced_detection():
    # order <= 2 class characters are Galois-invariant, hence norm-induced
    cases = {229: [True, False, False], 40: [True, True], 445: [True, False, True, False]}
    for D, expected in cases.items():
        cg = ClassGroup(QuadField(D))
        got = [make_class_character(cg, i).is_norm_induced() for i in range(cg.h_narrow)]
        assert got == expected, D


def test_rational_gauss_sums_primitive_magnitude():
    count = 0
    for p in (5, 7, 11, 13, 17):
        for k in range(1, p - 1):
            chi = DirichletCharacterModP(p, k)
            tau = gauss_sum_rational(chi, p)
            assert abs(abs(tau) ** 2 - p) < 1e-9
            count += 1
            if count >= 25:
                return


def test_trivial_character_gauss_sum():
    # the principal character mod p has tau = sum of all p-th roots except 1 = -1
    chi = DirichletCharacterModP(7, 0)
    tau = gauss_sum_rational(chi, 7)
    assert abs(tau - (-1)) < 1e-12


def test_quadratic_field_gauss_sum_magnitude():
    # |tau_F(sigma o N)|^2 = N(p O_F) = p^2 for inert p and primitive sigma
    F = QuadField(229)
    for p, k in [(7, 1), (13, 2), (23, 3)]:
        sigma = DirichletCharacterModP(p, k)
        res = gauss_sum_quadratic_field(
            F, norm_composed_character(F, sigma), p, delta=sigma.parity()
        )
        assert res.abs_sq_residual() < 1e-8


def test_gauss_norm_lemma_inert_primes():
    F = QuadField(229)
    inert = [p for p in _primes_up_to(50) if p > 2 and F.chi(p) == -1]
    assert len(inert) >= 3
    for p in inert[:3]:
        for k in (1, 2):
            assert check_gauss_norm_lemma(F, p, k) < 1e-9


def test_gauss_norm_lemma_rejects_split():
    F = QuadField(229)
    with pytest.raises(ValueError):
        check_gauss_norm_lemma(F, 3, 1)


def test_gauss_twisting():
    pairs = [(5, 1, 7, 2), (5, 2, 11, 3), (7, 1, 13, 5), (3, 1, 5, 1), (11, 4, 13, 6)]
    for p, kp, q, kq in pairs:
        assert check_gauss_twisting(p, kp, q, kq) < 1e-9


def test_root_number_trivial_conductor():
    cg = ClassGroup(QuadField(229))
    psi = make_class_character(cg, 1)
    assert psi.root_number() == 1.0 + 0.0j

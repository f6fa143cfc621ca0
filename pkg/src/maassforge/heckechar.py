"""Class-group Hecke characters of real quadratic fields, and Gauss sums.

A class character sends an ideal to exp(2*pi*i * index * dlog / h) where
dlog is the discrete log of its narrow class.  Values are stored exactly as
rational exponents (Fraction j/h meaning e^(2*pi*i*j/h)) and realized as
complex numbers on demand.

Gauss sums follow the convention tau(psi) = (psi_inf(alpha)/psi(A)) *
sum over x in A mod fA of psi_f(x) e^(2*pi*i*Tr(x/alpha)) with the
different generated by sqrt(D).  For a modulus f = m*O_F we take A = (1)
and alpha = m*sqrt(D), which turns the trace into Tr(x/alpha) = v/m for
x = u + v*omega.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from sympy import primitive_root

from .classforms import ClassGroup
from .quadfield import QfIdeal, QuadField, kronecker


def root_of_unity(exponent: Fraction | float) -> complex:
    """e^(2*pi*i*exponent)."""
    return cmath.exp(2j * math.pi * float(exponent))


@dataclass(frozen=True)
class InfinityType:
    """Infinity type (eps, eps, nu/i, -nu/i): sign exponent and spectral parameter."""

    epsilon: int = 0
    nu: float = 0.0


class HeckeCharacter:
    """Character of the narrow class group, with trivial conductor (1)."""

    def __init__(self, classgroup: ClassGroup, index: int, infinity: InfinityType = InfinityType()):
        self.classgroup = classgroup
        self.field = classgroup.field
        self.h = classgroup.h_narrow
        self.index = index % self.h
        self.infinity = infinity

    def __repr__(self) -> str:
        return f"HeckeCharacter(D={self.field.D}, index={self.index}/{self.h})"

    def order(self) -> int:
        return self.h // math.gcd(self.index, self.h)

    def exponent(self, I: QfIdeal) -> Fraction:
        """Exact exponent j/h with psi(I) = e^(2*pi*i*j/h)."""
        return Fraction(self.index * self.classgroup.dlog(I), self.h)

    def __call__(self, I: QfIdeal) -> complex:
        return root_of_unity(self.exponent(I))

    def exponent_of_class(self, class_index: int) -> Fraction:
        return Fraction(self.index * self.classgroup.dlog_of_class(class_index), self.h)

    def conjugate(self) -> "HeckeCharacter":
        return HeckeCharacter(self.classgroup, -self.index, self.infinity)

    def power(self, e: int) -> "HeckeCharacter":
        return HeckeCharacter(self.classgroup, self.index * e, self.infinity)

    def is_trivial(self) -> bool:
        return self.index == 0

    def is_norm_induced(self) -> bool:
        """True when psi factors through the norm, i.e. psi is Galois-invariant.

        Checked directly: psi(I) == psi(sigma I) on every narrow class."""
        cg = self.classgroup
        for i in range(self.h):
            I = cg._cycle_rep_ideal(i)
            if self.exponent(I) % 1 != self.exponent(I.conj()) % 1:
                return False
        return True

    def root_number(self) -> complex:
        """T(psi) = i^(-2*eps) * tau(psi)/sqrt(N f); for conductor (1) this is 1."""
        if self.infinity.epsilon % 2 == 0:
            return 1.0 + 0.0j
        return -1.0 + 0.0j


def make_class_character(classgroup: ClassGroup, index: int, epsilon: int = 0, nu: float = 0.0) -> HeckeCharacter:
    return HeckeCharacter(classgroup, index, InfinityType(epsilon, nu))


# -- rational Dirichlet characters and Gauss sums -----------------------


class DirichletCharacterModP:
    """Character mod an odd prime p: chi(g^j) = e^(2*pi*i*j*k/(p-1)) for a
    fixed primitive root g.  Every nontrivial such character is primitive."""

    def __init__(self, p: int, k: int):
        self.p = p
        self.k = k % (p - 1)
        self.g = primitive_root(p)
        self._dlog = [0] * p
        x = 1
        for j in range(p - 1):
            self._dlog[x] = j
            x = x * self.g % p
        self._vals = [root_of_unity(Fraction(j * self.k, p - 1)) for j in range(p - 1)]

    def __call__(self, n: int) -> complex:
        n %= self.p
        if n == 0:
            return 0.0j
        return self._vals[self._dlog[n]]

    def is_primitive(self) -> bool:
        return self.k != 0

    def parity(self) -> int:
        """0 if chi(-1) = 1, else 1; chi(-1) = (-1)^k since -1 = g^((p-1)/2)."""
        return self.k % 2


def gauss_sum_rational(chi, m: int) -> complex:
    """tau(chi) = sum_{x mod m} chi(x) e^(2*pi*i*x/m)."""
    return sum(chi(x) * root_of_unity(Fraction(x, m)) for x in range(m))


@dataclass
class GaussSumResult:
    value: complex
    modulus_norm: int

    def abs_sq_residual(self) -> float:
        """| |tau|^2 - N(f) |, which vanishes for primitive characters."""
        return abs(abs(self.value) ** 2 - self.modulus_norm)


def gauss_sum_quadratic_field(field: QuadField, chi_fin, m: int, delta: int = 0) -> GaussSumResult:
    """Gauss sum of a finite character on (O_F / m*O_F), modulus f = m*O_F.

    chi_fin(u, v) is the character value at u + v*omega (0 on non-units).
    delta is the common sign exponent of the infinity type; the choice
    alpha = m*sqrt(D) contributes psi_inf(alpha) = (-1)^delta because the
    two real embeddings of sqrt(D) have opposite signs.
    """
    total = 0.0j
    for u in range(m):
        for v in range(m):
            c = chi_fin(u, v)
            if c != 0:
                total += c * root_of_unity(Fraction(v, m))
    if delta % 2 == 1:
        total = -total
    return GaussSumResult(total, m * m)


def norm_composed_character(field: QuadField, sigma: DirichletCharacterModP):
    """The finite character (u, v) -> sigma(N(u + v*omega)) mod p."""

    def chi_fin(u: int, v: int) -> complex:
        return sigma(field.elt_norm(u, v) % sigma.p)

    return chi_fin


def check_gauss_norm_lemma(field: QuadField, p: int, k: int = 1) -> float:
    """Residual of tau_F(sigma o N) = sigma(D) * chi_D(p) * tau(sigma)^2
    for an inert prime p not dividing D and a primitive sigma mod p."""
    if field.chi(p) != -1:
        raise ValueError(f"p={p} is not inert in Q(sqrt{field.D})")
    sigma = DirichletCharacterModP(p, k)
    if not sigma.is_primitive():
        raise ValueError("sigma must be primitive (k != 0)")
    lhs = gauss_sum_quadratic_field(
        field, norm_composed_character(field, sigma), p, delta=sigma.parity()
    ).value
    rhs = sigma(field.D) * field.chi(p) * gauss_sum_rational(sigma, p) ** 2
    return abs(lhs - rhs)


def check_gauss_twisting(p: int, kp: int, q: int, kq: int) -> float:
    """Residual of tau(chi1*chi2) = chi1(q) chi2(p) tau(chi1) tau(chi2)
    for primitive chi1 mod p, chi2 mod q with p != q prime."""
    chi1 = DirichletCharacterModP(p, kp)
    chi2 = DirichletCharacterModP(q, kq)

    def prod(x: int) -> complex:
        return chi1(x) * chi2(x)

    lhs = gauss_sum_rational(prod, p * q)
    rhs = chi1(q) * chi2(p) * gauss_sum_rational(chi1, p) * gauss_sum_rational(chi2, q)
    return abs(lhs - rhs)

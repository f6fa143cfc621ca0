"""Indefinite binary quadratic forms, narrow class groups, fundamental units.

Forms (A, B, C) of discriminant B^2 - 4AC = D > 0 represent narrow ideal
classes: the classes are the rho-reduction cycles of reduced forms.  The
fundamental unit comes from the continued fraction of sqrt(D) (respectively
sqrt(D/4)), refined by a cube-root test to catch half-integral units when
D = 1 mod 4.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt

import mpmath as mp

from .quadfield import QfIdeal, QuadField


@dataclass(frozen=True)
class IndefiniteForm:
    """Binary quadratic form A*x^2 + B*x*y + C*y^2 with B^2 - 4AC > 0."""

    A: int
    B: int
    C: int

    def disc(self) -> int:
        return self.B * self.B - 4 * self.A * self.C

    def is_reduced(self) -> bool:
        """0 < B < sqrt(D) and sqrt(D) - B < 2|A| < sqrt(D) + B, exactly."""
        D = self.disc()
        B, t = self.B, 2 * abs(self.A)
        if B <= 0 or B * B >= D:
            return False
        # t > sqrt(D) - B  <=>  (t + B)^2 > D
        if (t + B) ** 2 <= D:
            return False
        # t < sqrt(D) + B  <=>  t <= B or (t - B)^2 < D
        return t <= self.B or (t - B) ** 2 < D

    def rho(self) -> "IndefiniteForm":
        """One reduction step: (A,B,C) -> (C,B',C') with B' = -B mod 2|C|
        placed in the window (sqrt(D) - 2|C|, sqrt(D))."""
        D = self.disc()
        r = isqrt(D)
        ca = abs(self.C)
        c2 = 2 * ca
        m = (-self.B) % c2
        if ca > r:
            # not yet in the reduced range: take the minimal residue -|C| < B' <= |C|
            Bp = m if m <= ca else m - c2
        else:
            Bp = m + c2 * ((r - m) // c2)
        Cp = (Bp * Bp - D) // (4 * self.C)
        return IndefiniteForm(self.C, Bp, Cp)

    def reduce(self) -> "IndefiniteForm":
        f = self
        for _ in range(10 * len(str(self.disc())) + 64):
            if f.is_reduced():
                return f
            f = f.rho()
        raise ArithmeticError(f"reduction of {self} did not terminate")

    def cycle(self) -> list["IndefiniteForm"]:
        """The rho-cycle through the reduction of this form."""
        f0 = self.reduce()
        out = [f0]
        f = f0.rho()
        while f != f0:
            out.append(f)
            f = f.rho()
        return out


@dataclass(frozen=True)
class FundamentalUnit:
    """The fundamental unit (x + y*sqrt(D))/2 > 1 of the ring of integers."""

    D: int
    x: int
    y: int

    def norm(self) -> int:
        return (self.x * self.x - self.D * self.y * self.y) // 4

    def regulator(self, dps: int | None = None) -> float:
        with mp.workdps(dps or max(30, len(str(self.x)) + 20)):
            val = mp.log((self.x + self.y * mp.sqrt(self.D)) / 2)
            return float(val)


def _sqrt_cf_unit(N: int) -> tuple[int, int, int]:
    """Minimal (x, y, norm) with x^2 - N*y^2 = norm in {+-1}, x, y > 0,
    from the continued fraction of sqrt(N)."""
    a0 = isqrt(N)
    if a0 * a0 == N:
        raise ValueError("N must not be a perfect square")
    p_prev, q_prev = 1, 0
    p, q = a0, 1
    P, Q = a0, N - a0 * a0
    while Q != 1:
        a = (a0 + P) // Q
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
        P = a * Q - P
        Q = (N - P * P) // Q
    norm = p * p - N * q * q
    assert norm in (1, -1)
    return p, q, norm


def fundamental_unit(D: int) -> FundamentalUnit:
    """Fundamental unit of the ring of integers of discriminant D."""
    if D % 4 == 0:
        x, y, _ = _sqrt_cf_unit(D // 4)
        return FundamentalUnit(D, 2 * x, y)
    x, y, norm = _sqrt_cf_unit(D)
    big = FundamentalUnit(D, 2 * x, 2 * y)
    # the unit group of Z[sqrt(D)] has index 1 or 3; test for a cube root
    with mp.workdps(max(40, len(str(x)) + 25)):
        sD = mp.sqrt(D)
        eta = x + y * sD
        eps = mp.cbrt(eta)
        for n0 in (1, -1):
            u = int(mp.nint(eps + n0 / eps))
            v = int(mp.nint((2 * eps - u) / sD))
            if u <= 0 or v <= 0 or (u * u - D * v * v) != 4 * n0:
                continue
            # verify ((u + v*sqrt(D))/2)^3 = x + y*sqrt(D) exactly
            xs = u * (u * u + 3 * D * v * v)
            ys = v * (3 * u * u + D * v * v)
            if xs == 8 * x and ys == 8 * y:
                return FundamentalUnit(D, u, v)
    return big


class ClassGroup:
    """Narrow class group of a real quadratic field via reduced form cycles."""

    def __init__(self, field: QuadField):
        self.field = field
        D = field.D
        self.unit = fundamental_unit(D)
        self.unit_norm = self.unit.norm()
        self.regulator = self.unit.regulator()
        self.cycles = self._all_cycles()
        self.h_narrow = len(self.cycles)
        self.h_wide = self.h_narrow if self.unit_norm == -1 else self.h_narrow // 2
        self._form_to_cycle = {
            f: i for i, cyc in enumerate(self.cycles) for f in cyc
        }
        # relabel so that the identity class is index 0
        ident = self._form_to_cycle[self._principal_form().reduce()]
        if ident != 0:
            self.cycles[0], self.cycles[ident] = self.cycles[ident], self.cycles[0]
            self._form_to_cycle = {
                f: i for i, cyc in enumerate(self.cycles) for f in cyc
            }
        self._dlog = self._build_dlog()

    # -- construction ---------------------------------------------------

    def _principal_form(self) -> IndefiniteForm:
        D = self.field.D
        r = isqrt(D)
        b = r if (r - D) % 2 == 0 else r - 1
        return IndefiniteForm(1, b, (b * b - D) // 4)

    def _all_cycles(self) -> list[list[IndefiniteForm]]:
        D = self.field.D
        r = isqrt(D)
        seen: set[IndefiniteForm] = set()
        cycles: list[list[IndefiniteForm]] = []
        for B in range(1, r + 1):
            if (B - D) % 2 != 0:
                continue
            M = (B * B - D) // 4  # = A*C < 0
            for A in range(1, (r + B) // 2 + 1):
                if M % A != 0:
                    continue
                C = M // A
                for f in (IndefiniteForm(A, B, C), IndefiniteForm(-A, B, -C)):
                    if f in seen or not f.is_reduced():
                        continue
                    cyc = f.cycle()
                    seen.update(cyc)
                    cycles.append(cyc)
        cycles.sort(key=lambda cyc: min((f.A, f.B, f.C) for f in cyc))
        return cycles

    def _build_dlog(self) -> dict[int, int]:
        """Discrete logs of all classes w.r.t. a generator (groups here are cyclic)."""
        h = self.h_narrow
        reps = [self._cycle_rep_ideal(i) for i in range(h)]
        for g in range(h):
            I = self.field.unit_ideal()
            table: dict[int, int] = {}
            for e in range(h):
                c = self.class_index(I)
                if c in table:
                    break
                table[c] = e
                I = self.field.ideal_mul(I, reps[g])
            if len(table) == h:
                self.generator_class = g
                return table
        raise ArithmeticError("narrow class group is not cyclic; unsupported")

    def _cycle_rep_ideal(self, i: int) -> QfIdeal:
        return form_to_ideal(self.field, self.cycles[i][0])

    # -- queries --------------------------------------------------------

    def class_index(self, I: QfIdeal) -> int:
        """Index of the rho-cycle containing the reduction of the form of I."""
        f = ideal_to_form(self.field, I).reduce()
        return self._form_to_cycle[f]

    def dlog(self, I: QfIdeal) -> int:
        """Discrete log of the narrow class of I w.r.t. the chosen generator."""
        return self._dlog[self.class_index(I)]

    def dlog_of_class(self, class_index: int) -> int:
        return self._dlog[class_index]

    def compose(self, i: int, j: int) -> int:
        """Class index of the product of classes i and j."""
        I = self.field.ideal_mul(self._cycle_rep_ideal(i), self._cycle_rep_ideal(j))
        return self.class_index(I)

    def residue_zeta(self) -> float:
        """Residue at s=1 of the Dedekind zeta function: 2*h*R/sqrt(D)."""
        import math

        return 2 * self.h_wide * self.regulator / math.sqrt(self.field.D)


def ideal_to_form(field: QuadField, I: QfIdeal) -> IndefiniteForm:
    """Form of the primitive part of I: (a, 2b + s, N(b + omega)/a)."""
    a, b = I.a, I.b
    return IndefiniteForm(a, 2 * b + field.s, field.omega_image_norm(b) // a)


def form_to_ideal(field: QuadField, f: IndefiniteForm) -> QfIdeal:
    """Primitive ideal of a form with A > 0 (use a rho-translate if A < 0)."""
    g = f if f.A > 0 else f.reduce()
    while g.A < 0:
        g = g.rho()
    b = ((g.B - field.s) // 2) % g.A
    return QfIdeal.make(field, 1, g.A, b)

"""The theta cusp form of a class character: evaluation and verification.

Theta(z) = sum over ideals of psi(a) sqrt(y) K_nu(2 pi N(a) y) cos(2 pi N(a) x)
(cosine for even sign exponent, sine for odd), collected by norm:

    Theta(z) = sum_{n>=1} a'(n) sqrt(y) K_nu(2 pi n y) cos(2 pi n x)

with a'(n) the Hecke L-coefficients.  It is an eigenfunction of the
hyperbolic Laplacian with eigenvalue 1/4 - nu^2 on Gamma_0(D) with
nebentypus chi_D, and satisfies Theta_psi(z) = T(psi) Theta_psibar(-1/(Dz)).

Verification is numerical: automorphy and functional-equation residuals,
a finite-difference eigenvalue check with Richardson ratio, and decay at
the cusps.
"""

from __future__ import annotations

import csv
import json
import math
import os
from dataclasses import dataclass

import numpy as np

from .heckechar import HeckeCharacter
from .lseries import hecke_l_coeffs
from .special import bessel_k, bessel_k0_array

MIN_Y = 0.05
TRUNCATION_EXPONENT = 45.0  # keep terms with 2 pi n y <= this


class ThetaForm:
    """Maass cusp form attached to a non-norm-induced class character."""

    def __init__(self, character: HeckeCharacter, n_max: int = 10**5):
        self.character = character
        self.field = character.field
        self.level = self.field.D  # conductor (1): level D * N(f) = D
        self.epsilon = character.infinity.epsilon % 2
        self.nu = character.infinity.nu
        self.eigenvalue = 0.25 - self.nu * self.nu
        self.n_max = n_max
        self.coeffs = hecke_l_coeffs(character, n_max)  # a'(n) at index n

    # -- coefficients ---------------------------------------------------

    def coefficient(self, n: int) -> complex:
        """a'(n) = sum over ideals of norm n of psi; a(n) = a'(n)/2."""
        return complex(self.coeffs[n])

    def ensure_coeffs(self, n_max: int) -> None:
        if n_max > self.n_max:
            self.coeffs = hecke_l_coeffs(self.character, n_max)
            self.n_max = n_max

    def export_coeffs_csv(self, path: str, n_max: int) -> None:
        self.ensure_coeffs(n_max)
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["n", "re", "im"])
            for n in range(1, n_max + 1):
                c = self.coeffs[n]
                w.writerow([n, f"{c.real:.15g}", f"{c.imag:.15g}"])

    def export_coeffs_json(self, path: str, n_max: int) -> None:
        self.ensure_coeffs(n_max)
        data = {
            "D": self.field.D,
            "index": self.character.index,
            "coefficients": [
                {"n": n, "re": self.coeffs[n].real, "im": self.coeffs[n].imag}
                for n in range(1, n_max + 1)
            ],
        }
        with open(path, "w") as fh:
            json.dump(data, fh, indent=1, sort_keys=True)

    # -- evaluation -----------------------------------------------------

    def truncation_index(self, y: float) -> int:
        return max(2, int(TRUNCATION_EXPONENT / (2 * math.pi * y)) + 1)

    def tail_bound(self, y: float, n_cut: int) -> float:
        """Crude bound sum_{n>n_cut} d(n) sqrt(y) e^(-2 pi n y) for the
        dropped terms, using d(n) <= n and K_nu(t) <= e^-t for t > 1."""
        q = math.exp(-2 * math.pi * y)
        # sum n q^n from n_cut+1: q^(n+1) ((n+1)(1-q) + q)/(1-q)^2
        n = n_cut + 1
        return math.sqrt(y) * q**n * ((n * (1 - q) + q) / (1 - q) ** 2)

    def eval(self, x: float, y: float, allow_low_y: bool = False) -> complex:
        """Theta at z = x + iy by truncated Fourier expansion."""
        if y < MIN_Y and not allow_low_y:
            raise ValueError(
                f"y = {y} below evaluation floor {MIN_Y}; "
                "pass allow_low_y=True to force direct summation"
            )
        if y <= 0:
            raise ValueError("y must be positive")
        n_cut = self.truncation_index(y)
        self.ensure_coeffs(n_cut)
        n = np.arange(1, n_cut + 1)
        a = self.coeffs[1 : n_cut + 1]
        if self.nu == 0.0:
            kv = bessel_k0_array(2 * math.pi * y * n)
        else:
            kv = np.array([bessel_k(self.nu, 2 * math.pi * y * k) for k in n])
        osc = np.cos(2 * math.pi * x * n) if self.epsilon == 0 else np.sin(2 * math.pi * x * n)
        return complex(math.sqrt(y) * np.sum(a * kv * osc))

    # -- verifications --------------------------------------------------

    def nebentypus(self, d: int) -> int:
        return self.field.chi(d)

    def check_automorphy(self, gammas, points, threads: int | None = None) -> "CheckReport":
        """max |Theta(gamma z) - chi_D(d) Theta(z)| over the given gamma in
        Gamma_0(D) and points z."""
        for a, b, c, d in gammas:
            if a * d - b * c != 1 or c % self.level != 0:
                raise ValueError(f"({a},{b},{c},{d}) is not in Gamma_0({self.level})")
        tasks = [(g, z) for g in gammas for z in points]

        def residual(task):
            (a, b, c, d), (x, y) = task
            den = complex(c * (x + 1j * y) + d)
            w = (a * (x + 1j * y) + b) / den
            lhs = self.eval(w.real, w.imag, allow_low_y=True)
            rhs = self.nebentypus(d) * self.eval(x, y)
            return abs(lhs - rhs)

        n_threads = threads or int(os.environ.get("MAASSFORGE_THREADS", "1"))
        if n_threads > 1:
            from concurrent.futures import ThreadPoolExecutor

            with ThreadPoolExecutor(max_workers=n_threads) as ex:
                residuals = list(ex.map(residual, tasks))
        else:
            residuals = [residual(t) for t in tasks]
        return CheckReport("automorphy", max(residuals), {"count": len(tasks)})

    def check_eigenvalue(self, x: float, y: float, h: float = 0.04) -> "CheckReport":
        """-y^2 (five-point Laplacian) vs (1/4 - nu^2); Richardson ratio of
        successive halvings should be ~4 for the O(h^2) stencil."""

        def fd_eigen(hh: float) -> float:
            f0 = self.eval(x, y).real
            lap = (
                self.eval(x + hh, y).real
                + self.eval(x - hh, y).real
                + self.eval(x, y + hh).real
                + self.eval(x, y - hh).real
                - 4 * f0
            ) / (hh * hh)
            return -y * y * lap / f0

        e1, e2, e3 = fd_eigen(h), fd_eigen(h / 2), fd_eigen(h / 4)
        ratio = (e1 - e2) / (e2 - e3)
        err = abs(e3 - self.eigenvalue)
        return CheckReport(
            "eigenvalue",
            err,
            {"richardson_ratio": ratio, "fd_values": [e1, e2, e3], "target": self.eigenvalue},
        )

    def check_functional_equation(self, dual: "ThetaForm", ys) -> "CheckReport":
        """max over y of |Theta_psi(iy) - (+-T) Theta_psibar(i/(D y))|."""
        T = self.character.root_number()
        sign = -1.0 if self.epsilon == 1 else 1.0
        res = []
        for y in ys:
            lhs = self.eval(0.0, y, allow_low_y=True)
            rhs = sign * T * dual.eval(0.0, 1.0 / (self.level * y), allow_low_y=True)
            res.append(abs(lhs - rhs))
        return CheckReport(
            "functional_equation", max(res), {"ys": list(ys), "root_number": T}
        )

    def check_cuspidal_decay(self, ys) -> "CheckReport":
        """Verify |Theta(iy)| <= C e^(-2 pi y) at the cusp at infinity and,
        via the Fricke relation, at the cusp 0."""
        worst = 0.0
        data = {}
        for y in ys:
            v = abs(self.eval(0.0, y))
            bound = 2.0 * math.sqrt(y) * math.exp(-2 * math.pi * y)
            data[y] = (v, bound)
            worst = max(worst, v / bound if bound > 0 else math.inf)
        return CheckReport("cuspidal_decay", worst, {"ratio_vs_bound": data})


@dataclass
class CheckReport:
    name: str
    residual: float
    details: dict

    def passes(self, tol: float) -> bool:
        return self.residual < tol


def build_theta(character: HeckeCharacter, n_max: int = 10**5) -> ThetaForm:
    if character.is_norm_induced():
        raise ValueError(
            "character is norm-induced: the theta series is not cuspidal"
        )
    return ThetaForm(character, n_max)


def gamma0_matrices(level: int, count: int = 10, c_mult_max: int = 3) -> list[tuple[int, int, int, int]]:
    """Deterministic sample of matrices in Gamma_0(level) with |c| <= c_mult_max*level."""
    from .quadfield import _xgcd

    out: list[tuple[int, int, int, int]] = []
    i = 0
    d = 1
    while len(out) < count:
        mult = i % c_mult_max + 1
        c = mult * level
        d = 2 + i  # varies the bottom-right entry deterministically
        i += 1
        if math.gcd(c, d) != 1:
            continue
        _, a, mb = _xgcd(d, c)  # a*d + mb*c = 1
        out.append((a, -mb, c, d))
    return out

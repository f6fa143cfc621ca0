"""Closed-form Petersson norm of the theta form.

    <Theta, Theta> = C1 * C2 * C3 * Res_{s=1} zeta_F(s) * L(1, psi * (psibar o sigma))

with, for conductor f = (1) and level N = D:

    C1 = N^2 / (4 pi phi(N))
    C2 = Gamma((1+2 nu)/2) * Gamma((1-2 nu)/2)          (= pi at nu = 0)
    C3 = prod_{p | N} (1 - 1/p)(1 - chi_D(p)/p)

and Res zeta_F = 2 h R / sqrt(D).  For a class character psi the twisted
character psi * (psibar o sigma) equals psi^2, since conjugate ideals lie in
inverse narrow classes.  Norm-induced psi (equivalently psi^2 trivial, i.e.
psi of order <= 2) give a non-cuspidal theta series and are refused.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from scipy.special import gamma as _gamma
from sympy import factorint

from .classforms import ClassGroup
from .heckechar import HeckeCharacter
from .lseries import l_value_at_1


class NormInducedError(ValueError):
    """The character factors through the norm; theta is not a cusp form."""


@dataclass
class PeterssonReport:
    c1: float
    c2: float
    c3: float
    res_zeta_f: float
    l_value: float
    total: float
    paper_value: float | None = None
    rel_err: float | None = None
    l_diagnostics: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        out = {
            "c1": self.c1,
            "c2": self.c2,
            "c3": self.c3,
            "res_zeta_f": self.res_zeta_f,
            "l_value": self.l_value,
            "total": self.total,
            "paper_value": self.paper_value,
            "rel_err": self.rel_err,
        }
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=1, sort_keys=True)


def constant_c1(D: int, conductor_norm: int = 1) -> float:
    N = D * conductor_norm
    phi = 1
    for p, e in factorint(N).items():
        phi *= p ** (e - 1) * (p - 1)
    return N * N / (4 * math.pi * phi)


def constant_c2(nu: float = 0.0) -> float:
    return float(_gamma((1 + 2 * nu) / 2) * _gamma((1 - 2 * nu) / 2))


def constant_c3(classgroup: ClassGroup) -> float:
    """For conductor (1): product over p | D of (1 - 1/p)(1 - chi_D(p)/p);
    the split-prime product over primes dividing N(f) is empty."""
    D = classgroup.field.D
    out = 1.0
    for p in factorint(D):
        out *= (1 - 1 / p) * (1 - classgroup.field.chi(p) / p)
    return out


def residue_zeta_f(classgroup: ClassGroup) -> float:
    """Res_{s=1} zeta_F(s) = 2 h R / sqrt(D) (two real places, w = 2)."""
    return classgroup.residue_zeta()


def petersson_norm(character: HeckeCharacter, paper_value: float | None = None) -> PeterssonReport:
    if character.is_norm_induced():
        raise NormInducedError(
            f"character index {character.index} of D={character.field.D} is "
            "norm-induced; its theta series is Eisenstein, not cuspidal"
        )
    cg = character.classgroup
    twisted = character.power(2)  # psi * (psibar o sigma) for class characters
    ldata = l_value_at_1(twisted)
    c1 = constant_c1(cg.field.D)
    c2 = constant_c2(character.infinity.nu)
    c3 = constant_c3(cg)
    res = residue_zeta_f(cg)
    total = c1 * c2 * c3 * res * ldata["value"]
    rel = abs(total / paper_value - 1) if paper_value else None
    return PeterssonReport(c1, c2, c3, res, ldata["value"], total, paper_value, rel, ldata)


PAPER_VALUES = {
    229: 38.3345331336184,
    445: 81.0223272397348,
    401: 12489.3392834563,  # product of the norms for psi and psi^2
}

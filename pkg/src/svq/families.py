"""Built-in configuration families.

* The four cylinder configurations C1..C4 of the principal strata
  Q(1^k, -1^l), giving a recursion for c_area in terms of smaller volumes.
* Closed forms for hyperelliptic components and the bridge between c_area and
  the sum L^- of Lyapunov exponents.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .config import Configuration, ConfigurationError, Labeling, SurfaceSurgery
from .exactnum import PiValue, factorial
from .strata import (
    AbelianStratum,
    BoundaryStratum,
    HypComponentSpec,
    HypKind,
    QuadStratum,
    classify_hyperelliptic,
    is_empty,
    principal,
)
from .svcore import sv_constants
from .volumes import VolumeDb

__all__ = [
    "PrincipalConfig",
    "PrincipalError",
    "enumerate_principal",
    "c_area_principal_config",
    "c_area_principal_stratum",
    "principal_breakdown",
    "principal_volume_product",
    "to_configuration",
    "c_area_hyperelliptic",
    "lsum_minus_hyperelliptic",
    "ekz_corrections",
    "lsum_minus_from_carea",
    "c_area_hyp_generic",
]

PI2 = PiValue.pi_power(2)


class PrincipalError(ValueError):
    pass


@dataclass(frozen=True)
class PrincipalConfig:
    family: str
    k: int
    l: int
    multiplicity: Fraction
    k1: Optional[int] = None
    l1: Optional[int] = None

    @property
    def k2(self) -> Optional[int]:
        return None if self.k1 is None else self.k - 2 - self.k1

    @property
    def l2(self) -> Optional[int]:
        return None if self.l1 is None else self.l + 2 - self.l1

    @property
    def ambient(self) -> QuadStratum:
        return principal(self.k, self.l)

    def boundary_strata(self) -> tuple:
        k, l = self.k, self.l
        if self.family == "C1":
            return (principal(self.k1, self.l1), principal(self.k2, self.l2))
        if self.family == "C2":
            return (principal(k - 2, l + 2),)
        if self.family == "C3":
            return (principal(k - 3, l + 1), AbelianStratum([0]))
        return (principal(k - 1, l - 1),)

    def label(self) -> str:
        if self.family == "C1":
            return f"C1({self.k1},{self.l1})"
        return self.family


def _admissible_principal(k: int, l: int) -> bool:
    if k < 0 or l < 0 or (k - l) % 4 or k - l < -4:
        return False
    return not is_empty(principal(k, l))


def _check_principal(k: int, l: int) -> None:
    if k < 0 or l < 0:
        raise PrincipalError("k and l must be nonnegative")
    if (k - l) % 4:
        raise PrincipalError(f"Q(1^{k}, -1^{l}) is not a stratum: k - l must be divisible by 4")
    if k - l < 0:
        raise PrincipalError(f"Q(1^{k}, -1^{l}) has genus 0; the recursion needs genus >= 1")
    if (k, l) in ((2, 2), (4, 0)):
        raise PrincipalError(
            f"Q(1^{k}, -1^{l}) is a connected hyperelliptic stratum; its configurations differ from C1..C4"
        )
    if is_empty(principal(k, l)):
        raise PrincipalError(f"Q(1^{k}, -1^{l}) is empty")


def enumerate_principal(k: int, l: int) -> list[PrincipalConfig]:
    """All cylinder configurations of Q(1^k, -1^l) with their multiplicities N(C).

    C1 is listed once per ordered split (k1, l1), each with a factor 1/2.
    """
    _check_principal(k, l)
    out: list[PrincipalConfig] = []
    for k1 in range(0, k - 1):
        k2 = k - 2 - k1
        for l1 in range(1, l + 2):
            l2 = l + 2 - l1
            if l2 < 1:
                continue
            if not (_admissible_principal(k1, l1) and _admissible_principal(k2, l2)):
                continue
            mult = Fraction(factorial(k), factorial(k1) * factorial(k2)) * Fraction(
                factorial(l), factorial(l1 - 1) * factorial(l2 - 1)
            ) / 2
            out.append(PrincipalConfig("C1", k, l, mult, k1, l1))
    if k >= 2 and _admissible_principal(k - 2, l + 2):
        out.append(PrincipalConfig("C2", k, l, Fraction(k * (k - 1), 2)))
    if k >= 3 and _admissible_principal(k - 3, l + 1):
        out.append(PrincipalConfig("C3", k, l, Fraction(k * (k - 1) * (k - 2), 2)))
    if k >= 1 and l >= 2 and _admissible_principal(k - 1, l - 1):
        out.append(PrincipalConfig("C4", k, l, Fraction(k * l * (l - 1), 2)))
    return out


def c_area_principal_config(cfg: PrincipalConfig, db: VolumeDb) -> PiValue:
    """c_area of one configuration (not weighted by its multiplicity)."""
    d = cfg.ambient.dim
    vol = db.lookup(cfg.ambient)
    bd = cfg.boundary_strata()
    if cfg.family == "C1":
        s1, s2 = bd
        coef = Fraction(factorial(s1.dim - 1) * factorial(s2.dim - 1), 4 * factorial(d - 1))
        return db.lookup(s1) * db.lookup(s2) * coef / vol
    ratio = db.lookup(bd[0]) / vol
    if cfg.family == "C2":
        return ratio * Fraction(2 * factorial(d - 3), factorial(d - 1))
    if cfg.family == "C3":
        return ratio * PI2 * Fraction(factorial(d - 5), 3 * factorial(d - 1))
    return ratio * Fraction(factorial(d - 3), 2 * factorial(d - 1))


def principal_breakdown(k: int, l: int, db: VolumeDb) -> list[tuple[PrincipalConfig, PiValue]]:
    return [(cfg, c_area_principal_config(cfg, db)) for cfg in enumerate_principal(k, l)]


def c_area_principal_stratum(k: int, l: int, db: VolumeDb) -> PiValue:
    total = PiValue.zero()
    for cfg, c in principal_breakdown(k, l, db):
        total = total + c * cfg.multiplicity
    return total


def principal_volume_product(k: int, l: int, db: VolumeDb) -> PiValue:
    """c_area(Q(1^k,-1^l)) * Vol Q(1^k,-1^l), which only involves boundary volumes."""
    return c_area_principal_stratum(k, l, db) * db.lookup(principal(k, l))


def _ones(n: int) -> tuple[int, ...]:
    return (1,) * n


def _poles(n: int) -> tuple[int, ...]:
    return (-1,) * n


def to_configuration(cfg: PrincipalConfig) -> Configuration:
    """The generic configuration descriptor of a principal-family member."""
    k, l = cfg.k, cfg.l
    bd = BoundaryStratum(cfg.boundary_strata())
    common = dict(ambient=cfg.ambient, boundary=bd, name=cfg.label())
    if cfg.family == "C1":
        return Configuration(
            q1=1,
            graph_type_a=True,
            surgery=(SurfaceSurgery("nontrivial", (1,)), SurfaceSurgery("nontrivial", (1,))),
            gamma_factors=(1, 1),
            labeling=Labeling(
                (_ones(cfg.k1) + _poles(cfg.l1 - 1), _ones(cfg.k2) + _poles(cfg.l2 - 1)),
                ((1,), (1,)),
                symmetry_halving=True,
            ),
            **common,
        )
    if cfg.family == "C2":
        return Configuration(
            q1=1,
            surgery=(SurfaceSurgery("nontrivial", (1, 1)),),
            gamma_factors=(1,),
            labeling=Labeling((_ones(k - 2) + _poles(l),), ((1,), (1,)), symmetry_halving=True),
            **common,
        )
    if cfg.family == "C3":
        return Configuration(
            q2=1,
            thick_symmetry_orders=(1,),
            surgery=(SurfaceSurgery("nontrivial", (1,)), SurfaceSurgery("trivial", (2,))),
            gamma_factors=(1, 2),
            labeling=Labeling((_ones(k - 3) + _poles(l), ()), ((1, 1), (1,))),
            **common,
        )
    return Configuration(
        q2=1,
        thick_symmetry_orders=(1,),
        surgery=(SurfaceSurgery("nontrivial", (1,)),),
        gamma_factors=(1,),
        labeling=Labeling((_ones(k - 1) + _poles(l - 2),), ((1,), (-1, -1))),
        **common,
    )


def c_area_hyperelliptic(spec: HypComponentSpec) -> PiValue:
    """c_area of a hyperelliptic component: d/(4 pi^2) * (2 + 1/((k1+2)(k2+2)))."""
    coef = Fraction(spec.dim, 4) * (2 + Fraction(1, (spec.k1 + 2) * (spec.k2 + 2)))
    return PiValue.monomial(coef, -2)


def lsum_minus_hyperelliptic(spec: HypComponentSpec) -> Fraction:
    """Closed-form L^- of a hyperelliptic component.

    For Type2 this does not agree with :func:`lsum_minus_from_carea` applied to
    :func:`c_area_hyperelliptic`; the bridge gives d/4 + 1/(4(k1+2)) instead.
    The stated form is kept; see the README.
    """
    base = Fraction(spec.dim, 4)
    if spec.kind is HypKind.TYPE1:
        return base * (1 + Fraction(1, (spec.k1 + 2) * (spec.k2 + 2)))
    if spec.kind is HypKind.TYPE2:
        return base * (1 + Fraction(1, spec.k1 + 2))
    return base


def ekz_corrections(s: QuadStratum) -> tuple[Fraction, Fraction]:
    """The rational terms I and K relating c_area to L^-."""
    i_term = sum((Fraction(1, d + 2) for d in s.orders if d % 2), Fraction(0)) / 4
    k_term = sum((Fraction(d * (d + 4), d + 2) for d in s.orders), Fraction(0)) / 24
    return i_term, k_term


def lsum_minus_from_carea(s: QuadStratum, c_area: PiValue) -> Fraction:
    """L^- = (pi^2/3) c_area + I + K."""
    if c_area.is_zero():
        coef = Fraction(0)
    else:
        coef, exp = c_area.as_monomial() if c_area.is_monomial() else (None, None)
        if exp != -2:
            raise ValueError(f"c_area must be a rational multiple of pi^-2, got {c_area}")
    i_term, k_term = ekz_corrections(s)
    return coef / 3 + i_term + k_term


def c_area_hyp_generic(c: Configuration, db: VolumeDb) -> PiValue:
    """c_area of a configuration inside a hyperelliptic component.

    Same evaluation as :func:`sv_constants`, with every volume taken from the
    hyperelliptic component; the caller supplies the adjusted M_s.
    """
    spec = classify_hyperelliptic(c.ambient)
    if spec is None:
        raise ConfigurationError(f"{c.ambient} has no hyperelliptic component")
    comp = "whole" if spec.connected else "hyp"
    hyp_cfg = dataclasses.replace(
        c,
        ambient_component=comp,
        boundary=BoundaryStratum(c.boundary.components, hyperelliptic_restricted=True),
    )
    return sv_constants(hyp_cfg, db).c_area

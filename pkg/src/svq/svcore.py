"""Siegel-Veech constants c, c_cyl and c_area of a configuration."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .config import Configuration, ConfigurationError, combined_m, count_labelings, m_c, m_s, m_t
from .exactnum import PiValue, factorial, format_fraction
from .strata import AbelianStratum, BoundaryStratum, QuadStratum, classify_hyperelliptic, is_empty
from .volumes import VolumeDb, vol_disconnected

__all__ = [
    "SVResult",
    "sv_constants",
    "sv_stratum_total",
    "boundary_volume",
    "c_area_from_volume_product",
]


@dataclass(frozen=True)
class SVResult:
    c: PiValue
    c_cyl: PiValue
    c_area: PiValue
    m: Fraction
    m_c: int
    m_t: int
    m_s: Fraction
    q1: int
    q2: int
    n_count: Fraction

    @property
    def weighted_c_area(self) -> PiValue:
        return self.c_area * self.n_count

    def to_json(self) -> dict:
        def num(v: PiValue) -> dict:
            return {"exact": v.to_text(), "approx": v.approx(12)}

        return {
            "c": num(self.c),
            "c_cyl": num(self.c_cyl),
            "c_area": num(self.c_area),
            "N": format_fraction(self.n_count),
            "N_times_c_area": num(self.weighted_c_area),
            "M": format_fraction(self.m),
            "M_c": self.m_c,
            "M_t": self.m_t,
            "M_s": format_fraction(self.m_s),
            "q1": self.q1,
            "q2": self.q2,
        }


def boundary_volume(boundary: BoundaryStratum, db: VolumeDb) -> PiValue:
    """Area-1/2 volume of a (possibly disconnected) boundary stratum.

    Abelian factors come back from the database at area 1/2 already, so they
    enter the product rule exactly like quadratic ones.
    """
    parts = [(db.lookup(s, _component_for(s, boundary.hyperelliptic_restricted)), s.dim)
             for s in boundary.components]
    return vol_disconnected(parts)


def _component_for(s, restricted: bool) -> str:
    # genus-0 and connected hyperelliptic strata are their own hyperelliptic component
    if not restricted:
        return "whole"
    if isinstance(s, AbelianStratum):
        return "hyp"
    spec = classify_hyperelliptic(s)
    return "hyp" if spec is not None and not spec.connected else "whole"


def sv_constants(c: Configuration, db: VolumeDb) -> SVResult:
    if is_empty(c.ambient):
        raise ConfigurationError(f"{c.ambient} is empty")
    d = c.ambient.dim
    q = c.q
    vol = db.lookup(c.ambient, c.ambient_component)
    mc, mt = m_c(c), m_t(c)
    ms = m_s(c)
    m = combined_m(c)
    if c.boundary.m:
        n_s = c.boundary.dim
        ratio = boundary_volume(c.boundary, db) / vol
        const = m / 2 ** (q + 2) * Fraction(factorial(n_s - 1), factorial(d - 2))
        cval = ratio * const
        c_cyl = cval * (c.q1 + Fraction(c.q2, 4))
        c_area = c_cyl / (d - 1)
    else:
        const = Fraction(mc, mt * 2 ** (q + 1) * factorial(q - 1))
        cval = PiValue.rational(const) / vol
        c_cyl = cval * Fraction(4 * c.q1 + c.q2, 4)
        c_area = c_cyl / q
    try:
        n = count_labelings(c)
    except ConfigurationError:
        n = Fraction(1)
    return SVResult(cval, c_cyl, c_area, m, mc, mt, ms, c.q1, c.q2, n)


def sv_stratum_total(contribs: Iterable[tuple[Configuration, VolumeDb]]) -> PiValue:
    """Sum of N(C) * c_area(C) over configurations sharing one ambient stratum."""
    total = PiValue.zero()
    ambient: Optional[tuple[QuadStratum, str]] = None
    for cfg, db in contribs:
        key = (cfg.ambient, cfg.ambient_component)
        if ambient is None:
            ambient = key
        elif key != ambient:
            raise ConfigurationError(
                f"configurations on different strata: {ambient[0]}:{ambient[1]} and {key[0]}:{key[1]}"
            )
        total = total + sv_constants(cfg, db).weighted_c_area
    return total


def c_area_from_volume_product(product: PiValue, volume: PiValue) -> PiValue:
    """c_area from a stratum total given as (c_area * Vol)."""
    return product / volume

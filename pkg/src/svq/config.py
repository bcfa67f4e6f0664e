"""Configurations of homologous saddle connections and their counting constants."""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Mapping, Optional, Sequence

from .exactnum import as_fraction, multinomial
from .strata import (
    COMPONENT_TAGS,
    AbelianStratum,
    BoundaryStratum,
    QuadStratum,
    parse_orders,
)

__all__ = [
    "SurfaceSurgery",
    "Labeling",
    "Configuration",
    "ConfigurationError",
    "m_c",
    "m_t",
    "m_s",
    "gamma_order",
    "count_labelings",
    "labeling_count",
    "combined_m",
    "configuration_from_json",
    "configuration_to_json",
    "configuration_from_text",
]


class ConfigurationError(ValueError):
    pass


@dataclass(frozen=True)
class SurfaceSurgery:
    """Surgery data of one boundary surface.

    ``boundary_components`` holds, for each boundary component created by the
    surgery, the sum of its k_i decorations.
    """

    holonomy: str
    boundary_components: tuple[int, ...]

    def __post_init__(self):
        if self.holonomy not in ("trivial", "nontrivial"):
            raise ConfigurationError(f"holonomy must be trivial or nontrivial, got {self.holonomy!r}")
        comps = tuple(int(x) for x in self.boundary_components)
        if not comps or any(x < 1 for x in comps):
            raise ConfigurationError("each surgery needs at least one boundary component with positive k-sum")
        object.__setattr__(self, "boundary_components", comps)

    def k_factor(self) -> Fraction:
        if self.holonomy == "nontrivial":
            return Fraction(math.prod(self.boundary_components))
        return 2 * math.prod((Fraction(s, 2) for s in self.boundary_components), start=Fraction(1))


def _orders_tuple(xs: Sequence[int]) -> tuple[int, ...]:
    return tuple(sorted((int(x) for x in xs), reverse=True))


@dataclass(frozen=True)
class Labeling:
    """Where the named singularities of the ambient surface come from.

    ``interior``: orders sitting inside each boundary surface.
    ``newborn``: orders created on each ribbon-graph component.
    """

    interior: tuple[tuple[int, ...], ...]
    newborn: tuple[tuple[int, ...], ...]
    symmetry_halving: bool = False

    def __post_init__(self):
        object.__setattr__(self, "interior", tuple(_orders_tuple(g) for g in self.interior))
        object.__setattr__(self, "newborn", tuple(_orders_tuple(g) for g in self.newborn))

    def groups(self) -> tuple[tuple[int, ...], ...]:
        return self.interior + self.newborn

    def all_orders(self) -> tuple[int, ...]:
        return _orders_tuple(o for g in self.groups() for o in g)


def labeling_count(ambient: QuadStratum, labeling: Labeling) -> Fraction:
    """Product over distinct orders of the multinomial over the groups,
    halved when the labeling carries a symmetry."""
    if labeling.all_orders() != ambient.orders:
        raise ConfigurationError(
            f"labeling orders {labeling.all_orders()} do not partition the ambient orders {ambient.orders}"
        )
    total = Counter(ambient.orders)
    n = Fraction(1)
    for order, count in total.items():
        n *= multinomial(count, [g.count(order) for g in labeling.groups()])
    if labeling.symmetry_halving:
        n /= 2
    return n


@dataclass(frozen=True)
class Configuration:
    ambient: QuadStratum
    boundary: BoundaryStratum
    q1: int = 0
    q2: int = 0
    graph_type_a: bool = False
    thick_symmetry_orders: tuple[int, ...] = ()
    surgery: Optional[tuple[SurfaceSurgery, ...]] = None
    gamma_factors: Optional[tuple[int, ...]] = None
    labeling: Optional[Labeling] = None
    m_s_override: Optional[Fraction] = None
    gamma_override: Optional[Fraction] = None
    n_override: Optional[Fraction] = None
    ambient_component: str = "whole"
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if not isinstance(self.ambient, QuadStratum):
            raise ConfigurationError("ambient must be a QuadStratum")
        if not isinstance(self.boundary, BoundaryStratum):
            raise ConfigurationError("boundary must be a BoundaryStratum")
        if self.ambient_component not in COMPONENT_TAGS:
            raise ConfigurationError(f"unknown component {self.ambient_component!r}")
        if self.q1 < 0 or self.q2 < 0:
            raise ConfigurationError("cylinder counts must be nonnegative")
        if self.q < 1:
            raise ConfigurationError("a configuration needs at least one cylinder (q >= 1)")
        orders = tuple(int(o) for o in self.thick_symmetry_orders)
        object.__setattr__(self, "thick_symmetry_orders", orders)
        if len(orders) != self.q2:
            raise ConfigurationError(f"need one symmetry order per thick cylinder ({self.q2}), got {len(orders)}")
        if any(o not in (1, 2) for o in orders):
            raise ConfigurationError(f"thick cylinder symmetry orders must be 1 or 2, got {orders}")
        if self.ambient.dim != self.boundary.dim + self.q + 1:
            raise ConfigurationError(
                f"dimension mismatch: dim {self.ambient} = {self.ambient.dim} but boundary dim "
                f"{self.boundary.dim} + q {self.q} + 1 = {self.boundary.dim + self.q + 1}"
            )
        for name in ("m_s_override", "gamma_override", "n_override"):
            v = getattr(self, name)
            if v is not None:
                v = as_fraction(v)
                if v <= 0:
                    raise ConfigurationError(f"{name} must be positive")
                object.__setattr__(self, name, v)
        if self.surgery is not None:
            object.__setattr__(self, "surgery", tuple(self.surgery))
        if self.gamma_factors is not None:
            gf = tuple(int(x) for x in self.gamma_factors)
            if any(x not in (1, 2) for x in gf):
                raise ConfigurationError(f"|Gamma(S_i)| must be 1 or 2, got {gf}")
            object.__setattr__(self, "gamma_factors", gf)
        m = self.boundary.m
        if m == 0:
            if self.surgery or self.gamma_factors or self.m_s_override is not None or self.gamma_override is not None:
                raise ConfigurationError("a cylinders-only configuration takes no surgery, Gamma or M_s data")
        else:
            if self.surgery is not None and len(self.surgery) != m:
                raise ConfigurationError(f"need surgery data for each of the {m} boundary surfaces")
            if self.gamma_factors is not None and len(self.gamma_factors) != m:
                raise ConfigurationError(f"need a Gamma factor for each of the {m} boundary surfaces")
        if self.labeling is not None:
            labeling_count(self.ambient, self.labeling)

    @property
    def q(self) -> int:
        return self.q1 + self.q2


def m_c(c: Configuration) -> int:
    return 4**c.q if c.graph_type_a else 4 ** (c.q + 1)


def m_t(c: Configuration) -> int:
    return math.prod(c.thick_symmetry_orders)


def gamma_order(c: Configuration) -> Fraction:
    if c.gamma_override is not None:
        return c.gamma_override
    if c.gamma_factors is not None:
        return Fraction(math.prod(c.gamma_factors))
    if c.boundary.m == 0:
        return Fraction(1)
    raise ConfigurationError("|Gamma(C)| needs gamma_factors or an explicit override")


def m_s(c: Configuration) -> Fraction:
    """K / |Gamma(C)|, with K the product of the per-surface surgery factors."""
    if c.m_s_override is not None:
        return c.m_s_override
    if c.boundary.m == 0:
        return Fraction(1)
    if c.surgery is None:
        raise ConfigurationError("M_s needs surgery data or an explicit override")
    k = math.prod((s.k_factor() for s in c.surgery), start=Fraction(1))
    return k / gamma_order(c)


def count_labelings(c: Configuration) -> Fraction:
    if c.n_override is not None:
        return c.n_override
    if c.labeling is None:
        raise ConfigurationError("N(C) needs labeling data or an explicit override")
    return labeling_count(c.ambient, c.labeling)


def combined_m(c: Configuration) -> Fraction:
    return m_s(c) * m_c(c) / m_t(c)


_TOP_FIELDS = {
    "ambient", "ambient_component", "boundary", "hyperelliptic_restricted", "q1", "q2",
    "graph_type_a", "thick_symmetry_orders", "surgery", "gamma_factors", "labeling",
    "M_s", "Gamma", "N", "name",
}


def _check_fields(obj: Any, allowed: set, where: str, required: set = frozenset()) -> None:
    if not isinstance(obj, Mapping):
        raise ConfigurationError(f"{where} must be a JSON object")
    extra = set(obj) - allowed
    if extra:
        raise ConfigurationError(f"{where}: unknown fields {sorted(extra)}")
    missing = set(required) - set(obj)
    if missing:
        raise ConfigurationError(f"{where}: missing fields {sorted(missing)}")


def _exact(v: Any, where: str) -> Optional[Fraction]:
    if v is None:
        return None
    if isinstance(v, bool) or not isinstance(v, (int, str)):
        raise ConfigurationError(f"{where} must be an integer or a 'num/den' string")
    try:
        return as_fraction(v)
    except ValueError as exc:
        raise ConfigurationError(f"{where}: {exc}") from None


def configuration_from_json(obj: Any) -> Configuration:
    """Build a Configuration from its JSON object form (strict: unknown keys rejected)."""
    _check_fields(obj, _TOP_FIELDS, "configuration", {"ambient", "boundary"})
    try:
        ambient = QuadStratum(parse_orders(obj["ambient"]))
        comps = []
        if not isinstance(obj["boundary"], list):
            raise ConfigurationError("boundary must be a list")
        for i, b in enumerate(obj["boundary"]):
            _check_fields(b, {"kind", "stratum"}, f"boundary[{i}]", {"kind", "stratum"})
            orders = parse_orders(b["stratum"])
            if b["kind"] == "quadratic":
                comps.append(QuadStratum(orders))
            elif b["kind"] == "abelian":
                comps.append(AbelianStratum(orders))
            else:
                raise ConfigurationError(f"boundary[{i}].kind must be quadratic or abelian")
        boundary = BoundaryStratum(tuple(comps), bool(obj.get("hyperelliptic_restricted", False)))
        surgery = None
        if obj.get("surgery") is not None:
            surgery = []
            for i, s in enumerate(obj["surgery"]):
                _check_fields(s, {"holonomy", "boundary_components"}, f"surgery[{i}]",
                              {"holonomy", "boundary_components"})
                surgery.append(SurfaceSurgery(s["holonomy"], tuple(s["boundary_components"])))
            surgery = tuple(surgery)
        labeling = None
        if obj.get("labeling") is not None:
            lab = obj["labeling"]
            _check_fields(lab, {"interior", "newborn", "symmetry_halving"}, "labeling", {"interior", "newborn"})
            labeling = Labeling(
                tuple(tuple(g) for g in lab["interior"]),
                tuple(tuple(g) for g in lab["newborn"]),
                bool(lab.get("symmetry_halving", False)),
            )
        gamma = obj.get("gamma_factors")
        return Configuration(
            ambient=ambient,
            boundary=boundary,
            q1=int(obj.get("q1", 0)),
            q2=int(obj.get("q2", 0)),
            graph_type_a=bool(obj.get("graph_type_a", False)),
            thick_symmetry_orders=tuple(obj.get("thick_symmetry_orders", ())),
            surgery=surgery,
            gamma_factors=tuple(gamma) if gamma is not None else None,
            labeling=labeling,
            m_s_override=_exact(obj.get("M_s"), "M_s"),
            gamma_override=_exact(obj.get("Gamma"), "Gamma"),
            n_override=_exact(obj.get("N"), "N"),
            ambient_component=obj.get("ambient_component", "whole"),
            name=str(obj.get("name", "")),
        )
    except ConfigurationError:
        raise
    except (ValueError, TypeError) as exc:
        raise ConfigurationError(str(exc)) from None


def configuration_from_text(text: str) -> Configuration:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigurationError(f"invalid JSON: {exc}") from None
    return configuration_from_json(obj)


def _frac_text(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def configuration_to_json(c: Configuration) -> dict:
    out: dict = {
        "ambient": c.ambient.key,
        "ambient_component": c.ambient_component,
        "boundary": [
            {"kind": "quadratic" if isinstance(b, QuadStratum) else "abelian", "stratum": b.key}
            for b in c.boundary.components
        ],
        "hyperelliptic_restricted": c.boundary.hyperelliptic_restricted,
        "q1": c.q1,
        "q2": c.q2,
        "graph_type_a": c.graph_type_a,
        "thick_symmetry_orders": list(c.thick_symmetry_orders),
    }
    if c.name:
        out["name"] = c.name
    if c.surgery is not None:
        out["surgery"] = [
            {"holonomy": s.holonomy, "boundary_components": list(s.boundary_components)} for s in c.surgery
        ]
    if c.gamma_factors is not None:
        out["gamma_factors"] = list(c.gamma_factors)
    if c.labeling is not None:
        out["labeling"] = {
            "interior": [list(g) for g in c.labeling.interior],
            "newborn": [list(g) for g in c.labeling.newborn],
            "symmetry_halving": c.labeling.symmetry_halving,
        }
    for key, v in (("M_s", c.m_s_override), ("Gamma", c.gamma_override), ("N", c.n_override)):
        if v is not None:
            out[key] = _frac_text(v)
    return out

"""Masur-Veech volumes: closed forms, the product rule for disconnected
surfaces, and a small JSON-backed database.

Every volume handed out by :meth:`VolumeDb.lookup` is normalized to area 1/2
with all singularities labeled.
"""

from __future__ import annotations

import json
import math
import os
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from types import MappingProxyType
from typing import Iterable, Mapping, Optional, Sequence, Union

from .exactnum import PiValue, double_factorial, factorial, format_fraction, parse_fraction
from .strata import (
    COMPONENT_TAGS,
    AbelianStratum,
    HypComponentSpec,
    HypKind,
    QuadStratum,
    classify_hyperelliptic,
    format_orders,
    parse_orders,
)

__all__ = [
    "VolumeEntry",
    "VolumeDb",
    "UnknownVolumeError",
    "ApproximateVolumeError",
    "VolumeDbFormatError",
    "vol_genus0_principal",
    "vol_hyp_abelian_halfarea",
    "abelian_halfarea_from_unit",
    "vol_hyp_quadratic",
    "vol_disconnected",
    "closed_form_volume",
    "shipped_db",
]

Stratum = Union[QuadStratum, AbelianStratum]


class UnknownVolumeError(LookupError):
    """Neither the database nor a closed form knows this volume."""


class ApproximateVolumeError(ValueError):
    """An exact computation asked for a volume only known approximately."""


class VolumeDbFormatError(ValueError):
    pass


def _dfrac(k: int) -> Fraction:
    # k!! / (k+1)!!
    return Fraction(double_factorial(k), double_factorial(k + 1))


def vol_genus0_principal(k: int) -> PiValue:
    """Vol Q(1^k, -1^(k+4)) = pi^(2k+2) / 2^(k-1)."""
    if k < 0:
        raise ValueError("k must be >= 0")
    return PiValue.monomial(Fraction(2) ** (1 - k), 2 * k + 2)


def vol_hyp_abelian_halfarea(k: int, pair: bool = False) -> PiValue:
    """Area-1/2 volume of a hyperelliptic Abelian component, numbered zeros.

    ``pair=False``: H^hyp(k-1), k odd >= 1.
    ``pair=True``: H^hyp((k/2-1)^2), k even >= 4.
    """
    ratio = Fraction(double_factorial(k - 2), double_factorial(k - 1)) if k >= 1 else None
    if not pair:
        if k < 1 or k % 2 == 0:
            raise ValueError(f"single-zero hyperelliptic component needs odd k >= 1, got {k}")
        return PiValue.monomial(Fraction(2 ** (k + 2), factorial(k + 2)) * ratio, k + 1)
    if k < 4 or k % 2:
        raise ValueError(f"two-zero hyperelliptic component needs even k >= 4, got {k}")
    return PiValue.monomial(Fraction(2 ** (k + 3), factorial(k + 2)) * ratio, k)


def abelian_halfarea_from_unit(v1: PiValue, dim: int) -> PiValue:
    """Vol H_{1/2} = 2^dim * Vol H_1."""
    if dim < 0:
        raise ValueError("dimension must be >= 0")
    return v1 * (2**dim)


def vol_hyp_quadratic(spec: HypComponentSpec) -> PiValue:
    """Volume of the hyperelliptic component described by ``spec``."""
    k1, k2, d = spec.k1, spec.k2, spec.dim
    base = Fraction(2**d, factorial(d)) * _dfrac(k1) * _dfrac(k2)
    if spec.kind is HypKind.TYPE1:
        if k1 == k2:
            g = k1 + 1
            coef = Fraction(3 * 2 ** (2 * g + 2), factorial(2 * g + 2)) * Fraction(
                double_factorial(g - 1), double_factorial(g)
            ) ** 2
            return PiValue.monomial(coef, 2 * g + 2)
        return PiValue.monomial(base, d)
    if spec.kind is HypKind.TYPE2:
        return PiValue.monomial(base, d - 1)
    return PiValue.monomial(2 * base, d - 2)


def vol_disconnected(components: Sequence[tuple[PiValue, int]]) -> PiValue:
    """Volume of a product of m strata of dimensions d_i (area 1/2 each).

    1/2^(m-1) * prod (d_i - 1)! / (d - 1)! * prod Vol_i with d = sum d_i.
    """
    comps = list(components)
    if not comps:
        raise ValueError("vol_disconnected needs at least one component")
    if any(d < 1 for _, d in comps):
        raise ValueError("component dimensions must be positive")
    d = sum(dim for _, dim in comps)
    coef = Fraction(math.prod(factorial(dim - 1) for _, dim in comps), factorial(d - 1))
    coef /= 2 ** (len(comps) - 1)
    out = PiValue.rational(coef)
    for v, _ in comps:
        out = out * v
    return out


def closed_form_volume(stratum: Stratum, component: str = "whole") -> Optional[PiValue]:
    """A closed-form volume for ``(stratum, component)`` if one is known."""
    if isinstance(stratum, QuadStratum):
        spec = classify_hyperelliptic(stratum)
        if component == "hyp" and spec is not None:
            return vol_hyp_quadratic(spec)
        if component == "whole":
            if spec is not None and spec.connected:
                return vol_hyp_quadratic(spec)
            o = stratum.orders
            k = o.count(1)
            if stratum.genus == 0 and len(o) == k + o.count(-1) and o.count(-1) == k + 4:
                return vol_genus0_principal(k)
        return None
    o = stratum.orders
    hyp: Optional[PiValue] = None
    if len(o) == 1:
        hyp = vol_hyp_abelian_halfarea(o[0] + 1)
    elif len(o) == 2 and o[0] == o[1] and o[0] >= 1:
        hyp = vol_hyp_abelian_halfarea(2 * o[0] + 2, pair=True)
    if component == "hyp":
        return hyp
    if component == "whole" and o in ((0,), (2,), (1, 1)):
        return hyp
    return None


@dataclass(frozen=True)
class VolumeEntry:
    stratum: tuple[int, ...]
    component: str
    kind: str
    area: str
    labeled: bool
    value: PiValue
    exact: bool
    source: str

    @property
    def key(self) -> tuple[str, tuple[int, ...], str]:
        return (self.kind, self.stratum, self.component)

    def as_stratum(self) -> Stratum:
        return QuadStratum(self.stratum) if self.kind == "quadratic" else AbelianStratum(self.stratum)

    def normalized(self) -> PiValue:
        """Value at area 1/2 with labeled singularities."""
        v = self.value
        if self.kind == "abelian" and self.area == "one":
            v = abelian_halfarea_from_unit(v, self.as_stratum().dim)
        if not self.labeled:
            v = v * math.prod(factorial(c) for c in Counter(self.stratum).values())
        return v

    def to_json(self) -> dict:
        coef, exp = self.value.as_monomial()
        return {
            "stratum": format_orders(self.stratum),
            "component": self.component,
            "kind": self.kind,
            "area": self.area,
            "labeled": self.labeled,
            "coeff": format_fraction(coef),
            "pi_exp": exp,
            "exact": self.exact,
            "source": self.source,
        }


_ENTRY_FIELDS = {"stratum", "component", "kind", "area", "labeled", "coeff", "pi_exp", "exact", "source"}


def _entry_from_json(obj: Mapping, where: str) -> VolumeEntry:
    if not isinstance(obj, Mapping):
        raise VolumeDbFormatError(f"{where}: entry must be an object")
    extra = set(obj) - _ENTRY_FIELDS
    missing = _ENTRY_FIELDS - set(obj)
    if extra:
        raise VolumeDbFormatError(f"{where}: unknown fields {sorted(extra)}")
    if missing:
        raise VolumeDbFormatError(f"{where}: missing fields {sorted(missing)}")
    kind = obj["kind"]
    if kind not in ("quadratic", "abelian"):
        raise VolumeDbFormatError(f"{where}: kind must be quadratic or abelian")
    area = obj["area"]
    if area not in ("half", "one"):
        raise VolumeDbFormatError(f"{where}: area must be half or one")
    if kind == "quadratic" and area != "half":
        raise VolumeDbFormatError(f"{where}: quadratic volumes are stored at area 1/2")
    comp = obj["component"]
    if comp not in COMPONENT_TAGS:
        raise VolumeDbFormatError(f"{where}: unknown component {comp!r}")
    for name in ("labeled", "exact"):
        if not isinstance(obj[name], bool):
            raise VolumeDbFormatError(f"{where}: {name} must be a boolean")
    if not isinstance(obj["pi_exp"], int) or isinstance(obj["pi_exp"], bool):
        raise VolumeDbFormatError(f"{where}: pi_exp must be an integer")
    if not isinstance(obj["source"], str) or not isinstance(obj["coeff"], str):
        raise VolumeDbFormatError(f"{where}: coeff and source must be strings")
    try:
        orders = parse_orders(obj["stratum"])
        stratum = QuadStratum(orders) if kind == "quadratic" else AbelianStratum(orders)
        num_den = obj["coeff"].split("/")
        coef = parse_fraction(obj["coeff"])
    except ValueError as exc:
        raise VolumeDbFormatError(f"{where}: {exc}") from None
    if len(num_den) != 2 or format_fraction(coef) != obj["coeff"].replace(" ", ""):
        raise VolumeDbFormatError(f"{where}: coeff {obj['coeff']!r} is not num/den in lowest terms")
    if coef <= 0:
        raise VolumeDbFormatError(f"{where}: volume must be positive")
    return VolumeEntry(
        stratum=stratum.orders,
        component=comp,
        kind=kind,
        area=area,
        labeled=obj["labeled"],
        value=PiValue.monomial(coef, obj["pi_exp"]),
        exact=obj["exact"],
        source=obj["source"],
    )


class VolumeDb:
    """Immutable map from (kind, orders, component) to a volume entry.

    Entries win over closed forms; :meth:`validate` reports any disagreement.
    """

    def __init__(self, entries: Iterable[VolumeEntry] = ()):
        table: dict = {}
        for e in entries:
            if e.key in table:
                raise VolumeDbFormatError(f"duplicate entry for {e.kind} {format_orders(e.stratum)}:{e.component}")
            table[e.key] = e
        self._entries = MappingProxyType(table)

    @property
    def entries(self) -> Mapping:
        return self._entries

    def __len__(self):
        return len(self._entries)

    def __iter__(self):
        return iter(self._entries.values())

    @classmethod
    def loads(cls, text: str) -> "VolumeDb":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise VolumeDbFormatError(f"invalid JSON: {exc}") from None
        if not isinstance(doc, dict) or set(doc) != {"entries"} or not isinstance(doc["entries"], list):
            raise VolumeDbFormatError('expected a document of the form {"entries": [...]}')
        return cls(_entry_from_json(e, f"entry {i}") for i, e in enumerate(doc["entries"]))

    @classmethod
    def load(cls, path: Union[str, os.PathLike]) -> "VolumeDb":
        with open(path, encoding="utf-8") as fh:
            return cls.loads(fh.read())

    def dumps(self) -> str:
        return json.dumps({"entries": [e.to_json() for e in self]}, indent=2) + "\n"

    def merge(self, other: "VolumeDb") -> "VolumeDb":
        """New database with the entries of ``other`` replacing ours on collision."""
        table = dict(self._entries)
        table.update(other.entries)
        return VolumeDb(table.values())

    def entry(self, stratum: Stratum, component: str = "whole") -> Optional[VolumeEntry]:
        kind = "quadratic" if isinstance(stratum, QuadStratum) else "abelian"
        return self._entries.get((kind, stratum.orders, component))

    def lookup(self, stratum: Stratum, component: str = "whole", allow_approx: bool = False) -> PiValue:
        if component not in COMPONENT_TAGS:
            raise ValueError(f"unknown component {component!r}")
        e = self.entry(stratum, component)
        if e is not None:
            if not e.exact and not allow_approx:
                raise ApproximateVolumeError(f"volume of {stratum}:{component} is only known approximately")
            return e.normalized()
        v = closed_form_volume(stratum, component)
        if v is None:
            raise UnknownVolumeError(f"no volume known for {stratum}:{component}")
        return v

    def validate(self) -> list[str]:
        """Disagreements between stored entries and closed forms (empty when clean)."""
        problems = []
        for e in self:
            cf = closed_form_volume(e.as_stratum(), e.component)
            if cf is not None and e.exact and cf != e.normalized():
                problems.append(
                    f"{e.kind} {format_orders(e.stratum)}:{e.component}: stored {e.normalized()} "
                    f"but closed form gives {cf}"
                )
        return problems


def shipped_db() -> VolumeDb:
    """The database bundled with the package."""
    text = resources.files("svq").joinpath("data/volumes.json").read_text(encoding="utf-8")
    return VolumeDb.loads(text)

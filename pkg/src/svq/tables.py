"""Regenerate the reference tables of volumes, constants and Lyapunov sums and
diff them against the shipped reference values."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Optional

from .exactnum import PiValue, format_fraction, parse_fraction
from .families import (
    PrincipalError,
    c_area_hyperelliptic,
    c_area_principal_stratum,
    lsum_minus_from_carea,
)
from .strata import COMPONENT_TAGS, QuadStratum, classify_hyperelliptic, format_orders, parse_orders
from .svcore import c_area_from_volume_product
from .volumes import ApproximateVolumeError, UnknownVolumeError, VolumeDb, closed_form_volume

__all__ = [
    "TABLES",
    "APPROX_TOLERANCE",
    "ReferenceEntry",
    "ReferenceSet",
    "Cell",
    "Row",
    "Table",
    "load_reference",
    "regenerate",
    "render_text",
]

TABLES = ("volSV", "SVLyap", "vol")

# published decimals come from Lyapunov-exponent experiments, so they carry
# a few units in the third decimal of noise
APPROX_TOLERANCE = 5e-3

_KINDS = ("c_area", "carea_volume_product", "lyapunov_minus", "lyapunov_plus", "genus", "effective_genus")
_FIELDS = {"table", "stratum", "component", "kind", "coeff", "pi_exp", "exact", "source"}


class ReferenceFormatError(ValueError):
    pass


@dataclass(frozen=True)
class ReferenceEntry:
    table: str
    stratum: tuple[int, ...]
    component: str
    kind: str
    value: PiValue
    exact: bool
    source: str


@dataclass(frozen=True)
class ReferenceSet:
    entries: tuple[ReferenceEntry, ...]

    def get(self, table: str, stratum: tuple[int, ...], component: str, kind: str) -> Optional[ReferenceEntry]:
        for e in self.entries:
            if (e.table, e.stratum, e.component, e.kind) == (table, stratum, component, kind):
                return e
        return None

    def rows(self, table: str) -> list[tuple[tuple[int, ...], str]]:
        """(stratum, component) pairs of a table in file order."""
        seen: list[tuple[tuple[int, ...], str]] = []
        for e in self.entries:
            key = (e.stratum, e.component)
            if e.table == table and key not in seen:
                seen.append(key)
        return seen


def _parse_reference(doc) -> ReferenceSet:
    if not isinstance(doc, dict) or set(doc) != {"entries"} or not isinstance(doc["entries"], list):
        raise ReferenceFormatError('expected {"entries": [...]}')
    out = []
    for i, obj in enumerate(doc["entries"]):
        if not isinstance(obj, dict) or set(obj) != _FIELDS:
            raise ReferenceFormatError(f"entry {i}: fields must be exactly {sorted(_FIELDS)}")
        if obj["table"] not in TABLES or obj["kind"] not in _KINDS or obj["component"] not in COMPONENT_TAGS:
            raise ReferenceFormatError(f"entry {i}: bad table, kind or component")
        coef = parse_fraction(obj["coeff"])
        if format_fraction(coef) != obj["coeff"]:
            raise ReferenceFormatError(f"entry {i}: coeff not in lowest num/den form")
        out.append(
            ReferenceEntry(
                table=obj["table"],
                stratum=QuadStratum(parse_orders(obj["stratum"])).orders,
                component=obj["component"],
                kind=obj["kind"],
                value=PiValue.monomial(coef, int(obj["pi_exp"])),
                exact=bool(obj["exact"]),
                source=obj["source"],
            )
        )
    return ReferenceSet(tuple(out))


def load_reference(path: Optional[str] = None) -> ReferenceSet:
    if path is None:
        text = resources.files("svq").joinpath("data/constants.json").read_text(encoding="utf-8")
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    return _parse_reference(json.loads(text))


@dataclass(frozen=True)
class Cell:
    column: str
    computed: Optional[str]
    reference: Optional[str]
    status: str  # ok | MISMATCH | ref | computed | error

    @property
    def mismatch(self) -> bool:
        return self.status == "MISMATCH" or self.status.startswith("error")


@dataclass
class Row:
    label: str
    cells: list[Cell] = field(default_factory=list)


@dataclass
class Table:
    name: str
    rows: list[Row]

    @property
    def mismatches(self) -> list[tuple[str, Cell]]:
        return [(r.label, c) for r in self.rows for c in r.cells if c.mismatch]


def _stratum_label(orders: tuple[int, ...], component: str) -> str:
    prefix = {"whole": "Q", "hyp": "Q^hyp", "nonhyp": "Q^non", "reg": "Q^reg", "irr": "Q^irr"}[component]
    return f"{prefix}({format_orders(orders)})"


def _ref_text(e: Optional[ReferenceEntry], scale_pi2: bool) -> Optional[str]:
    if e is None:
        return None
    v = e.value * PiValue.pi_power(2) if scale_pi2 else e.value
    return v.to_text() if e.exact else f"~{v.approx(4)}"


def _compare(column: str, computed: Optional[PiValue], ref: Optional[ReferenceEntry], scale_pi2: bool) -> Cell:
    """Compare a computed value with a reference; c_area columns are shown times pi^2."""
    shown = None
    if computed is not None:
        shown = (computed * PiValue.pi_power(2) if scale_pi2 else computed).to_text()
    ref_text = _ref_text(ref, scale_pi2)
    if computed is None:
        return Cell(column, None, ref_text, "ref")
    if ref is None:
        return Cell(column, shown, None, "computed")
    if ref.exact:
        return Cell(column, shown, ref_text, "ok" if computed == ref.value else "MISMATCH")
    scale = PiValue.pi_power(2) if scale_pi2 else PiValue.rational(1)
    diff = abs((computed * scale).to_float() - (ref.value * scale).to_float())
    return Cell(column, shown, ref_text, "ok" if diff <= APPROX_TOLERANCE else "MISMATCH")


def _volume_cell(db: VolumeDb, s: QuadStratum, component: str) -> Cell:
    e = db.entry(s, component)
    try:
        v = db.lookup(s, component, allow_approx=True)
    except UnknownVolumeError as exc:
        return Cell("volume", None, None, "error:" + str(exc))
    if e is None or e.exact:
        text = v.to_text()
    else:
        coef, exp = v.as_monomial()
        text = f"~{float(coef):.3g}*pi^{exp}"
    cf = closed_form_volume(s, component)
    if cf is None:
        return Cell("volume", text, None, "ref")
    return Cell("volume", text, cf.to_text(), "ok" if cf == v else "MISMATCH")


def _principal_params(s: QuadStratum) -> Optional[tuple[int, int]]:
    k, l = s.orders.count(1), s.orders.count(-1)
    return (k, l) if k + l == len(s.orders) else None


def _computed_c_area(db: VolumeDb, ref: ReferenceSet, table: str, s: QuadStratum, component: str) -> Optional[PiValue]:
    spec = classify_hyperelliptic(s)
    if spec is not None and (component == "hyp" or (component == "whole" and spec.connected)):
        return c_area_hyperelliptic(spec)
    if component == "whole":
        kl = _principal_params(s)
        if kl is not None:
            try:
                return c_area_principal_stratum(*kl, db)
            except PrincipalError:
                pass
    product = ref.get(table, s.orders, component, "carea_volume_product")
    if product is not None:
        return c_area_from_volume_product(product.value, db.lookup(s, component))
    return None


def _effective_genus(s: QuadStratum) -> int:
    odd = sum(1 for a in s.orders if a % 2)
    return s.genus - 1 + odd // 2


def regenerate(which: str, db: VolumeDb, ref: Optional[ReferenceSet] = None) -> Table:
    if which not in TABLES:
        raise ValueError(f"unknown table {which!r}; choose from {TABLES}")
    ref = ref or load_reference()
    rows = []
    for orders, comp in ref.rows(which):
        s = QuadStratum(orders)
        row = Row(_stratum_label(orders, comp))
        try:
            if which == "SVLyap":
                g_ref = ref.get(which, orders, comp, "genus")
                ge_ref = ref.get(which, orders, comp, "effective_genus")
                row.cells.append(_compare("g", PiValue.rational(s.genus), g_ref, False))
                row.cells.append(_compare("g_eff", PiValue.rational(_effective_genus(s)), ge_ref, False))
            else:
                row.cells.append(_volume_cell(db, s, comp))
            c_area = _computed_c_area(db, ref, which, s, comp)
            row.cells.append(_compare("pi^2*c_area", c_area, ref.get(which, orders, comp, "c_area"), True))
            if which == "SVLyap":
                row.cells.append(_compare("L+", None, ref.get(which, orders, comp, "lyapunov_plus"), False))
                lm = None if c_area is None else PiValue.rational(lsum_minus_from_carea(s, c_area))
                row.cells.append(_compare("L-", lm, ref.get(which, orders, comp, "lyapunov_minus"), False))
        except (UnknownVolumeError, ApproximateVolumeError) as exc:
            row.cells.append(Cell("pi^2*c_area", None, None, f"error:{exc}"))
        rows.append(row)
    return Table(which, rows)


def render_text(table: Table) -> str:
    lines = [f"== {table.name} =="]
    for row in table.rows:
        parts = []
        for c in row.cells:
            if c.status == "ref":
                parts.append(f"{c.column}={c.reference if c.reference is not None else c.computed} [ref]")
            elif c.status == "computed":
                parts.append(f"{c.column}={c.computed} [computed]")
            elif c.status == "ok":
                parts.append(f"{c.column}={c.computed} [ok]")
            elif c.status == "MISMATCH":
                parts.append(f"{c.column}={c.computed} [MISMATCH reference {c.reference}]")
            else:
                parts.append(f"{c.column}: {c.status}")
        lines.append(f"{row.label}: " + "; ".join(parts))
    n = len(table.mismatches)
    lines.append(f"{n} mismatch{'es' if n != 1 else ''}")
    return "\n".join(lines) + "\n"


def table_to_json(table: Table) -> dict:
    return {
        "table": table.name,
        "rows": [
            {
                "stratum": r.label,
                "cells": [
                    {"column": c.column, "computed": c.computed, "reference": c.reference, "status": c.status}
                    for c in r.cells
                ],
            }
            for r in table.rows
        ],
        "mismatches": len(table.mismatches),
    }

"""Strata of quadratic and Abelian differentials.

A stratum is stored as its multiset of singularity orders, sorted descending,
so equal multisets compare equal regardless of input order.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from typing import Iterable, Optional, Union

__all__ = [
    "QuadStratum",
    "AbelianStratum",
    "BoundaryStratum",
    "HypKind",
    "HypComponentSpec",
    "COMPONENT_TAGS",
    "CONNECTED_HYPERELLIPTIC",
    "parse_orders",
    "parse_stratum_key",
    "format_orders",
    "genus",
    "dim_c",
    "is_empty",
    "classify_hyperelliptic",
    "principal",
]

COMPONENT_TAGS = ("whole", "hyp", "nonhyp", "reg", "irr")

_POWER_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:\^\s*(\d+))?\s*$")


def parse_orders(text: str) -> tuple[int, ...]:
    """Parse ``"1,1,-1"`` or the power shorthand ``"1^3,-1^3"`` into a tuple.

    The empty string gives the empty tuple.
    """
    text = text.strip()
    if not text:
        return ()
    out: list[int] = []
    for tok in text.split(","):
        m = _POWER_RE.match(tok)
        if not m:
            raise ValueError(f"bad singularity order {tok!r} in {text!r}")
        mult = int(m.group(2)) if m.group(2) is not None else 1
        out.extend([int(m.group(1))] * mult)
    return tuple(out)


def format_orders(orders: Iterable[int]) -> str:
    return ",".join(str(a) for a in orders)


def parse_stratum_key(key: str) -> tuple[tuple[int, ...], str]:
    """Split ``"6,-1,-1:hyp"`` into (orders, component); component defaults to whole."""
    body, _, comp = key.partition(":")
    comp = comp.strip() or "whole"
    if comp not in COMPONENT_TAGS:
        raise ValueError(f"unknown component tag {comp!r}; expected one of {COMPONENT_TAGS}")
    return parse_orders(body), comp


@dataclass(frozen=True, order=True)
class QuadStratum:
    """Q(alpha): orders >= -1, nonzero, summing to 4g - 4."""

    orders: tuple[int, ...]

    def __init__(self, orders: Iterable[int]):
        orders = tuple(sorted((int(a) for a in orders), reverse=True))
        for a in orders:
            if a < -1 or a == 0:
                raise ValueError(f"quadratic singularity orders must be >= -1 and nonzero, got {a}")
        total = sum(orders)
        if total % 4 or total < -4:
            raise ValueError(f"orders {orders} do not sum to 4g-4 with g >= 0")
        object.__setattr__(self, "orders", orders)

    @classmethod
    def parse(cls, text: str) -> "QuadStratum":
        return cls(parse_orders(text))

    @property
    def genus(self) -> int:
        return (sum(self.orders) + 4) // 4

    @property
    def n(self) -> int:
        return len(self.orders)

    @property
    def dim(self) -> int:
        return 2 * self.genus - 2 + len(self.orders)

    @property
    def poles(self) -> int:
        return self.orders.count(-1)

    @property
    def key(self) -> str:
        return format_orders(self.orders)

    def __str__(self):
        return f"Q({self.key})"


@dataclass(frozen=True, order=True)
class AbelianStratum:
    """H(beta): orders >= 0 (0 is a marked point) summing to 2g - 2."""

    orders: tuple[int, ...]

    def __init__(self, orders: Iterable[int]):
        orders = tuple(sorted((int(b) for b in orders), reverse=True))
        if not orders:
            raise ValueError("an Abelian stratum needs at least one zero or marked point")
        if any(b < 0 for b in orders):
            raise ValueError(f"Abelian orders must be >= 0, got {orders}")
        if sum(orders) % 2:
            raise ValueError(f"Abelian orders {orders} have odd sum")
        object.__setattr__(self, "orders", orders)

    @classmethod
    def parse(cls, text: str) -> "AbelianStratum":
        return cls(parse_orders(text))

    @property
    def genus(self) -> int:
        return (sum(self.orders) + 2) // 2

    @property
    def dim(self) -> int:
        return 2 * self.genus - 1 + len(self.orders)

    @property
    def key(self) -> str:
        return format_orders(self.orders)

    def __str__(self):
        return f"H({self.key})"


Stratum = Union[QuadStratum, AbelianStratum]


@dataclass(frozen=True)
class BoundaryStratum:
    """Ordered union of the strata the complementary surfaces degenerate to."""

    components: tuple[Stratum, ...] = ()
    hyperelliptic_restricted: bool = False

    def __post_init__(self):
        comps = tuple(self.components)
        for c in comps:
            if not isinstance(c, (QuadStratum, AbelianStratum)):
                raise TypeError(f"boundary component must be a stratum, got {c!r}")
        object.__setattr__(self, "components", comps)

    @property
    def m(self) -> int:
        return len(self.components)

    @property
    def dim(self) -> int:
        return sum(c.dim for c in self.components)

    @property
    def is_empty(self) -> bool:
        return not self.components

    def __str__(self):
        return " + ".join(str(c) for c in self.components) or "(empty)"


def genus(s: Stratum) -> int:
    return s.genus


def dim_c(s: Union[Stratum, BoundaryStratum]) -> int:
    return s.dim


_EMPTY_QUADRATIC = {(), (1, -1), (3, 1), (4,)}


def is_empty(s: QuadStratum) -> bool:
    """True for the four empty strata Q(), Q(1,-1), Q(3,1) and Q(4)."""
    return s.orders in _EMPTY_QUADRATIC


def principal(k: int, l: int) -> QuadStratum:
    """Q(1^k, -1^l)."""
    if k < 0 or l < 0:
        raise ValueError("k and l must be nonnegative")
    return QuadStratum([1] * k + [-1] * l)


class HypKind(enum.Enum):
    TYPE1 = "Type1"
    TYPE2 = "Type2"
    TYPE3 = "Type3"

    @classmethod
    def parse(cls, text: str) -> "HypKind":
        t = text.strip().lower()
        for kind in cls:
            if t in (kind.value.lower(), kind.value[-1]):
                return kind
        raise ValueError(f"unknown hyperelliptic type {text!r}")


CONNECTED_HYPERELLIPTIC = frozenset(
    QuadStratum(o).orders
    for o in [(1, 1, -1, -1), (2, -1, -1), (1, 1, 1, 1), (2, 1, 1), (2, 2)]
)


@dataclass(frozen=True)
class HypComponentSpec:
    """Hyperelliptic component data (kind, k1, k2).

    Type1 has signature (k1^2, k2^2), Type2 (k1^2, 2k2+2) and Type3
    (2k1+2, 2k2+2).  Types 1 and 3 are symmetric in k1, k2 and are stored with
    k1 >= k2.
    """

    kind: HypKind
    k1: int
    k2: int
    connected: bool = field(default=False, compare=False)

    def __post_init__(self):
        kind, k1, k2 = self.kind, self.k1, self.k2
        if not isinstance(kind, HypKind):
            raise TypeError(f"kind must be HypKind, got {kind!r}")
        if kind is HypKind.TYPE1:
            if k1 % 2 == 0 or k2 % 2 == 0 or min(k1, k2) < -1 or (k1, k2) == (-1, -1):
                raise ValueError(f"Type1 needs odd k1, k2 >= -1, not both -1; got ({k1}, {k2})")
        elif kind is HypKind.TYPE2:
            if k1 % 2 == 0 or k1 < -1 or k2 % 2 or k2 < 0:
                raise ValueError(f"Type2 needs odd k1 >= -1 and even k2 >= 0; got ({k1}, {k2})")
        else:
            if k1 % 2 or k2 % 2 or min(k1, k2) < 0:
                raise ValueError(f"Type3 needs even k1, k2 >= 0; got ({k1}, {k2})")
        if kind is not HypKind.TYPE2 and k1 < k2:
            object.__setattr__(self, "k1", k2)
            object.__setattr__(self, "k2", k1)
        connected = self.signature().orders in CONNECTED_HYPERELLIPTIC
        object.__setattr__(self, "connected", connected)

    @property
    def dim(self) -> int:
        return self.k1 + self.k2 + 4

    def signature(self) -> QuadStratum:
        k1, k2 = self.k1, self.k2
        if self.kind is HypKind.TYPE1:
            return QuadStratum([k1, k1, k2, k2])
        if self.kind is HypKind.TYPE2:
            return QuadStratum([k1, k1, 2 * k2 + 2])
        return QuadStratum([2 * k1 + 2, 2 * k2 + 2])

    def __str__(self):
        return f"{self.kind.value}({self.k1},{self.k2})"


def classify_hyperelliptic(s: QuadStratum) -> Optional[HypComponentSpec]:
    """The hyperelliptic component living in ``s``, or None if no signature matches."""
    o = s.orders
    try:
        if len(o) == 4 and o[0] == o[1] and o[2] == o[3]:
            return HypComponentSpec(HypKind.TYPE1, o[0], o[2])
        if len(o) == 3:
            pair = [a for a in set(o) if o.count(a) >= 2]
            for a in pair:
                rest = list(o)
                rest.remove(a)
                rest.remove(a)
                (b,) = rest
                if a % 2 and b % 4 == 2:
                    return HypComponentSpec(HypKind.TYPE2, a, (b - 2) // 2)
        if len(o) == 2 and o[0] % 4 == 2 and o[1] % 4 == 2:
            return HypComponentSpec(HypKind.TYPE3, (o[0] - 2) // 2, (o[1] - 2) // 2)
    except ValueError:
        return None
    return None

"""Area-conditioned Siegel-Veech ratios and maximal numbers of homologous cylinders."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Optional

from .exactnum import Scalar, as_fraction, incomplete_beta_ratio
from .strata import CONNECTED_HYPERELLIPTIC, QuadStratum, is_empty

__all__ = [
    "ratio_area_gt_p",
    "ratio_single_cyl_gt_p",
    "QmaxInput",
    "QmaxResult",
    "qmax_input",
    "qmax_tilde",
    "partitions",
    "qmax_partition_max",
    "qmax_dim_ratio",
    "simple_surfaces_possible",
    "EXHAUSTIVE_CAP",
]

EXHAUSTIVE_CAP = 40
BRUTE_FORCE_SUBSETS = 2**20


def ratio_area_gt_p(n_s: int, q: int, p: Scalar | str) -> Fraction:
    """Share of c(C) coming from surfaces whose cylinders fill more than p of the area."""
    return incomplete_beta_ratio(p, n_s, q)


def ratio_single_cyl_gt_p(d: int, p: Scalar | str) -> Fraction:
    """(1 - p)^(d - 2): share coming from a single cylinder of area > p."""
    if d < 3:
        raise ValueError(f"stratum dimension must be >= 3, got {d}")
    p = as_fraction(p)
    if not 0 <= p <= 1:
        raise ValueError(f"p = {p} outside [0, 1]")
    return (1 - p) ** (d - 2)


@dataclass(frozen=True)
class QmaxInput:
    """Orders split as (4l_1..4l_m, 4k_1+2..4k_n+2, b_1..b_p odd, -1^k)."""

    l_values: tuple[int, ...]
    k_values: tuple[int, ...]
    odd_orders: tuple[int, ...]
    k: int

    @property
    def m(self) -> int:
        return len(self.l_values)

    @property
    def n(self) -> int:
        return len(self.k_values)

    def stratum(self) -> QuadStratum:
        return QuadStratum(
            [4 * l for l in self.l_values]
            + [4 * k + 2 for k in self.k_values]
            + list(self.odd_orders)
            + [-1] * self.k
        )


def qmax_input(s: QuadStratum) -> QmaxInput:
    if s.genus < 1:
        raise ValueError(f"{s} has genus 0; configurations there contain at most one cylinder")
    zeros = [a for a in s.orders if a > 0]
    return QmaxInput(
        l_values=tuple(a // 4 for a in zeros if a % 4 == 0),
        k_values=tuple((a - 2) // 4 for a in zeros if a % 4 == 2),
        odd_orders=tuple(a for a in zeros if a % 2),
        k=s.poles,
    )


@dataclass(frozen=True)
class QmaxResult:
    value: int
    method: str

    @property
    def interval(self) -> tuple[int, int]:
        """Range of the true maximal cylinder count, value + {0, 1, 2}."""
        return (self.value, self.value + 2)


def _slack(x: QmaxInput) -> int:
    return 2 * x.n + sum(x.odd_orders) + 4 - x.k


def _best_sum_by_size(values: tuple[int, ...]) -> dict[int, int]:
    """Visit every subset once and keep the largest sum for each subset size."""
    subsets = [(0, 0)]
    for v in values:
        subsets += [(size + 1, total + v) for size, total in subsets]
    best: dict[int, int] = {}
    for size, total in subsets:
        if size not in best or total > best[size]:
            best[size] = total
    return best


def _subset_search_brute(x: QmaxInput) -> Optional[Fraction]:
    # I and J interact only through their sums, so the largest sum per subset
    # size on each side (found by full enumeration) settles feasibility
    base = _slack(x)
    i_best = _best_sum_by_size(x.l_values)
    j_best = {b: s for b, s in _best_sum_by_size(x.k_values).items() if b % 2 == 0}
    best: Optional[Fraction] = None
    for a, li in i_best.items():
        for b, kj in j_best.items():
            if 4 * li + 4 * kj + base >= 0:
                val = a + Fraction(b, 2)
                if best is None or val > best:
                    best = val
    return best


def _subset_search_sorted(x: QmaxInput) -> Optional[Fraction]:
    # the constraint only loosens as subsets grow, so for given sizes the largest
    # values are the best choice
    ls = sorted(x.l_values, reverse=True)
    ks = sorted(x.k_values, reverse=True)
    base = _slack(x)
    best: Optional[Fraction] = None
    for a in range(x.m + 1):
        for b in range(0, x.n + 1, 2):
            if 4 * sum(ls[:a]) + 4 * sum(ks[:b]) + base >= 0:
                val = a + Fraction(b, 2)
                if best is None or val > best:
                    best = val
    return best


def qmax_tilde(s: QuadStratum, method: str = "auto") -> QmaxResult:
    """Maximal number of homologous cylinders up to the bounded correction in {0, 1, 2}.

    ``method``: ``"auto"`` (closed form when it applies, cross-checked against the
    subset search on small inputs), ``"closed_form"`` or ``"subset_search"``.
    When no choice of subsets satisfies the constraint the value is 0.
    """
    x = qmax_input(s)
    closed_ok = _slack(x) >= 0
    closed = x.n // 2 + x.m if closed_ok else None
    if method not in ("auto", "closed_form", "subset_search"):
        raise ValueError(f"unknown method {method!r}")
    if method == "closed_form":
        if closed is None:
            raise ValueError(f"closed form does not apply to {s}: 2n + sum(b) - k + 4 < 0")
        return QmaxResult(closed, "closed_form")
    small = 2**x.m + 2**x.n <= BRUTE_FORCE_SUBSETS
    best = _subset_search_brute(x) if small else _subset_search_sorted(x)
    found = 0 if best is None else int(best)
    if closed is not None and small and found != closed:
        raise AssertionError(f"closed form {closed} and subset search {found} disagree on {s}")
    if method == "subset_search":
        return QmaxResult(found, "subset_search")
    if closed is not None:
        return QmaxResult(closed, "closed_form")
    return QmaxResult(found, "subset_search")


@lru_cache(maxsize=None)
def _partitions(n: int, largest: int) -> tuple[tuple[int, ...], ...]:
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def partitions(n: int) -> Iterator[tuple[int, ...]]:
    """Partitions of n as descending tuples, largest first part first."""
    if n < 0:
        raise ValueError("cannot partition a negative integer")
    yield from _partitions(n, n)


def _strata_with_poles(g: int, k: int, include_empty: bool = False) -> Iterator[QuadStratum]:
    for alpha in partitions(4 * g - 4 + k):
        s = QuadStratum(alpha + (-1,) * k)
        if include_empty or not is_empty(s):
            yield s


def qmax_partition_max(g: int, k: int, exhaustive: bool = False) -> int:
    """max over zero-partitions alpha of 4g-4+k of qmax_tilde(alpha + -1^k): g + floor(k/4) - 1."""
    if g < 1:
        raise ValueError("genus must be >= 1")
    if k < 0:
        raise ValueError("pole count must be >= 0")
    value = g + k // 4 - 1
    if exhaustive:
        n = 4 * g - 4 + k
        if n > EXHAUSTIVE_CAP:
            raise ValueError(f"exhaustive search capped at partitions of {EXHAUSTIVE_CAP}, got {n}")
        # every partition counts here, as in the statement; only g=1, k=0 needs the empty Q()
        brute = max(qmax_tilde(s).value for s in _strata_with_poles(g, k, include_empty=True))
        if brute != value:
            raise AssertionError(f"exhaustive maximum {brute} differs from g + floor(k/4) - 1 = {value}")
    return value


def _dim_ratio(s: QuadStratum) -> Fraction:
    # denominator 2g - 3 + l(alpha) + k is dim_C - 1
    return Fraction(qmax_tilde(s).value, s.dim - 1)


def _family_strata(g: int, k: int) -> Iterator[QuadStratum]:
    j, rest = divmod(k, 4)
    fours = (4,) * (g - 1 + j)
    for beta in partitions(rest):
        s = QuadStratum(fours + beta + (-1,) * k)
        if not is_empty(s):
            yield s


def qmax_dim_ratio(g: int, k: int, method: str = "auto") -> Fraction:
    """max over nonempty Q(alpha, -1^k) of qmax_tilde / (dim_C - 1).

    ``"family"`` searches only the parts-equal-to-4 plus remainder family,
    ``"exhaustive"`` all partitions (capped), ``"auto"`` the exhaustive search
    when within the cap and the family otherwise.
    """
    if g < 1:
        raise ValueError("genus must be >= 1")
    if k < 0:
        raise ValueError("pole count must be >= 0")
    n = 4 * g - 4 + k
    if method == "auto":
        method = "exhaustive" if n <= EXHAUSTIVE_CAP else "family"
    if method == "exhaustive":
        if n > EXHAUSTIVE_CAP:
            raise ValueError(f"exhaustive search capped at partitions of {EXHAUSTIVE_CAP}, got {n}")
        candidates = list(_strata_with_poles(g, k))
    elif method == "family":
        candidates = list(_family_strata(g, k))
    else:
        raise ValueError(f"unknown method {method!r}")
    if not candidates:
        raise ValueError(f"no nonempty stratum in the searched set for g={g}, k={k}")
    return max(_dim_ratio(s) for s in candidates)


def simple_surfaces_possible(s: QuadStratum, is_hyperelliptic_component: bool = False) -> bool:
    """Whether a configuration with only tori and cylinders is available: all
    orders even and the component not hyperelliptic."""
    if is_empty(s) or is_hyperelliptic_component:
        return False
    if s.orders in CONNECTED_HYPERELLIPTIC:
        return False
    return all(a > 0 and a % 2 == 0 for a in s.orders)

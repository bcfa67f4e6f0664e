"""Exact arithmetic: rationals, Laurent polynomials in pi, and Beta-integral helpers.

Rationals are plain :class:`fractions.Fraction`.  Every volume and Siegel-Veech
constant is a :class:`PiValue`, a finite sum ``sum_n c_n * pi**n`` with rational
coefficients and integer (possibly negative) exponents.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Union

__all__ = [
    "PiValue",
    "Scalar",
    "as_fraction",
    "parse_fraction",
    "format_fraction",
    "factorial",
    "double_factorial",
    "multinomial",
    "beta_J",
    "incomplete_beta_ratio",
    "bernoulli_even",
    "zeta_even",
]

Scalar = Union[int, Fraction]

_FRACTION_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def as_fraction(x: Scalar | str) -> Fraction:
    """Coerce an int, Fraction or ``"num/den"`` string to a Fraction (no floats)."""
    if isinstance(x, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_fraction(x)
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


def parse_fraction(text: str) -> Fraction:
    m = _FRACTION_RE.match(text)
    if not m:
        raise ValueError(f"not an exact rational: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_fraction(x: Fraction) -> str:
    """``num/den`` with the denominator always written, e.g. ``3/1``."""
    return f"{x.numerator}/{x.denominator}"


_TERM_RE = re.compile(
    r"""^(?P<coef>[+-]?\d+(?:/\d+)?)?
         (?P<pi>\*?pi(?:\^(?P<exp>[+-]?\d+))?)?$""",
    re.VERBOSE,
)


class PiValue:
    """Immutable Laurent polynomial in pi with exact rational coefficients.

    Zero coefficients are never stored, so the zero value has no terms.
    Division is only defined by a monomial (a single ``c * pi**n`` with c != 0).
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, Scalar] | None = None):
        clean: dict[int, Fraction] = {}
        for exp, coef in (terms or {}).items():
            if not isinstance(exp, int) or isinstance(exp, bool):
                raise TypeError(f"pi exponent must be an int, got {exp!r}")
            c = as_fraction(coef)
            if c:
                clean[exp] = clean.get(exp, Fraction(0)) + c
        object.__setattr__(self, "_terms", {e: c for e, c in clean.items() if c})
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("PiValue is immutable")

    @classmethod
    def monomial(cls, coef: Scalar, exp: int = 0) -> "PiValue":
        return cls({exp: coef})

    @classmethod
    def rational(cls, coef: Scalar) -> "PiValue":
        return cls({0: coef})

    @classmethod
    def pi_power(cls, exp: int) -> "PiValue":
        return cls({exp: 1})

    @classmethod
    def zero(cls) -> "PiValue":
        return cls()

    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    def coefficient(self, exp: int) -> Fraction:
        return self._terms.get(exp, Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def as_monomial(self) -> tuple[Fraction, int]:
        """Return ``(coefficient, exponent)``; raises unless this is a monomial."""
        if len(self._terms) != 1:
            raise ValueError(f"{self} is not a monomial in pi")
        ((exp, coef),) = self._terms.items()
        return coef, exp

    def as_rational(self) -> Fraction:
        """The value as a Fraction; only for values with no pi dependence."""
        if not self._terms:
            return Fraction(0)
        if set(self._terms) != {0}:
            raise ValueError(f"{self} depends on pi")
        return self._terms[0]

    @staticmethod
    def _coerce(other) -> "PiValue | None":
        if isinstance(other, PiValue):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return PiValue.rational(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self._terms)
        for e, c in o._terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return PiValue(out)

    __radd__ = __add__

    def __neg__(self):
        return PiValue({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out: dict[int, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in o._terms.items():
                out[e1 + e2] = out.get(e1 + e2, Fraction(0)) + c1 * c2
        return PiValue(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("division by the zero PiValue")
        coef, exp = o.as_monomial()
        return PiValue({e - exp: c / coef for e, c in self._terms.items()})

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return PiValue.rational(1) / self ** (-n)
        out = PiValue.rational(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._terms == o._terms

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(frozenset(self._terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    def to_float(self) -> float:
        return sum(float(c) * math.pi**e for e, c in self._terms.items())

    def approx(self, digits: int = 12) -> str:
        """Decimal rendering with ``digits`` significant digits (display only)."""
        return f"{self.to_float():.{digits}g}"

    def to_text(self) -> str:
        """Canonical text: terms by descending exponent, e.g. ``47/22*pi^-2``."""
        if not self._terms:
            return "0"
        parts = []
        for e in sorted(self._terms, reverse=True):
            c = format_fraction(self._terms[e])
            if e == 0:
                parts.append(c)
            elif e == 1:
                parts.append(f"{c}*pi")
            else:
                parts.append(f"{c}*pi^{e}")
        return " + ".join(parts)

    @classmethod
    def parse(cls, text: str) -> "PiValue":
        """Inverse of :meth:`to_text`; also accepts ``pi^2``, ``3*pi`` and ``5/2``."""
        text = text.strip()
        if text == "0":
            return cls()
        terms: dict[int, Fraction] = {}
        for raw in text.split(" + "):
            tok = raw.replace(" ", "")
            m = _TERM_RE.match(tok)
            if not tok or not m or (m.group("coef") is None and m.group("pi") is None):
                raise ValueError(f"cannot parse pi-value term {raw!r} in {text!r}")
            if m.group("pi") and m.group("pi").startswith("*") and m.group("coef") is None:
                raise ValueError(f"dangling '*' in {raw!r}")
            coef = parse_fraction(m.group("coef")) if m.group("coef") else Fraction(1)
            if m.group("pi") is None:
                exp = 0
            else:
                exp = int(m.group("exp")) if m.group("exp") is not None else 1
            terms[exp] = terms.get(exp, Fraction(0)) + coef
        return cls(terms)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"PiValue({self.to_text()!r})"


def factorial(n: int) -> int:
    if n < 0:
        raise ValueError(f"factorial of negative number {n}")
    return math.factorial(n)


def double_factorial(n: int) -> int:
    """n!! with (-1)!! = 0!! = 1."""
    if n < -1:
        raise ValueError(f"double factorial undefined for {n}")
    return math.prod(range(n, 0, -2))


def multinomial(top: int, parts: Iterable[int]) -> int:
    parts = list(parts)
    if any(p < 0 for p in parts):
        raise ValueError(f"negative part in {parts}")
    if sum(parts) != top:
        raise ValueError(f"parts {parts} do not sum to {top}")
    out, left = 1, top
    for p in parts:
        out *= math.comb(left, p)
        left -= p
    return out


def beta_J(a: int, q: int) -> Fraction:
    """Integral of r^(2a+1) (1-r^2)^q over [0, 1], i.e. q! a! / (2 (a+q+1)!)."""
    if a < 0 or q < 0:
        raise ValueError("beta_J needs a, q >= 0")
    return Fraction(math.factorial(q) * math.factorial(a), 2 * math.factorial(a + q + 1))


def incomplete_beta_ratio(p: Scalar | str, n: int, q: int) -> Fraction:
    """B(1-p; n, q) / B(n, q) for rational p in [0, 1].

    Uses B(x; n, q) = B(n, q) * sum_{k=n}^{n+q-1} C(n+q-1, k) x^k (1-x)^(n+q-1-k).
    """
    p = as_fraction(p)
    if not 0 <= p <= 1:
        raise ValueError(f"p = {p} outside [0, 1]")
    if n < 1 or q < 1:
        raise ValueError("n and q must be positive")
    x = 1 - p
    top = n + q - 1
    return sum(
        (math.comb(top, k) * x**k * (1 - x) ** (top - k) for k in range(n, top + 1)),
        Fraction(0),
    )


@lru_cache(maxsize=None)
def _bernoulli_table(m: int) -> tuple[Fraction, ...]:
    # B_0, B_2, ..., B_2m from sum_{r<n} C(n+1, r) B_r = -(n+1) B_n, with B_1 = -1/2
    table = [Fraction(1)]
    for j in range(1, m + 1):
        n = 2 * j
        s = sum((math.comb(n + 1, 2 * i) * table[i] for i in range(j)), Fraction(0))
        s -= Fraction(n + 1, 2)
        table.append(-s / (n + 1))
    return tuple(table)


def bernoulli_even(n: int) -> Fraction:
    """Bernoulli number B_n for even n >= 0."""
    if n < 0 or n % 2:
        raise ValueError("bernoulli_even needs an even n >= 0")
    return _bernoulli_table(n // 2)[n // 2]


def zeta_even(s: int) -> PiValue:
    """zeta(s) for positive even s as a rational multiple of pi^s."""
    if s <= 0 or s % 2:
        raise ValueError(f"zeta_even needs a positive even argument, got {s}")
    k = s // 2
    coef = (-1) ** (k + 1) * bernoulli_even(s) * 2 ** (s - 1) / math.factorial(s)
    return PiValue.monomial(coef, s)

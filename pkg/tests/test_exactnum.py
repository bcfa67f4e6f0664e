import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate

from svq.exactnum import (
    PiValue,
    as_fraction,
    beta_J,
    bernoulli_even,
    double_factorial,
    factorial,
    format_fraction,
    incomplete_beta_ratio,
    multinomial,
    parse_fraction,
    zeta_even,
)

fractions = st.fractions(min_value=-50, max_value=50, max_denominator=40)
pi_values = st.dictionaries(st.integers(-6, 6), fractions, max_size=4).map(
    lambda d: sum((PiValue.monomial(c, e) for e, c in d.items()), PiValue.zero())
)
monomials = st.tuples(fractions.filter(bool), st.integers(-6, 6)).map(lambda t: PiValue.monomial(*t))


# ---- factorials and friends


@pytest.mark.parametrize("n,expected", [(0, 1), (5, 120), (20, 2432902008176640000)])
def test_factorial(n, expected):
    assert factorial(n) == expected


def test_factorial_matches_iterated_product():
    for n in range(30):
        assert factorial(n) == math.prod(range(1, n + 1))


def test_factorial_rejects_negative():
    with pytest.raises(ValueError):
        factorial(-1)


@pytest.mark.parametrize("n,expected", [(-1, 1), (0, 1), (1, 1), (2, 2), (7, 105), (8, 384)])
def test_double_factorial(n, expected):
    assert double_factorial(n) == expected


def test_double_factorial_rejects_below_minus_one():
    with pytest.raises(ValueError):
        double_factorial(-2)


@pytest.mark.parametrize("top,parts,expected", [(2, [2, 0, 0], 1), (2, [0, 1, 1], 2), (7, [3, 4], 35)])
def test_multinomial(top, parts, expected):
    assert multinomial(top, parts) == expected


def test_multinomial_rejects_bad_sum():
    with pytest.raises(ValueError):
        multinomial(3, [1, 1])


def _compositions(n, k):
    if k == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in _compositions(n - first, k - 1):
            yield (first,) + rest


def test_multinomial_is_product_of_binomials():
    for top in range(11):
        for k in (1, 2, 3):
            for parts in _compositions(top, k):
                left, prod = top, 1
                for p in parts:
                    prod *= math.comb(left, p)
                    left -= p
                assert multinomial(top, parts) == prod


# ---- Beta integrals


# (3, 2): int_0^1 r^7 (1 - r^2)^2 dr = 1/8 - 1/5 + 1/12 = 1/120
@pytest.mark.parametrize("a,q,expected", [(0, 0, Fraction(1, 2)), (1, 1, Fraction(1, 12)), (3, 2, Fraction(1, 120))])
def test_beta_J_examples(a, q, expected):
    assert beta_J(a, q) == expected


def test_beta_J_integration_by_parts():
    for a in range(13):
        for q in range(1, 13):
            assert beta_J(a, q) == Fraction(q, a + 1) * beta_J(a + 1, q - 1)


@pytest.mark.filterwarnings("ignore::scipy.integrate.IntegrationWarning")
def test_beta_J_against_quadrature():
    for a in range(13):
        for q in range(13):
            val, _ = integrate.quad(lambda r: r ** (2 * a + 1) * (1 - r * r) ** q, 0, 1, epsabs=1e-14, epsrel=1e-14)
            assert abs(val - float(beta_J(a, q))) < 1e-12


def test_incomplete_beta_examples():
    assert incomplete_beta_ratio(0, 3, 4) == 1
    assert incomplete_beta_ratio(1, 3, 4) == 0
    assert incomplete_beta_ratio(Fraction(1, 2), 2, 2) == Fraction(1, 2)
    assert incomplete_beta_ratio("1/2", 2, 2) == Fraction(1, 2)


def test_incomplete_beta_rejects_outside_unit_interval():
    with pytest.raises(ValueError):
        incomplete_beta_ratio(Fraction(3, 2), 2, 2)
    with pytest.raises(ValueError):
        incomplete_beta_ratio(-1, 2, 2)


def test_incomplete_beta_decreasing():
    ps = [Fraction(i, 11) for i in range(1, 11)]
    for n in range(1, 7):
        for q in range(1, 7):
            vals = [incomplete_beta_ratio(p, n, q) for p in ps]
            assert all(a > b for a, b in zip(vals, vals[1:]))


@pytest.mark.filterwarnings("ignore::scipy.integrate.IntegrationWarning")
def test_incomplete_beta_against_quadrature():
    # B(1-p; n, q) / B(n, q) with B(x; n, q) = int_0^x u^(n-1) (1-u)^(q-1) du
    for n in range(1, 7):
        for q in range(1, 7):
            f = lambda u: u ** (n - 1) * (1 - u) ** (q - 1)
            full, _ = integrate.quad(f, 0, 1, epsabs=1e-14, epsrel=1e-14)
            for i in range(1, 11):
                p = Fraction(i, 11)
                part, _ = integrate.quad(f, 0, float(1 - p), epsabs=1e-14, epsrel=1e-14)
                assert abs(part / full - float(incomplete_beta_ratio(p, n, q))) < 1e-12


# ---- zeta and Bernoulli


def test_bernoulli_small():
    assert [bernoulli_even(n) for n in (0, 2, 4, 6)] == [1, Fraction(1, 6), Fraction(-1, 30), Fraction(1, 42)]


@pytest.mark.parametrize("s,coef", [(2, Fraction(1, 6)), (4, Fraction(1, 90)), (6, Fraction(1, 945)), (8, Fraction(1, 9450))])
def test_zeta_even(s, coef):
    assert zeta_even(s) == PiValue.monomial(coef, s)


def test_zeta_even_numeric():
    for s in range(4, 21, 2):
        direct = sum(1.0 / m ** s for m in range(1, 20000))
        assert abs(zeta_even(s).to_float() - direct) < 1e-9


@pytest.mark.parametrize("s", [0, 3, -2])
def test_zeta_even_rejects(s):
    with pytest.raises(ValueError):
        zeta_even(s)


def test_zeta_identities_used_for_hyperelliptic_examples():
    assert zeta_even(4) * 30 == PiValue.monomial(Fraction(1, 3), 4)
    assert zeta_even(6) * 63 == PiValue.monomial(Fraction(1, 15), 6)
    assert zeta_even(2) * 8 == PiValue.monomial(Fraction(4, 3), 2)


# ---- PiValue


def test_pivalue_text_form():
    assert PiValue.monomial(Fraction(47, 22), -2).to_text() == "47/22*pi^-2"
    assert PiValue.rational(3).to_text() == "3/1"
    assert PiValue.monomial(Fraction(1, 2), 1).to_text() == "1/2*pi"
    assert PiValue.zero().to_text() == "0"
    two_terms = PiValue.monomial(1, 2) + PiValue.monomial(Fraction(-1, 3), 0)
    assert two_terms.to_text() == "1/1*pi^2 + -1/3"


@given(pi_values)
def test_pivalue_text_round_trip(v):
    assert PiValue.parse(v.to_text()) == v


def test_pivalue_parse_rejects_garbage():
    for bad in ("", "pi^", "1/0*pi", "abc", "1/2*pi^x"):
        with pytest.raises(ValueError):
            PiValue.parse(bad)


def test_pivalue_no_zero_terms():
    v = PiValue.monomial(1, 2) - PiValue.monomial(1, 2)
    assert v.is_zero() and v.terms == {} and v == PiValue.zero()


@given(pi_values, pi_values, pi_values)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a + PiValue.zero() == a
    assert a * PiValue.rational(1) == a
    assert a - a == PiValue.zero()


@given(pi_values, monomials)
def test_monomial_division_round_trip(v, m):
    assert (v / m) * m == v


def test_division_by_polynomial_rejected():
    with pytest.raises(ValueError):
        PiValue.rational(1) / (PiValue.pi_power(2) + PiValue.rational(1))
    with pytest.raises(ZeroDivisionError):
        PiValue.rational(1) / PiValue.zero()


@given(pi_values, pi_values)
def test_hash_consistent_with_eq(a, b):
    if a == b:
        assert hash(a) == hash(b)


def test_powers_and_float():
    v = PiValue.monomial(2, 1) ** 3
    assert v == PiValue.monomial(8, 3)
    assert PiValue.monomial(3, 2) ** -1 == PiValue.monomial(Fraction(1, 3), -2)
    assert abs(PiValue.monomial(Fraction(11, 60), 6).to_float() - 11 * math.pi ** 6 / 60) < 1e-9
    assert PiValue.monomial(Fraction(47, 22), -2).approx(12) == f"{47 / 22 / math.pi ** 2:.12g}"


def test_fraction_helpers():
    assert parse_fraction("6/4") == Fraction(3, 2)
    assert parse_fraction("-7") == -7
    assert format_fraction(Fraction(3)) == "3/1"
    assert as_fraction(2) == 2 and as_fraction("1/3") == Fraction(1, 3)
    with pytest.raises(ValueError):
        parse_fraction("1.5")
    with pytest.raises(TypeError):
        as_fraction(0.5)

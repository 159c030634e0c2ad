"""Exact series ring: arithmetic laws, exp/log, and the expansion library."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qmckay.errors import ConfigurationError, InternalConsistencyError
from qmckay.series import (
    MultiSeries,
    Truncation,
    macmahon_exponent,
    macmahon_factor,
    sin_power_coefficients,
    sin_power_expansion,
    sin_power_series,
)

VARS = ("q1", "q2", "Q")
TR = Truncation(q_total=6, big_q=4)


def mono(exponents, coeff=1, variables=VARS, truncation=TR):
    return MultiSeries.monomial(variables, truncation, exponents, coeff)


# -- construction and validation -------------------------------------------


def test_truncation_rejects_negative_caps():
    with pytest.raises(ConfigurationError):
        Truncation(q_total=-1)
    with pytest.raises(ConfigurationError):
        Truncation(big_q=-2)


def test_duplicate_variables_rejected():
    with pytest.raises(ConfigurationError):
        MultiSeries.zero(("q1", "q1"), TR)


def test_exponent_arity_checked():
    with pytest.raises(ConfigurationError):
        MultiSeries.from_terms(VARS, TR, {(1, 0): 1})


def test_float_coefficients_rejected():
    with pytest.raises(ConfigurationError):
        mono({"q1": 1}, coeff=0.5)


def test_unknown_monomial_variable_rejected():
    with pytest.raises(ConfigurationError):
        mono({"q9": 1})


def test_zero_coefficients_dropped():
    s = MultiSeries.from_terms(VARS, TR, {(1, 0, 0): 0, (0, 1, 0): 2})
    assert len(s) == 1
    assert s.coefficient({"q2": 1}) == 2


def test_negative_q_exponent_raises():
    with pytest.raises(InternalConsistencyError):
        MultiSeries.from_terms(VARS, TR, {(-1, 0, 0): 1})


def test_lambda_floor_is_minus_two():
    tr = Truncation(lam=4)
    ok = MultiSeries.from_terms(("lam",), tr, {(-2,): 1})
    assert ok.coefficient({"lam": -2}) == 1
    with pytest.raises(InternalConsistencyError):
        MultiSeries.from_terms(("lam",), tr, {(-3,): 1})


def test_truncation_clips_high_degrees():
    q = mono({"q1": 1})
    assert (q ** 7).is_zero()
    assert not (q ** 6).is_zero()
    big = mono({"Q": 1})
    assert (big ** 5).is_zero()


# -- weight bookkeeping ------------------------------------------------------


def test_t_power_adds_under_multiplication():
    a = mono({"q1": 1}).with_t_power(-3)
    b = mono({"q2": 1}).with_t_power(1)
    assert (a * b).t_power == -2


def test_t_power_mismatch_refuses_addition():
    a = mono({"q1": 1}).with_t_power(1)
    b = mono({"q1": 1})
    with pytest.raises(ConfigurationError):
        a + b


# -- exp and log -------------------------------------------------------------


def test_log_one_plus_q_is_mercator():
    tr = Truncation(q_total=8)
    q = MultiSeries.monomial(("q1",), tr, {"q1": 1})
    s = (MultiSeries.one(("q1",), tr) + q).log()
    for n in range(1, 9):
        assert s.coefficient({"q1": n}) == Fraction((-1) ** (n + 1), n)
    assert s.constant_term() == 0


def test_exp_q_has_inverse_factorials():
    tr = Truncation(q_total=8)
    q = MultiSeries.monomial(("q1",), tr, {"q1": 1})
    e = q.exp()
    for n in range(0, 9):
        assert e.coefficient({"q1": n}) == Fraction(1, math.factorial(n))


def test_exp_requires_zero_constant_term():
    with pytest.raises(ConfigurationError):
        MultiSeries.one(VARS, TR).exp()


def test_log_requires_unit_constant_term():
    with pytest.raises(ConfigurationError):
        mono({"q1": 1}).log()


def test_exp_requires_a_controlling_cap():
    q = MultiSeries.monomial(("q1",), Truncation(), {"q1": 1})
    with pytest.raises(ConfigurationError):
        q.exp()


def test_exp_rejects_weighted_argument():
    with pytest.raises(ConfigurationError):
        mono({"q1": 1}).with_t_power(2).exp()


def test_pow_rational_central_binomials():
    # (1 - q)^(-1/2) = sum C(2n, n) (q/4)^n
    tr = Truncation(q_total=8)
    one = MultiSeries.one(("q1",), tr)
    base = one - MultiSeries.monomial(("q1",), tr, {"q1": 1})
    s = base.pow_rational(Fraction(-1, 2))
    for n in range(0, 9):
        assert s.coefficient({"q1": n}) == Fraction(math.comb(2 * n, n), 4 ** n)


def test_pow_rational_half_squares_back():
    tr = Truncation(q_total=8)
    one = MultiSeries.one(("q1",), tr)
    base = one - MultiSeries.monomial(("q1",), tr, {"q1": 1})
    root = base.pow_rational(Fraction(1, 2))
    assert root * root == base


# -- MacMahon factors --------------------------------------------------------


def literal_macmahon(beta, weight_sign=1):
    """prod_m (1 - q^beta Q^m)^(m*weight_sign) built term by term."""
    one = MultiSeries.one(VARS, TR)
    acc = one
    for m in range(1, TR.big_q + 1):
        factor = one - mono(dict(beta, Q=m))
        if weight_sign < 0:
            factor = factor.pow_rational(Fraction(-1))
        acc = acc * factor ** m
    return acc


def test_macmahon_factor_matches_literal_product():
    beta = {"q1": 1}
    assert macmahon_factor(VARS, TR, beta, 1) == literal_macmahon(beta)
    assert macmahon_factor(VARS, TR, beta, -1) == literal_macmahon(beta, -1)


def test_macmahon_factor_compound_class():
    beta = {"q1": 1, "q2": 2}
    assert macmahon_factor(VARS, TR, beta, 1) == literal_macmahon(beta)


@pytest.mark.parametrize("w1, w2", [
    (1, 1),
    (1, -1),
    (Fraction(1, 2), Fraction(1, 2)),
    (Fraction(1, 2), 1),
])
def test_macmahon_weight_additivity(w1, w2):
    beta = {"q2": 1}
    lhs = macmahon_factor(VARS, TR, beta, w1) * macmahon_factor(VARS, TR, beta, w2)
    rhs = macmahon_factor(VARS, TR, beta, Fraction(w1) + Fraction(w2))
    assert lhs == rhs


def test_macmahon_exponent_is_minus_log():
    beta = {"q1": 1}
    series = macmahon_factor(VARS, TR, beta, 1)
    assert series.log() == -macmahon_exponent(VARS, TR, beta)


def test_macmahon_requires_caps_and_q_variable():
    with pytest.raises(ConfigurationError):
        macmahon_exponent(VARS, Truncation(q_total=4), {"q1": 1})
    with pytest.raises(ConfigurationError):
        macmahon_exponent(("q1", "q2"), TR, {"q1": 1})
    with pytest.raises(ConfigurationError):
        macmahon_exponent(VARS, TR, {})


# -- sine kernels ------------------------------------------------------------

INVERSE_SQUARE = {-2: Fraction(1), 0: Fraction(1, 12),
                  2: Fraction(1, 240), 4: Fraction(1, 6048)}
SQUARE = {2: Fraction(1), 4: Fraction(-1, 12), 6: Fraction(1, 360)}


def test_inverse_sine_square_coefficients():
    assert sin_power_coefficients(-2, 1, 4) == INVERSE_SQUARE


def test_sine_square_coefficients():
    assert sin_power_coefficients(2, 1, 6) == SQUARE


@pytest.mark.parametrize("power", [-2, 2])
@pytest.mark.parametrize("d", [2, 3, 5])
def test_sine_coefficients_scale_by_degree(power, d):
    base = sin_power_coefficients(power, 1, 6)
    scaled = sin_power_coefficients(power, d, 6)
    assert scaled == {e: c * Fraction(d) ** e for e, c in base.items()}


def test_cover_kernel_leading_terms():
    # (1/d)(2 sin(d lam/2))^(2g-2): lam^m coefficient is c_m * d^(m-1)
    for d in (1, 2, 3):
        k0 = sin_power_expansion(d, 0, 4)
        for m, c in INVERSE_SQUARE.items():
            assert k0.coefficient({"lam": m}) == c * Fraction(d) ** (m - 1)
        k1 = sin_power_expansion(d, 1, 4)
        assert k1 == MultiSeries.from_terms(
            ("lam",), Truncation(lam=4), {(0,): Fraction(1, d)})


def test_cover_kernel_genus_two():
    k2 = sin_power_expansion(1, 2, 6)
    assert {key[0]: c for key, c in k2.items()} == SQUARE


def test_sine_expansion_validation():
    with pytest.raises(ConfigurationError):
        sin_power_expansion(0, 0, 4)
    with pytest.raises(ConfigurationError):
        sin_power_expansion(1, -1, 4)
    with pytest.raises(ConfigurationError):
        sin_power_expansion(1, 0, 3)
    with pytest.raises(ConfigurationError):
        sin_power_series(("lam",), Truncation(lam=4), -3, 1)


# -- presentation ------------------------------------------------------------


def test_lambda_slices_split_by_exponent():
    tr = Truncation(q_total=2, lam=2)
    s = MultiSeries.from_terms(("q1", "lam"), tr,
                               {(1, -2): 3, (0, 0): 1, (2, 0): 5})
    slices = s.lambda_slices()
    assert sorted(slices) == [-2, 0]
    assert slices[-2].coefficient({"q1": 1}) == 3
    assert slices[0].coefficient({"q1": 2}) == 5


def test_terms_jsonable_graded_lex_order():
    s = MultiSeries.from_terms(VARS, TR, {
        (2, 0, 0): 1, (0, 1, 0): Fraction(-1, 2), (1, 1, 0): 3})
    rows = s.terms_jsonable()
    assert [r["exponents"] for r in rows] == [
        {"q2": 1}, {"q1": 1, "q2": 1}, {"q1": 2}]
    assert rows[0]["numerator"] == "-1"
    assert rows[0]["denominator"] == "2"


def test_format_text_readable():
    s = MultiSeries.one(VARS, TR) - mono({"q1": 1, "Q": 2})
    assert s.format_text() == "1 - q1*Q^2"


# -- ring laws under random inputs -------------------------------------------

SMALL_TR = Truncation(q_total=4, big_q=3)


@st.composite
def small_series(draw, zero_constant=False):
    keys = st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2))
    if zero_constant:
        keys = keys.filter(lambda k: any(k))
    coeffs = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 6))
    terms = draw(st.dictionaries(keys, coeffs, max_size=5))
    return MultiSeries.from_terms(VARS, SMALL_TR, terms)


@given(a=small_series(), b=small_series(), c=small_series())
@settings(max_examples=40, deadline=None)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(u=small_series(zero_constant=True))
@settings(max_examples=40, deadline=None)
def test_exp_log_round_trip(u):
    assert u.exp().log() == u
    v = MultiSeries.one(VARS, SMALL_TR) + u
    assert v.log().exp() == v

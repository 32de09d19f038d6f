"""Tests for exact multivariate polynomial arithmetic and resultants."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qeslab.polynomial import (
    InexactDivisionError,
    MultiPoly,
    UniPolyView,
    det_bareiss,
    discriminant,
    exact_div,
    resultant,
    sylvester_matrix,
)

E = MultiPoly.variable("E")
ZETA = MultiPoly.variable("zeta")
N = MultiPoly.variable("N")
G = MultiPoly.variable("g")


def poly_p2():
    # 2E^2 - 8E + 2 zeta^2 N (2N - 1)
    return 2 * E**2 - 8 * E + 2 * ZETA**2 * N * (2 * N - 1)


# -- construction and ring basics -------------------------------------------


def test_additive_inverse_is_zero():
    assert (E + (-E)).is_zero()


def test_sum_assembles_p2():
    part1 = 2 * E**2 - 8 * E
    part2 = 2 * ZETA**2 * N * (2 * N - 1)
    assert part1 + part2 == poly_p2()


def test_add_constants():
    assert (E + 1) + (E - 1) == 2 * E


def test_mul_by_zero():
    assert (poly_p2() * MultiPoly.zero()).is_zero()


def test_mul_square():
    assert (E - 2) * (E - 2) == E**2 - 4 * E + 4


def test_pow_matches_repeated_mul():
    p = E + ZETA
    assert p**3 == p * p * p
    assert p**0 == MultiPoly.one()


def test_eval_p2_at_fixed_N():
    p2 = poly_p2()
    assert p2.eval({"N": 1}) == 2 * E**2 - 8 * E + 2 * ZETA**2
    assert p2.eval({"N": Fraction(1, 2)}) == 2 * E**2 - 8 * E


def test_eval_full_binding_is_constant():
    p = E**2
    v = p.eval({"E": 3})
    assert v.is_constant() and v.constant_value() == 9


def test_eval_unknown_name_rejected():
    with pytest.raises(ValueError):
        E.eval({"x": 1})


def test_eval_absent_universe_variable_is_noop():
    assert E.eval({"g": 7}) == E


def test_float_coefficients_rejected():
    with pytest.raises(TypeError):
        MultiPoly.constant(0.5)  # exactness guard


def test_variable_order_is_enforced():
    with pytest.raises(ValueError):
        MultiPoly(("zeta", "E"), {})


def test_degree_and_leading():
    p = poly_p2()
    assert p.degree("E") == 2
    assert p.degree("zeta") == 2
    assert p.total_degree() == 4
    exps, coeff = p.leading()  # graded-lex: zeta^2 N^2 term
    assert coeff == 4


def test_eval_numeric():
    p = poly_p2()
    val = p.eval_numeric({"E": 1.0, "zeta": 2.0, "N": 1.0})
    assert val == pytest.approx(2 - 8 + 8)


# -- hypothesis: ring axioms -------------------------------------------------

coeffs = st.fractions(min_value=-4, max_value=4, max_denominator=6)


@st.composite
def polys(draw, vars=("E", "zeta"), max_terms=4, max_exp=3):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        exps = tuple(draw(st.integers(0, max_exp)) for _ in vars)
        terms[exps] = draw(coeffs)
    return MultiPoly(vars, terms)


@given(polys(), polys(), polys())
@settings(max_examples=60, deadline=None)
def test_addition_associative(a, b, c):
    assert (a + b) + c == a + (b + c)


@given(polys(), polys(), polys())
@settings(max_examples=60, deadline=None)
def test_mul_distributes(a, b, c):
    assert a * (b + c) == a * b + a * c


@given(polys(), polys())
@settings(max_examples=60, deadline=None)
def test_eval_is_ring_homomorphism(a, b):
    binding = {"E": Fraction(2, 3), "zeta": Fraction(-1, 2)}
    assert (a * b).eval(binding) == a.eval(binding) * b.eval(binding)
    assert (a + b).eval(binding) == a.eval(binding) + b.eval(binding)


@given(polys(max_terms=3, max_exp=2), polys(max_terms=3, max_exp=2))
@settings(max_examples=40, deadline=None)
def test_exact_div_inverts_mul(a, b):
    if b.is_zero():
        return
    assert exact_div(a * b, b) == a


# -- exact division -----------------------------------------------------------


def test_exact_div_rejects_remainder():
    with pytest.raises(InexactDivisionError):
        exact_div(E**2 + 1, E - 1)


def test_exact_div_constant():
    assert exact_div(2 * E, 2) == E


# -- serialization --------------------------------------------------------------


def test_json_round_trip_bit_exact():
    p = poly_p2() * Fraction(10**40 + 7, 3)
    obj = p.to_json_obj()
    assert MultiPoly.from_json_obj(obj) == p
    assert MultiPoly.from_json(p.to_json()) == p


def test_json_terms_canonically_ordered():
    p = poly_p2()
    obj = p.to_json_obj()
    keys = [(sum(t["exps"]), tuple(t["exps"])) for t in obj["terms"]]
    assert keys == sorted(keys, reverse=True)
    assert all(isinstance(t["num"], str) for t in obj["terms"])


# -- univariate views -------------------------------------------------------------


def test_unipoly_view_round_trip():
    p = poly_p2()
    view = UniPolyView.from_multipoly(p, "E")
    assert view.degree() == 2
    assert view.to_multipoly() == p
    assert view.leading_coeff() == MultiPoly.constant(2)


def test_unipoly_derivative():
    view = UniPolyView.from_multipoly(poly_p2(), "E")
    dp = view.derivative()
    assert dp.to_multipoly() == 4 * E - 8


def test_unipoly_rejects_zero():
    with pytest.raises(ValueError):
        UniPolyView.from_multipoly(MultiPoly.zero(), "E")


# -- resultants ---------------------------------------------------------------------


def _uv(p):
    return UniPolyView.from_multipoly(p, "E")


def test_resultant_linear_case():
    # Sylvester convention: res(E - zeta, E - N) = zeta - N.
    r = resultant(_uv(E - ZETA), _uv(E - N))
    assert r == ZETA - N


def test_resultant_quadratic_vs_derivative():
    p2 = poly_p2().eval({"N": 1})
    r = resultant(_uv(p2), _uv(4 * E - 8))
    # nonzero constant multiple of zeta^2 - 4
    assert exact_div(r, 32) == ZETA**2 - 4


def test_resultant_with_monomial():
    r = resultant(_uv(E**2 - G), _uv(2 * E))
    assert r == -4 * G


def test_resultant_methods_agree_mixed_degrees():
    p = E**4 - 3 * E**2 * ZETA + ZETA**2 + 1
    q = 2 * E**3 + E * ZETA - 5
    rb = resultant(_uv(p), _uv(q), method="bareiss")
    rs = resultant(_uv(p), _uv(q), method="subresultant")
    assert rb == rs


def test_resultant_swapped_degree_order():
    p = E - ZETA
    q = E**3 - 2
    rb = resultant(_uv(p), _uv(q), method="bareiss")
    rs = resultant(_uv(p), _uv(q), method="subresultant")
    assert rb == rs


@given(polys(max_terms=3, max_exp=2), polys(max_terms=3, max_exp=2),
       polys(max_terms=3, max_exp=2))
@settings(max_examples=25, deadline=None)
def test_resultant_multiplicative(p, q, r):
    if p.degree("E") < 1 or q.degree("E") < 1 or r.degree("E") < 1:
        return
    lhs = resultant(_uv(p * q), _uv(r))
    rhs = resultant(_uv(p), _uv(r)) * resultant(_uv(q), _uv(r))
    assert lhs == rhs


@given(polys(max_terms=4, max_exp=3), polys(max_terms=4, max_exp=3))
@settings(max_examples=25, deadline=None)
def test_resultant_methods_agree_random(p, q):
    if p.degree("E") < 1 or q.degree("E") < 1:
        return
    rb = resultant(_uv(p), _uv(q), method="bareiss")
    rs = resultant(_uv(p), _uv(q), method="subresultant")
    assert rb == rs


def test_bareiss_determinant_small():
    m = [[MultiPoly.constant(1), MultiPoly.constant(2)],
         [MultiPoly.constant(3), MultiPoly.constant(4)]]
    assert det_bareiss(m) == MultiPoly.constant(-2)
    m_singular = [[E, E], [E, E]]
    assert det_bareiss(m_singular).is_zero()


def test_sylvester_shape():
    rows = sylvester_matrix(_uv(E**2 - G), _uv(2 * E))
    assert len(rows) == 3 and all(len(r) == 3 for r in rows)


# -- discriminants -------------------------------------------------------------------


def test_discriminant_quadratic_formula():
    # disc(E^2 + zeta E + N) normalizes to zeta^2 - 4N.
    d = discriminant(_uv(E**2 + ZETA * E + N))
    assert d == ZETA**2 - 4 * N


def test_discriminant_of_p2_at_N1():
    d = discriminant(_uv(poly_p2().eval({"N": 1})))
    assert d == ZETA**2 - 4


def test_discriminant_detects_repeated_root():
    # p = (E - N)^2 (E + 1): discriminant vanishes identically.
    p = (E - N) ** 2 * (E + 1)
    assert discriminant(_uv(p)).is_zero()


def test_discriminant_requires_degree_two():
    with pytest.raises(ValueError):
        discriminant(_uv(E + 1))


def test_discriminant_simple_roots_nonzero():
    p = (E - 1) * (E - 2) * (E - 3)
    assert not discriminant(_uv(p)).is_zero()

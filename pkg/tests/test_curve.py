"""Curve models, function-field arithmetic, places, divisors and zeta data."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import curves as C
from curvearith.algebra.fields import gf
from curvearith.curve import (
    INFINITY,
    Divisor,
    FunctionElement,
    canonical_divisor,
    class_number_exact,
    coordinate_ratio,
    count_points,
    differential_basis,
    divisor_of,
    evaluate_at,
    hyperelliptic,
    infinity_rr_basis,
    l_polynomial,
    place_at_point,
    place_by_label,
    places_over,
    places_up_to,
    support_localization,
    uniformizer_at,
    valuation_at,
    validate_model,
)
from curvearith.errors import InvalidInputError, PoleError

CURVES = C.expansion_curves()
SMALL = {k: CURVES[k] for k in ("E/F5", "H/F7", "H/F3", "C/F2", "Klein/F2", "Fermat/F3")}


# -- models ------------------------------------------------------------------------


def test_model_examples():
    assert C.h7().genus == 2
    assert C.klein().genus == 3
    with pytest.raises(InvalidInputError):
        hyperelliptic(gf(5), [0, 0, 0, 0, 1])
    with pytest.raises(InvalidInputError, match="repeated factor"):
        validate_model({"model": "hyperelliptic", "p": 7, "k": 1, "h": [[0]], "f": [[1], [2], [1], [0], [0], [1]]})


def test_model_spec_round_trip():
    for X in CURVES.values():
        assert validate_model(X.to_spec()) == X
        assert validate_model(X.to_spec()).hash == X.hash


def test_spec_field_errors():
    with pytest.raises(InvalidInputError, match="f\\[1\\]"):
        validate_model({"model": "hyperelliptic", "p": 5, "k": 1, "f": [[1], [9], [0], [1]]})
    with pytest.raises(InvalidInputError, match="unknown model"):
        validate_model({"model": "real", "p": 5})


# -- places and counts -----------------------------------------------------------


def test_rational_place_counts():
    assert len(places_up_to(C.e5(), 1)) == 9
    assert len(places_up_to(C.h7(), 1)) == 8
    assert len(places_up_to(C.klein(), 1)) == 3


@pytest.mark.parametrize("name", list(SMALL))
def test_place_degrees_match_brute_counts(name):
    X = SMALL[name]
    places = places_up_to(X, 3)
    for e in (1, 2, 3):
        weighted = sum(p.degree for p in places if e % p.degree == 0)
        assert weighted == C.brute_count(X, e) == count_points(X, e)


def test_places_are_sorted_and_labelled_uniquely():
    X = C.fermat3()
    places = places_up_to(X, 2)
    assert places == sorted(places)
    labels = [p.label() for p in places]
    assert len(set(labels)) == len(labels)
    for p in places:
        assert place_by_label(X, p.label()) is p
    with pytest.raises(InvalidInputError):
        place_by_label(X, "d1:zz:")


@pytest.mark.parametrize("name", list(SMALL))
def test_uniformizers_have_valuation_one(name):
    X = SMALL[name]
    for p in places_up_to(X, 2):
        assert valuation_at(uniformizer_at(X, p), p) == 1


def test_uniformizer_examples():
    X = C.h7()
    P0 = place_at_point(X, (0, 1))
    assert valuation_at(FunctionElement.x(X), P0) == 1
    W = place_at_point(X, (6, 0))  # x^5 + 1 = 0 at x = 6, so y = 0 is a branch point
    assert valuation_at(FunctionElement.x(X) - 6, W) == 2
    assert valuation_at(FunctionElement.y(X), W) == 1
    inf = place_at_point(X, None)
    x, y = FunctionElement.x(X), FunctionElement.y(X)
    assert valuation_at(x, inf) == -2
    assert valuation_at(x * x / y, inf) == 1


def test_valuation_klein():
    X = C.klein()
    P = place_at_point(X, (0, 0, 1))
    assert valuation_at(coordinate_ratio(X, "x", "z"), P) == 3


def test_evaluation_examples():
    X = C.h7()
    x = FunctionElement.x(X)
    P2 = places_over(X, (5, 1))[0]  # x = 2
    assert evaluate_at(x, P2) == 2
    E = C.e5()
    quad = places_over(E, (1, 0, 1))  # x^2 + 1 over F_5 splits: x = 2, 3
    for p in quad:
        assert evaluate_at(FunctionElement.from_x_poly(E, [1, 0, 1]), p) == 0
    with pytest.raises(PoleError):
        evaluate_at(FunctionElement.y(X), place_at_point(X, None))


def test_residue_fields():
    X = C.h7()
    (P3,) = places_over(X, (4, 1))  # x - 3: 3^5 + 1 = 6 is a non-residue mod 7
    assert P3.degree == 2 and P3.kind == "inert"
    assert P3.residue.degree == 2
    P0 = places_over(X, (0, 1))[0]
    assert [P0.residue.phi(a) for a in range(7)] == [(a,) for a in range(7)]


# -- function field arithmetic ----------------------------------------------------


def function_strategy(X, max_i=3):
    q = X.field.order
    n = X.n
    terms = st.dictionaries(st.tuples(st.integers(0, max_i), st.integers(0, n - 1)), st.integers(0, q - 1), max_size=5)
    den = st.lists(st.integers(0, q - 1), min_size=1, max_size=3).filter(lambda d: any(d))
    return st.builds(lambda t, d: FunctionElement.from_bivariate(X, t, tuple(d)), terms, den)


@pytest.mark.parametrize("name", ["H/F7", "C/F2", "Klein/F2", "Fermat/F3"])
@given(data=st.data())
@settings(max_examples=25, deadline=None)
def test_field_laws(name, data):
    X = SMALL[name]
    a, b, c = (data.draw(function_strategy(X)) for _ in range(3))
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a - a == FunctionElement.constant(X, 0)
    if not b.is_zero():
        assert (a * b) / b == a
        assert b * b.inverse() == FunctionElement.constant(X, 1)


@pytest.mark.parametrize("name", ["E/F5", "H/F7", "H/F3", "Klein/F2"])
@given(data=st.data())
@settings(max_examples=10, deadline=None)
def test_principal_divisors(name, data):
    X = SMALL[name]
    f = data.draw(function_strategy(X, 2).filter(lambda h: not h.is_zero()))
    g = data.draw(function_strategy(X, 2).filter(lambda h: not h.is_zero()))
    Df, Dg = divisor_of(f), divisor_of(g)
    assert Df.degree == 0
    assert divisor_of(f * g) == Df + Dg
    if not f.is_constant():
        assert not Df.is_zero()


def test_support_localization_examples():
    X = C.h7()
    x = FunctionElement.x(X)
    assert support_localization(x) == [(0, 1), INFINITY]
    assert support_localization((x * x + 1) / x) == [(0, 1), (1, 0, 1), INFINITY]
    assert support_localization(x - 3) == [(4, 1), INFINITY]
    P, Pm = place_at_point(X, (0, 1)), place_at_point(X, (0, 6))
    assert divisor_of(x) == Divisor({P: 1, Pm: 1, place_at_point(X, None): -2})


def test_divisor_algebra():
    X = C.e5()
    ps = places_up_to(X, 1)
    D = Divisor({ps[0]: 2, ps[1]: -1})
    assert D.degree == 1 and not D.is_effective()
    assert D.positive_part() - D.negative_part() == D
    assert D + (-D) == Divisor.zero() and (2 * D)[ps[0]] == 4
    assert Divisor({ps[0]: 0}).is_zero()
    with pytest.raises(InvalidInputError):
        Divisor({"P": 1})


# -- bases and zeta ------------------------------------------------------------------


def test_basis_sizes():
    for X in CURVES.values():
        omega = differential_basis(X)
        assert len(omega.functions) == X.genus
        assert canonical_divisor(X).degree == 2 * X.genus - 2
    assert len(infinity_rr_basis(C.h7(), 5).functions) == 4
    B = infinity_rr_basis(C.fermat3(), 8)
    assert len(B.functions) == 6 and B.divisor.degree == 8


def test_differential_basis_examples():
    X = C.h7()
    x = FunctionElement.x(X)
    assert list(differential_basis(X).functions) == [FunctionElement.constant(X, 1), x]
    assert list(differential_basis(C.e5()).functions) == [FunctionElement.constant(C.e5(), 1)]


def _l_poly_genus2(q, n1, n2):
    a1 = n1 - q - 1
    s2 = n2 - q * q - 1
    a2 = (a1 * a1 - s2) // 2
    return [1, -a1, a2, -q * a1, q * q]


def test_zeta_examples():
    assert class_number_exact(C.e5()) == 9
    assert class_number_exact(C.klein()) == 14
    q = 7
    L = _l_poly_genus2(q, C.brute_count(C.h7(), 1), C.brute_count(C.h7(), 2))
    assert l_polynomial(C.h7()) == L
    assert class_number_exact(C.h7()) == sum(L) == 50


@pytest.mark.parametrize("name", list(CURVES))
def test_l_polynomial_shape(name):
    X = CURVES[name]
    if X.genus > 3:
        pytest.skip("counting over F_{q^g} is slow")
    L = l_polynomial(X)
    g, q = X.genus, X.q
    assert len(L) == 2 * g + 1 and L[0] == 1
    for i in range(g + 1):
        assert L[2 * g - i] == q ** (g - i) * L[i]
    assert L[1] == count_points(X) - q - 1

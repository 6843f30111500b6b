"""Divisor streams, the two scan strategies, witnesses and gonality values."""

import itertools

import pytest

import curves as C
from curvearith.curve import Divisor, divisor_of, places_up_to
from curvearith.rrspace import riemann_roch_space
from curvearith.errors import InvalidInputError, ResourceLimitError, TimeoutExceeded
from curvearith.gonality import (
    GonalitySearchParams,
    column_budget,
    divisor_stream,
    gonality,
    has_function_leq,
    rational_lower_bound,
    search_places,
)


def brute_stream(places, d, n1):
    """Every effective degree-d divisor on ``places`` with >= n1 distinct rational places."""
    out = set()
    for k in range(1, d + 1):
        for combo in itertools.combinations_with_replacement(places, k):
            D = Divisor.zero()
            for p in combo:
                D = D + Divisor.point(p)
            if D.degree == d and sum(1 for p in D.support if p.degree == 1) >= n1:
                out.add(D)
    return out


def test_stream_examples():
    E = C.e5()
    assert rational_lower_bound(E) == 2
    assert len(list(divisor_stream(search_places(E, 2, 2), 2, 2))) == 36
    K = C.klein()
    assert rational_lower_bound(K) == 1
    stream = list(divisor_stream(search_places(K, 2, 1), 2, 1))
    assert len(stream) == 6 and all(D.is_effective() for D in stream)
    assert list(divisor_stream(search_places(E, 1, 2), 1, 2)) == []


@pytest.mark.parametrize(
    "curve,d", [(C.e5, 3), (C.klein, 3), (C.klein, 4), (C.h3, 3), (C.fermat3, 3), (C.quartic_f2, 4)]
)
def test_stream_matches_brute_enumeration(curve, d):
    X = curve()
    n1 = rational_lower_bound(X)
    places = search_places(X, d, n1)
    budgeted = [p for p in places if column_budget(p, d, n1) > 0]
    stream = list(divisor_stream(places, d, n1))
    assert len(stream) == len(set(stream))
    expect = {D for D in brute_stream(budgeted, d, n1) if all(m <= column_budget(p, d, n1) for p, m in D.items())}
    assert set(stream) == expect


def test_column_budget():
    places = places_up_to(C.klein(), 2)
    rational, quad = places[0], next(p for p in places if p.degree == 2)
    assert column_budget(rational, 3, 1) == 3
    assert column_budget(rational, 3, 0) == 3
    assert column_budget(quad, 3, 1) == 1
    assert column_budget(quad, 4, 3) == 0


def test_params_validation():
    with pytest.raises(InvalidInputError):
        GonalitySearchParams(0, 1)
    with pytest.raises(InvalidInputError):
        GonalitySearchParams(2, 1, "fastest")


def test_has_function_examples():
    for X in (C.e5(), C.h7(), C.h3(), C.c2()):
        res = has_function_leq(X, 2)
        assert res.answer is True
        assert divisor_of(res.witness_function).negative_part().degree == 2
    K = C.klein()
    assert has_function_leq(K, 2, "both").answer is False
    res = has_function_leq(K, 3, "both")
    assert res.answer is True
    assert 0 < divisor_of(res.witness_function).negative_part().degree <= 3


def test_genus_one_double_point():
    E = C.e5()
    P = places_up_to(E, 1)[0]
    assert len(riemann_roch_space(E, Divisor.point(P, 2))) == 2


@pytest.mark.parametrize("curve,expected", [(C.e5, 2), (C.h7, 2), (C.klein, 3), (C.fermat3, 3)])
def test_gonality_values(curve, expected):
    res = gonality(curve(), "both")
    assert res.answer == expected
    assert set(res.stats["per_degree"]) == set(range(1, expected + 1))


@pytest.mark.parametrize("curve,d", [(C.klein, 3), (C.quartic_f3, 3), (C.h3, 2), (C.c2, 3)])
def test_decisions_match_riemann_roch(curve, d):
    """Each per-divisor decision equals ``l(D) >= 2`` computed through ``L(D)`` directly."""
    X = curve()
    res = has_function_leq(X, d, "both", exhaustive=True, witness=False)
    places = search_places(X, d, rational_lower_bound(X))
    stream = list(divisor_stream(places, d, rational_lower_bound(X)))
    assert len(res.decisions) == len(stream)
    for D, ok in zip(stream, res.decisions):
        assert ok == (len(riemann_roch_space(X, D)) >= 2)


def test_budgets():
    X = C.quartic_f3()
    with pytest.raises(ResourceLimitError):
        has_function_leq(X, 3, max_divisors=2, exhaustive=True)
    with pytest.raises(TimeoutExceeded) as info:
        has_function_leq(X, 3, "baseline", timeout=0.0, exhaustive=True)
    assert isinstance(info.value.partial, dict)

"""Riemann-Roch dimensions from tables, checked against the oracle route and Riemann-Roch."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import curves as C
from curvearith.curve import (
    Divisor,
    canonical_divisor,
    differential_basis,
    divisor_of,
    infinity_rr_basis,
    place_at_point,
    places_up_to,
)
from curvearith.errors import InvalidInputError, PrecisionError
from curvearith.rrspace import (
    RRQueryEngine,
    _unrank_projective,
    assemble_matrix,
    nullspace_functions,
    nullspace_vectors,
    oracle_matrix,
    oracle_rr_dim,
    projective_points,
    riemann_roch_space,
    rr_dim,
)


def test_matrix_examples():
    X = C.h7()
    B = infinity_rr_basis(X, 5)
    eng = RRQueryEngine(B)
    A0 = assemble_matrix(eng, Divisor.zero())
    assert (A0.nrows, A0.ncols) == (4, 0)
    assert rr_dim(eng, Divisor.zero()) == (4, 0)
    P, Pm = place_at_point(X, (0, 1)), place_at_point(X, (0, 6))
    A = assemble_matrix(eng, Divisor({P: 1, Pm: 1}))
    assert [list(r) for r in A.rows] == [[1, 1], [0, 0], [0, 0], [1, 6]]
    assert [list(r) for r in assemble_matrix(eng, Divisor.point(P)).rows] == [[1], [0], [0], [1]]
    assert rr_dim(eng, Divisor({P: 1, Pm: 1})) == (2, 2)
    assert oracle_matrix(B, Divisor({P: 1, Pm: 1})) == A


def test_canonical_quartic_example():
    X = C.klein()
    eng = RRQueryEngine(differential_basis(X))
    for P in places_up_to(X, 1):
        assert rr_dim(eng, Divisor.point(P)) == (2, 1)


def test_nullspace_examples():
    X = C.h7()
    B = infinity_rr_basis(X, 5)
    eng = RRQueryEngine(B)
    P = place_at_point(X, (0, 1))
    # y = 1 + 4x^5 + ..., so 1 - y vanishes to order exactly 5 at P
    assert nullspace_vectors(eng, Divisor.point(P, 6)) == []
    assert nullspace_vectors(eng, Divisor.point(P, 5)) == [(1, 0, 0, 6)]
    fs = nullspace_functions(eng, Divisor({P: 1, place_at_point(X, (0, 6)): 1}))
    assert len(fs) == 8 == len(set(fs))


def test_projective_enumeration():
    pts = list(projective_points(3, 3))
    assert len(pts) == 13 == len(set(pts))
    assert [_unrank_projective(3, 3, i) for i in range(13)] == pts


def test_sampled_nullspace_is_seeded():
    X = C.fermat3()
    eng = RRQueryEngine(infinity_rr_basis(X, 12))
    D = Divisor.point(places_up_to(X, 1)[0])
    a = nullspace_vectors(eng, D, cap=10, seed=5)
    assert a == nullspace_vectors(eng, D, cap=10, seed=5) and len(a) == 10 == len(set(a))


def test_frozen_engine_refuses_new_columns():
    X = C.e5()
    eng = RRQueryEngine(differential_basis(X))
    P = places_up_to(X, 1)[1]
    eng.precompute([P], 2).freeze()
    assert rr_dim(eng, Divisor.point(P, 2)) == (0, 1)
    with pytest.raises(PrecisionError):
        rr_dim(eng, Divisor.point(P, 3))
    with pytest.raises(InvalidInputError):
        rr_dim(eng, Divisor({P: -1}))


CURVES = {"E/F5": C.e5, "H/F7": C.h7, "C/F2": C.c2, "Klein/F2": C.klein, "Fermat/F3": C.fermat3}


def effective_divisors(places, max_degree):
    def build(picks):
        D = Divisor.zero()
        for p in picks:
            if D.degree + p.degree <= max_degree:
                D = D + Divisor.point(p)
        return D

    return st.lists(st.sampled_from(places), max_size=max_degree).map(build)


@pytest.mark.parametrize("name", list(CURVES))
@given(data=st.data())
@settings(max_examples=20, deadline=None)
def test_tables_agree_with_oracle(name, data):
    X = CURVES[name]()
    basis = data.draw(st.sampled_from([differential_basis(X), infinity_rr_basis(X, 2 * X.genus + 2)]))
    D = data.draw(effective_divisors(places_up_to(X, 2), basis.divisor.degree + 1))
    assert rr_dim(RRQueryEngine(basis), D) == oracle_rr_dim(basis, D, fresh=True)


@pytest.mark.parametrize("name", list(CURVES))
@given(data=st.data())
@settings(max_examples=15, deadline=None)
def test_rank_is_monotone(name, data):
    X = CURVES[name]()
    eng = RRQueryEngine(infinity_rr_basis(X, 2 * X.genus + 1))
    places = places_up_to(X, 2)
    D = data.draw(effective_divisors(places, 4))
    E = D + data.draw(effective_divisors(places, 3))
    (dD, rD), (dE, rE) = rr_dim(eng, D), rr_dim(eng, E)
    assert rD <= rE and dE <= dD
    assert rE - rD <= E.degree - D.degree


@pytest.mark.parametrize("name", list(CURVES))
@given(data=st.data())
@settings(max_examples=10, deadline=None)
def test_nullspace_functions_are_members(name, data):
    X = CURVES[name]()
    basis = infinity_rr_basis(X, 2 * X.genus + 1)
    eng = RRQueryEngine(basis)
    D = data.draw(effective_divisors(places_up_to(X, 2), 3))
    target = basis.divisor - D
    for f in nullspace_functions(eng, D, cap=6):
        assert (divisor_of(f) + target).is_effective() or (divisor_of(f) + target).is_zero()


@pytest.mark.parametrize("name", list(CURVES))
@given(data=st.data())
@settings(max_examples=6, deadline=None)
def test_riemann_roch_theorem(name, data):
    X = CURVES[name]()
    g = X.genus
    places = places_up_to(X, 2)
    pos = data.draw(effective_divisors(places, 2 * g + 1))
    neg = data.draw(effective_divisors(places, 2))
    D = pos - neg
    K = canonical_divisor(X)
    LD = riemann_roch_space(X, D)
    assert len(LD) - len(riemann_roch_space(X, K - D)) == D.degree - g + 1
    for f in LD:
        Df = divisor_of(f) + D
        assert Df.is_effective() or Df.is_zero()


def test_riemann_roch_space_small_cases():
    X = C.h7()
    inf = place_at_point(X, None)
    assert len(riemann_roch_space(X, Divisor.zero())) == 1
    assert len(riemann_roch_space(X, Divisor.point(inf, 2))) == 2
    P = place_at_point(X, (5, 2))
    assert len(riemann_roch_space(X, Divisor.point(P, 1))) == 1
    assert riemann_roch_space(X, Divisor.point(P, -1)) == []
    rng = random.Random(0)
    for _ in range(3):
        Q = rng.choice(places_up_to(X, 2))
        assert len(riemann_roch_space(X, Divisor.point(Q, 5))) == 5 * Q.degree - 1

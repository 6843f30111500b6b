"""Expansion tables against the branch-series oracle, plus the on-disk cache."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import curves as C
from curvearith.curve import Divisor, FunctionElement, differential_basis, infinity_rr_basis, place_at_point, places_up_to
from curvearith.curve.bases import RiemannRochBasis
from curvearith.expand import (
    UNIT,
    ExpansionTable,
    cached_table,
    differential_expansions,
    function_expansions,
    load_table,
    oracle_expansion,
    save_table,
    verify_row,
)


def _rows(table):
    return [[tuple(v) for v in r] for r in table.rows]


def test_table_examples_at_finite_place():
    X = C.h7()
    B = infinity_rr_basis(X, 5)
    P = place_at_point(X, (0, 1))
    t = function_expansions(B, P, 2)
    assert t.offset == 0 and t.normalizer == UNIT
    assert _rows(t) == [[(1,), (0,)], [(0,), (1,)], [(0,), (0,)], [(1,), (0,)]]


def test_table_example_at_infinity():
    X = C.h7()
    B = infinity_rr_basis(X, 5)
    t = function_expansions(B, place_at_point(X, None), 1)
    assert t.offset == 0 and t.normalizer == 3  # g_x = 1/y
    assert [r[0] for r in _rows(t)] == [(0,), (0,), (0,), (1,)]
    assert t.normalizer_function == FunctionElement.y(X).inverse()


def test_zero_table_never_builds_a_uniformizer():
    X = C.h7()
    P = place_at_point(X, (0, 1))
    x = FunctionElement.x(X)
    B = RiemannRochBasis(X, Divisor.zero(), (x, x * x), "vanishing")
    t = function_expansions(B, P, 1)
    assert t.offset == 1 and _rows(t) == [[(0,)], [(0,)]]
    assert t.uniformizer is None


def test_differential_examples():
    E = C.e5()
    t = differential_expansions(differential_basis(E), places_up_to(E, 1)[3], 5)
    assert _rows(t) == [[(1,), (0,), (0,), (0,), (0,)]]
    X = C.h7()
    omega = differential_basis(X)
    c = 5
    P = place_at_point(X, (c, 2))  # non-Weierstrass: 5^5 + 1 = 4 = 2^2
    assert [r[0] for r in _rows(differential_expansions(omega, P, 1))] == [(1,), (c,)]
    t = differential_expansions(omega, place_at_point(X, None), 1)
    assert [r[0] for r in _rows(t)] == [(0,), (1,)]


def test_oracle_examples():
    X = C.h7()
    P = place_at_point(X, (0, 1))
    assert oracle_expansion(FunctionElement.y(X), P, 6) == [1, 0, 0, 0, 0, 4]
    assert oracle_expansion(FunctionElement.constant(X, 1), P, 4) == [1, 0, 0, 0]
    Q = place_at_point(X, (5, 2))
    assert oracle_expansion(FunctionElement.x(X) - 5, Q, 4) == [0, 1, 0, 0]


def test_extend_resumes_like_a_fresh_build():
    X = C.klein()
    omega = differential_basis(X)
    for P in places_up_to(X, 2):
        t = ExpansionTable(omega, P).extend(3).extend(7)
        assert _rows(t) == _rows(differential_expansions(omega, P, 7))


PROPERTY_CURVES = {"H/F7": C.h7, "C/F2": C.c2, "Klein/F2": C.klein, "Q/F3": C.quartic_f3}


@pytest.mark.parametrize("name", list(PROPERTY_CURVES))
@given(data=st.data())
@settings(max_examples=8, deadline=None)
def test_rows_match_oracle(name, data):
    X = PROPERTY_CURVES[name]()
    basis = data.draw(st.sampled_from([differential_basis(X), infinity_rr_basis(X, 2 * X.genus + 1)]))
    P = data.draw(st.sampled_from(places_up_to(X, 2)))
    t = function_expansions(basis, P, data.draw(st.integers(1, 6)))
    for i in range(len(basis.functions)):
        assert verify_row(t, i)


@pytest.mark.parametrize("name", list(PROPERTY_CURVES))
@given(data=st.data())
@settings(max_examples=8, deadline=None)
def test_table_is_linear(name, data):
    """The expansion of ``(sum b_i f_i) g_x`` is ``sum b_i`` (row i)."""
    X = PROPERTY_CURVES[name]()
    F = X.field
    basis = infinity_rr_basis(X, 2 * X.genus + 1)
    P = data.draw(st.sampled_from(places_up_to(X, 2)))
    m = data.draw(st.integers(1, 5))
    t = function_expansions(basis, P, m)
    b = [data.draw(st.integers(0, F.order - 1)) for _ in basis.functions]
    f = FunctionElement.constant(X, 0)
    for c, fi in zip(b, basis.functions):
        f = f + fi * c
    expect = [[0] * P.degree for _ in range(m)]
    for c, row in zip(b, t.rows):
        for j, vec in enumerate(row):
            for k, a in enumerate(vec):
                expect[j][k] = F.add(expect[j][k], F.mul(c, a))
    if f.is_zero():
        assert all(not any(v) for v in expect)
        return
    got = oracle_expansion(f * t.normalizer_function, P, m, lifts=True, start=0)
    assert [list(v) for v in got] == expect


def test_cache_round_trip(tmp_path):
    X = C.fermat3()
    omega = differential_basis(X)
    P = places_up_to(X, 2)[-1]
    t = differential_expansions(omega, P, 6)
    save_table(t, tmp_path)
    loaded = load_table(omega, P, 6, tmp_path, random.Random(3))
    assert loaded is not None and _rows(loaded) == _rows(t)
    assert (loaded.offset, loaded.normalizer, loaded.precision) == (t.offset, t.normalizer, 6)
    assert load_table(omega, P, 7, tmp_path) is None  # different precision, different file
    # a loaded table cannot resume, so extending rebuilds it from scratch
    assert _rows(loaded.extend(8)) == _rows(differential_expansions(omega, P, 8))


def test_cache_rejects_corruption(tmp_path):
    # one-row basis, so the spot check always inspects the damaged row
    X = C.e5()
    B = infinity_rr_basis(X, 1)
    P = places_up_to(X, 1)[4]
    path = save_table(function_expansions(B, P, 4), tmp_path)
    assert load_table(B, P, 4, tmp_path) is not None
    data = bytearray(path.read_bytes())
    data[-4] ^= 1
    path.write_bytes(bytes(data))
    assert load_table(B, P, 4, tmp_path) is None
    path.write_bytes(b"nope")
    assert load_table(B, P, 4, tmp_path) is None


def test_cached_table_uses_environment(tmp_path, monkeypatch):
    monkeypatch.setenv("CURVEARITH_CACHE_DIR", str(tmp_path))
    X = C.e5()
    B = infinity_rr_basis(X, 3)
    P = places_up_to(X, 1)[2]
    first = cached_table(B, P, 5)
    assert len(list(tmp_path.iterdir())) == 1
    second = cached_table(B, P, 5)
    assert _rows(first) == _rows(second)

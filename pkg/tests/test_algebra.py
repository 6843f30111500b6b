"""Finite fields, polynomials, factorization and dense linear algebra over F_q."""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from curvearith.algebra import poly as P
from curvearith.algebra.factor import factor_coeffs, irreducibles_up_to, is_irreducible, roots
from curvearith.algebra.fields import FieldError, gf
from curvearith.algebra.linalg import FieldMatrix, IncrementalEchelon, rank, rank_and_left_nullspace, vec_mat

FIELDS = [gf(2), gf(3), gf(7), gf(2, 2), gf(2, 3), gf(3, 2), gf(5, 2)]


def elements(F):
    return st.integers(0, F.order - 1)


def polys(F, max_len=7):
    return st.lists(elements(F), max_size=max_len).map(P.trim)


@pytest.mark.parametrize("F", FIELDS, ids=repr)
def test_field_axioms_exhaustive_small(F):
    if F.order > 27:
        pytest.skip("checked by the hypothesis test")
    els = range(F.order)
    for a in els:
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
        assert F.pow(a, F.order) == a
    for a, b in itertools.product(els, repeat=2):
        assert F.add(a, b) == F.add(b, a)
        assert F.mul(a, b) == F.mul(b, a)


@pytest.mark.parametrize("F", FIELDS, ids=repr)
@given(data=st.data())
@settings(max_examples=60, deadline=None)
def test_field_ring_laws(F, data):
    a, b, c = (data.draw(elements(F)) for _ in range(3))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.frobenius(F.mul(a, b)) == F.mul(F.frobenius(a), F.frobenius(b))
    assert F.is_square(F.mul(a, a))


def test_prime_coordinates_round_trip():
    F = gf(3, 2)
    for a in range(F.order):
        assert F.from_prime_coords(F.prime_coords(a)) == a
    with pytest.raises(FieldError):
        gf(6)


@pytest.mark.parametrize("F", [gf(2), gf(5), gf(2, 2), gf(3, 2)], ids=repr)
@given(data=st.data())
@settings(max_examples=40, deadline=None)
def test_poly_division_identity(F, data):
    a = data.draw(polys(F))
    b = data.draw(polys(F).filter(lambda p: len(p) > 0))
    quo, rem = P.divmod_(F, a, b)
    assert P.deg(rem) < P.deg(b)
    assert P.add(F, P.mul(F, quo, b), rem) == P.trim(list(a))


@pytest.mark.parametrize("F", [gf(2), gf(3), gf(7), gf(2, 2)], ids=repr)
@given(data=st.data())
@settings(max_examples=30, deadline=None)
def test_factorization_reconstructs(F, data):
    f = data.draw(polys(F, 9).filter(lambda p: len(p) > 1))
    lead, facs = factor_coeffs(F, f)
    prod = [lead]
    for g, m in facs:
        assert is_irreducible(F, list(g)) and g[-1] == 1
        for _ in range(m):
            prod = P.mul(F, prod, list(g))
    assert prod == list(f)


def test_factor_examples():
    def fac(F, f):
        return sorted((tuple(g), m) for g, m in factor_coeffs(F, f)[1])

    assert fac(gf(5), [4, 0, 1]) == [((1, 1), 1), ((4, 1), 1)]
    assert fac(gf(3), [1, 0, 1]) == [((1, 0, 1), 1)]
    assert fac(gf(2), [0, 0, 1, 0, 1]) == [((0, 1), 2), ((1, 1), 2)]


def _necklace(q, n):
    # number of monic irreducibles of degree n: (1/n) sum_{d|n} mu(d) q^(n/d)
    def mu(k):
        out, p = 1, 2
        while p * p <= k:
            if k % p == 0:
                k //= p
                if k % p == 0:
                    return 0
                out = -out
            p += 1
        return -out if k > 1 else out

    return sum(mu(d) * q ** (n // d) for d in range(1, n + 1) if n % d == 0) // n


@pytest.mark.parametrize("q,p,k,m", [(2, 2, 1, 4), (3, 3, 1, 3), (5, 5, 1, 2), (4, 2, 2, 2)])
def test_irreducible_counts(q, p, k, m):
    F = gf(p, k)
    found = irreducibles_up_to(F, m)
    for n in range(1, m + 1):
        assert sum(1 for g in found if g.degree == n) == _necklace(q, n)
    assert [g.coeffs for g in irreducibles_up_to(gf(2), 2)] == [(0, 1), (1, 1), (1, 1, 1)]


def test_roots_by_evaluation():
    F = gf(7)
    f = [6, 0, 0, 1]  # x^3 - 1
    expect = sorted(a for a in range(7) if P.evaluate(F, f, a) == 0)
    assert sorted(roots(F, f)) == expect


def test_linalg_examples():
    F = gf(2)
    r, ns = rank_and_left_nullspace(FieldMatrix.identity(F, 3))
    assert r == 3 and ns == []
    r, ns = rank_and_left_nullspace(FieldMatrix.from_rows(F, [[0, 0]] * 4))
    assert r == 0 and len(ns) == 4
    r, ns = rank_and_left_nullspace(FieldMatrix.from_rows(F, [[1, 0], [0, 1], [1, 1]]))
    assert r == 2 and [list(v) for v in ns] == [[1, 1, 1]]


@pytest.mark.parametrize("F", [gf(2), gf(5), gf(3, 2)], ids=repr)
@given(data=st.data())
@settings(max_examples=40, deadline=None)
def test_rank_nullity_and_incremental(F, data):
    nr = data.draw(st.integers(1, 6))
    nc = data.draw(st.integers(1, 6))
    rows = [[data.draw(elements(F)) for _ in range(nc)] for _ in range(nr)]
    A = FieldMatrix.from_rows(F, rows, nc)
    r, ns = rank_and_left_nullspace(A)
    assert r + len(ns) == nr
    for v in ns:
        assert all(x == 0 for x in vec_mat(F, v, A))
    assert rank(A.transpose()) == r
    ech = IncrementalEchelon(F)
    for j in range(nc):
        ech.add([rows[i][j] for i in range(nr)])
    assert ech.rank == r

"""Integer rank and elementary divisors, checked against determinantal divisors."""

import itertools
from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from curvearith.intlinalg import AbelianGroupStructure, SparseIntMatrix, elementary_divisors, int_rank


def _det(M):
    # exact Gaussian elimination over Q
    M = [[Fraction(x) for x in r] for r in M]
    n = len(M)
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        det *= M[c][c]
        for i in range(c + 1, n):
            f = M[i][c] / M[c][c]
            M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    return int(det)


def determinantal_oracle(rows, s):
    """``(free rank, elementary divisors > 1)`` of ``Z^s / rowspan`` from gcds of minors."""
    nr = len(rows)
    ds = [1]
    r = 0
    for k in range(1, min(nr, s) + 1):
        g = 0
        for ri in itertools.combinations(range(nr), k):
            for ci in itertools.combinations(range(s), k):
                g = gcd(g, _det([[rows[i][j] for j in ci] for i in ri]))
        if g == 0:
            break
        ds.append(g)
        r = k
    invariants = [ds[k] // ds[k - 1] for k in range(1, r + 1)]
    return s - r, tuple(d for d in invariants if d > 1)


def test_examples():
    assert int_rank(SparseIntMatrix.from_rows([[2, 0], [0, 3]])) == 2
    assert int_rank(SparseIntMatrix.from_rows([[0] * 3] * 3)) == 0
    assert int_rank(SparseIntMatrix.from_rows([[1, 2], [2, 4]])) == 1
    assert elementary_divisors(SparseIntMatrix.from_rows([[2, 0], [0, 3]]), 2) == AbelianGroupStructure(0, (6,))
    assert elementary_divisors(SparseIntMatrix.from_rows([[2, 0], [0, 2]]), 2) == AbelianGroupStructure(0, (2, 2))
    assert elementary_divisors(SparseIntMatrix.from_rows([[3, 0]]), 2) == AbelianGroupStructure(1, (3,))


def test_structure_validation():
    with pytest.raises(ValueError):
        AbelianGroupStructure(0, (4, 6))
    with pytest.raises(ValueError):
        SparseIntMatrix.from_triples(1, 1, [(0, 1, 3)])


@given(
    st.integers(1, 4).flatmap(
        lambda s: st.tuples(
            st.just(s), st.lists(st.lists(st.integers(-6, 6), min_size=s, max_size=s), min_size=1, max_size=4)
        )
    )
)
@settings(max_examples=150, deadline=None)
def test_snf_matches_determinantal_divisors(data):
    s, rows = data
    B = SparseIntMatrix.from_rows(rows, s)
    got = elementary_divisors(B, s)
    assert (got.free_rank, got.divisors) == determinantal_oracle(rows, s)
    assert int_rank(B) == s - got.free_rank


def test_large_sparse_relation_lattice():
    # Z^40 modulo e_i = 2 e_{i+1}: every e_i is a multiple of e_39, so the quotient is Z;
    # adding 2^5 e_39 = 0 leaves Z/32
    s = 40
    rows = [{i: 1, i + 1: -2} for i in range(s - 1)]
    got = elementary_divisors(SparseIntMatrix.from_sparse_rows(rows, s), s)
    assert got == AbelianGroupStructure(1, ())
    rows.append({s - 1: 2**5})
    got = elementary_divisors(SparseIntMatrix.from_sparse_rows(rows, s), s)
    assert got == AbelianGroupStructure(0, (2**5,))

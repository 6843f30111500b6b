"""Factor bases, smoothness, relation collection and the class-group structure."""

import pytest

import curves as C
from curvearith.classgroup import (
    RelationSet,
    build_factor_basis,
    class_group,
    default_factor_bound,
    smoothness_check,
)
from curvearith.curve import (
    FunctionElement,
    class_number_exact,
    hyperplane_divisor,
    place_at_point,
    places_up_to,
)
from curvearith.errors import InvalidInputError


def test_factor_basis_examples():
    X = C.h7()
    D0 = hyperplane_divisor(X, 7)
    S1 = build_factor_basis(X, 1, D0)
    assert S1.size == 8
    S2 = build_factor_basis(X, 2, D0)
    quad = sum(1 for p in places_up_to(X, 2) if p.degree == 2)
    assert S2.size == 8 + quad
    with pytest.raises(InvalidInputError):
        build_factor_basis(X, 0)


def test_smoothness_examples():
    X = C.h7()
    S = build_factor_basis(X, 1, hyperplane_divisor(X, 1))
    x = FunctionElement.x(X)
    ok, vec = smoothness_check(S, x)
    assert ok
    P, Pm, inf = place_at_point(X, (0, 1)), place_at_point(X, (0, 6)), place_at_point(X, None)
    expect = [0] * S.size
    expect[S.position[P]], expect[S.position[Pm]], expect[S.position[inf]] = 1, 1, -2
    assert list(vec) == expect
    assert smoothness_check(S, x - 3) == (False, None)
    assert smoothness_check(S, FunctionElement.constant(X, 4)) == (True, tuple([0] * S.size))


def test_relation_set_deduplicates():
    R = RelationSet(3)
    assert R.add((1, -1, 0), None)
    assert not R.add((1, -1, 0), None)
    assert not R.add((0, 0, 0), None)
    assert R.coverage == [True, True, False] and len(R) == 1


def test_default_factor_bound():
    for X in (C.e5(), C.h7(), C.klein()):
        m = default_factor_bound(X)
        places = places_up_to(X, m)
        assert len(places) >= max(2 * X.genus + 2, 8)


@pytest.mark.parametrize("curve", [C.e5, C.klein, C.h3])
def test_class_group_matches_zeta(curve):
    X = curve()
    res = class_group(X, seed=1)
    assert res.free_rank == 1
    assert res.torsion_order == class_number_exact(X) == res.h0
    assert res.audit["passed"] and res.audit["sampled"] >= 1
    for vec in res.relations.vectors:
        assert sum(v * p.degree for v, p in zip(vec, res.factor_basis.places)) == 0


@pytest.mark.parametrize("name", list(C.elliptic_curves()))
def test_elliptic_structure_matches_group_law(name):
    X = C.elliptic_curves()[name]
    res = class_group(X, seed=0)
    assert tuple(res.torsion) == C.EllipticPoints(X).structure()


def test_relations_are_reproducible():
    X = C.klein()
    a, b = class_group(X, seed=7), class_group(X, seed=7)
    assert a.relations.vectors == b.relations.vectors
    assert a.torsion == b.torsion


def test_stall_escalation_is_recorded():
    res = class_group(C.h7(), seed=0)
    assert res.torsion_order == 50
    assert isinstance(res.stats["escalations"], list)

"""Riemann-Roch spaces ``L(D_0 - D)`` from expansion tables.

For ``D = sum m_x x`` effective, ``f = sum b_i f_i`` lies in ``L(D_0 - D)`` iff
``b A = 0`` where ``A`` stacks, per place, the first ``m_x`` table columns.
"""

from __future__ import annotations

import itertools
import random

from .algebra.linalg import FieldMatrix, IncrementalEchelon, rank, rank_and_left_nullspace
from .curve.bases import hyperplane_divisor, infinity_rr_basis
from .curve.divisor import Divisor, divisor_of
from .curve.function import FunctionElement
from .curve.places import valuation_at
from .expand import ExpansionTable, oracle_expansion
from .errors import InvalidInputError, PrecisionError

DEFAULT_PRECISION_CAP = 256
DEFAULT_NULLSPACE_CAP = 4096


class RRQueryEngine:
    """Expansion tables of one basis, extended on demand up to ``cap`` columns.

    After :meth:`freeze` a query needing a missing table or column raises
    :class:`PrecisionError` instead of computing it.
    """

    def __init__(self, basis, cap: int = DEFAULT_PRECISION_CAP):
        self.basis = basis
        self.field = basis.model.field
        self.tables: dict = {}
        self.cap = cap
        self.frozen = False
        self.stats = {"tables": 0, "columns": 0}

    @property
    def dimension(self) -> int:
        return len(self.basis.functions)

    def table(self, place, m: int) -> ExpansionTable:
        t = self.tables.get(place)
        if t is not None and t.precision >= m:
            return t
        if self.frozen:
            have = 0 if t is None else t.precision
            raise PrecisionError(f"table at {place!r} has precision {have}, query needs {m}")
        if m > self.cap:
            raise PrecisionError(f"precision {m} at {place!r} exceeds the engine cap {self.cap}")
        if t is None:
            t = self.tables[place] = ExpansionTable(self.basis, place)
            self.stats["tables"] += 1
        before = t.precision
        t.extend(m)
        self.stats["columns"] += t.precision - before
        return t

    def precompute(self, places, precision) -> "RRQueryEngine":
        """``precision`` is an int or a callable ``place -> int``."""
        for pl in places:
            m = precision(pl) if callable(precision) else precision
            if m > 0:
                self.table(pl, m)
        return self

    def freeze(self):
        self.frozen = True
        return self

    def columns(self, place, j: int) -> list:
        """The ``deg(place)`` columns of ``A`` for coefficient index ``j`` (as vectors of length l)."""
        t = self.table(place, j + 1)
        e = place.degree
        return [[row[j][c] for row in t.rows] for c in range(e)]

    def echelon(self) -> IncrementalEchelon:
        return IncrementalEchelon(self.field)


def _check_effective(D: Divisor):
    if not D.is_effective():
        raise InvalidInputError("query divisor must be effective")


def assemble_matrix(engine: RRQueryEngine, D: Divisor) -> FieldMatrix:
    _check_effective(D)
    ell = engine.dimension
    rows = [[] for _ in range(ell)]
    for place, m in D.items():
        t = engine.table(place, m)
        for i in range(ell):
            rows[i].extend(t.block(i, m))
    return FieldMatrix.from_rows(engine.field, rows, D.degree)


def rr_dim(engine: RRQueryEngine, D: Divisor) -> tuple:
    """``(dim L(D_0 - D), rank A)``."""
    A = assemble_matrix(engine, D)
    r = rank(A)
    return engine.dimension - r, r


def projective_points(q: int, nu: int):
    """Normalized representatives of ``P^(nu-1)(F_q)``: first nonzero coordinate 1, lexicographic."""
    for lead in range(nu):
        for tail in itertools.product(range(q), repeat=nu - lead - 1):
            yield (0,) * lead + (1,) + tail


def _projective_count(q, nu):
    return (q**nu - 1) // (q - 1) if nu else 0


def _unrank_projective(q, nu, index):
    for lead in range(nu):
        block = q ** (nu - lead - 1)
        if index < block:
            tail = []
            for _ in range(nu - lead - 1):
                index, d = divmod(index, q)
                tail.append(d)
            return (0,) * lead + (1,) + tuple(reversed(tail))
        index -= block
    raise IndexError(index)


def combine(basis, coeffs) -> FunctionElement:
    model = basis.model
    acc = FunctionElement.constant(model, 0)
    for c, f in zip(coeffs, basis.functions):
        if c:
            acc = acc + f * c
    return acc


def nullspace_vectors(engine: RRQueryEngine, D: Divisor, cap: int = DEFAULT_NULLSPACE_CAP, seed: int = 0) -> list:
    """Coefficient vectors (one per projective class) of ``P(L(D_0 - D))``.

    Beyond ``cap`` classes a seeded sample of ``cap`` distinct classes is returned.
    """
    F = engine.field
    A = assemble_matrix(engine, D)
    _r, basis = rank_and_left_nullspace(A)
    nu = len(basis)
    q = F.order
    total = _projective_count(q, nu)
    if total <= cap:
        combos = list(projective_points(q, nu))
    else:
        rng = random.Random(seed)
        combos = [_unrank_projective(q, nu, i) for i in sorted(rng.sample(range(total), cap))]
    out = []
    ell = engine.dimension
    for lam in combos:
        v = [0] * ell
        for c, b in zip(lam, basis):
            if c:
                for i in range(ell):
                    if b[i]:
                        v[i] = F.add(v[i], F.mul(c, b[i]))
        out.append(tuple(v))
    return out


def nullspace_functions(engine: RRQueryEngine, D: Divisor, cap: int = DEFAULT_NULLSPACE_CAP, seed: int = 0) -> list:
    return [combine(engine.basis, v) for v in nullspace_vectors(engine, D, cap, seed)]


# -- independent route ----------------------------------------------------------


def oracle_matrix(basis, D: Divisor, fresh: bool = False) -> FieldMatrix:
    """``A`` rebuilt from constant-coefficient series expansions, without tables.

    ``sum b_i f_i`` lies in ``L(D_0 - D)`` iff its coefficients of ``q^j`` vanish
    for ``-v(D_0) <= j < m_x - v(D_0)``; residue constants are mapped to
    ``F_q^deg`` by the place's coordinate map.
    """
    _check_effective(D)
    model = basis.model
    rows = [[] for _ in basis.functions]
    for place, m in D.items():
        dv = basis.divisor[place]
        R = place.residue
        for i, f in enumerate(basis.functions):
            coeffs = oracle_expansion(f, place, m, start=-dv, fresh=fresh)
            for c in coeffs:
                rows[i].extend(R.phi(c))
    return FieldMatrix.from_rows(model.field, rows, D.degree)


def oracle_rr_dim(basis, D: Divisor, fresh: bool = False) -> tuple:
    A = oracle_matrix(basis, D, fresh)
    r = rank(A)
    return len(basis.functions) - r, r


def subspace_basis(basis, D: Divisor) -> list:
    """A basis of ``L(D_0 - D)`` for effective ``D`` (fresh engine)."""
    engine = RRQueryEngine(basis)
    A = assemble_matrix(engine, D)
    _r, vecs = rank_and_left_nullspace(A)
    return [combine(basis, v) for v in vecs]


def riemann_roch_space(model, D: Divisor) -> list:
    """A basis of ``L(D)`` for any divisor ``D``.

    With ``c`` a product of powers of the base polynomials under the finite
    positive part of ``D``, ``c L(D) = L(D_0 - D'')`` where ``D_0 = m D_inf``
    and ``D'' = D_0 + div(c) - D`` is effective for ``m`` large enough.
    """
    c = FunctionElement.constant(model, 1)
    need: dict = {}
    for place, mult in D.items():
        if mult > 0 and not place.is_infinite:
            need.setdefault(place.base, []).append((place, mult))
    for base, items in need.items():
        pi = FunctionElement.from_x_poly(model, list(base))
        M = max(-(-mult // valuation_at(pi, place)) for place, mult in items)
        c = c * pi**M
    shifted = divisor_of(c) - D
    unit = hyperplane_divisor(model, 1)
    m = 0
    for place, mult in shifted.items():
        if mult < 0:
            if not place.is_infinite:
                raise InvalidInputError("internal: finite part not cleared")  # pragma: no cover
            m = max(m, -(-(-mult) // unit[place]))
    deg_unit = unit.degree
    n = max(m * deg_unit, 2 * model.genus - 1, 1)
    basis = infinity_rr_basis(model, n)
    Dpp = basis.divisor + shifted
    if not Dpp.is_effective() and not Dpp.is_zero():
        raise InvalidInputError("internal: shifted divisor is not effective")  # pragma: no cover
    cinv = c.inverse()
    return [f * cinv for f in subspace_basis(basis, Dpp)]

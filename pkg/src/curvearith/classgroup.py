"""Divisor class group by relation collection over a factor basis.

Relations are divisors of functions in ``L(D_0 - D)`` for random effective
``D`` made of distinct factor-basis places.  A function is kept when its
divisor is supported on the factor basis ``S``; the quotient ``Z^S / R``
then converges to ``Cl(X) = Z + Cl^0(X)``.  Collection stops when that
quotient has free rank 1 and torsion of order exactly ``h_0`` (computed from
the zeta function), so a factor basis that fails to generate shows up as a
stall instead of a wrong group.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field

from .algebra import poly as P
from .curve.bases import hyperplane_divisor, infinity_rr_basis
from .curve.divisor import Divisor, support_localization
from .curve.function import FunctionElement
from .curve.model import CurveModel
from .curve.places import INFINITY, Place, local_series, places_over, places_up_to, valuation_at
from .curve.zeta import class_number_exact
from .errors import InternalError, InvalidInputError, StallError, TimeoutExceeded
from .intlinalg import AbelianGroupStructure, SparseIntMatrix, echelon_rows, elementary_divisors
from .rrspace import RRQueryEngine, nullspace_functions


@dataclass
class FactorBasis:
    model: CurveModel
    places: tuple
    m: int
    index: dict  # base point (tuple or INFINITY) -> member positions
    position: dict  # Place -> column

    @property
    def size(self) -> int:
        return len(self.places)

    def members_over(self, base) -> list:
        return self.index.get(base, [])


def build_factor_basis(model: CurveModel, m: int, D0: Divisor | None = None) -> FactorBasis:
    """Places of degree ``<= m`` together with ``Supp(D0)``."""
    if m < 1:
        raise InvalidInputError("factor-basis degree bound must be >= 1")
    members = set(places_up_to(model, m))
    if D0 is not None:
        members.update(D0.support)
    places = tuple(sorted(members, key=lambda p: p.key))
    index: dict = {}
    for i, p in enumerate(places):
        base = INFINITY if p.is_infinite else p.base
        index.setdefault(base, []).append(i)
    return FactorBasis(model, places, m, index, {p: i for i, p in enumerate(places)})


def smoothness_check(S: FactorBasis, f: FunctionElement):
    """``(True, vector)`` if ``div f`` is supported on ``S``, else ``(False, None)``.

    Requires the poles of ``f`` to lie in ``S``; then the degree-weighted sum of
    member valuations is ``<= 0`` with equality exactly when ``f`` is smooth.
    """
    if f.is_zero():
        raise InvalidInputError("the zero function has no divisor")
    vec = [0] * S.size
    if f.is_constant():
        return True, tuple(vec)
    den = tuple(f.den)
    total = 0
    for base in support_localization(f):
        members = S.members_over(base)
        if not members:
            if base != INFINITY and not _divides(f.model.field, base, den):
                return False, None  # f vanishes at some place above base
            continue
        for i in members:
            place = S.places[i]
            v = valuation_at(f, place)
            vec[i] = v
            total += v * place.degree
    if total > 0:
        raise InternalError("function has a pole outside the factor basis")
    return total == 0, (tuple(vec) if total == 0 else None)


def _divides(F, base, den):
    return len(den) > 1 and not P.mod(F, list(den), list(base))


@dataclass
class RelationSet:
    size: int
    vectors: list = field(default_factory=list)
    functions: list = field(default_factory=list)
    coverage: list = field(default_factory=list)
    _seen: set = field(default_factory=set, repr=False)

    def __post_init__(self):
        if not self.coverage:
            self.coverage = [False] * self.size

    def add(self, vec, f) -> bool:
        if not any(vec) or vec in self._seen:
            return False
        self._seen.add(vec)
        self.vectors.append(vec)
        self.functions.append(f)
        for i, v in enumerate(vec):
            if v:
                self.coverage[i] = True
        return True

    def matrix(self) -> SparseIntMatrix:
        return SparseIntMatrix.from_sparse_rows([{i: v for i, v in enumerate(r) if v} for r in self.vectors], self.size)

    def __len__(self):
        return len(self.vectors)


@dataclass
class ClassGroupResult:
    free_rank: int
    torsion: tuple
    h0: int
    factor_basis: FactorBasis
    relations: RelationSet
    stats: dict = field(default_factory=dict)
    audit: dict = field(default_factory=dict)

    @property
    def torsion_order(self) -> int:
        return math.prod(self.torsion)


def default_factor_bound(model: CurveModel, max_m: int = 8) -> int:
    """Smallest ``m`` with ``>= max(2g+2, 8)`` places of degree ``<= m`` and degree gcd 1."""
    want = max(2 * model.genus + 2, 8)
    for m in range(1, max_m + 1):
        pl = places_up_to(model, m)
        g = 0
        for p in pl:
            g = math.gcd(g, p.degree)
        if len(pl) >= want and g == 1:
            return m
    raise InvalidInputError(f"no factor-basis bound m <= {max_m} gives enough places of coprime degrees")


def _random_divisor(S: FactorBasis, target: int, coverage, rng: random.Random) -> Divisor:
    """Distinct members of total degree ``<= target``, maximal, seeded from a relationless place."""
    order = list(range(S.size))
    rng.shuffle(order)
    uncovered = [i for i in order if not coverage[i] and S.places[i].degree <= target]
    chosen = []
    deg = 0
    if uncovered:
        chosen.append(uncovered[0])
        deg = S.places[uncovered[0]].degree
    for i in order:
        if i in chosen:
            continue
        e = S.places[i].degree
        if deg + e <= target:
            chosen.append(i)
            deg += e
        if deg == target:
            break
    return Divisor({S.places[i]: 1 for i in chosen})


def audit_relation(S: FactorBasis, vec, f: FunctionElement) -> bool:
    """Rebuild ``div f`` from fresh branch expansions at every candidate place."""
    expect = [0] * S.size
    total = 0
    for base in support_localization(f):
        for place in places_over(f.model, base):
            v = local_series(f, place, 1, place.new_branch()).v
            total += v * place.degree
            if v:
                i = S.position.get(place)
                if i is None:
                    return False
                expect[i] = v
    return total == 0 and tuple(expect) == tuple(vec) and sum(v * p.degree for v, p in zip(vec, S.places)) == 0


def collect_relations(
    model: CurveModel,
    S: FactorBasis,
    basis,
    h0: int,
    seed: int = 0,
    batch: int | None = None,
    max_stalled_batches: int = 25,
    slack: int = 1,
    nullspace_cap: int = 64,
    deadline: float | None = None,
):
    """Collect relations until ``Z^S / R`` has free rank 1 and torsion order ``h0``.

    Returns ``(relations, structure, stats)``.
    """
    D0 = basis.divisor
    if not all(p in S.position for p in D0.support):
        raise InvalidInputError("Supp(D_0) must lie in the factor basis")
    g = 0
    for p in S.places:
        g = math.gcd(g, p.degree)
    if g != 1:
        raise InvalidInputError(
            f"factor-basis degrees have gcd {g}; a degree-1 class needs a place of degree 1 or coprime degrees"
        )
    rng = random.Random(seed)
    s = S.size
    batch = batch or max(32, s // 4)
    stats = {"divisors": 0, "functions_tested": 0, "smooth": 0, "batches": 0, "snf_checks": 0}
    t0 = time.perf_counter()
    engine = RRQueryEngine(basis)
    engine.precompute(S.places, 1)
    engine.freeze()
    stats["precompute_seconds"] = time.perf_counter() - t0
    stats["uniformizers_built"] = sum(1 for t in engine.tables.values() if t.uniformizer is not None)

    ell = len(basis.functions)
    target = ell - 1 - slack
    if target < 1:
        raise InvalidInputError(f"l(D_0) = {ell} is too small for random divisors; raise the base divisor degree")
    rel = RelationSet(s)
    echelon: list = []
    best = None
    stalled = 0
    pending = 0
    idle = 0  # divisors since the last termination check
    structure = None
    while True:
        if deadline is not None and time.perf_counter() > deadline:
            raise TimeoutExceeded("time budget exhausted during relation collection", partial=stats)
        D = _random_divisor(S, target, rel.coverage, rng)
        stats["divisors"] += 1
        idle += 1
        for f in nullspace_functions(engine, D, nullspace_cap, rng.getrandbits(64)):
            if f.is_constant():
                continue
            stats["functions_tested"] += 1
            ok, vec = smoothness_check(S, f)
            if ok:
                stats["smooth"] += 1
                if rel.add(vec, f):
                    pending += 1
        # check after a full batch, or after a batch worth of divisors when relations trickle in
        if pending < batch and idle < batch:
            continue
        idle = 0
        stats["batches"] += 1
        if pending:
            stats["snf_checks"] += 1
            new_rows = [{i: v for i, v in enumerate(r) if v} for r in rel.vectors[len(rel) - pending :]]
            pending = 0
            echelon = echelon_rows(echelon + new_rows, s)
            structure = elementary_divisors(SparseIntMatrix.from_sparse_rows(echelon, s), s)
            if structure.free_rank == 1 and structure.torsion_order == h0:
                break
            if structure.free_rank == 1 and structure.torsion_order % h0:
                raise StallError(
                    f"torsion order {structure.torsion_order} is not a multiple of h0 = {h0}: "
                    "the factor basis does not generate the class group; increase --factor-basis-degree"
                )
        key = None if structure is None else (structure.free_rank, structure.torsion_order)
        if key is not None and (best is None or key < best):
            best, stalled = key, 0
        else:
            stalled += 1
            if stalled >= max_stalled_batches:
                where = "no relations yet" if key is None else f"free rank {key[0]}, torsion order {key[1]}"
                raise StallError(
                    f"no progress in {stalled} batches ({where}, h0 {h0}); the factor basis may not generate "
                    "or the random divisors are too constrained: increase --factor-basis-degree or "
                    "--base-divisor-degree"
                )
    stats["relations"] = len(rel)
    stats["collect_seconds"] = time.perf_counter() - t0
    return rel, structure, stats


def class_group(
    model: CurveModel,
    m: int | None = None,
    base_divisor_degree: int | None = None,
    seed: int = 0,
    audit_fraction: float = 0.1,
    timeout: float | None = None,
    escalations: int = 4,
    **kw,
) -> ClassGroupResult:
    """Structure of ``Cl(X)`` as free rank plus torsion elementary divisors.

    On a stall the base divisor grows by one step of ``D_inf`` (and every second
    time the factor-basis bound by one), at most ``escalations`` times; the
    parameters actually used are reported in ``stats``.
    """
    deadline = None if timeout is None else time.perf_counter() + timeout
    h0 = class_number_exact(model)
    if m is None:
        m = default_factor_bound(model)
    Dinf = hyperplane_divisor(model, 1)
    if base_divisor_degree is None:
        S = build_factor_basis(model, m, Dinf)
        base_divisor_degree = 2 * model.genus + max(p.degree for p in S.places)
    history = []
    for attempt in range(escalations + 1):
        m_i = m + attempt // 2
        n_i = base_divisor_degree + attempt * Dinf.degree
        basis = infinity_rr_basis(model, n_i)
        S = build_factor_basis(model, m_i, basis.divisor)
        try:
            rel, structure, stats = collect_relations(model, S, basis, h0, seed=seed + attempt, deadline=deadline, **kw)
            break
        except StallError as exc:
            history.append({"factor_basis_degree": m_i, "base_divisor_degree": basis.divisor.degree, "stall": str(exc)})
            if attempt == escalations:
                raise
    if structure.free_rank != 1 or structure.torsion_order != h0:
        raise InternalError(f"collection ended at {structure} with h0 = {h0}")
    stats.update(
        {
            "factor_basis_size": S.size,
            "factor_basis_degree": m_i,
            "base_divisor_degree": basis.divisor.degree,
            "escalations": history,
        }
    )
    audit = run_audit(S, rel, audit_fraction, seed)
    if not audit["passed"]:
        raise InternalError(f"relation audit failed: {audit}")
    return ClassGroupResult(1, structure.divisors, h0, S, rel, stats, audit)


def run_audit(S: FactorBasis, rel: RelationSet, fraction: float, seed: int) -> dict:
    """Re-derive a seeded random sample (at least one) of relations through fresh expansions."""
    n = len(rel)
    rng = random.Random(seed ^ 0xA5A5)
    k = min(n, max(1, math.ceil(fraction * n)))
    sample = sorted(rng.sample(range(n), k))
    bad = [i for i in sample if not audit_relation(S, rel.vectors[i], rel.functions[i])]
    weighted = all(sum(v * p.degree for v, p in zip(r, S.places)) == 0 for r in rel.vectors)
    return {"sampled": k, "failed": bad, "degree_zero": weighted, "passed": not bad and weighted}


def group_structure(result: ClassGroupResult) -> AbelianGroupStructure:
    return AbelianGroupStructure(result.free_rank, tuple(result.torsion))


__all__ = [
    "ClassGroupResult",
    "FactorBasis",
    "Place",
    "RelationSet",
    "build_factor_basis",
    "class_group",
    "collect_relations",
    "default_factor_bound",
    "run_audit",
    "smoothness_check",
]

"""Deciding whether a curve has a function of degree ``<= d``, and the gonality.

A degree-``d`` effective divisor ``D`` has ``l(D) >= 2`` iff the canonical
matrix ``A`` of ``D`` has rank ``< d`` (Riemann-Roch: ``l(D) = d + 1 - rank A``).
If a function of degree ``<= d`` exists, one of its fibres over ``P^1(F_q)``
contains at least ``n_1 = ceil(|X(F_q)| / (q + 1))`` rational points, so only
divisors with that many distinct rational places in the support are scanned.

The amortized strategy precomputes canonical expansion tables and walks the
divisors depth first, reusing the echelon form of every shared prefix.  The
baseline recomputes every matrix from fresh series expansions.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .algebra import poly as P
from .algebra.linalg import rank
from .curve.bases import differential_basis
from .curve.divisor import Divisor, divisor_of
from .curve.model import CurveModel
from .curve.places import places_up_to
from .curve.zeta import count_points
from .errors import InvalidInputError, ResourceLimitError, StrategyMismatch, TimeoutExceeded
from .rrspace import RRQueryEngine, oracle_matrix, riemann_roch_space

STRATEGIES = ("amortized", "baseline", "both")
DEFAULT_MAX_DIVISORS = 10**7


@dataclass
class GonalitySearchParams:
    degree: int
    n1: int
    strategy: str = "amortized"
    threads: int = 1

    def __post_init__(self):
        if self.degree < 1:
            raise InvalidInputError("degree must be >= 1")
        if self.n1 < 0:
            raise InvalidInputError("n_1 must be >= 0")
        if self.strategy not in STRATEGIES:
            raise InvalidInputError(f"unknown strategy {self.strategy!r}")


@dataclass
class GonalityResult:
    answer: object  # bool for has_function_leq, int or None for gonality
    degree: int
    strategy: str
    witness_divisor: Divisor | None = None
    witness_function: object = None
    stats: dict = field(default_factory=dict)
    decisions: list | None = None


def rational_lower_bound(model: CurveModel) -> int:
    """``n_1 = ceil(|X(F_q)| / (q + 1))``."""
    n = count_points(model, 1)
    return -(-n // (model.q + 1))


def search_places(model: CurveModel, d: int, n1: int) -> list:
    return places_up_to(model, max(1, d - n1))


def column_budget(place, d: int, n1: int) -> int:
    """Largest multiplicity of ``place`` in a scanned divisor."""
    if place.degree == 1:
        return d - n1 + 1 if n1 >= 1 else d
    return (d - n1) // place.degree


def _walk(places, d, n1, push=None, state=None):
    """Depth-first multiset enumeration shared by the stream and the amortized scan.

    Yields ``(terms, state)`` where ``terms`` lists ``(place, multiplicity)``;
    ``push(state, place, k)`` derives the state after raising ``place`` to ``k``.
    """
    places = sorted(places, key=lambda p: p.key)
    nplaces = len(places)
    rational_after = [0] * (nplaces + 1)
    for i in range(nplaces - 1, -1, -1):
        rational_after[i] = rational_after[i + 1] + (places[i].degree == 1)
    terms = []

    def rec(i, rem, nrat, st):
        if rem == 0:
            if nrat >= n1:
                yield tuple(terms), st
            return
        if nrat + min(rational_after[i], rem) < n1:
            return
        for j in range(i, nplaces):
            p = places[j]
            e = p.degree
            if e > rem:
                break
            if nrat + (e == 1) + min(rational_after[j + 1], rem - e) < n1:
                return  # skipping ahead only loses rational places
            s = st
            k = 0
            rat = nrat + (e == 1)
            while (k + 1) * e <= rem and rat + min(rational_after[j + 1], rem - (k + 1) * e) >= n1:
                k += 1
                if push is not None:
                    s = push(s, p, k)
                terms.append((p, k))
                yield from rec(j + 1, rem - k * e, rat, s)
                terms.pop()

    yield from rec(0, d, 0, state)


def divisor_stream(places, d: int, n1: int):
    """Effective degree-``d`` divisors with ``>= n1`` distinct rational places in the support."""
    if d < 1 or n1 > d:
        return
    for terms, _ in _walk(places, d, n1):
        yield Divisor(dict(terms))


def _clock(deadline, scanned, stats):
    if deadline is not None and time.perf_counter() > deadline:
        raise TimeoutExceeded(f"time budget exhausted after {scanned} divisors", partial=stats)


def amortized_scan(model, d, n1, places, exhaustive=False, deadline=None, max_divisors=DEFAULT_MAX_DIVISORS):
    """Returns ``(first true divisor or None, decisions or None, stats)``."""
    stats = {}
    t0 = time.perf_counter()
    omega = differential_basis(model)
    engine = RRQueryEngine(omega)
    engine.precompute(places, lambda pl: column_budget(pl, d, n1))
    # flatten every column once so the scan itself only touches integer vectors
    cols = {
        pl: [engine.columns(pl, j) for j in range(column_budget(pl, d, n1))]
        for pl in places
        if column_budget(pl, d, n1) > 0
    }
    engine.freeze()
    stats["precompute_seconds"] = time.perf_counter() - t0
    stats["tables"] = engine.stats["tables"]
    stats["expansions"] = engine.stats["columns"] * len(omega.functions)

    def push(ech, place, k):
        ech = ech.copy()
        for v in cols[place][k - 1]:
            ech.add(v)
        return ech

    ops_before = P.STATS["poly_ops"]
    t1 = time.perf_counter()
    decisions = [] if exhaustive else None
    hit = None
    scanned = 0
    for terms, ech in _walk(places, d, n1, push, engine.echelon()):
        scanned += 1
        if scanned > max_divisors:
            raise ResourceLimitError(f"divisor stream exceeds the limit of {max_divisors} divisors")
        if not scanned & 255:
            _clock(deadline, scanned, stats)
        ok = ech.rank < d
        if decisions is not None:
            decisions.append(ok)
        if ok and hit is None:
            hit = Divisor(dict(terms))
            if not exhaustive:
                break
    elapsed = time.perf_counter() - t1
    stats["scan_seconds"] = elapsed
    stats["divisors_scanned"] = scanned
    stats["rank_queries"] = scanned
    stats["poly_ops_during_scan"] = P.STATS["poly_ops"] - ops_before
    stats["rr_per_second"] = scanned / elapsed if elapsed > 0 else float("inf")
    pre = stats["precompute_seconds"]
    stats["expansions_per_second"] = stats["expansions"] / pre if pre > 0 else float("inf")
    return hit, decisions, stats


def baseline_decision(omega, D: Divisor, d: int) -> bool:
    """``l(D) >= 2`` with the matrix rebuilt from fresh oracle expansions."""
    return rank(oracle_matrix(omega, D, fresh=True)) < d


def baseline_scan(model, d, n1, places, exhaustive=False, deadline=None, max_divisors=DEFAULT_MAX_DIVISORS, limit=None):
    """Per-divisor recomputation over the same stream; ``limit`` stops after that many divisors."""
    stats = {}
    omega = differential_basis(model)
    t1 = time.perf_counter()
    decisions = [] if exhaustive else None
    hit = None
    scanned = 0
    expansions = 0
    ell = len(omega.functions)
    for D in divisor_stream(places, d, n1):
        if limit is not None and scanned >= limit:
            break
        scanned += 1
        if scanned > max_divisors:
            raise ResourceLimitError(f"divisor stream exceeds the limit of {max_divisors} divisors")
        _clock(deadline, scanned, stats)
        ok = baseline_decision(omega, D, d)
        expansions += ell * sum(m for _p, m in D.items())
        if decisions is not None:
            decisions.append(ok)
        if ok and hit is None:
            hit = D
            if not exhaustive:
                break
    elapsed = time.perf_counter() - t1
    stats["scan_seconds"] = elapsed
    stats["divisors_scanned"] = scanned
    stats["rank_queries"] = scanned
    stats["expansions"] = expansions
    stats["expansions_per_second"] = expansions / elapsed if elapsed > 0 else float("inf")
    stats["rr_per_second"] = scanned / elapsed if elapsed > 0 else float("inf")
    return hit, decisions, stats


def extract_witness(model: CurveModel, D: Divisor):
    """A non-constant function in ``L(D)`` (``None`` if ``l(D) < 2``)."""
    for f in riemann_roch_space(model, D):
        if not f.is_constant():
            return f
    return None


def has_function_leq(
    model: CurveModel,
    d: int,
    strategy: str = "amortized",
    exhaustive: bool = False,
    witness: bool = True,
    timeout: float | None = None,
    max_divisors: int = DEFAULT_MAX_DIVISORS,
    threads: int = 1,
) -> GonalityResult:
    """Whether ``model`` has a non-constant function of degree ``<= d``.

    ``exhaustive=True`` scans the whole stream and records one decision per divisor.
    """
    n1 = rational_lower_bound(model)
    params = GonalitySearchParams(d, n1, strategy, threads)
    deadline = None if timeout is None else time.perf_counter() + timeout
    stats = {"n1": n1}
    if n1 > d:
        return GonalityResult(False, d, strategy, stats={**stats, "divisors_scanned": 0, "short_circuit": True})
    places = search_places(model, d, n1)
    stats["places"] = len(places)
    hit, decisions = None, None
    if params.strategy in ("amortized", "both"):
        hit, decisions, st = amortized_scan(model, d, n1, places, exhaustive or strategy == "both", deadline, max_divisors)
        stats["amortized"] = st
    if params.strategy in ("baseline", "both"):
        bhit, bdec, st = baseline_scan(model, d, n1, places, exhaustive or strategy == "both", deadline, max_divisors)
        stats["baseline"] = st
        if params.strategy == "both":
            _compare(decisions, bdec, places, d, n1)
        else:
            hit, decisions = bhit, bdec
    answer = hit is not None
    result = GonalityResult(answer, d, strategy, stats=stats, decisions=decisions if exhaustive else None)
    if answer:
        result.witness_divisor = hit
        if witness:
            f = extract_witness(model, hit)
            if f is None:
                raise StrategyMismatch(f"scan reported l(D) >= 2 but L(D) is constant for {hit!r}", hit)
            pole_degree = divisor_of(f).negative_part().degree
            if pole_degree > d:
                raise StrategyMismatch(f"witness has pole degree {pole_degree} > {d}", hit)
            result.witness_function = f
    return result


def _compare(a, b, places, d, n1):
    if a == b:
        return
    for i, (D, x, y) in enumerate(zip(divisor_stream(places, d, n1), a, b)):
        if x != y:
            raise StrategyMismatch(f"strategies disagree on divisor #{i}: amortized={x}, baseline={y}", D)
    raise StrategyMismatch(f"decision streams differ in length ({len(a)} vs {len(b)})")


def gonality(model: CurveModel, strategy: str = "amortized", cap: int | None = None, **kw) -> GonalityResult:
    """Least ``d <= cap`` with a function of degree ``d``; ``answer`` is ``None`` above the cap."""
    if cap is None:
        # every curve of genus g has a function of degree <= g + 1
        cap = model.genus + 1
    if cap < 1:
        raise InvalidInputError("cap must be >= 1")
    per_degree = {}
    for d in range(1, cap + 1):
        res = has_function_leq(model, d, strategy, **kw)
        per_degree[d] = res.stats
        if res.answer:
            res.answer = d
            res.stats = {"per_degree": per_degree}
            return res
    return GonalityResult(None, cap, strategy, stats={"per_degree": per_degree})

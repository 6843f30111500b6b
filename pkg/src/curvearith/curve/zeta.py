"""Point counts, the L-polynomial and the exact class number."""

from __future__ import annotations

from ..algebra import poly as P
from ..algebra.factor import count_distinct_roots
from ..errors import InternalError, ResourceLimitError
from . import series as S
from .model import CurveModel

DEFAULT_LIMIT = 10**7


def count_points(model: CurveModel, e: int = 1, limit: int = DEFAULT_LIMIT) -> int:
    """``|X(F_{q^e})|`` by enumerating the ``x``-line (plus the points at infinity)."""
    if e < 1:
        raise ValueError("extension degree must be positive")
    Q = model.q**e
    if Q > limit:
        raise ResourceLimitError(f"counting over GF({Q}) exceeds the enumeration limit {limit}")
    F = model.field
    K = F.extension(e)
    if model.is_hyperelliptic:
        return _count_hyperelliptic(model, K) + 1
    total = 0
    G = [list(c) for c in model.G]
    for x0 in range(Q):
        poly_y = [P.evaluate(K, c, x0) for c in G] + [1]
        total += count_distinct_roots(K, poly_y)
    H = S.plane_infinity_chart(model)
    c = [0] * (model.plane_degree + 1)
    for (ja, kb), v in H.items():
        if kb == 0:
            c[ja] = v
    total += count_distinct_roots(K, P.trim(c))
    return total


def _count_hyperelliptic(model, K):
    h, f = list(model.h), list(model.f)
    n = 0
    if K.p != 2:
        four = 4 % K.p
        for x0 in range(K.order):
            hv = P.evaluate(K, h, x0)
            fv = P.evaluate(K, f, x0)
            disc = K.add(K.mul(hv, hv), K.mul(four, fv))
            if disc == 0:
                n += 1
            elif K.is_square(disc):
                n += 2
        return n
    for x0 in range(K.order):
        hv = P.evaluate(K, h, x0)
        fv = P.evaluate(K, f, x0)
        if hv == 0:
            n += 1
        elif K.trace(K.div(fv, K.mul(hv, hv))) == 0:
            n += 2
    return n


def l_polynomial(model: CurveModel, limit: int = DEFAULT_LIMIT, counts=None) -> list:
    """Coefficients ``[a_0, ..., a_2g]`` of ``P(T)`` with ``Z(T) = P(T)/((1-T)(1-qT))``."""
    g, q = model.genus, model.q
    if counts is None:
        counts = [count_points(model, e, limit) for e in range(1, g + 1)]
    s = [None] + [counts[j - 1] - q**j - 1 for j in range(1, g + 1)]
    a = [1] + [0] * (2 * g)
    for i in range(1, g + 1):
        acc = sum(s[j] * a[i - j] for j in range(1, i + 1))
        if acc % i:
            raise InternalError("Newton identity produced a non-integral coefficient")
        a[i] = acc // i
    for i in range(g + 1, 2 * g + 1):
        a[i] = q ** (i - g) * a[2 * g - i]
    return a


def class_number_exact(model: CurveModel, limit: int = DEFAULT_LIMIT) -> int:
    h0 = sum(l_polynomial(model, limit))
    if h0 < 1:
        raise InternalError(f"class number computed as {h0}")
    return h0


def zeta_data(model: CurveModel, limit: int = DEFAULT_LIMIT) -> dict:
    counts = [count_points(model, e, limit) for e in range(1, model.genus + 1)]
    L = l_polynomial(model, limit, counts)
    return {"point_counts": counts, "l_polynomial": L, "h0": sum(L)}

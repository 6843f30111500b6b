"""Irreducibility testing, root finding and factorization over finite fields.

Factorization is squarefree decomposition, distinct-degree splitting, then
Cantor-Zassenhaus equal-degree splitting driven by a seeded RNG so results
(and their order) are reproducible.
"""

from __future__ import annotations

import functools
import random

from . import poly as P
from ..errors import InvalidInputError
from .fields import factor_int

_X = [0, 1]


def _frob_x(F, f):
    """x**q mod f, with q the order of F."""
    return P.powmod(F, _X, F.order, f)


def is_irreducible(F, f) -> bool:
    """Rabin's test for a nonzero polynomial (coefficient list) over ``F``."""
    f = P.monic(F, P.trim(list(f)))
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    if f[0] == 0:
        return False
    powers = {}
    h = _X
    for i in range(1, n + 1):
        h = P.powmod(F, h, F.order, f)
        powers[i] = h
    if P.sub(F, powers[n], _X):
        return False
    for r in factor_int(n):
        g = P.gcd(F, f, P.sub(F, powers[n // r], _X))
        if len(g) > 1:
            return False
    return True


def least_irreducible(F, e: int) -> tuple:
    """Least monic irreducible of degree ``e`` over ``F`` (ordered by integer encoding)."""
    q = F.order
    for i in range(q**e):
        coeffs = []
        t = i
        for _ in range(e):
            t, r = divmod(t, q)
            coeffs.append(r)
        cand = coeffs + [1]
        if is_irreducible(F, cand):
            return tuple(cand)
    raise InvalidInputError(f"no irreducible of degree {e}")  # unreachable


def squarefree_decomposition(F, f):
    """Return ``[(g, m), ...]`` with ``f = lc * prod g**m`` and the ``g`` squarefree, coprime."""
    f = P.monic(F, P.trim(list(f)))
    out = []
    if len(f) <= 1:
        return out
    c = P.gcd(F, f, P.deriv(F, f))
    w = P.div_exact(F, f, c)
    i = 1
    while len(w) > 1:
        y = P.gcd(F, w, c)
        z = P.div_exact(F, w, y)
        if len(z) > 1:
            out.append((z, i))
        i += 1
        w = y
        c = P.div_exact(F, c, y)
    if len(c) > 1:
        c = P.pth_root(F, c)
        for g, m in squarefree_decomposition(F, c):
            out.append((g, m * F.p))
    return out


def distinct_degree(F, f):
    """Split a monic squarefree ``f`` into ``[(product of degree-d irreducibles, d), ...]``."""
    out = []
    h = _X
    i = 0
    f = list(f)
    while len(f) - 1 >= 2 * (i + 1):
        i += 1
        h = P.powmod(F, h, F.order, f)
        g = P.gcd(F, f, P.sub(F, h, _X))
        if len(g) > 1:
            out.append((g, i))
            f = P.div_exact(F, f, g)
            h = P.mod(F, h, f)
    if len(f) > 1:
        out.append((f, len(f) - 1))
    return out


def equal_degree(F, f, d, rng):
    """Split a monic product of distinct degree-``d`` irreducibles into its factors."""
    n = len(f) - 1
    if n == d:
        return [f]
    q = F.order
    while True:
        a = P.trim([rng.randrange(q) for _ in range(n)])
        if len(a) < 2:
            continue
        if F.p == 2:
            s = F.absdeg * d
            t = a
            acc = a
            for _ in range(s - 1):
                t = P.mod(F, P.mul(F, t, t), f)
                acc = P.add(F, acc, t)
            b = acc
        else:
            b = P.sub(F, P.powmod(F, a, (q**d - 1) // 2, f), [1])
        g = P.gcd(F, f, b)
        if 1 < len(g) < len(f):
            return equal_degree(F, g, d, rng) + equal_degree(F, P.div_exact(F, f, g), d, rng)


def factor_coeffs(F, f, seed: int = 0):
    """Factor a coefficient list; returns ``(lead, [(monic factor, multiplicity), ...])`` sorted."""
    f = P.trim(list(f))
    if not f:
        raise InvalidInputError("cannot factor the zero polynomial")
    lead = f[-1]
    rng = random.Random(seed)
    out = []
    for g, m in squarefree_decomposition(F, f):
        for h, d in distinct_degree(F, g):
            for irr in equal_degree(F, h, d, rng):
                out.append((irr, m))
    out.sort(key=lambda t: (P.key(t[0]), t[1]))
    return lead, out


def factor_poly(p: P.Poly):
    """Factor a nonzero :class:`Poly` into monic irreducibles with multiplicities.

    >>> from curvearith.fields import gf
    >>> F = gf(5)
    >>> factor_poly(P.Poly.of(F, [4, 0, 1]))
    [(x + 1, 1), (x + 4, 1)]
    """
    if p.is_zero():
        raise InvalidInputError("cannot factor the zero polynomial")
    _, facs = factor_coeffs(p.field, p.coeffs)
    return [(P.Poly(p.field, tuple(g)), m) for g, m in facs]


def roots(F, f, seed: int = 0):
    """Distinct roots in ``F`` of a nonzero polynomial with coefficients in ``F``, sorted."""
    f = P.monic(F, P.trim(list(f)))
    if len(f) <= 1:
        return []
    out = []
    if f[0] == 0:
        out.append(0)
        while f and f[0] == 0:
            f = f[1:]
    if len(f) > 1:
        g = P.gcd(F, f, P.sub(F, _frob_x(F, f), _X))
        if len(g) > 1:
            rng = random.Random(seed)
            for lin in equal_degree(F, g, 1, rng):
                out.append(F.neg(lin[0]))
    return sorted(set(out))


def count_distinct_roots(F, f) -> int:
    """Number of distinct roots of ``f`` in ``F`` without splitting."""
    f = P.monic(F, P.trim(list(f)))
    if len(f) <= 1:
        return 0
    g = P.gcd(F, f, P.sub(F, _frob_x(F, f), _X))
    return len(g) - 1


@functools.lru_cache(maxsize=None)
def _irreducibles_of_degree(F, n):
    q = F.order
    out = []
    for i in range(q**n):
        coeffs = []
        t = i
        for _ in range(n):
            t, r = divmod(t, q)
            coeffs.append(r)
        cand = coeffs + [1]
        if is_irreducible(F, cand):
            out.append(tuple(cand))
    out.sort(key=P.key)
    return tuple(out)


def irreducibles_up_to(F, m: int):
    """All monic irreducibles of degree <= m over ``F``, degree-then-lex ordered."""
    if m < 1:
        raise InvalidInputError("degree bound must be >= 1")
    out = []
    for n in range(1, m + 1):
        out.extend(P.Poly(F, c) for c in _irreducibles_of_degree(F, n))
    return out


def minimal_polynomial(K, a, F) -> list:
    """Minimal polynomial over the subfield ``F`` of an element ``a`` of ``K``."""
    q = F.order
    conj = [a]
    b = K.pow(a, q)
    while b != a:
        conj.append(b)
        b = K.pow(b, q)
    m = [1]
    for c in conj:
        m = P.mul(K, m, [K.neg(c), 1])
    for c in m:
        if c >= F.order:
            raise ArithmeticError("minimal polynomial coefficients escaped the subfield")
    return m

"""Sparse multivariate polynomials as ``{exponent tuple: coefficient}`` dicts.

Only what the model layer needs: ring operations, substitution of
polynomials for variables, partial derivatives and evaluation.
"""

from __future__ import annotations


def add(F, a, b):
    out = dict(a)
    for e, c in b.items():
        v = F.add(out.get(e, 0), c)
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def scale(F, a, c):
    if c == 0:
        return {}
    return {e: F.mul(v, c) for e, v in a.items()}


def mul(F, a, b):
    out = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            v = F.add(out.get(e, 0), F.mul(c1, c2))
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return out


def power(F, a, k, nvars):
    result = {(0,) * nvars: 1}
    base = a
    while k:
        if k & 1:
            result = mul(F, result, base)
        k >>= 1
        if k:
            base = mul(F, base, base)
    return result


def substitute(F, a, images, nvars_out):
    """Replace variable ``i`` of ``a`` by the polynomial ``images[i]``."""
    out = {}
    cache = {}
    for e, c in a.items():
        term = {(0,) * nvars_out: c}
        for i, k in enumerate(e):
            if k:
                key = (i, k)
                if key not in cache:
                    cache[key] = power(F, images[i], k, nvars_out)
                term = mul(F, term, cache[key])
        out = add(F, out, term)
    return out


def derivative(F, a, i):
    out = {}
    for e, c in a.items():
        k = e[i]
        if k % F.p:
            v = F.mul(c, k % F.p)
            if v:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = v
    return out


def evaluate(F, a, point):
    """Evaluate at ``point``; ``F`` must contain the point coordinates."""
    s = 0
    for e, c in a.items():
        t = c
        for x, k in zip(point, e):
            if k:
                t = F.mul(t, F.pow(x, k))
        s = F.add(s, t)
    return s


def total_degree(a):
    return max((sum(e) for e in a), default=-1)


def univariate_in(a, i, nvars):
    """Collect ``a`` as ``{k: poly in the other variables}`` by the power of variable ``i``."""
    out: dict[int, dict] = {}
    for e, c in a.items():
        rest = e[:i] + e[i + 1 :]
        out.setdefault(e[i], {})[rest] = c
    return out

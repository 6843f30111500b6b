"""Truncated power series, Laurent series with precision tracking, and branches.

A :class:`Laurent` value is ``t^v (c_0 + c_1 t + ...) + O(t^prec)`` with
``c_0 != 0``; ``prec`` is the absolute precision, or ``None`` when the value
is an exact Laurent polynomial.  A value with no known coefficient is
``O(t^prec)``: it is indistinguishable from zero at that precision.

A :class:`Branch` parametrizes the curve near one geometric point: ``w(t)``
solves a bivariate equation ``E(t, w) = 0`` with ``E_w(0, w0) != 0`` and
``X``, ``Y`` are simple expressions in ``t`` and ``w``.  ``t`` has valuation
1 at the point, so ``t``-adic valuations are the place's valuations.
"""

from __future__ import annotations

from ..algebra import poly as P
from ..errors import InternalError
from . import mpoly

# -- power series (lists truncated to a fixed length) -----------------------


def ps_mul(K, a, b, n):
    """Product of two coefficient lists truncated to ``n`` terms."""
    if not a or not b or n <= 0:
        return [0] * max(n, 0)
    la, lb = min(len(a), n), min(len(b), n)
    if K.is_prime:
        p = K.p
        out = [0] * n
        for i in range(la):
            x = a[i]
            if x:
                lim = min(lb, n - i)
                for j in range(lim):
                    out[i + j] += x * b[j]
        return [c % p for c in out]
    out = [0] * n
    fm, fa = K.mul, K.add
    for i in range(la):
        x = a[i]
        if x:
            for j in range(min(lb, n - i)):
                y = b[j]
                if y:
                    out[i + j] = fa(out[i + j], fm(x, y))
    return out


def ps_inv(K, a, n):
    """Inverse of a unit power series to ``n`` terms."""
    if not a or a[0] == 0:
        raise ZeroDivisionError("power series is not a unit")
    inv0 = K.inv(a[0])
    out = [0] * n
    if n:
        out[0] = inv0
    if K.is_prime:
        p = K.p
        for k in range(1, n):
            s = 0
            for i in range(1, min(k, len(a) - 1) + 1):
                if a[i]:
                    s += a[i] * out[k - i]
            out[k] = (-s * inv0) % p
        return out
    for k in range(1, n):
        s = 0
        for i in range(1, min(k, len(a) - 1) + 1):
            if a[i]:
                s = K.add(s, K.mul(a[i], out[k - i]))
        out[k] = K.neg(K.mul(s, inv0))
    return out


def ps_add(K, a, b, n):
    out = [0] * n
    for i in range(min(n, len(a))):
        out[i] = a[i]
    for i in range(min(n, len(b))):
        if b[i]:
            out[i] = K.add(out[i], b[i])
    return out


# -- Laurent series ------------------------------------------------------------


class Laurent:
    __slots__ = ("v", "c", "prec")

    def __init__(self, v, c, prec):
        self.v, self.c, self.prec = v, c, prec

    @property
    def known(self) -> bool:
        return bool(self.c)

    @property
    def is_exact_zero(self) -> bool:
        return not self.c and self.prec is None

    @property
    def relprec(self):
        return None if self.prec is None else self.prec - self.v

    def coeff(self, k):
        """Coefficient of ``t^k`` (must be below the precision)."""
        if self.prec is not None and k >= self.prec:
            raise InternalError("coefficient requested beyond the known precision")
        i = k - self.v
        if not self.c:
            return 0
        if 0 <= i < len(self.c):
            return self.c[i]
        return 0

    def __repr__(self):
        terms = [f"{c}*t^{self.v + i}" for i, c in enumerate(self.c) if c]
        tail = "" if self.prec is None else f" + O(t^{self.prec})"
        return "Laurent(" + (" + ".join(terms) or "0") + tail + ")"


def make(v, c, prec):
    """Normalize: strip leading zeros and truncate to the precision."""
    c = list(c)
    i = 0
    while i < len(c) and c[i] == 0:
        i += 1
    if i:
        c = c[i:]
        v += i
    if prec is not None:
        keep = prec - v
        if keep <= 0:
            return Laurent(prec, [], prec)
        if len(c) > keep:
            c = c[:keep]
    else:
        while c and c[-1] == 0:
            c.pop()
    if not c:
        return Laurent(prec if prec is not None else 0, [], prec)
    return Laurent(v, c, prec)


def exact(c, v=0):
    return make(v, c, None)


def _min_prec(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def add(K, a, b):
    prec = _min_prec(a.prec, b.prec)
    starts = [s.v for s in (a, b) if s.c]
    if not starts:
        return Laurent(prec if prec is not None else 0, [], prec)
    v = min(starts)
    end = max(s.v + len(s.c) for s in (a, b) if s.c)
    if prec is not None:
        end = min(end, prec)
    if end <= v:
        return Laurent(prec, [], prec)
    out = [0] * (end - v)
    for s in (a, b):
        off = s.v - v
        for i, x in enumerate(s.c):
            if off + i >= len(out):
                break
            if x:
                out[off + i] = K.add(out[off + i], x)
    return make(v, out, prec)


def neg(K, a):
    return Laurent(a.v, [K.neg(x) for x in a.c], a.prec)


def sub(K, a, b):
    return add(K, a, neg(K, b))


def scale(K, a, c):
    if c == 0:
        return Laurent(0, [], None)
    return Laurent(a.v, [K.mul(x, c) for x in a.c], a.prec)


def mul(K, a, b):
    if a.is_exact_zero or b.is_exact_zero:
        return Laurent(0, [], None)
    if not a.c or not b.c:
        # O(t^pa) * b: valuation bound only
        if not a.c and not b.c:
            p = a.prec + b.prec
        elif not a.c:
            p = a.prec + b.v
        else:
            p = b.prec + a.v
        return Laurent(p, [], p)
    v = a.v + b.v
    rel = _min_prec(a.relprec, b.relprec)
    n = len(a.c) + len(b.c) - 1
    if rel is not None:
        n = min(n, rel)
    out = ps_mul(K, a.c, b.c, n)
    return make(v, out, None if rel is None else v + rel)


def inv(K, a, cap):
    """Inverse; ``cap`` bounds the relative precision of exact inputs."""
    if not a.c:
        raise ZeroDivisionError("inverse of a series indistinguishable from zero")
    rel = a.relprec if a.relprec is not None else cap
    out = ps_inv(K, a.c, rel)
    return make(-a.v, out, -a.v + rel)


def div(K, a, b, cap):
    return mul(K, a, inv(K, b, cap))


def power(K, a, e, cap):
    if e < 0:
        return power(K, inv(K, a, cap), -e, cap)
    result = exact([1])
    base = a
    while e:
        if e & 1:
            result = mul(K, result, base)
        e >>= 1
        if e:
            base = mul(K, base, base)
    return result


def poly_at(K, coeffs, s):
    """Evaluate a polynomial (coefficients in a subfield of K) at a Laurent series."""
    acc = Laurent(0, [], None)
    for c in reversed(coeffs):
        acc = mul(K, acc, s)
        if c:
            acc = add(K, acc, exact([c]))
    return acc


# -- branches ------------------------------------------------------------------


class Branch:
    """Newton parametrization of the curve at one geometric point.

    ``kind`` selects the local coordinates:

    ``"x"``      ``X = x0 + t``, ``Y = w``        (``G_Y(x0, y0) != 0``)
    ``"y"``      ``X = x0 + w``, ``Y = y0 + t``   (vertical tangent)
    ``"inf_a"``  ``X = 1/t``, ``Y = w/t``          (plane point ``(1:a0:0)``, ``t = Z/X``)
    ``"inf_b"``  ``X = 1/w``, ``Y = (a0 + t)/w``   (plane point at infinity tangent to ``Z = 0``)
    ``"hyp"``    ``X = 1/w``, ``Y = X^g / t``      (the hyperelliptic point at infinity)
    """

    def __init__(self, K, E, w0, kind, x0=None, y0=None, a0=None, genus=0):
        self.K = K
        self.E = E  # list over powers of w of coefficient lists in t
        self.Ew = [P.trim([K.mul(c, j % K.p) for c in E[j]]) if j % K.p else [] for j in range(1, len(E))]
        self.kind = kind
        self.x0, self.y0, self.a0, self.genus = x0, y0, a0, genus
        self.w = [w0]
        if _horner(K, self.Ew, [w0], 1)[0] == 0:
            raise InternalError("branch equation is singular at the base point")
        if _horner(K, self.E, [w0], 1)[0] != 0:
            raise InternalError("base point does not satisfy the branch equation")

    @property
    def N(self):
        return len(self.w)

    def ensure(self, N):
        """Extend ``w`` to at least ``N`` correct coefficients by Newton iteration."""
        K = self.K
        while len(self.w) < N:
            k = len(self.w)
            k2 = min(2 * k, max(N, 2 * k))
            W = self.w + [0] * (k2 - k)
            e = _horner(K, self.E, W, k2)
            d = _horner(K, self.Ew, W, k)
            delta = ps_mul(K, e, ps_inv(K, d, k2), k2)
            self.w = [K.sub(a, b) for a, b in zip(W, delta)]
        return self

    def coordinates(self, N):
        """``(X, Y)`` as Laurent series, using ``w`` known modulo ``t^N``."""
        K = self.K
        self.ensure(N)
        W = make(0, self.w[:N], N)
        kind = self.kind
        if kind == "x":
            return make(0, [self.x0, 1], None), W
        if kind == "y":
            return add(K, exact([self.x0]), W), make(0, [self.y0, 1], None)
        if kind == "inf_a":
            return exact([1], -1), make(W.v - 1, W.c, N - 1) if W.c else Laurent(N - 1, [], N - 1)
        if kind == "inf_b":
            X = inv(K, W, N)
            return X, mul(K, make(0, [self.a0, 1], None), X)
        if kind == "hyp":
            X = inv(K, W, N)
            g = self.genus
            Y = mul(K, power(K, X, g, N), exact([1], -1))
            return X, Y
        raise InternalError(f"unknown branch kind {kind}")


def _horner(K, E, W, n):
    """``sum_j E[j](t) W^j`` truncated to ``n`` terms."""
    acc = [0] * n
    for j in range(len(E) - 1, -1, -1):
        acc = ps_mul(K, acc, W, n)
        if E[j]:
            acc = ps_add(K, acc, E[j], n)
    return acc


def _collect_w(K, biv, nw=None):
    """``{(t_exp, w_exp): c}`` -> list over w powers of t-coefficient lists."""
    top = max((e[1] for e in biv), default=0)
    out = [[] for _ in range(top + 1)]
    for (i, j), c in biv.items():
        row = out[j]
        if len(row) <= i:
            row.extend([0] * (i + 1 - len(row)))
        row[i] = K.add(row[i], c)
    return [P.trim(r) for r in out]


def branch_affine(model, K, x0, y0):
    """Branch at the affine point ``(x0, y0)`` of the internal model."""
    A = model.affine
    gy = mpoly.evaluate(K, mpoly.derivative(K, A, 1), (x0, y0))
    if gy:
        E = []
        for j in range(model.n + 1):
            gj = model.G[j] if j < model.n else (1,)
            E.append(P.trim(P.taylor_full(K, list(gj), x0)))
        return Branch(K, E, y0, "x", x0=x0, y0=y0)
    # vertical tangent: solve for X - x0 as a series in t = Y - y0
    images = [{(0, 0): x0, (0, 1): 1}, {(0, 0): y0, (1, 0): 1}]
    images = [{e: c for e, c in im.items() if c} for im in images]
    sub_ = mpoly.substitute(K, A, images, 2)
    return Branch(K, _collect_w(K, sub_), 0, "y", x0=x0, y0=y0)


def plane_infinity_chart(model):
    """``H(a, b) = F'(1, a, b)`` as ``{(a_exp, b_exp): c}``."""
    d = model.plane_degree
    return {(j, d - i - j): c for (i, j), c in model.affine.items()}


def branch_plane_infinity(model, K, a0):
    H = plane_infinity_chart(model)
    ha = mpoly.evaluate(K, mpoly.derivative(K, H, 0), (a0, 0))
    if ha:
        # t = b, w = a
        biv = {(e[1], e[0]): c for e, c in H.items()}
        return Branch(K, _collect_w(K, biv), a0, "inf_a", a0=a0)
    images = [{(0, 0): a0, (1, 0): 1}, {(0, 1): 1}]
    images = [{e: c for e, c in im.items() if c} for im in images]
    sub_ = mpoly.substitute(K, H, images, 2)
    return Branch(K, _collect_w(K, sub_), 0, "inf_b", a0=a0)


def branch_hyperelliptic_infinity(model, K):
    g = model.genus
    F = K
    h = list(model.h) + [0] * (g + 1 - len(model.h))
    ht = list(reversed(h[: g + 1]))  # u^g h(1/u)
    f = list(model.f)
    ft = list(reversed(f))  # u^(2g+1) f(1/u)
    top = max(len(ht) + 1, len(ft), 2)
    E = [[] for _ in range(top)]

    def put(j, i, c):
        row = E[j]
        if len(row) <= i:
            row.extend([0] * (i + 1 - len(row)))
        row[i] = F.add(row[i], c)

    put(1, 0, 1)
    for j, c in enumerate(ht):
        if c:
            put(j + 1, 1, c)
    for j, c in enumerate(ft):
        if c:
            put(j, 2, F.neg(c))
    return Branch(K, [P.trim(r) for r in E], 0, "hyp", genus=g)

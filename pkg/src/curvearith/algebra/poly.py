"""Dense univariate polynomials over a :class:`~curvearith.fields.FiniteField`.

The workhorse representation is a plain list of coefficients in ascending
degree with no trailing zeros (the zero polynomial is ``[]``).  The functions
below take the field explicitly.  :class:`Poly` is a thin immutable wrapper
for the public API.
"""

from __future__ import annotations

from dataclasses import dataclass

NEG_INF = float("-inf")

# Operation counter (add, sub, mul, divmod); the amortized gonality scan asserts it stays put.
STATS = {"poly_ops": 0}


def trim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def deg(a) -> int:
    return len(a) - 1


def add(F, a, b):
    STATS["poly_ops"] += 1
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        if c:
            out[i] = F.add(out[i], c)
    return trim(out)


def sub(F, a, b):
    STATS["poly_ops"] += 1
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        if c:
            out[i] = F.sub(out[i], c)
    return trim(out)


def neg(F, a):
    return [F.neg(c) for c in a]


def scale(F, a, c):
    if c == 0:
        return []
    if c == 1:
        return list(a)
    return trim([F.mul(x, c) for x in a])


def mul(F, a, b):
    if not a or not b:
        return []
    STATS["poly_ops"] += 1
    out = [0] * (len(a) + len(b) - 1)
    if F.is_prime:
        p = F.p
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return trim([c % p for c in out])
    fm, fa = F.mul, F.add
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = fa(out[i + j], fm(x, y))
    return trim(out)


def shift(a, k):
    """Multiply by x**k."""
    return [0] * k + list(a) if a else []


def monic(F, a):
    if not a or a[-1] == 1:
        return list(a)
    return scale(F, a, F.inv(a[-1]))


def divmod_(F, a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    STATS["poly_ops"] += 1
    a = list(a)
    db = len(b) - 1
    if len(a) <= db:
        return [], trim(a)
    inv_lead = F.inv(b[-1])
    q = [0] * (len(a) - db)
    if F.is_prime:
        p = F.p
        for i in range(len(a) - 1, db - 1, -1):
            c = a[i] % p
            if c:
                c = c * inv_lead % p
                q[i - db] = c
                for j in range(db):
                    if b[j]:
                        a[i - db + j] -= c * b[j]
            a[i] = 0
        return trim(q), trim([x % p for x in a[:db]])
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c:
            c = F.mul(c, inv_lead)
            q[i - db] = c
            for j in range(db):
                if b[j]:
                    a[i - db + j] = F.sub(a[i - db + j], F.mul(c, b[j]))
            a[i] = 0
    return trim(q), trim(a[:db])


def mod(F, a, b):
    return divmod_(F, a, b)[1]


def div_exact(F, a, b):
    q, r = divmod_(F, a, b)
    if r:
        raise ArithmeticError("inexact polynomial division")
    return q


def gcd(F, a, b):
    a, b = trim(list(a)), trim(list(b))
    while b:
        a, b = b, mod(F, a, b)
    return monic(F, a)


def xgcd(F, a, b):
    """Return ``(g, s, t)`` with ``s a + t b = g`` and ``g`` monic."""
    r0, r1 = trim(list(a)), trim(list(b))
    s0, s1, t0, t1 = [1], [], [], [1]
    while r1:
        q, r = divmod_(F, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(F, s0, mul(F, q, s1))
        t0, t1 = t1, sub(F, t0, mul(F, q, t1))
    if not r0:
        return [], [], []
    c = F.inv(r0[-1])
    return scale(F, r0, c), scale(F, s0, c), scale(F, t0, c)


def powmod(F, a, e, m):
    result = [1]
    a = mod(F, a, m)
    while e:
        if e & 1:
            result = mod(F, mul(F, result, a), m)
        e >>= 1
        if e:
            a = mod(F, mul(F, a, a), m)
    return mod(F, result, m)


def pow_(F, a, e):
    result = [1]
    while e:
        if e & 1:
            result = mul(F, result, a)
        e >>= 1
        if e:
            a = mul(F, a, a)
    return result


def deriv(F, a):
    return trim([F.mul(c, i % F.p) if i % F.p else 0 for i, c in enumerate(a)][1:])


def evaluate(F, a, x):
    """Horner evaluation; pass as ``F`` the field containing ``x`` (coefficients embed)."""
    r = 0
    if F.is_prime:
        p = F.p
        for c in reversed(a):
            r = (r * x + c) % p
        return r
    fm, fa = F.mul, F.add
    for c in reversed(a):
        r = fa(fm(r, x), c)
    return r


def taylor(F, a, x0, count):
    """First ``count`` coefficients of ``a(x0 + t)`` as a list (untrimmed)."""
    a = list(a)
    out = []
    for _ in range(count):
        if not a:
            out.append(0)
            continue
        # synthetic division by (x - x0)
        r = 0
        q = [0] * len(a)
        for i in range(len(a) - 1, -1, -1):
            r = F.add(F.mul(r, x0), a[i])
            q[i] = r
        out.append(q[0])
        a = q[1:]
    return out


def taylor_full(F, a, x0):
    """All coefficients of ``a(x0 + t)``."""
    return trim(taylor(F, a, x0, len(a)))


def compose(F, a, b):
    """``a(b(x))``."""
    r = []
    for c in reversed(a):
        r = add(F, mul(F, r, b), [c] if c else [])
    return r


def pth_root(F, a):
    """Coefficient-wise inverse Frobenius of ``a(x) = b(x)^p`` (requires a' = 0)."""
    p = F.p
    e = F.order // p
    out = []
    for i in range(0, len(a), p):
        out.append(F.pow(a[i], e))
    return trim(out)


def key(a):
    """Degree-then-lex ordering key (leading coefficients compared first)."""
    return (len(a), tuple(reversed(a)))


@dataclass(frozen=True)
class Poly:
    """Immutable univariate polynomial; ``coeffs`` ascending with no trailing zeros."""

    field: object
    coeffs: tuple

    @classmethod
    def of(cls, field, coeffs) -> "Poly":
        return cls(field, tuple(trim([field.element(c) if not isinstance(c, int) else c for c in coeffs])))

    @classmethod
    def x(cls, field) -> "Poly":
        return cls(field, (0, 1))

    @property
    def degree(self):
        return NEG_INF if not self.coeffs else len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    @property
    def lead(self):
        return self.coeffs[-1] if self.coeffs else 0

    def _wrap(self, c):
        return Poly(self.field, tuple(c))

    def _coerce(self, other):
        if isinstance(other, Poly):
            return list(other.coeffs)
        if isinstance(other, int):
            c = other % self.field.p if self.field.is_prime else other
            return [c] if c else []
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return self._wrap(add(self.field, list(self.coeffs), o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return self._wrap(sub(self.field, list(self.coeffs), o))

    def __rsub__(self, other):
        o = self._coerce(other)
        return self._wrap(sub(self.field, o, list(self.coeffs)))

    def __neg__(self):
        return self._wrap(neg(self.field, self.coeffs))

    def __mul__(self, other):
        o = self._coerce(other)
        return self._wrap(mul(self.field, list(self.coeffs), o))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        return self._wrap(pow_(self.field, list(self.coeffs), e))

    def __divmod__(self, other):
        q, r = divmod_(self.field, list(self.coeffs), self._coerce(other))
        return self._wrap(q), self._wrap(r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self):
        return self._wrap(monic(self.field, list(self.coeffs)))

    def gcd(self, other):
        return self._wrap(gcd(self.field, list(self.coeffs), self._coerce(other)))

    def derivative(self):
        return self._wrap(deriv(self.field, self.coeffs))

    def __call__(self, x):
        return evaluate(self.field, self.coeffs, x)

    def sort_key(self):
        return key(self.coeffs)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mon = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if c == 1 and mon:
                terms.append(mon)
            else:
                terms.append(f"{c}{'*' + mon if mon else ''}")
        return " + ".join(terms)

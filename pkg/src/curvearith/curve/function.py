"""Elements of the function field ``F_q(X)[Y]/(G)`` of a :class:`CurveModel`.

An element is ``(sum_j num[j](X) Y^j) / den(X)`` with ``j < n``, ``den`` monic
and ``gcd(den, all num[j]) = 1``.  That normal form is unique, so equality is
structural.
"""

from __future__ import annotations

from ..algebra import poly as P
from ..errors import InvalidInputError
from .model import CurveModel, _det_poly


class FunctionElement:
    __slots__ = ("model", "num", "den", "_hash")

    def __init__(self, model: CurveModel, num, den=(1,), _normalized=False):
        self.model = model
        if _normalized:
            self.num, self.den = num, den
        else:
            self.num, self.den = _normalize(model, [P.trim(list(c)) for c in num], P.trim(list(den)))
        self._hash = None

    # -- constructors ---------------------------------------------------
    @classmethod
    def constant(cls, model, c):
        return cls.from_x_poly(model, [c] if c else [])

    @classmethod
    def from_x_poly(cls, model, coeffs, den=(1,)):
        n = model.n
        return cls(model, [tuple(coeffs)] + [()] * (n - 1), den)

    @classmethod
    def x(cls, model):
        return cls.from_x_poly(model, [0, 1])

    @classmethod
    def y(cls, model):
        n = model.n
        num = [()] * n
        num[1] = (1,)
        return cls(model, num)

    @classmethod
    def from_bivariate(cls, model, terms, den=(1,)):
        """Build ``sum c X^i Y^j`` from ``{(i, j): c}`` (any ``j``), reducing by ``G``."""
        F = model.field
        byj: dict[int, list] = {}
        for (i, j), c in terms.items():
            if c:
                row = byj.setdefault(j, [])
                if len(row) <= i:
                    row.extend([0] * (i + 1 - len(row)))
                row[i] = F.add(row[i], c)
        top = max(byj, default=0)
        coeffs = [P.trim(byj.get(j, [])) for j in range(max(top + 1, model.n))]
        return cls(model, _reduce_y(model, coeffs), den)

    # -- basic predicates -------------------------------------------------
    def is_zero(self) -> bool:
        return not any(self.num)

    def is_constant(self) -> bool:
        return self.den == (1,) and all(not c for c in self.num[1:]) and len(self.num[0]) <= 1

    def constant_value(self) -> int:
        if not self.is_constant():
            raise InvalidInputError("element is not constant")
        return self.num[0][0] if self.num[0] else 0

    def __eq__(self, other):
        if not isinstance(other, FunctionElement):
            return NotImplemented
        return self.model is other.model and self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __repr__(self):
        F = self.model.field
        terms = []
        for j, c in enumerate(self.num):
            if c:
                pc = str(P.Poly(F, c))
                y = "" if j == 0 else ("*y" if j == 1 else f"*y^{j}")
                terms.append(f"({pc}){y}" if y else f"({pc})")
        s = " + ".join(terms) or "0"
        if self.den != (1,):
            s = f"[{s}] / ({P.Poly(F, self.den)})"
        return s

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, FunctionElement):
            return other
        if isinstance(other, int):
            return FunctionElement.constant(self.model, other % self.model.field.order)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        F = self.model.field
        if self.den == other.den:
            num = [P.add(F, list(a), list(b)) for a, b in zip(self.num, other.num)]
            return FunctionElement(self.model, num, self.den)
        g = P.gcd(F, list(self.den), list(other.den))
        ca = P.div_exact(F, list(other.den), g)
        cb = P.div_exact(F, list(self.den), g)
        num = [P.add(F, P.mul(F, list(a), ca), P.mul(F, list(b), cb)) for a, b in zip(self.num, other.num)]
        den = P.mul(F, list(self.den), ca)
        return FunctionElement(self.model, num, den)

    __radd__ = __add__

    def __neg__(self):
        F = self.model.field
        return FunctionElement(self.model, tuple(tuple(P.neg(F, c)) for c in self.num), self.den, _normalized=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        F = self.model.field
        if other.is_constant():
            c = other.constant_value()
            if c == 0:
                return FunctionElement.constant(self.model, 0)
            return FunctionElement(
                self.model, tuple(tuple(P.scale(F, list(a), c)) for a in self.num), self.den, _normalized=True
            )
        num = _mul_y(self.model, self.num, other.num)
        den = P.mul(F, list(self.den), list(other.den))
        return FunctionElement(self.model, num, den)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of the zero function")
        F = self.model.field
        inv_num, norm = _inverse_numerator(self.model, self.num)
        # self = a/den  ->  1/self = den * adj(a) / N(a)
        num = [P.mul(F, list(self.den), c) for c in inv_num]
        return FunctionElement(self.model, num, norm)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = FunctionElement.constant(self.model, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def norm(self) -> list:
        """Norm down to ``F_q(X)`` as ``(numerator, denominator)`` coefficient lists."""
        F = self.model.field
        N = _det_poly(F, _mult_matrix(self.model, self.num))
        return N, P.pow_(F, list(self.den), self.model.n)

    def numerator_element(self):
        return FunctionElement(self.model, self.num, (1,), _normalized=True)

    def to_json(self):
        return {"num": [list(c) for c in self.num], "den": list(self.den)}

    @classmethod
    def from_json(cls, model, data):
        return cls(model, [tuple(c) for c in data["num"]], tuple(data["den"]))


# ---------------------------------------------------------------------------
# helpers on coefficient tuples


def _normalize(model, num, den):
    F = model.field
    if not den:
        raise ZeroDivisionError("zero denominator")
    n = model.n
    num = list(num) + [[]] * (n - len(num))
    if len(num) > n:
        num = _reduce_y(model, num)
    if not any(num):
        return tuple(() for _ in range(n)), (1,)
    if len(den) > 1:
        g = den
        for c in num:
            if c:
                g = P.gcd(F, g, c)
                if len(g) == 1:
                    break
        if len(g) > 1:
            den = P.div_exact(F, den, g)
            num = [P.div_exact(F, c, g) if c else [] for c in num]
    lead = den[-1]
    if lead != 1:
        inv = F.inv(lead)
        den = P.scale(F, den, inv)
        num = [P.scale(F, c, inv) for c in num]
    return tuple(tuple(c) for c in num), tuple(den)


def _reduce_y(model, coeffs):
    """Reduce a Y-polynomial (list of X-coefficient lists) modulo G."""
    F = model.field
    n = model.n
    G = model.G
    coeffs = [list(c) for c in coeffs]
    for k in range(len(coeffs) - 1, n - 1, -1):
        c = coeffs[k]
        if not c:
            continue
        for j in range(n):
            if G[j]:
                coeffs[k - n + j] = P.sub(F, coeffs[k - n + j], P.mul(F, c, list(G[j])))
        coeffs[k] = []
    out = coeffs[:n]
    return out + [[]] * (n - len(out))


def _mul_y(model, a, b):
    F = model.field
    n = model.n
    prod = [[] for _ in range(2 * n - 1)]
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    prod[i + j] = P.add(F, prod[i + j], P.mul(F, list(x), list(y)))
    return _reduce_y(model, prod)


def _mult_matrix(model, a):
    """Matrix (over F[X]) of multiplication by ``a`` on the basis 1, Y, ..., Y^(n-1); column k = a*Y^k."""
    n = model.n
    cols = []
    cur = [list(c) for c in a]
    for _k in range(n):
        cols.append(cur)
        cur = _reduce_y(model, [[]] + cur)
    return [[cols[k][r] for k in range(n)] for r in range(n)]


def _inverse_numerator(model, a):
    """Return ``(adj, N)`` with ``a * adj = N`` in F[X], i.e. ``1/a = adj / N``."""
    F = model.field
    n = model.n
    if model.is_hyperelliptic:
        a0, a1 = list(a[0]), list(a[1])
        h = list(model.h)
        f = list(model.f)
        conj0 = P.sub(F, a0, P.mul(F, a1, h))
        conj1 = P.neg(F, a1)
        N = P.sub(F, P.mul(F, a0, conj0), P.mul(F, P.mul(F, a1, a1), f))
        return [conj0, conj1], N
    M = _mult_matrix(model, a)
    N = _det_poly(F, M)
    if not N:
        raise ZeroDivisionError("element is a zero divisor (reducible model?)")
    adj = []
    for i in range(n):
        Mi = [row[:] for row in M]
        for r in range(n):
            Mi[r][i] = [1] if r == 0 else []
        adj.append(_det_poly(F, Mi))
    return adj, N

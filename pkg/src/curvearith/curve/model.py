"""Curve models: imaginary hyperelliptic and smooth plane curves over F_q.

Both families are presented internally as ``K = F_q(X)[Y]/(G)`` with ``G``
monic in ``Y`` of degree ``n``:

* hyperelliptic ``y^2 + h(x) y = f(x)``: ``X = x``, ``Y = y``, ``n = 2``;
* plane ``F(x, y, z) = 0`` of degree ``d``: a projective change of
  coordinates ``(x, y, z) = M (X, Y, Z)`` is chosen so that ``(0:1:0)`` is
  not on the curve; then ``G = F(M (X, Y, 1)) / F(M e_2)``, ``n = d``, ``Y``
  is integral over ``F_q[X]`` and ``F_q[X, Y]/(G)`` is the maximal order.
  ``M`` is the identity whenever ``(0:1:0)`` is already off the curve.
"""

from __future__ import annotations

import hashlib
import itertools
import json
from dataclasses import dataclass, field

from ..algebra import poly as P
from ..algebra.factor import factor_coeffs, roots
from ..algebra.fields import FieldError, FiniteField, gf
from ..errors import InvalidInputError
from . import mpoly


@dataclass(frozen=True, eq=False)
class CurveModel:
    kind: str  # "hyperelliptic" | "plane"
    field: FiniteField
    genus: int
    n: int  # degree of G in Y
    G: tuple  # G = Y^n + sum_{j<n} G[j](X) Y^j, coefficient tuples over field
    h: tuple = ()
    f: tuple = ()
    plane: tuple = ()  # original monomials ((i, j, l), c), sorted
    transform: tuple = ()  # rows of M with (x, y, z) = M (X, Y, Z)
    affine: dict = field(default_factory=dict, repr=False)  # G as {(i, j): c}
    plane_degree: int = 0

    # -- identity -------------------------------------------------------
    @property
    def q(self) -> int:
        return self.field.order

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def k(self) -> int:
        return self.field.absdeg

    @property
    def is_hyperelliptic(self) -> bool:
        return self.kind == "hyperelliptic"

    def to_spec(self) -> dict:
        """The curve-spec dict this model was built from (canonical form)."""
        F = self.field
        enc = lambda c: F.prime_coords(c)  # noqa: E731
        if self.is_hyperelliptic:
            return {
                "model": "hyperelliptic",
                "p": self.p,
                "k": self.k,
                "h": [enc(c) for c in self.h] or [enc(0)],
                "f": [enc(c) for c in self.f],
            }
        return {
            "model": "plane",
            "p": self.p,
            "k": self.k,
            "F": [{"e": list(e), "c": enc(c)} for e, c in self.plane],
        }

    @property
    def hash(self) -> str:
        return curve_hash(self.to_spec())

    def _key(self):
        return (self.kind, self.p, self.k, self.h, self.f, self.plane)

    def __eq__(self, other):
        return isinstance(other, CurveModel) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        if self.is_hyperelliptic:
            hp = P.Poly(self.field, self.h)
            fp = P.Poly(self.field, self.f)
            lhs = "y^2" if not self.h else f"y^2 + ({hp})*y"
            return f"CurveModel({lhs} = {fp} over GF({self.q}), g={self.genus})"
        terms = " + ".join(f"{c}*x^{i}y^{j}z^{l}" for (i, j, l), c in self.plane)
        return f"CurveModel({terms} = 0 over GF({self.q}), g={self.genus})"


def curve_hash(spec: dict) -> str:
    blob = json.dumps(spec, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


# ---------------------------------------------------------------------------
# construction


def hyperelliptic(F: FiniteField, f, h=()) -> CurveModel:
    """Validate ``y^2 + h(x) y = f(x)`` with ``deg f = 2g + 1`` and ``deg h <= g``."""
    f = tuple(P.trim([F.element(c) if not isinstance(c, int) else c % F.order for c in f]))
    h = tuple(P.trim([F.element(c) if not isinstance(c, int) else c % F.order for c in h]))
    df = len(f) - 1
    if df < 3:
        raise InvalidInputError("deg f must be at least 3 (genus >= 1)")
    if df % 2 == 0:
        raise InvalidInputError(
            f"deg f = {df} is even: real hyperelliptic models (two places at infinity) are not supported"
        )
    g = (df - 1) // 2
    if len(h) - 1 > g:
        raise InvalidInputError(f"deg h = {len(h) - 1} exceeds the genus {g}")
    if F.p == 2:
        if not h:
            raise InvalidInputError("in characteristic 2 the model needs h != 0 to be smooth")
        _check_smooth_char2(F, f, h)
    else:
        disc = P.add(F, P.mul(F, list(h), list(h)), P.scale(F, list(f), 4 % F.p))
        _, facs = factor_coeffs(F, disc)
        rep = [g_ for g_, m in facs if m > 1]
        if rep:
            raise InvalidInputError(
                f"model is singular: h^2 + 4f has the repeated factor {P.Poly(F, tuple(rep[0]))}"
            )
    G = (tuple(P.neg(F, list(f))), tuple(h))
    affine = {(i, 0): F.neg(c) for i, c in enumerate(f) if c}
    for i, c in enumerate(h):
        if c:
            affine[(i, 1)] = c
    affine[(0, 2)] = 1
    return CurveModel("hyperelliptic", F, g, 2, G, h=h, f=f, affine=affine)


def _check_smooth_char2(F, f, h):
    # singular points satisfy h(x) = 0, h'(x) y = f'(x), y^2 = f(x)
    _, facs = factor_coeffs(F, list(h))
    dh, df = P.deriv(F, list(h)), P.deriv(F, list(f))
    for g_, _m in facs:
        e = len(g_) - 1
        K = F.extension(e)
        x0 = roots(K, g_)[0]
        fx = P.evaluate(K, list(f), x0)
        y0 = K.pow(fx, K.order // 2)
        if K.mul(P.evaluate(K, dh, x0), y0) == P.evaluate(K, df, x0):
            raise InvalidInputError(f"model is singular above the root of {P.Poly(F, tuple(g_))}")


def plane(F: FiniteField, monomials) -> CurveModel:
    """Validate a smooth plane curve from ``{(i, j, l): c}`` (or an iterable of pairs)."""
    mono = dict(monomials)
    mono = {tuple(e): c % F.order for e, c in mono.items() if c % F.order}
    if not mono:
        raise InvalidInputError("the zero polynomial does not define a curve")
    degs = {sum(e) for e in mono}
    if len(degs) != 1:
        raise InvalidInputError("plane curve polynomial must be homogeneous")
    d = degs.pop()
    if d < 3:
        raise InvalidInputError(f"plane curves of degree {d} have genus 0")
    M = _choose_transform(F, mono)
    images = [{(1, 0, 0): M[r][0], (0, 1, 0): M[r][1], (0, 0, 1): M[r][2]} for r in range(3)]
    images = [{e: c for e, c in im.items() if c} for im in images]
    Fp = mpoly.substitute(F, mono, images, 3)
    lead = Fp.get((0, d, 0), 0)
    if lead == 0:
        raise InvalidInputError("internal coordinate change failed")  # unreachable
    inv = F.inv(lead)
    affine = {}
    for (i, j, _l), c in Fp.items():
        affine[(i, j)] = F.mul(c, inv)
    _check_plane_smooth(F, affine, d)
    G = []
    for j in range(d):
        coeffs = [0] * (d + 1)
        for (i, jj), c in affine.items():
            if jj == j:
                coeffs[i] = c
        G.append(tuple(P.trim(coeffs)))
    g = (d - 1) * (d - 2) // 2
    return CurveModel(
        "plane",
        F,
        g,
        d,
        tuple(G),
        plane=tuple(sorted(mono.items())),
        transform=tuple(tuple(r) for r in M),
        affine=affine,
        plane_degree=d,
    )


def _projective_points(F):
    q = F.order
    pts = [(0, 1, 0), (1, 0, 0), (0, 0, 1)]
    rest = []
    for a, b in itertools.product(range(q), repeat=2):
        rest.append((1, a, b))
    for a in range(q):
        rest.append((0, 1, a))
    rest = [p for p in rest if p not in pts]
    return pts + sorted(rest)


def _choose_transform(F, mono):
    for P_ in _projective_points(F):
        if mpoly.evaluate(F, mono, P_) != 0:
            a, b, c = P_
            if b:
                cols = [(1, 0, 0), P_, (0, 0, 1)]
            elif a:
                cols = [(0, 1, 0), P_, (0, 0, 1)]
            else:
                cols = [(1, 0, 0), P_, (0, 1, 0)]
            return [[cols[col][row] for col in range(3)] for row in range(3)]
    raise InvalidInputError(
        "every F_q-rational point of the plane lies on the curve; no coordinate change over F_q avoids them"
    )


# -- plane smoothness --------------------------------------------------------


def _as_y_poly(F, biv, nvar_y=1):
    """``{(i, j): c}`` -> list over j of X-coefficient lists."""
    deg_y = max((e[1] for e in biv), default=-1)
    out = [[] for _ in range(deg_y + 1)]
    for (i, j), c in biv.items():
        row = out[j]
        if len(row) <= i:
            row.extend([0] * (i + 1 - len(row)))
        row[i] = c
    return [P.trim(r) for r in out]


def _det_poly(F, M):
    """Determinant of a square matrix over F[X] by fraction-free (Bareiss) elimination."""
    n = len(M)
    if n == 0:
        return [1]
    A = [[list(c) for c in row] for row in M]
    sign = 1
    prev = [1]
    for k in range(n - 1):
        if not A[k][k]:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return []
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = P.sub(F, P.mul(F, A[i][j], A[k][k]), P.mul(F, A[i][k], A[k][j]))
                A[i][j] = P.div_exact(F, num, prev) if prev != [1] else num
            A[i][k] = []
        prev = A[k][k]
    d = A[n - 1][n - 1]
    return P.neg(F, d) if sign < 0 else d


def resultant_y(F, a, b):
    """Resultant in ``Y`` of two polynomials given as lists of X-coefficient lists."""
    da, db = len(a) - 1, len(b) - 1
    if da < 0 or db < 0:
        return []
    if da == 0 and db == 0:
        return [1]
    size = da + db
    M = [[[] for _ in range(size)] for _ in range(size)]
    for r in range(db):
        for j, c in enumerate(reversed(a)):
            M[r][r + j] = c
    for r in range(da):
        for j, c in enumerate(reversed(b)):
            M[db + r][r + j] = c
    return _det_poly(F, M)


def _check_plane_smooth(F, affine, d):
    fx = mpoly.derivative(F, affine, 0)
    fy = mpoly.derivative(F, affine, 1)
    A = _as_y_poly(F, affine)
    # affine chart Z = 1: candidate X-values are roots of a nonzero resultant
    R = []
    for partner in (fx, fy):
        if partner:
            R = resultant_y(F, A, _as_y_poly(F, partner))
            if R:
                break
    if not R:
        raise InvalidInputError("model is singular along a component (partials share a factor with F)")
    _, facs = factor_coeffs(F, R) if len(R) > 1 else (None, [])
    for g_, _m in facs:
        K = F.extension(len(g_) - 1)
        a = roots(K, g_)[0]
        polys = []
        for biv in (affine, fx, fy):
            polys.append(P.trim([mpoly_eval_x(K, biv, a, j) for j in range(d + 1)]))
        gg = polys[0]
        for other in polys[1:]:
            gg = P.gcd(K, gg, other)
        if len(gg) > 1:
            y0 = roots(K, gg)[0]
            raise InvalidInputError(f"model is singular at an affine point over GF({K.order}) (x={a}, y={y0})")
    # line at infinity: points (1 : a : 0) in the chart X = 1, coordinates (a, b = Z/X)
    # H(a, b) = sum c X^i Y^j Z^(d-i-j) with X = 1 -> a^j b^(d-i-j)
    Hd = {}
    for (i, j), c in affine.items():
        Hd[(j, d - i - j)] = c
    ha = mpoly.derivative(F, Hd, 0)
    hb = mpoly.derivative(F, Hd, 1)
    polys = []
    for biv in (Hd, ha, hb):
        row = [0] * (d + 1)
        for (j, k), c in biv.items():
            if k == 0:
                row[j] = c
        polys.append(P.trim(row))
    gg = polys[0]
    for other in polys[1:]:
        gg = P.gcd(F, gg, other)
    if len(gg) > 1:
        raise InvalidInputError("model is singular at a point on the line at infinity")


def mpoly_eval_x(K, biv, a, j):
    """Coefficient of ``Y^j`` in ``biv(a, Y)``."""
    s = 0
    for (i, jj), c in biv.items():
        if jj == j:
            s = K.add(s, K.mul(c, K.pow(a, i)))
    return s


# ---------------------------------------------------------------------------
# spec dicts


def _field_from_spec(spec):
    try:
        p, k = int(spec["p"]), int(spec.get("k", 1))
        return gf(p, k)
    except (KeyError, TypeError, ValueError, FieldError) as exc:
        raise InvalidInputError(f"bad field description: {exc}") from None


def _coeff(F, raw, where):
    if isinstance(raw, int):
        raw = [raw]
    if not isinstance(raw, list) or len(raw) != F.absdeg or not all(isinstance(c, int) for c in raw):
        raise InvalidInputError(f"{where}: expected a list of {F.absdeg} integers, got {raw!r}")
    if any(not 0 <= c < F.p for c in raw):
        raise InvalidInputError(f"{where}: coordinates must lie in [0, {F.p})")
    return F.from_prime_coords(raw)


def validate_model(spec: dict) -> CurveModel:
    """Build a validated :class:`CurveModel` from a curve-spec dict."""
    if not isinstance(spec, dict):
        raise InvalidInputError("curve spec must be a JSON object")
    kind = spec.get("model")
    F = _field_from_spec(spec)
    if kind == "hyperelliptic":
        f = [_coeff(F, c, f"f[{i}]") for i, c in enumerate(spec.get("f", []))]
        h = [_coeff(F, c, f"h[{i}]") for i, c in enumerate(spec.get("h", []))]
        return hyperelliptic(F, f, h)
    if kind == "plane":
        mono = {}
        for idx, rec in enumerate(spec.get("F", [])):
            try:
                e = tuple(int(v) for v in rec["e"])
            except (KeyError, TypeError, ValueError):
                raise InvalidInputError(f"F[{idx}]: monomial record needs an exponent list 'e'") from None
            if len(e) != 3 or min(e) < 0:
                raise InvalidInputError(f"F[{idx}]: exponent must be three nonnegative integers")
            if e in mono:
                raise InvalidInputError(f"F[{idx}]: duplicate monomial {list(e)}")
            mono[e] = _coeff(F, rec.get("c"), f"F[{idx}].c")
        return plane(F, mono)
    raise InvalidInputError(f"unknown model kind {kind!r} (expected 'hyperelliptic' or 'plane')")

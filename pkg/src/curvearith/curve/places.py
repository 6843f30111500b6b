"""Places (closed points), valuations, evaluation and uniformizers.

A place is the Frobenius orbit of a geometric point; it is stored as one
representative point over ``F_{q^e}`` (``e`` = degree) in internal
coordinates.  For finite places the representative uses the least root
``x0`` of the base polynomial ``pi`` and the least ``y0`` in its orbit.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..algebra import poly as P
from ..algebra.factor import factor_coeffs, irreducibles_up_to, minimal_polynomial, roots
from ..algebra.residue import ResidueField, make_residue_field
from ..errors import InternalError, InvalidInputError, PoleError
from . import series as S
from .function import FunctionElement
from .model import CurveModel

INFINITY = "inf"


@dataclass(eq=False)
class Place:
    model: CurveModel
    degree: int
    kind: str  # split | ramified | inert | finite | infinite
    base: tuple | None  # monic pi(X) coefficients, None above infinity
    field: object  # F_{q^degree}
    point: tuple  # (x0, y0) finite; (a0,) plane infinite; () hyperelliptic infinite
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def key(self):
        return (self.degree, base_order(self.base), self.point)

    @property
    def is_infinite(self) -> bool:
        return self.base is None

    @property
    def is_rational(self) -> bool:
        return self.degree == 1

    def __eq__(self, other):
        return isinstance(other, Place) and self.model == other.model and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __lt__(self, other):
        return self.key < other.key

    def __repr__(self):
        if self.base is None:
            where = "inf" if not self.point else f"(1:{self.point[0]}:0)"
        else:
            where = f"{P.Poly(self.model.field, self.base)}; ({self.point[0]}, {self.point[1]})"
        return f"Place(deg={self.degree}, {self.kind}, {where})"

    def label(self) -> str:
        """Stable text id used in JSON output and cache keys."""
        b = "inf" if self.base is None else "-".join(map(str, self.base))
        return f"d{self.degree}:{b}:" + "-".join(map(str, self.point))

    # -- lazily built local data ------------------------------------------
    def branch(self) -> S.Branch:
        br = self._cache.get("branch")
        if br is None:
            br = self.new_branch()
            self._cache["branch"] = br
        return br

    def new_branch(self) -> S.Branch:
        X, K = self.model, self.field
        if self.base is not None:
            return S.branch_affine(X, K, *self.point)
        if X.is_hyperelliptic:
            return S.branch_hyperelliptic_infinity(X, K)
        return S.branch_plane_infinity(X, K, self.point[0])

    @property
    def residue(self) -> ResidueField:
        r = self._cache.get("residue")
        if r is None:
            r, lifts = _residue_and_lifts(self)
            self._cache["residue"], self._cache["lifts"] = r, lifts
        return r

    def lifts(self) -> list:
        """Functions regular at the place whose residues are the residue-field basis."""
        self.residue
        return self._cache["lifts"]

    def uniformizer(self) -> FunctionElement:
        u = self._cache.get("uniformizer")
        if u is None:
            u = uniformizer_at(self.model, self)
            self._cache["uniformizer"] = u
        return u


def base_order(base):
    return (1,) if base is None else (0, P.key(list(base)))


# ---------------------------------------------------------------------------
# enumeration

_REGISTRY: dict = {}


def _registry(model):
    reg = _REGISTRY.get(model)
    if reg is None:
        reg = _REGISTRY[model] = {"places": {}, "over": {}, "inf": None}
    return reg


def _intern(model, place):
    reg = _registry(model)["places"]
    return reg.setdefault(place.key, place)


def _orbit_degree(K, vals, q, start):
    """Smallest ``k`` (a multiple of ``start``) with ``v^(q^k) = v`` for all ``v``."""
    k = start
    step = q**start
    cur = list(vals)
    while True:
        cur = [K.pow(v, step) for v in cur]
        if cur == list(vals):
            return k
        k += start


def _finite_places_at_degree(model, pi, e):
    """Places of degree exactly ``e`` above ``pi`` (general plane procedure)."""
    F = model.field
    r = len(pi) - 1
    K = F.extension(e)
    x0 = roots(K, list(pi))[0]
    Gx = [P.evaluate(K, list(c), x0) for c in model.G] + [1]
    ys = roots(K, Gx)
    qr = F.order**r
    seen = set()
    out = []
    for y0 in ys:
        if y0 in seen:
            continue
        orbit = [y0]
        t = K.pow(y0, qr)
        while t != y0:
            orbit.append(t)
            t = K.pow(t, qr)
        seen.update(orbit)
        if r * len(orbit) != e:
            continue
        out.append(Place(model, e, "finite", tuple(pi), K, (x0, min(orbit))))
    return out


def _hyperelliptic_places_over(model, pi):
    F = model.field
    r = len(pi) - 1
    K = F.extension(r)
    x0 = roots(K, list(pi))[0]
    hv = P.evaluate(K, list(model.h), x0)
    fv = P.evaluate(K, list(model.f), x0)
    ys = roots(K, [K.neg(fv), hv, 1])
    if len(ys) == 2:
        return [Place(model, r, "split", tuple(pi), K, (x0, y)) for y in ys]
    if len(ys) == 1:
        return [Place(model, r, "ramified", tuple(pi), K, (x0, ys[0]))]
    K2 = F.extension(2 * r)
    x0 = roots(K2, list(pi))[0]
    hv = P.evaluate(K2, list(model.h), x0)
    fv = P.evaluate(K2, list(model.f), x0)
    y0 = roots(K2, [K2.neg(fv), hv, 1])[0]
    return [Place(model, 2 * r, "inert", tuple(pi), K2, (x0, y0))]


def _fibre_degrees(model, pi):
    """Degrees of the places above ``pi`` (from the factorization of ``G(x0, Y)``)."""
    F = model.field
    r = len(pi) - 1
    K = F.extension(r)
    x0 = roots(K, list(pi))[0]
    Gx = [P.evaluate(K, list(c), x0) for c in model.G] + [1]
    _, facs = factor_coeffs(K, Gx)
    return sorted({r * (len(g) - 1) for g, _m in facs})


def places_over(model: CurveModel, base) -> list:
    """All places above ``base`` (a monic irreducible coefficient tuple, or ``INFINITY``)."""
    if base == INFINITY or base is None:
        return infinite_places(model)
    base = tuple(base)
    reg = _registry(model)["over"]
    if base in reg:
        return reg[base]
    if model.is_hyperelliptic:
        out = _hyperelliptic_places_over(model, base)
    else:
        out = []
        for e in _fibre_degrees(model, base):
            out.extend(_finite_places_at_degree(model, base, e))
    out = sorted(_intern(model, p) for p in out)
    reg[base] = out
    return out


def infinite_places(model: CurveModel) -> list:
    reg = _registry(model)
    if reg["inf"] is not None:
        return reg["inf"]
    F = model.field
    if model.is_hyperelliptic:
        out = [Place(model, 1, "infinite", None, F, ())]
    else:
        H = S.plane_infinity_chart(model)
        c = [0] * (model.plane_degree + 1)
        for (ja, kb), v in H.items():
            if kb == 0:
                c[ja] = v
        _, facs = factor_coeffs(F, P.trim(c))
        out = []
        for g, _m in facs:
            e = len(g) - 1
            K = F.extension(e)
            a0 = roots(K, g)[0]
            out.append(Place(model, e, "infinite", None, K, (a0,)))
    out = sorted(_intern(model, p) for p in out)
    reg["inf"] = out
    return out


def places_up_to(model: CurveModel, m: int) -> list:
    """All places of degree <= m, sorted by (degree, base point, representative)."""
    if m < 1:
        raise InvalidInputError("degree bound must be >= 1")
    F = model.field
    out = [p for p in infinite_places(model) if p.degree <= m]
    for pi in irreducibles_up_to(F, m):
        pi = pi.coeffs
        if model.is_hyperelliptic:
            out.extend(p for p in places_over(model, pi) if p.degree <= m)
            continue
        reg = _registry(model)["over"]
        if pi in reg:
            out.extend(p for p in reg[pi] if p.degree <= m)
            continue
        for e in _fibre_degrees(model, pi):
            if e <= m:
                out.extend(_intern(model, p) for p in _finite_places_at_degree(model, pi, e))
    return sorted(out)


# ---------------------------------------------------------------------------
# local computations


def _point_value(K, f: FunctionElement, point):
    """``(numerator value, denominator value)`` of ``f`` at an affine point."""
    x0, y0 = point
    num = 0
    ypow = 1
    for c in f.num:
        if c:
            num = K.add(num, K.mul(P.evaluate(K, list(c), x0), ypow))
        ypow = K.mul(ypow, y0)
    return num, P.evaluate(K, list(f.den), x0)


def _precision_cap(f: FunctionElement, extra=0):
    X = f.model
    n = X.n
    degs = [len(c) - 1 for c in f.num if c]
    if X.is_hyperelliptic:
        bnum = max((2 * (len(c) - 1) + j * (2 * X.genus + 1) for j, c in enumerate(f.num) if c), default=0)
    else:
        bnum = n * max((len(c) - 1 + j for j, c in enumerate(f.num) if c), default=0)
    bden = n * (len(f.den) - 1)
    return 2 * (bnum + bden) + 4 * n + 32 + extra + max(degs, default=0)


def element_series(f: FunctionElement, branch: S.Branch, N: int):
    """``(numerator, denominator)`` of ``f`` as Laurent series on ``branch`` (w known mod t^N)."""
    K = branch.K
    branch.ensure(N)
    if branch.kind == "x":
        x0 = branch.x0
        W = branch.w[:N]
        acc = [0] * N
        for c in reversed(f.num):
            acc = S.ps_mul(K, acc, W, N)
            if c:
                acc = S.ps_add(K, acc, P.taylor(K, list(c), x0, min(N, len(c))), N)
        num = S.make(0, acc, N)
        den = S.exact(P.taylor_full(K, list(f.den), x0))
        return num, den
    Xs, Ys = branch.coordinates(N)
    acc = S.Laurent(0, [], None)
    for c in reversed(f.num):
        acc = S.mul(K, acc, Ys)
        if c:
            acc = S.add(K, acc, S.poly_at(K, list(c), Xs))
    den = S.poly_at(K, list(f.den), Xs)
    return acc, den


def local_series(f: FunctionElement, place: Place, rel: int, branch: S.Branch | None = None) -> S.Laurent:
    """Laurent expansion of ``f`` in the branch parameter ``t`` with relative precision >= ``rel``."""
    if f.is_zero():
        raise InvalidInputError("the zero function has no expansion")
    br = branch if branch is not None else place.branch()
    cap = _precision_cap(f, rel)
    N = max(8, rel + 4)
    while True:
        num, den = element_series(f, br, N)
        ok = num.known and den.known
        if ok and (num.relprec is None or num.relprec >= rel) and (den.relprec is None or den.relprec >= rel):
            return S.div(br.K, num, den, rel)
        if N > cap:
            raise InternalError(f"valuation of {f} at {place} exceeds the precision cap {cap}")
        N *= 2


def valuation_at(f: FunctionElement, place: Place) -> int:
    if f.is_zero():
        raise InvalidInputError("valuation of the zero function is undefined")
    if place.base is not None:
        nv, dv = _point_value(place.field, f, place.point)
        if dv and nv:
            return 0
    return local_series(f, place, 1).v


def evaluate_at(f: FunctionElement, place: Place) -> int:
    """Residue class of ``f`` at ``place`` as an element of ``place.field``."""
    K = place.field
    if f.is_zero():
        return 0
    if place.base is not None:
        nv, dv = _point_value(K, f, place.point)
        if dv:
            return K.div(nv, dv)
    s = local_series(f, place, 1)
    if s.v < 0:
        raise PoleError(f"{f} has a pole of order {-s.v} at {place}")
    return s.c[0] if s.v == 0 else 0


def _coordinate(model, which):
    X = FunctionElement.x(model)
    Y = FunctionElement.y(model)
    if which == "X":
        return X
    if which == "Y":
        return Y
    if which == "a":  # Y/X
        return Y / X
    if which == "b":  # 1/X
        return X.inverse()
    raise InternalError(which)


def _mu_of(model, F, K, value, coord):
    mu = minimal_polynomial(K, value, F)
    acc = FunctionElement.constant(model, 0)
    for c in reversed(mu):
        acc = acc * coord + c
    return acc


def uniformizer_at(model: CurveModel, place: Place) -> FunctionElement:
    """A function of valuation 1 at ``place``.

    Candidates are ``mu(z)`` where ``z`` is a coordinate of the internal model and ``mu`` is the
    minimal polynomial over ``F_q`` of the value of ``z`` at the place; the first one that works wins.
    """
    F, K = model.field, place.field
    if place.base is None and model.is_hyperelliptic:
        u = FunctionElement.x(model) ** model.genus / FunctionElement.y(model)
        if valuation_at(u, place) != 1:
            raise InternalError("x^g/y is not a uniformizer at infinity")
        return u
    if place.base is not None:
        x0, y0 = place.point
        candidates = [("X", x0), ("Y", y0)]
    else:
        candidates = [("a", place.point[0]), ("b", 0)]
    for which, value in candidates:
        u = _mu_of(model, F, K, value, _coordinate(model, which))
        if valuation_at(u, place) == 1:
            return u
    raise InternalError(f"no coordinate uniformizer at {place}")


def _residue_and_lifts(place: Place):
    X = place.model
    F, K = X.field, place.field
    e = place.degree
    if place.base is None and X.is_hyperelliptic:
        return ResidueField.from_basis(F, K, [1]), [FunctionElement.constant(X, 1)]
    if X.is_hyperelliptic:
        pi = P.Poly(F, place.base)
        xs = [FunctionElement.x(X) ** i for i in range(len(place.base) - 1)]
        if place.kind == "inert":
            R = make_residue_field(F, pi, quadratic=(P.Poly(F, X.h), P.Poly(F, X.f)))
            y = FunctionElement.y(X)
            return R, xs + [u * y for u in xs]
        return make_residue_field(F, pi), xs
    # plane: powers of the first generating coordinate combination
    if place.base is None:
        gens = [(_coordinate(X, "a"), place.point[0])]
    else:
        x0, y0 = place.point
        Xf, Yf = FunctionElement.x(X), FunctionElement.y(X)
        gens = [(Xf, x0), (Yf, y0)] + [(Xf + c * Yf, K.add(x0, K.mul(c, y0))) for c in range(1, F.order)]
    for func, val in gens:
        if _orbit_degree(K, [val], F.order, 1) == e:
            basis = [K.pow(val, i) for i in range(e)]
            return ResidueField.from_basis(F, K, basis), [func**i for i in range(e)]
    raise InternalError(f"no coordinate combination generates the residue field at {place}")

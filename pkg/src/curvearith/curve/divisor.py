"""Weil divisors, divisors of functions and lookups by original coordinates."""

from __future__ import annotations

from ..algebra import poly as P
from ..algebra.factor import factor_coeffs
from ..algebra.linalg import inverse
from ..errors import InvalidInputError
from .function import FunctionElement
from .model import CurveModel
from .places import INFINITY, Place, base_order, infinite_places, places_over, valuation_at


class Divisor:
    """Finitely supported map ``Place -> int``; zero multiplicities are dropped."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        for place, m in dict(terms or {}).items():
            if not isinstance(place, Place):
                raise InvalidInputError(f"divisor support must be places, got {place!r}")
            m = int(m)
            if m:
                clean[place] = clean.get(place, 0) + m
        self._terms = {p: m for p, m in sorted(clean.items(), key=lambda pm: pm[0].key) if m}
        self._hash = None

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def point(cls, place: Place, m: int = 1):
        return cls({place: m})

    def __getitem__(self, place) -> int:
        return self._terms.get(place, 0)

    valuation = __getitem__

    def items(self):
        return self._terms.items()

    @property
    def support(self) -> list:
        return list(self._terms)

    @property
    def degree(self) -> int:
        return sum(m * p.degree for p, m in self._terms.items())

    def is_effective(self) -> bool:
        return all(m > 0 for m in self._terms.values())

    def is_zero(self) -> bool:
        return not self._terms

    def positive_part(self):
        return Divisor({p: m for p, m in self._terms.items() if m > 0})

    def negative_part(self):
        return Divisor({p: -m for p, m in self._terms.items() if m < 0})

    def __add__(self, other):
        out = dict(self._terms)
        for p, m in other.items():
            out[p] = out.get(p, 0) + m
        return Divisor(out)

    def __neg__(self):
        return Divisor({p: -m for p, m in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, k: int):
        return Divisor({p: k * m for p, m in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, Divisor) and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple((p.key, m) for p, m in self._terms.items()))
        return self._hash

    def __repr__(self):
        if not self._terms:
            return "Divisor(0)"
        return "Divisor(" + " + ".join(f"{m}*{p!r}" for p, m in self._terms.items()) + ")"

    def to_json(self):
        return [{"place": p.label(), "degree": p.degree, "multiplicity": m} for p, m in self._terms.items()]


def support_localization(f: FunctionElement) -> list:
    """Base points (monic irreducible tuples, then ``INFINITY``) over which ``div f`` lives."""
    if f.is_zero():
        raise InvalidInputError("the zero function has no divisor")
    F = f.model.field
    bases = set()
    for poly in (list(f.den), f.norm()[0]):
        if len(poly) > 1:
            _, facs = factor_coeffs(F, poly)
            bases.update(tuple(g) for g, _m in facs)
    out = sorted(bases, key=base_order)
    out.append(INFINITY)
    return out


def divisor_of(f: FunctionElement) -> Divisor:
    terms = {}
    for base in support_localization(f):
        for place in places_over(f.model, base):
            v = valuation_at(f, place)
            if v:
                terms[place] = v
    return Divisor(terms)


# -- original projective coordinates ----------------------------------------


def projective_coordinates(model: CurveModel) -> tuple:
    """The original ``(x, y, z)`` as functions, dehomogenized by the internal ``Z``.

    Hyperelliptic models return ``(x, y, 1)``.
    """
    X, Y = FunctionElement.x(model), FunctionElement.y(model)
    one = FunctionElement.constant(model, 1)
    if model.is_hyperelliptic:
        return X, Y, one
    out = []
    for a, b, c in model.transform:
        out.append(X * a + Y * b + one * c)
    return tuple(out)


def coordinate_ratio(model: CurveModel, num: str, den: str) -> FunctionElement:
    """Ratio of two original coordinates, e.g. ``coordinate_ratio(X, "x", "z")``."""
    coords = dict(zip("xyz", projective_coordinates(model)))
    try:
        return coords[num] / coords[den]
    except KeyError as exc:
        raise InvalidInputError(f"unknown coordinate {exc.args[0]!r}") from None


def place_at_point(model: CurveModel, point) -> Place:
    """The rational place at an ``F_q``-point given in original coordinates.

    Hyperelliptic: ``(x, y)`` or ``None`` for infinity.  Plane: ``(x, y, z)``.
    """
    F = model.field
    if model.is_hyperelliptic:
        if point is None:
            return infinite_places(model)[0]
        x0, y0 = (c % F.order for c in point)
        target = (x0, y0)
        base = (F.neg(x0), 1)
    else:
        Minv = inverse(F, [list(r) for r in model.transform])
        pt = [c % F.order for c in point]
        X0, Y0, Z0 = (
            F.add(F.add(F.mul(r[0], pt[0]), F.mul(r[1], pt[1])), F.mul(r[2], pt[2])) for r in Minv
        )
        if Z0 == 0:
            if X0 == 0:
                raise InvalidInputError(f"{tuple(point)} is not a point of the curve")
            a0 = F.div(Y0, X0)
            for pl in infinite_places(model):
                if pl.degree == 1 and pl.point == (a0,):
                    return pl
            raise InvalidInputError(f"{tuple(point)} is not a point of the curve")
        x0, y0 = F.div(X0, Z0), F.div(Y0, Z0)
        target = (x0, y0)
        base = (F.neg(x0), 1)
    base = tuple(P.trim(list(base)))
    for pl in places_over(model, base):
        if pl.degree == 1 and pl.point == target:
            return pl
    raise InvalidInputError(f"{tuple(point)} is not a point of the curve")


def place_by_label(model: CurveModel, label: str) -> Place:
    """Inverse of :meth:`Place.label` (``d<deg>:<base coeffs or inf>:<point>``)."""
    try:
        dpart, bpart, ppart = label.split(":")
        degree = int(dpart.lstrip("d"))
        base = INFINITY if bpart == "inf" else tuple(int(c) for c in bpart.split("-"))
        point = tuple(int(c) for c in ppart.split("-")) if ppart else ()
    except ValueError:
        raise InvalidInputError(f"malformed place label {label!r}") from None
    for pl in places_over(model, base):
        if pl.degree == degree and pl.point == point:
            return pl
    raise InvalidInputError(f"no place with label {label!r} on this curve")

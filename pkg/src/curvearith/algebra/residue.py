"""Residue fields of places as F_q-vector spaces with an explicit coordinate map."""

from __future__ import annotations

from dataclasses import dataclass

from . import poly as P
from ..errors import InvalidInputError
from .factor import is_irreducible, roots
from .linalg import inverse


@dataclass(frozen=True, eq=False)
class ResidueField:
    """``k(x)`` realized as ``field`` (an extension of ``base``) with an ordered F_q-basis.

    ``phi`` sends an element to its coordinate vector in ``basis``.
    """

    base: object
    field: object
    basis: tuple
    _inv: tuple

    @classmethod
    def from_basis(cls, base, field, basis):
        e = len(basis)
        if field.order != base.order**e:
            raise InvalidInputError("basis size does not match the extension degree")
        cols = [_coords_over(field, base, b) for b in basis]
        M = [[cols[j][i] for j in range(e)] for i in range(e)]
        try:
            inv = inverse(base, M)
        except ZeroDivisionError:
            raise InvalidInputError("residue basis is not a basis") from None
        return cls(base, field, tuple(basis), tuple(tuple(r) for r in inv))

    @property
    def degree(self) -> int:
        return len(self.basis)

    def phi(self, a: int) -> tuple:
        F = self.base
        c = _coords_over(self.field, F, a)
        out = []
        for row in self._inv:
            s = 0
            for x, y in zip(row, c):
                if x and y:
                    s = F.add(s, F.mul(x, y))
            out.append(s)
        return tuple(out)

    def from_coords(self, v) -> int:
        K = self.field
        s = 0
        for c, b in zip(v, self.basis):
            if c:
                s = K.add(s, K.mul(c, b))
        return s


def _coords_over(K, F, a):
    """Coordinates of ``a`` in ``K`` over the subfield ``F`` (tower power basis)."""
    if K is F:
        return [a]
    # K = F[z]/mu directly in the common case
    if K.base is F:
        return K.to_vec(a)
    raise InvalidInputError("residue field must be a direct extension of the base field")


def make_residue_field(base, pi: P.Poly, quadratic=None) -> ResidueField:
    """Residue field of the place over ``pi`` (or the inert place above it).

    ``quadratic`` is an optional pair ``(h, f)`` of polynomials over ``base``;
    when given, the residue field is the degree-2 extension generated by a
    root of ``Y^2 + h(x)Y - f(x)`` over ``base[x]/(pi)``, and the basis is the
    power basis of the root of ``pi`` tensored with ``{1, y}``.
    """
    coeffs = list(pi.coeffs)
    if len(coeffs) < 2 or not is_irreducible(base, coeffs):
        raise InvalidInputError(f"{pi} is not irreducible")
    r = len(coeffs) - 1
    e = 2 * r if quadratic is not None else r
    K = base.extension(e)
    x0 = roots(K, coeffs)[0]
    xs = [K.pow(x0, i) for i in range(r)]
    if quadratic is None:
        return ResidueField.from_basis(base, K, xs)
    h, f = quadratic
    hv = P.evaluate(K, list(h.coeffs), x0)
    fv = P.evaluate(K, list(f.coeffs), x0)
    ys = roots(K, [K.neg(fv), hv, 1])
    if not ys:
        raise InvalidInputError("quadratic has no root in the expected extension")
    Kr = base.extension(r)
    rts_small = roots(Kr, [0] if False else _quad_over(Kr, base, coeffs, h, f))
    if rts_small:
        raise InvalidInputError("quadratic part splits; the place is not inert")
    y0 = ys[0]
    return ResidueField.from_basis(base, K, xs + [K.mul(b, y0) for b in xs])


def _quad_over(Kr, base, coeffs, h, f):
    x0 = roots(Kr, coeffs)[0]
    hv = P.evaluate(Kr, list(h.coeffs), x0)
    fv = P.evaluate(Kr, list(f.coeffs), x0)
    return [Kr.neg(fv), hv, 1]

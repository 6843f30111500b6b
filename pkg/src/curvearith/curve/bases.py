"""Closed-form bases of holomorphic differentials and of ``L(m D_inf)``."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import InvalidInputError
from .divisor import Divisor
from .function import FunctionElement
from .model import CurveModel
from .places import infinite_places, valuation_at


@dataclass(frozen=True, eq=False)
class RiemannRochBasis:
    """``functions`` span ``L(divisor)`` over the base field."""

    model: CurveModel
    divisor: Divisor
    functions: tuple
    name: str

    @property
    def dimension(self) -> int:
        return len(self.functions)

    @property
    def basis_id(self) -> str:
        return self.name


@dataclass(frozen=True, eq=False)
class DifferentialBasis:
    """Ratios ``omega_i / omega_1``; ``divisor`` is ``K = div(omega_1)``."""

    model: CurveModel
    divisor: Divisor
    functions: tuple
    name: str = "canonical"
    omega1: str = ""

    @property
    def dimension(self) -> int:
        return len(self.functions)

    @property
    def basis_id(self) -> str:
        return self.name


def hyperplane_divisor(model: CurveModel, m: int = 1) -> Divisor:
    """``m * D_inf``: the infinite place (hyperelliptic) or the line ``Z = 0`` (plane)."""
    if model.is_hyperelliptic:
        return Divisor.point(infinite_places(model)[0], m)
    X = FunctionElement.x(model)
    # (0:1:0) is off the internal model, so X = x/z has poles exactly along Z = 0
    return Divisor({pl: -m * valuation_at(X, pl) for pl in infinite_places(model)})


def canonical_divisor(model: CurveModel) -> Divisor:
    if model.is_hyperelliptic:
        return hyperplane_divisor(model, 2 * model.genus - 2)
    return hyperplane_divisor(model, model.plane_degree - 3)


def differential_basis(model: CurveModel) -> DifferentialBasis:
    X, Y = FunctionElement.x(model), FunctionElement.y(model)
    if model.is_hyperelliptic:
        funcs = tuple(X**i for i in range(model.genus))
        omega1 = "dx/(2y+h)"
    else:
        d = model.plane_degree
        monos = sorted(((a, b) for a in range(d - 2) for b in range(d - 2) if a + b <= d - 3), key=lambda ab: (sum(ab), ab[1]))
        funcs = tuple(X**a * Y**b for a, b in monos)
        omega1 = "dX/(dF/dY)"
    return DifferentialBasis(model, canonical_divisor(model), funcs, "canonical", omega1)


def infinity_multiple(model: CurveModel, n: int) -> int:
    """Smallest ``m`` with ``deg(m D_inf) >= n`` (and ``m >= d - 2`` for plane curves)."""
    if n < max(1, 2 * model.genus - 1):
        raise InvalidInputError(f"target degree {n} is below 2g - 1 = {2 * model.genus - 1}")
    if model.is_hyperelliptic:
        return n
    d = model.plane_degree
    return max(-(-n // d), d - 2)


def infinity_rr_basis(model: CurveModel, n: int) -> RiemannRochBasis:
    """Monomial basis of ``L(m D_inf)`` for the least admissible ``m`` of degree ``>= n``."""
    m = infinity_multiple(model, n)
    X, Y = FunctionElement.x(model), FunctionElement.y(model)
    if model.is_hyperelliptic:
        g = model.genus
        funcs = [X**i for i in range(m // 2 + 1)]
        funcs += [X**j * Y for j in range(m + 1) if 2 * j + 2 * g + 1 <= m]
    else:
        d = model.plane_degree
        monos = sorted(((i, j) for i in range(m + 1) for j in range(min(d, m + 1)) if i + j <= m), key=lambda ij: (sum(ij), ij[1]))
        funcs = [X**i * Y**j for i, j in monos]
    D0 = hyperplane_divisor(model, m)
    expected = D0.degree - model.genus + 1
    if len(funcs) != expected:
        raise InvalidInputError(f"basis size {len(funcs)} differs from l(D_0) = {expected}")
    return RiemannRochBasis(model, D0, tuple(funcs), f"inf{m}")

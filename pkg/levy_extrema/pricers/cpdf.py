""" Laplace transforms in T of the joint cpdf of (X_T, running maximum) and of the no-touch probability.

For a1 <= a2 and x1 <= x2 <= a2, V~(q) = I1 + I2/q with

    I1 = (1/(2*pi)) * int exp(i*(x1 - a1)*xi) / (-i*xi*(q + psi(xi))) d xi,
    I2 = (1/(2*pi)**2) * int_{L-} d eta exp(i*(x1 - a2)*eta) * phi_plus(eta)
                       * int_{L+} d xi exp(i*(a2 - a1)*xi) * phi_minus(xi) / (xi*(xi - eta)).
"""

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from ..contours.select import select_params
from ..contours.sinh import SinhContour
from ..model.levy import LevyModel
from ..whf.factors import WhfTable


@dataclass(frozen=True)
class LaplaceValue:
    """
    Arguments:
        q: spectral parameter.
        value: V~(q).
        parts: component integrals.
    """

    q: complex
    value: complex
    parts: Tuple[complex, ...] = ()


@dataclass(frozen=True)
class CachedContour:
    """ A contour of a one-dimensional integral with psi cached at its nodes. """

    contour: SinhContour
    psi: np.ndarray

    @classmethod
    def build(cls, model: LevyModel, contour: SinhContour) -> 'CachedContour':
        return cls(contour=contour, psi=model.psi(contour.nodes))

    @property
    def below_zero(self) -> bool:
        return self.contour.apex < 0


def one_dim_contour(model: LevyModel, x: float, tol: float, q_min: float, family: str = 'standard',
                    above_zero: bool = False, decay: float = None) -> CachedContour:
    """
    Contour of the integral of exp(i*x*xi)/(-i*xi*(q + psi(xi))): wings up for x > 0, flat for x = 0, wings down with
    the apex below 0 for x < 0 (the apex stays above 0 when above_zero is set).
    """

    contour = select_params(model, 'one_dim', tol, q_min=q_min, family=family, x=x, above_zero=above_zero,
                            decay=decay)
    return CachedContour.build(model, contour)


def european_digital_integral(q: complex, x: float, one_dim: CachedContour) -> complex:
    """ (1/(2*pi)) * int exp(i*x*xi) / (-i*xi*(q + psi(xi))) d xi, plus the residue 1/q if the contour is below 0. """

    contour = one_dim.contour
    xi = contour.nodes
    values = np.exp(1j * x * xi) / (-1j * xi * (q + one_dim.psi))
    integral = contour.integrate(values) / (2 * math.pi)
    if one_dim.below_zero:
        integral += 1 / q
    return integral


def cpdf_laplace(model: LevyModel, table: WhfTable, q: complex, x1: float, x2: float, a1: float, a2: float,
                 one_dim: CachedContour) -> LaplaceValue:
    """
    Laplace transform of F(T) = P[x1 + X_T <= a1, max(x2, x1 + running maximum) <= a2].

    Args:
        model: Levy model.
        table: Wiener-Hopf factors of q on the contour pair.
        q: spectral parameter.
        x1, x2: state, x1 <= x2.
        a1, a2: levels, a1 <= a2.
        one_dim: contour of the one-dimensional term, oriented by the sign of x1 - a1.

    Returns:
        The transform with parts (I1, I2).
    """

    if not a1 <= a2:
        raise ValueError(f'cpdf needs a1 <= a2, got a1={a1}, a2={a2}.')
    if not x1 <= x2:
        raise ValueError(f'State must satisfy x1 <= x2, got x1={x1}, x2={x2}.')

    if x2 > a2:
        return LaplaceValue(q=q, value=0j, parts=(0j, 0j))
    if a1 == a2:
        return no_touch_laplace(model, table, q, x1, x2, a2)

    first = european_digital_integral(q, x1 - a1, one_dim)

    pair = table.pair
    xi, eta = pair.plus.nodes, pair.minus.nodes
    u_plus = np.exp(1j * (a2 - a1) * xi) * table.minus_on_plus / xi * pair.plus.derivatives
    u_minus = np.exp(1j * (x1 - a2) * eta) * table.plus_on_minus * pair.minus.derivatives
    coefficient = pair.plus.zeta * pair.minus.zeta / (2 * math.pi) ** 2
    second = coefficient * (u_plus @ (pair.kernel @ u_minus))

    return LaplaceValue(q=q, value=first + second / q, parts=(first, second))


def no_touch_laplace(model: LevyModel, table: WhfTable, q: complex, x1: float, x2: float, a2: float) -> LaplaceValue:
    """
    Laplace transform of P[max(x2, x1 + running maximum) <= a2]:
    q*V~ = (1/(2*pi)) * int_{L+} exp(i*(x1 - a2)*xi) * phi_plus(xi) / (-i*xi) d xi.
    For x1 < a2 the integral is taken on L- and the residue at 0 contributes 1.

    Args:
        model: Levy model.
        table: Wiener-Hopf factors of q.
        q: spectral parameter.
        x1, x2: state, x1 <= x2.
        a2: barrier.

    Returns:
        The transform with parts (q*V~,).
    """

    if not x1 <= x2:
        raise ValueError(f'State must satisfy x1 <= x2, got x1={x1}, x2={x2}.')
    if x2 > a2:
        return LaplaceValue(q=q, value=0j, parts=(0j,))

    pair = table.pair
    x = x1 - a2
    if x < 0:
        eta = pair.minus.nodes
        values = np.exp(1j * x * eta) * table.plus_on_minus / (-1j * eta)
        scaled = 1 + pair.minus.integrate(values) / (2 * math.pi)
    else:
        xi = pair.plus.nodes
        values = table.plus_on_plus / (-1j * xi)
        scaled = pair.plus.integrate(values) / (2 * math.pi)

    return LaplaceValue(q=q, value=scaled / q, parts=(scaled,))

""" Bromwich integral V(T) = (1/(2*pi*i)) * int e^{qT} F(q) dq, on a sinh-deformed contour or on a vertical line. """

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .evaluate import evaluate_on_grid
from ..contours.select import bromwich_params
from ..contours.sinh import BromwichContour
from ..quad.trapezoid import TrapezoidGrid, sum_by_parts


@dataclass(frozen=True)
class BromwichScheme:
    """
    Arguments:
        contour: sinh-deformed Bromwich contour.
        max_workers: threads used to evaluate the transform.
    """

    contour: BromwichContour
    max_workers: Optional[int] = None

    @classmethod
    def for_maturity(cls, T: float, tol: float, omega_l: float, sigma_floor: float = 0.0, n: Optional[int] = None,
                     max_workers: Optional[int] = None) -> 'BromwichScheme':
        return cls(contour=bromwich_params(T, tol, omega_l, sigma_floor=sigma_floor, n=n), max_workers=max_workers)

    @property
    def q_values(self) -> np.ndarray:
        return self.contour.nodes


def invert_sinh_bromwich(scheme: BromwichScheme, transform: Callable, T: float,
                         values: Optional[np.ndarray] = None) -> np.ndarray:
    """
    Inverts on the contour q(y) = sigma + i*b*sinh(i*omega + y), y = j*zeta, j >= 0, using F(conj(q)) = conj(F(q)):
    V(T) = (zeta/pi) * Re sum_j w_j * exp(q_j*T) * F(q_j) * q'(y_j)/i, with w_0 = 1/2 and w_j = 1 otherwise.

    Args:
        scheme: Bromwich scheme.
        transform: complex q -> F(q), scalar or array valued.
        T: maturity.
        values: transform values at the contour nodes, when already computed.

    Returns:
        The value at T.
    """

    contour = scheme.contour
    q = contour.nodes
    if values is None:
        values = evaluate_on_grid(transform, q, max_workers=scheme.max_workers)
    values = np.asarray(values, dtype=complex)

    weights = np.ones(q.size)
    weights[0] = 0.5
    kernel = weights * np.exp(q * T) * contour.derivatives / 1j

    total = np.tensordot(kernel, values, axes=(0, 0))
    return contour.zeta / math.pi * np.real(total)


def invert_flat_bromwich(transform: Callable, T: float, sigma: float, zeta: float, n: int, n_iters: int = 3,
                         max_workers: Optional[int] = None) -> float:
    """
    Inverts on the vertical line Re q = sigma, truncated to |Im q| <= n*zeta and accelerated by n_iters summations
    by parts: V(T) = exp(sigma*T)/(2*pi) * int exp(i*u*T) * F(sigma + i*u) du.

    Args:
        transform: complex q -> F(q), scalar valued.
        T: maturity.
        sigma: abscissa, right of every singularity of F.
        zeta: step in u.
        n: half-count.
        n_iters: number of summations by parts.
        max_workers: threads used to evaluate the transform.

    Returns:
        The value at T.
    """

    if not T > 0:
        raise ValueError(f'Maturity must be positive, got T={T}.')

    grid = TrapezoidGrid.symmetric(zeta, n)
    u = np.concatenate([grid.nodes, grid.nodes[-1] + zeta * np.arange(1, n_iters + 1)])
    values = evaluate_on_grid(transform, sigma + 1j * u, max_workers=max_workers)

    total = sum_by_parts(grid, -T, values, n_iters)
    return float(np.real(math.exp(sigma * T) / (2 * math.pi) * total))

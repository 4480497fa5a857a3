""" Laplace inversion from values of the transform at real points: Gaver-Wynn-Rho and Gaver-Stehfest.

Both methods sample the transform at q = k*ln(2)/T, k = 1, ..., 2M. When T is large these q are small, and the
transform may only be computable for q above a floor; the shift V(T) = exp(a*T) * L^{-1}[F(q + a)](T) moves the
sampling points to the right.
"""

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.special import comb, factorial

from .evaluate import evaluate_on_grid

DEFAULT_M = 8
M_RANGE = (6, 10)


@dataclass(frozen=True)
class GwrScheme:
    """
    Arguments:
        T: maturity.
        M: number of Gaver functionals; the transform is sampled at 2M points.
        shift_a: exponential shift a >= 0.
        max_workers: threads used to evaluate the transform.
    """

    T: float
    M: int = DEFAULT_M
    shift_a: float = 0.0
    max_workers: Optional[int] = None

    def __post_init__(self):
        if not self.T > 0:
            raise ValueError(f'Maturity must be positive, got T={self.T}.')
        if not M_RANGE[0] <= self.M <= M_RANGE[1]:
            raise ValueError(f'GWR order M={self.M} outside the working range {M_RANGE}.')
        if self.M != DEFAULT_M:
            warnings.warn(f'GWR order M={self.M}: in double precision only M={DEFAULT_M} is reliably accurate.',
                          RuntimeWarning)
        if self.shift_a < 0:
            raise ValueError(f'Shift must be nonnegative, got a={self.shift_a}.')

    @property
    def tau(self) -> float:
        return math.log(2) / self.T

    @property
    def sample_points(self) -> np.ndarray:
        """ q_k = k*ln(2)/T + a, k = 1, ..., 2M. """
        return self.tau * np.arange(1, 2 * self.M + 1) + self.shift_a

    @classmethod
    def with_floor(cls, T: float, sigma_floor: float, M: int = DEFAULT_M, **kwargs) -> 'GwrScheme':
        """ Scheme whose smallest sampling point ln(2)/T + a exceeds sigma_floor. """
        shift = max(0.0, sigma_floor - math.log(2) / T)
        return cls(T=T, M=M, shift_a=shift, **kwargs)


def gaver_functionals(values: np.ndarray, tau: float, M: int, signed: bool = True) -> np.ndarray:
    """
    Gaver functionals f_n = n*tau*C(2n, n) * sum_{i=0}^{n} (-1)**i * C(n, i) * F((n + i)*tau), n = 1, ..., M.

    Args:
        values: F(k*tau) for k = 1, ..., 2M along the first axis.
        tau: ln(2)/T.
        M: number of functionals.
        signed: alternating signs; False sums the absolute weights.

    Returns:
        Array of shape (M,) + values.shape[1:].
    """

    values = np.asarray(values)
    if values.shape[0] != 2 * M:
        raise ValueError(f'Expected {2 * M} transform values, got {values.shape[0]}.')

    functionals = []
    for n in range(1, M + 1):
        i = np.arange(n + 1)
        weights = (-1.0) ** i * comb(n, i) if signed else comb(n, i)
        terms = values[n + i - 1]
        total = np.tensordot(weights, terms, axes=(0, 0))
        functionals.append(n * tau * comb(2 * n, n) * total)

    return np.stack(functionals)


def gaver_rounding_bounds(values: np.ndarray, tau: float, M: int) -> np.ndarray:
    """
    Bounds on the rounding error of the Gaver functionals,
    16*eps*n*tau*C(2n, n) * sum_{i=0}^{n} C(n, i)*|F((n + i)*tau)|.
    The alternating sums cancel, so the error grows like 4**n while the functionals stay bounded.

    Args:
        values: F(k*tau) for k = 1, ..., 2M along the first axis.
        tau: ln(2)/T.
        M: number of functionals.

    Returns:
        Array of the shape of gaver_functionals.
    """

    return gaver_functionals(np.abs(values), tau, M, signed=False) * 16 * np.finfo(float).eps


def wynn_rho(sequence: np.ndarray, rounding: Optional[np.ndarray] = None) -> np.ndarray:
    """
    Limit of a sequence estimated by Wynn's rho algorithm.

    rho_{-1} = 0, rho_0 = f and rho_k(n) = rho_{k-2}(n+1) + k/(rho_{k-1}(n+1) - rho_{k-1}(n)). The estimate is the
    last entry of the highest even column. An entry whose column stops changing (a vanishing difference) has
    converged, and keeps the estimate of the last even column reached. Works elementwise along the trailing axes.

    With rounding bounds, a sequence whose terms all agree with f_1 within the bounds is constant up to rounding,
    and its estimate is f_1.

    Args:
        sequence: f_1, ..., f_M along the first axis.
        rounding: bounds on the rounding error of every term, as from gaver_rounding_bounds.

    Returns:
        The estimate.
    """

    sequence = np.asarray(sequence)
    m = sequence.shape[0]
    if m < 3:
        raise ValueError(f'Wynn rho needs at least 3 terms, got {m}.')

    flat = np.zeros(sequence.shape[1:], dtype=bool)
    if rounding is not None:
        rounding = np.asarray(rounding)
        flat = np.all(np.abs(sequence - sequence[0]) <= rounding + rounding[0], axis=0)

    previous = np.zeros((m + 1,) + sequence.shape[1:], dtype=sequence.dtype)
    current = sequence.copy()
    best = sequence[-1].copy()
    converged = np.zeros(sequence.shape[1:], dtype=bool)

    for k in range(1, m):
        difference = current[1:] - current[:-1]
        scale = np.maximum(np.abs(current[1:]), np.abs(current[:-1]))
        small = np.abs(difference) <= 64 * np.finfo(float).eps * scale

        stalled = small.any(axis=0) & ~converged
        if (k - 1) % 2 == 0:
            best = np.where(stalled, current[-1], best)
        converged = converged | stalled

        with np.errstate(divide='ignore', invalid='ignore'):
            step = np.where(small, 0.0, k / np.where(small, 1.0, difference))

        following = previous[1:m - k + 1] + step
        previous, current = current, following

        if k % 2 == 0:
            best = np.where(converged, best, current[-1])

    return np.where(flat, sequence[0], best)


def invert_gwr(scheme: GwrScheme, transform: Callable) -> np.ndarray:
    """
    Gaver-Wynn-Rho inversion.

    Args:
        scheme: GWR scheme.
        transform: real q -> F(q), scalar or array valued.

    Returns:
        The value at T (array if the transform is array valued).
    """

    values = np.real(evaluate_on_grid(transform, scheme.sample_points, max_workers=scheme.max_workers))
    functionals = gaver_functionals(values, scheme.tau, scheme.M)
    estimate = wynn_rho(functionals, gaver_rounding_bounds(values, scheme.tau, scheme.M))
    return math.exp(scheme.shift_a * scheme.T) * estimate


def stehfest_coefficients(M: int) -> np.ndarray:
    """
    zeta_k = (-1)**(M + k) * sum_{j=floor((k+1)/2)}^{min(k, M)} j**(M+1)/M! * C(M, j) * C(2j, j) * C(j, k - j),
    k = 1, ..., 2M.
    """

    coefficients = []
    for k in range(1, 2 * M + 1):
        total = 0
        for j in range((k + 1) // 2, min(k, M) + 1):
            total += j ** (M + 1) * comb(M, j, exact=True) * comb(2 * j, j, exact=True) * comb(j, k - j, exact=True)
        coefficients.append((-1) ** (M + k) * total / factorial(M, exact=True))
    return np.array(coefficients, dtype=float)


def invert_gaver_stehfest(transform: Callable, T: float, M: int = DEFAULT_M, shift_a: float = 0.0,
                          max_workers: Optional[int] = None) -> np.ndarray:
    """
    Gaver-Stehfest inversion V(T) = (ln(2)/T) * sum_{k=1}^{2M} zeta_k * F(k*ln(2)/T).

    Args:
        transform: real q -> F(q).
        T: maturity.
        M: order.
        shift_a: exponential shift.
        max_workers: threads used to evaluate the transform.

    Returns:
        The value at T.
    """

    if not T > 0:
        raise ValueError(f'Maturity must be positive, got T={T}.')

    tau = math.log(2) / T
    points = tau * np.arange(1, 2 * M + 1) + shift_a
    values = np.real(evaluate_on_grid(transform, points, max_workers=max_workers))
    estimate = tau * np.tensordot(stehfest_coefficients(M), values, axes=(0, 0))
    return math.exp(shift_a * T) * estimate

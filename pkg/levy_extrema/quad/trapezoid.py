""" Infinite trapezoid rule on uniform grids, with a-priori error control and summation by parts.

The integrands handled here are functions of the real variable y of a conformal change of variables, i.e.
g(y) = f(chi(y)) * chi'(y). For such integrands the error of the (untruncated) trapezoid rule with step zeta is bounded
by H(g, d) * exp(-2*pi*d/zeta) / (1 - exp(-2*pi*d/zeta)), where d is the half-width of the strip of analyticity of g and
H(g, d) its Hardy norm.
"""

import math
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np
from scipy.optimize import brentq


@dataclass(frozen=True)
class TrapezoidGrid:
    """
    Uniform grid offset + j*zeta, j = -n_neg, ..., n_pos.

    Arguments:
        zeta: step, strictly positive.
        n_neg: number of nodes left of the origin.
        n_pos: number of nodes right of the origin.
        offset: grid origin.
    """

    zeta: float
    n_neg: int
    n_pos: int
    offset: float = 0.0

    def __post_init__(self):
        if not self.zeta > 0:
            raise ValueError(f'Trapezoid step must be positive, got zeta={self.zeta}.')
        if self.n_neg < 0 or self.n_pos < 0:
            raise ValueError(f'Half-counts must be nonnegative, got n_neg={self.n_neg}, n_pos={self.n_pos}.')

    @classmethod
    def symmetric(cls, zeta: float, n: int, offset: float = 0.0) -> 'TrapezoidGrid':
        return cls(zeta=zeta, n_neg=n, n_pos=n, offset=offset)

    @property
    def indices(self) -> np.ndarray:
        return np.arange(-self.n_neg, self.n_pos + 1)

    @property
    def nodes(self) -> np.ndarray:
        return self.offset + self.zeta * self.indices

    @property
    def size(self) -> int:
        return self.n_neg + self.n_pos + 1

    @property
    def half_length(self) -> float:
        return self.zeta * max(self.n_neg, self.n_pos)


@dataclass(frozen=True)
class ErrorBudget:
    """
    Error budget of the infinite trapezoid rule.

    Arguments:
        tol: target error.
        d: half-width of the strip of analyticity of the integrand in the y coordinate.
        hardy_norm_est: estimate of the Hardy norm H(g, d).
    """

    tol: float
    d: float
    hardy_norm_est: float = 1.0

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError(f'Tolerance must be positive, got tol={self.tol}.')
        if not self.d > 0:
            raise ValueError(f'Strip half-width must be positive, got d={self.d}.')
        if not self.hardy_norm_est > 0:
            raise ValueError(f'Hardy norm estimate must be positive, got {self.hardy_norm_est}.')


def _check_finite(values: np.ndarray, nodes: np.ndarray):
    bad = ~np.isfinite(values)
    if np.any(bad):
        j = int(np.argmax(bad))
        raise FloatingPointError(f'Non-finite integrand value {values[j]} at node y={nodes[j]}.')


def trapezoid_sum(grid: TrapezoidGrid, integrand: Union[Callable, np.ndarray]) -> complex:
    """
    Evaluates zeta * sum_j g(node_j) over the grid.

    The summation runs in ascending j and is exactly rounded (math.fsum on real and imaginary parts), so the
    result does not depend on how the values were produced.

    Args:
        grid: trapezoid grid.
        integrand: vectorized function of the nodes, or the array of its values at the nodes.

    Returns:
        The trapezoid approximation of the integral.
    """

    nodes = grid.nodes
    values = np.asarray(integrand(nodes) if callable(integrand) else integrand, dtype=complex)

    if values.shape != nodes.shape:
        raise ValueError(f'Integrand returned {values.shape} values for a grid of {nodes.size} nodes.')

    _check_finite(values, nodes)

    total = complex(math.fsum(values.real), math.fsum(values.imag))
    return grid.zeta * total


def discretization_error(budget: ErrorBudget, zeta: float) -> float:
    ratio = math.exp(-2 * math.pi * budget.d / zeta)
    return budget.hardy_norm_est * ratio / (1 - ratio)


def step_for_tolerance(budget: ErrorBudget) -> float:
    """
    Largest step zeta for which the discretization error bound does not exceed budget.tol.

    With x = exp(-2*pi*d/zeta) the bound H*x/(1-x) equals tol exactly at x = tol/(H + tol).

    Args:
        budget: error budget.

    Returns:
        The step zeta.
    """

    return 2 * math.pi * budget.d / math.log(budget.hardy_norm_est / budget.tol + 1)


def truncation_for_tolerance(envelope: Callable[[float], float], tol: float, upper: float = 400.0,
                             lower: float = 0.0) -> float:
    """
    Smallest truncation parameter Lambda for which envelope(Lambda) <= tol/2.

    The envelope models the absolute value of the integrand (or of its tail integral) in the y coordinate and must be
    decreasing on [lower, upper].

    Args:
        envelope: decay envelope, a decreasing function of y > 0.
        tol: target error.
        upper: largest admissible Lambda.
        lower: smallest admissible Lambda.

    Returns:
        Lambda.
    """

    target = math.log(tol / 2)

    def _excess(y):
        value = envelope(y)
        if value <= 0:
            return -np.inf
        return math.log(value) - target

    if _excess(lower) <= 0:
        return lower
    if _excess(upper) > 0:
        return upper

    return brentq(_excess, lower, upper, xtol=1e-6)


def estimate_hardy_norm(g_of_y: Callable, d: float, span: float, n_nodes: int = 21) -> float:
    """
    Estimates H(g, d) from |g| sampled on the two boundaries of the strip.

    Args:
        g_of_y: integrand as a vectorized function of complex y.
        d: strip half-width.
        span: length of the y-interval where the integrand is not negligible.
        n_nodes: number of sample nodes per boundary.

    Returns:
        A conservative estimate of the Hardy norm (never below 1e-300).
    """

    y = np.linspace(-span / 2, span / 2, n_nodes)
    with np.errstate(all='ignore'):
        upper = np.abs(g_of_y(y + 0.99j * d))
        lower = np.abs(g_of_y(y - 0.99j * d))

    values = np.concatenate([upper, lower])
    values = values[np.isfinite(values)]
    if values.size == 0:
        return 1.0

    return max(float(values.max()) * span, 1e-300)


def sum_by_parts(grid: TrapezoidGrid, a: float, g_values: np.ndarray, n_iters: int) -> complex:
    """
    Oscillatory trapezoid sum zeta * sum_j exp(-i*a*y_j) * g_j accelerated by n_iters summations by parts.

    Uses zeta / (exp(i*a*zeta) - 1)**n * sum_j exp(-i*a*y_j) * (Delta^n g)_j, where Delta is the forward difference.
    g_values must hold the grid values followed by n_iters extra nodes past the right edge.

    Args:
        grid: trapezoid grid of the truncated sum.
        a: frequency of the oscillating factor.
        g_values: g at the grid nodes plus n_iters extra nodes.
        n_iters: number of summations by parts, at least 1.

    Returns:
        The accelerated sum.
    """

    if n_iters < 1:
        raise ValueError(f'Number of summations by parts must be at least 1, got {n_iters}.')

    g_values = np.asarray(g_values, dtype=complex)
    if g_values.size != grid.size + n_iters:
        raise ValueError(f'Expected {grid.size + n_iters} samples of g (grid plus {n_iters} extra nodes), '
                         f'got {g_values.size}.')

    denominator = np.exp(1j * a * grid.zeta) - 1
    if abs(denominator) < 1e-8:
        raise ValueError(f'Resonant phase: exp(i*a*zeta) = 1 for a={a}, zeta={grid.zeta}.')

    differences = np.diff(g_values, n=n_iters)
    nodes = grid.nodes
    _check_finite(differences, nodes)

    terms = np.exp(-1j * a * nodes) * differences
    total = complex(math.fsum(terms.real), math.fsum(terms.imag))

    return grid.zeta * total / denominator ** n_iters

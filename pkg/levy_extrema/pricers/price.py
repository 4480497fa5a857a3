""" Pricing pipeline: contours for all maturities, the per-q main block, and the Laplace inversion.

1. Choose the apex windows of L+ and L-, the admissibility floor of q and the q-grid of every maturity.
2. Build the contour pair (valid for |q| above the smallest q in use) and the one-dimensional contours.
3. For every q build the Wiener-Hopf factors once and evaluate the transforms of all points.
4. Invert every maturity.
"""

import math
import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .barrier import barrier_laplace, knock_out_decomposition
from .cpdf import CachedContour, cpdf_laplace, no_touch_laplace, one_dim_contour
from .exchange import exchange_laplace, exchange_minus_window
from .general import flat_xi2_contour, laplace_value_general
from .payoffs import PayoffSpec
from ..contours.checks import check_contours_disjoint, validate_deformation
from ..contours.select import admissibility_floor, default_window, deformation_angles
from ..laplace.bromwich import BromwichScheme, invert_sinh_bromwich
from ..laplace.evaluate import evaluate_on_grid
from ..laplace.gwr import GwrScheme, gaver_functionals, gaver_rounding_bounds, stehfest_coefficients, wynn_rho
from ..model.levy import LevyModel
from ..quad.trapezoid import TrapezoidGrid, sum_by_parts
from ..whf.factors import ContourPair, build_whf_table

METHODS = ('sinh', 'gwr', 'stehfest', 'flat')


@dataclass(frozen=True)
class LaplaceScheme:
    """
    Inversion backend.

    Arguments:
        method: 'sinh' (sinh-deformed Bromwich), 'gwr' (Gaver-Wynn-Rho), 'stehfest' (Gaver-Stehfest) or 'flat'
            (Bromwich line with summation by parts).
        M: order of the Gaver methods.
        shift_a: shift of the Gaver methods; None derives it from the admissibility floor.
        omega_l: Bromwich angle; None takes it from the deformation family.
        n_ell: override of the number of Bromwich nodes.
        n_iters: summations by parts of the flat method.
        max_workers: threads evaluating the transform.
    """

    method: str = 'sinh'
    M: int = 8
    shift_a: Optional[float] = None
    omega_l: Optional[float] = None
    n_ell: Optional[int] = None
    n_iters: int = 3
    max_workers: Optional[int] = None

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f'Unknown inversion method {self.method}, expected one of {METHODS}.')

    def error_estimate(self, tol: float) -> float:
        if self.method == 'gwr':
            return 10 ** (-0.9 * self.M)
        if self.method == 'stehfest':
            return 10 ** (-0.5 * self.M)
        return tol


@dataclass(frozen=True)
class PricingTask:
    """
    Arguments:
        model: Levy model.
        payoffs: points to price, all of the same kind.
        maturities: maturities T.
        x1, x2: state, x1 <= x2.
        tol: error tolerance of every integral.
        family: deformation family.
        overrides: contour overrides omega_plus, omega_minus, n_plus, n_minus.
    """

    model: LevyModel
    payoffs: Tuple[PayoffSpec, ...]
    maturities: Tuple[float, ...]
    x1: float = 0.0
    x2: float = 0.0
    tol: float = 1e-12
    family: str = 'standard'
    overrides: Dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        if not self.payoffs:
            raise ValueError('A pricing task needs at least one point.')
        kinds = {payoff.kind for payoff in self.payoffs}
        if len(kinds) > 1:
            raise ValueError(f'All points of a task must be of one kind, got {sorted(kinds)}.')
        if not self.maturities or min(self.maturities) <= 0:
            raise ValueError(f'Maturities must be positive, got {self.maturities}.')
        if not self.x1 <= self.x2:
            raise ValueError(f'State must satisfy x1 <= x2, got x1={self.x1}, x2={self.x2}.')
        unknown = set(self.overrides) - {'omega_plus', 'omega_minus', 'n_plus', 'n_minus'}
        if unknown:
            raise KeyError(f'Unknown contour overrides: {sorted(unknown)}.')

    @property
    def kind(self) -> str:
        return self.payoffs[0].kind


@dataclass
class PricingResult:
    """
    Arguments:
        task: the task.
        method: inversion method.
        values: array of shape (number of maturities, number of points).
        est_error: error estimate of every value.
        timings: milliseconds spent per stage.
        grid_sizes: number of nodes of the contours.
    """

    task: PricingTask
    method: str
    values: np.ndarray
    est_error: float
    timings: Dict[str, float] = field(default_factory=dict)
    grid_sizes: Dict[str, int] = field(default_factory=dict)

    @property
    def ms_per_point(self) -> float:
        return sum(self.timings.values()) / self.values.size


def _windows(task: PricingTask) -> Tuple[Tuple[float, float], Tuple[float, float]]:
    profile = task.model.profile
    plus = default_window(profile, 'plus')
    if task.kind == 'exchange':
        beta = max(payoff.beta for payoff in task.payoffs)
        minus = exchange_minus_window(profile, beta)
    else:
        minus = default_window(profile, 'minus')
    return plus, minus


def _flat_line(T: float, tol: float, sigma_floor: float, n_iters: int) -> Tuple[float, TrapezoidGrid, np.ndarray]:
    # step pi/T puts the aliases at distance 2T, damped by exp(-2*sigma*T)
    sigma = sigma_floor + math.log(1 / tol) / (2 * T)
    zeta = math.pi / T
    n = int(min(1e5, math.ceil((math.exp(sigma * T) / tol) ** (1 / 3)))) + 8
    grid = TrapezoidGrid.symmetric(zeta, n)
    u = np.concatenate([grid.nodes, grid.nodes[-1] + zeta * np.arange(1, n_iters + 1)])
    return sigma, grid, sigma + 1j * u


class _Pipeline:
    """ Contours and per-q transforms of one task. """

    def __init__(self, task: PricingTask, q_min: float):
        self.task = task
        model = task.model
        plus_window, minus_window = _windows(task)
        overrides = task.overrides

        self.pair = ContourPair.from_model(model, task.tol, q_min, family=task.family, plus_window=plus_window,
                                           minus_window=minus_window, omega_plus=self._omega_plus(),
                                           omega_minus=overrides.get('omega_minus'),
                                           n_plus=overrides.get('n_plus'), n_minus=overrides.get('n_minus'))
        if check_contours_disjoint(self.pair.plus, self.pair.minus, verbose=False):
            raise ValueError('Contours L+ and L- intersect.')

        self.with_atoms = task.kind in ('exchange', 'general') and model.profile.finite_variation_with_drift
        self.one_dim: List[Optional[CachedContour]] = [self._one_dim(payoff, q_min) for payoff in task.payoffs]
        self.power_dim: List[Optional[CachedContour]] = [self._power_dim(payoff, q_min) for payoff in task.payoffs]
        self.xi2 = None
        if task.kind == 'general':
            level = 0.5 * max(self.pair.minus.apex, -self.pair.plus.apex)
            self.xi2 = flat_xi2_contour(level, task.tol, half_width=0.5 * abs(level))

    def _omega_plus(self) -> Optional[float]:
        task = self.task
        omega_plus = task.overrides.get('omega_plus')
        if omega_plus is None and task.kind == 'exchange' and task.x2 > 0:
            # exp(-i*x2*xi) on L+ needs downward wings, flatter than those of L-
            omega_plus = deformation_angles(task.model.profile, task.family)[0] / 3
        return omega_plus

    def _power_dim(self, payoff: PayoffSpec, q_min: float) -> Optional[CachedContour]:
        task = self.task
        if payoff.kind != 'exchange' or task.x2 <= 0:
            return None
        return one_dim_contour(task.model, task.x1 - task.x2 / payoff.beta, task.tol, q_min, family=task.family,
                               above_zero=True)

    def _one_dim(self, payoff: PayoffSpec, q_min: float) -> Optional[CachedContour]:
        task = self.task
        model = task.model
        if payoff.kind == 'cpdf':
            if task.x2 > payoff.a2 or payoff.a1 == payoff.a2:
                return None
            return one_dim_contour(model, task.x1 - payoff.a1, task.tol, q_min, family=task.family)
        if payoff.kind == 'barrier':
            amount, rest = knock_out_decomposition(payoff.terminal, payoff.h)
            if rest is None:
                return None
            return one_dim_contour(model, task.x1 - rest.log_strike, task.tol, q_min, family=task.family,
                                   above_zero=True)
        if payoff.kind == 'exchange':
            return one_dim_contour(model, task.x1 - task.x2, task.tol, q_min, family=task.family, above_zero=True)
        if payoff.kind == 'general':
            return one_dim_contour(model, task.x1 - payoff.general.x1_exponent, task.tol, q_min,
                                   family=task.family, above_zero=True)
        return None

    def validate(self, q_values: np.ndarray):
        for contour in (self.pair.plus, self.pair.minus):
            report = validate_deformation(self.task.model, contour, q_values, verbose=False)
            if report.flag:
                q, node = report.offending[0]
                raise ValueError(f'Contour not admissible: 1 + psi/q crosses (-inf, 0] at xi={node} for q={q}.')

    def transform(self, q: complex) -> np.ndarray:
        task = self.task
        model = task.model
        table = build_whf_table(model, q, self.pair, with_atoms=self.with_atoms)

        values = []
        for payoff, one_dim, power_dim in zip(task.payoffs, self.one_dim, self.power_dim):
            if payoff.kind == 'cpdf':
                result = cpdf_laplace(model, table, q, task.x1, task.x2, payoff.a1, payoff.a2, one_dim)
            elif payoff.kind == 'no_touch':
                result = no_touch_laplace(model, table, q, task.x1, task.x2, payoff.a2)
            elif payoff.kind == 'barrier':
                result = barrier_laplace(model, table, q, task.x1, payoff.h, payoff.terminal, one_dim)
            elif payoff.kind == 'exchange':
                result = exchange_laplace(model, table, q, task.x1, task.x2, payoff.beta, one_dim, power_dim)
            else:
                result = laplace_value_general(model, table, q, task.x1, task.x2, payoff.general, one_dim,
                                               self.xi2)
            values.append(result.value)

        return np.array(values, dtype=complex)


def _q_grids(task: PricingTask, scheme: LaplaceScheme, sigma_floor: float, omega_l: float) -> List:
    grids = []
    for T in task.maturities:
        if scheme.method == 'sinh':
            grids.append(BromwichScheme.for_maturity(T, task.tol, omega_l, sigma_floor=sigma_floor, n=scheme.n_ell,
                                                     max_workers=scheme.max_workers))
        elif scheme.method in ('gwr', 'stehfest'):
            if scheme.shift_a is None:
                grids.append(GwrScheme.with_floor(T, sigma_floor, M=scheme.M, max_workers=scheme.max_workers))
            else:
                grids.append(GwrScheme(T=T, M=scheme.M, shift_a=scheme.shift_a, max_workers=scheme.max_workers))
        else:
            grids.append(_flat_line(T, task.tol, sigma_floor, scheme.n_iters))
    return grids


def _q_values(grid) -> np.ndarray:
    if isinstance(grid, BromwichScheme):
        return grid.q_values
    if isinstance(grid, GwrScheme):
        return grid.sample_points
    return grid[2]


def _q_min(q_values: np.ndarray) -> float:
    return float(np.min(np.abs(q_values)))


def _invert(grid, values: np.ndarray, T: float, scheme: LaplaceScheme) -> np.ndarray:
    if isinstance(grid, BromwichScheme):
        return invert_sinh_bromwich(grid, None, T, values=values)
    if isinstance(grid, GwrScheme):
        real_values = np.real(values)
        if scheme.method == 'gwr':
            estimate = wynn_rho(gaver_functionals(real_values, grid.tau, grid.M),
                                gaver_rounding_bounds(real_values, grid.tau, grid.M))
        else:
            estimate = grid.tau * np.tensordot(stehfest_coefficients(grid.M), real_values, axes=(0, 0))
        return math.exp(grid.shift_a * T) * estimate
    sigma, line, _ = grid
    totals = [sum_by_parts(line, -T, values[:, j], scheme.n_iters) for j in range(values.shape[1])]
    return np.real(math.exp(sigma * T) / (2 * math.pi) * np.array(totals))


def price(task: PricingTask, scheme: LaplaceScheme = LaplaceScheme(), verbose: bool = False) -> PricingResult:
    """
    Prices every point of the task at every maturity.

    Args:
        task: pricing task.
        scheme: inversion backend.
        verbose: print progress.

    Returns:
        The result, values[i, j] for maturity i and point j.
    """

    model = task.model
    profile = model.profile
    if scheme.method == 'sinh' and profile.finite_variation_with_drift:
        raise ValueError('Finite-variation processes with drift cannot use the sinh-deformed Bromwich contour: '
                         'use the gwr or flat method.')

    timings = {}
    start = time.perf_counter()

    plus_window, minus_window = _windows(task)
    sigma_floor = admissibility_floor(model, (plus_window, minus_window))
    omega_l = scheme.omega_l if scheme.omega_l is not None else deformation_angles(profile, task.family)[2]

    grids = _q_grids(task, scheme, sigma_floor, omega_l)
    q_per_maturity = [_q_values(grid) for grid in grids]
    q_all = np.concatenate(q_per_maturity)
    q_min = max(_q_min(q_all), 1e-12)

    pipeline = _Pipeline(task, q_min)
    pipeline.validate(q_all)
    timings['contours'] = 1e3 * (time.perf_counter() - start)

    if verbose:
        print(f'Pricing {len(task.payoffs)} points at {len(task.maturities)} maturities with {scheme.method}: '
              f'{q_all.size} values of q, grid sizes {pipeline.pair.grid_sizes}.')

    start = time.perf_counter()
    values = evaluate_on_grid(pipeline.transform, q_all, max_workers=scheme.max_workers)
    timings['transform'] = 1e3 * (time.perf_counter() - start)

    start = time.perf_counter()
    rows = []
    offset = 0
    for T, grid, q_values in zip(task.maturities, grids, q_per_maturity):
        block = values[offset:offset + q_values.size]
        offset += q_values.size
        rows.append(_invert(grid, block, T, scheme))
    timings['inversion'] = 1e3 * (time.perf_counter() - start)

    grid_sizes = dict(pipeline.pair.grid_sizes)
    grid_sizes['n_q'] = int(q_all.size)

    return PricingResult(task=task, method=scheme.method, values=np.real(np.array(rows)),
                         est_error=scheme.error_estimate(task.tol), timings=timings, grid_sizes=grid_sizes)


def price_points(model: LevyModel, payoffs: Sequence[PayoffSpec], T: float, x1: float = 0.0, x2: float = 0.0,
                 tol: float = 1e-12, method: str = 'sinh', family: str = 'standard', **scheme_kwargs) -> np.ndarray:
    """ Values of the points at one maturity. """
    task = PricingTask(model=model, payoffs=tuple(payoffs), maturities=(T,), x1=x1, x2=x2, tol=tol, family=family)
    return price(task, LaplaceScheme(method=method, **scheme_kwargs)).values[0]


def transform_values(task: PricingTask, q_values: Sequence[complex], max_workers: Optional[int] = None) -> np.ndarray:
    """
    Laplace transforms of the points of the task at the given q, without inversion.

    Args:
        task: pricing task; its maturities are not used.
        q_values: values of the spectral parameter.
        max_workers: threads evaluating the transform.

    Returns:
        Array of shape (number of q, number of points).
    """

    q_values = np.atleast_1d(np.asarray(q_values, dtype=complex))
    pipeline = _Pipeline(task, _q_min(q_values))
    pipeline.validate(q_values)
    return evaluate_on_grid(pipeline.transform, q_values, max_workers=max_workers)

""" Coarse Monte Carlo for the joint cpdf of (X_T, running maximum).

Jumps larger than the cutoff are simulated as compound Poisson processes, the smaller ones are replaced by a
Gaussian increment with the same variance, and the drift is set so that the mean of X_T is exact. Within a time step
the Gaussian part moves first and its maximum is drawn from the Brownian bridge; the jumps of the step come at its end.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy import integrate

from ..model.levy import BrownianMotion, GeneralKoBoL, LevyModel

DEFAULT_CUTOFF = 1e-3

# jumps beyond this size are lumped at it
JUMP_CAP = 20.0

TABLE_SIZE = 4000


@dataclass(frozen=True)
class OracleReport:
    """
    Arguments:
        method: oracle tag.
        value: estimate.
        est_error: estimated error, positive.
        cost: number of nodes or of simulated path steps.
    """

    method: str
    value: float
    est_error: float
    cost: int

    def __post_init__(self):
        if not self.est_error > 0:
            raise ValueError(f'Estimated error must be positive, got {self.est_error}.')


class _JumpSide:
    """ Jumps of one sign with Levy density c*exp(-kappa*y)*y**(-nu-1) on y > cutoff. """

    def __init__(self, c: float, nu: float, kappa: float, cutoff: float):
        self.c = c
        self.nu = nu
        self.kappa = kappa

        def _density(y):
            return c * math.exp(-kappa * y) * y ** (-nu - 1)

        self.rate = integrate.quad(_density, cutoff, JUMP_CAP, limit=200)[0] \
            + integrate.quad(_density, JUMP_CAP, np.inf)[0]
        self.mean = integrate.quad(lambda y: y * _density(y), cutoff, np.inf, limit=200)[0]
        self.small_variance = integrate.quad(lambda y: y * y * c * math.exp(-kappa * y) * y ** (-nu - 1), 0,
                                             cutoff)[0]

        sizes = np.geomspace(cutoff, JUMP_CAP, TABLE_SIZE)
        cdf = integrate.cumulative_trapezoid(c * np.exp(-kappa * sizes) * sizes ** (-nu - 1), sizes, initial=0)
        self._sizes = sizes
        self._cdf = cdf / self.rate

    def sample(self, rng: np.random.Generator, count: int) -> np.ndarray:
        # mass beyond the table is lumped at JUMP_CAP
        return np.interp(rng.random(count), self._cdf, self._sizes, right=JUMP_CAP)


class _Increments:
    """ Per-step law of X: Gaussian part (mean, variance) and compound Poisson jumps on both sides. """

    def __init__(self, model: LevyModel, dt: float, cutoff: float):
        self.dt = dt
        self.sides = []

        if isinstance(model, BrownianMotion):
            self.mean = model.mu * dt
            self.variance = model.sigma ** 2 * dt
            return

        if not isinstance(model, GeneralKoBoL):
            raise ValueError(f'Monte Carlo supports Brownian motion and KoBoL models, got {type(model).__name__}.')

        variance = model.sigma2
        jump_mean = 0.0
        if model.c_plus > 0:
            side = _JumpSide(model.c_plus, model.nu_plus, -model.lambda_minus, cutoff)
            self.sides.append((1.0, side))
            variance += side.small_variance
            jump_mean += side.mean
        if model.c_minus > 0:
            side = _JumpSide(model.c_minus, model.nu_minus, model.lambda_plus, cutoff)
            self.sides.append((-1.0, side))
            variance += side.small_variance
            jump_mean -= side.mean

        self.mean = (model.mean() - jump_mean) * dt
        self.variance = variance * dt

    def jumps(self, rng: np.random.Generator, n: int) -> np.ndarray:
        total = np.zeros(n)
        for sign, side in self.sides:
            counts = rng.poisson(side.rate * self.dt, size=n)
            drawn = int(counts.sum())
            if drawn:
                owners = np.repeat(np.arange(n), counts)
                total += sign * np.bincount(owners, weights=side.sample(rng, drawn), minlength=n)
        return total


def _simulate(increments: _Increments, n_steps: int, n_paths: int, rng: np.random.Generator,
              bridge: bool) -> Tuple[np.ndarray, np.ndarray]:
    x = np.zeros(n_paths)
    running_max = np.zeros(n_paths)
    scale = math.sqrt(increments.variance)
    for _ in range(n_steps):
        moved = x + increments.mean + scale * rng.standard_normal(n_paths)
        if bridge and increments.variance > 0:
            gap = moved - x
            bridge_max = 0.5 * (x + moved + np.sqrt(gap ** 2 - 2 * increments.variance * np.log(rng.random(n_paths))))
            running_max = np.maximum(running_max, bridge_max)
        else:
            running_max = np.maximum(running_max, moved)
        x = moved + increments.jumps(rng, n_paths)
        running_max = np.maximum(running_max, x)
    return x, running_max


def mc_joint_cdf(model: LevyModel, T: float, a1: float, a2: float, n_paths: int = 10 ** 5, n_steps: int = 1000,
                 seed: int = 0, x1: float = 0.0, x2: float = 0.0, cutoff: float = DEFAULT_CUTOFF,
                 bridge: bool = True, max_workers: Optional[int] = None) -> OracleReport:
    """
    Empirical P[x1 + X_T <= a1, max(x2, x1 + running maximum) <= a2].

    Args:
        model: Brownian motion or a KoBoL model.
        T: maturity.
        a1, a2: levels.
        n_paths: number of paths.
        n_steps: number of time steps.
        seed: master seed; every worker gets an independent child stream.
        x1, x2: state, x1 <= x2.
        cutoff: jumps below this size are replaced by a Gaussian.
        bridge: draw the maximum of the Gaussian part between grid points from the Brownian bridge.
        max_workers: number of workers.

    Returns:
        The report, with the 95% half-width of the binomial confidence interval as the error.
    """

    if not T > 0:
        raise ValueError(f'Maturity must be positive, got T={T}.')
    if not x1 <= x2:
        raise ValueError(f'State must satisfy x1 <= x2, got x1={x1}, x2={x2}.')
    if n_paths < 1 or n_steps < 1:
        raise ValueError(f'Need at least one path and one step, got n_paths={n_paths}, n_steps={n_steps}.')

    cost = n_paths * n_steps
    if x2 > a2 or a2 < x1:
        return OracleReport(method='mc', value=0.0, est_error=np.finfo(float).eps, cost=0)

    increments = _Increments(model, T / n_steps, cutoff)
    workers = max_workers or 4
    batches = [len(chunk) for chunk in np.array_split(np.arange(n_paths), workers) if len(chunk)]
    streams = [np.random.default_rng(child) for child in np.random.SeedSequence(seed).spawn(len(batches))]

    def _count(args):
        batch, rng = args
        x, running_max = _simulate(increments, n_steps, batch, rng, bridge)
        return int(np.count_nonzero((x1 + x <= a1) & (x1 + running_max <= a2)))

    with ThreadPoolExecutor(max_workers=workers) as executor:
        hits = sum(executor.map(_count, zip(batches, streams)))

    value = hits / n_paths
    half_width = 1.96 * math.sqrt(max(value * (1 - value), 1 / n_paths) / n_paths)
    return OracleReport(method='mc', value=value, est_error=half_width, cost=cost)

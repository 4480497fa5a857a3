""" Joint cpdf transform on straight lines, without conformal deformations.

The factors are computed on the lines Im xi = omega_plus > 0 and Im eta = omega_minus < 0 with a uniform step, each
from the other line, and the remaining factor from the identity phi_plus*phi_minus = q/(q + psi). The integrands
decay only algebraically, so long grids are needed; the cost grows like big_N**2.
"""

import math
from typing import Tuple

import numpy as np

from ..model.levy import LevyModel

# guard on the number of nodes per line
MAX_NODES = 10 ** 7

# rows of the line-to-line kernel formed at once
CHUNK_ROWS = 256


def _lines(model: LevyModel, fraction: float, step: float, big_N: int) -> Tuple[np.ndarray, np.ndarray, float]:
    if not 0 < fraction < 1:
        raise ValueError(f'Line placement fraction must lie in (0, 1), got {fraction}.')
    if not step > 0:
        raise ValueError(f'Step must be positive, got {step}.')
    if not 0 < big_N <= MAX_NODES:
        raise ValueError(f'Number of nodes big_N={big_N} outside (0, {MAX_NODES}].')

    profile = model.profile
    if not (profile.mu_minus < 0 < profile.mu_plus):
        raise ValueError(f'Straight lines need a strip (mu_minus, mu_plus) around 0, got {profile.strip}.')

    s = step * np.arange(-big_N, big_N + 1)
    upper = 1j * fraction * profile.mu_plus + s
    lower = 1j * fraction * profile.mu_minus + s
    return upper, lower, step * big_N


def _tail_integral(model: LevyModel, q: complex, half_length: float) -> complex:
    """ int_{|s| > L} ln(1 + psi(s)/q) / s**2 ds from the asymptotics of psi on the real axis. """
    nu = model.profile.order
    # psi(-s) = conj(psi(s)) on the real axis
    c0 = model.c_infinity(0.0)
    log_coefficients = np.log(c0 / q) + np.log(np.conj(c0) / q)
    return (2 * nu * (math.log(half_length) + 1) + log_coefficients) / half_length


def _factor_exponent(targets: np.ndarray, nodes: np.ndarray, weights: np.ndarray, step: float) -> np.ndarray:
    """ step * sum_k targets_j * weights_k / (targets_j - nodes_k), in chunks of targets. """
    result = np.empty(targets.size, dtype=complex)
    for start in range(0, targets.size, CHUNK_ROWS):
        block = targets[start:start + CHUNK_ROWS]
        result[start:start + CHUNK_ROWS] = step * block * ((1 / (block[:, None] - nodes[None, :])) @ weights)
    return result


def flat_line_factors(model: LevyModel, q: complex, fraction: float = 0.3, step: float = 0.05,
                      big_N: int = 4000) -> dict:
    """
    Wiener-Hopf factors on the two straight lines.

    Args:
        model: Levy model with a strip around 0.
        q: spectral parameter, admissible for both lines.
        fraction: the lines sit at fraction*mu_plus and fraction*mu_minus.
        step: uniform step along the lines.
        big_N: nodes per half-line.

    Returns:
        Dictionary with the lines 'upper', 'lower', psi on both, phi_plus and phi_minus on both.
    """

    upper, lower, half_length = _lines(model, fraction, step, big_N)
    psi_upper, psi_lower = model.psi(upper), model.psi(lower)
    tail = _tail_integral(model, q, half_length)

    # phi_plus on the upper line from the lower one, phi_minus on the lower line from the upper one
    weights_lower = np.log(1 + psi_lower / q) / lower
    exponent = _factor_exponent(upper, lower, weights_lower, step) - upper * tail
    plus_upper = np.exp(exponent / (2j * math.pi))

    weights_upper = np.log(1 + psi_upper / q) / upper
    exponent = _factor_exponent(lower, upper, weights_upper, step) - lower * tail
    minus_lower = np.exp(-exponent / (2j * math.pi))

    plus_lower = q / ((q + psi_lower) * minus_lower)
    minus_upper = q / ((q + psi_upper) * plus_upper)

    return {'upper': upper, 'lower': lower, 'psi_upper': psi_upper, 'psi_lower': psi_lower,
            'plus_upper': plus_upper, 'plus_lower': plus_lower, 'minus_upper': minus_upper,
            'minus_lower': minus_lower, 'step': step}


def flat_contour_cpdf_laplace(model: LevyModel, q: complex, x1: float, x2: float, a1: float, a2: float,
                              big_N: int = 4000, step: float = 0.05, fraction: float = 0.3) -> complex:
    """
    Laplace transform of P[x1 + X_T <= a1, max(x2, x1 + running maximum) <= a2] on straight lines:
    V~ = I1 + I2/q with the one-dimensional term on the upper line (no residue) and the double integral over both.

    Args:
        model: Levy model.
        q: spectral parameter.
        x1, x2: state, x1 <= x2.
        a1, a2: levels, a1 <= a2.
        big_N: nodes per half-line, at most 10**7.
        step: uniform step.
        fraction: line placement inside the strip.

    Returns:
        V~(q).
    """

    if not a1 <= a2:
        raise ValueError(f'cpdf needs a1 <= a2, got a1={a1}, a2={a2}.')
    if not x1 <= x2:
        raise ValueError(f'State must satisfy x1 <= x2, got x1={x1}, x2={x2}.')
    if x2 > a2:
        return 0j

    factors = flat_line_factors(model, q, fraction=fraction, step=step, big_N=big_N)
    xi, eta = factors['upper'], factors['lower']

    values = np.exp(1j * (x1 - a1) * xi) / (-1j * xi * (q + factors['psi_upper']))
    first = step * np.sum(values) / (2 * math.pi)

    u_plus = np.exp(1j * (a2 - a1) * xi) * factors['minus_upper'] / xi
    u_minus = np.exp(1j * (x1 - a2) * eta) * factors['plus_lower']
    second = 0j
    for start in range(0, xi.size, CHUNK_ROWS):
        block = xi[start:start + CHUNK_ROWS]
        second += u_plus[start:start + CHUNK_ROWS] @ ((1 / (block[:, None] - eta[None, :])) @ u_minus)
    second *= step ** 2 / (2 * math.pi) ** 2

    return complex(first + second / q)

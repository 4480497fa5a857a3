""" Option to exchange the supremum for a power of the underlying, payoff (exp(beta*X_T) - exp(running maximum))+. """

import math
from typing import Optional, Tuple

import numpy as np

from .cpdf import CachedContour, LaplaceValue
from ..model.levy import LevyModel
from ..model.profile import RegularityProfile
from ..whf.factors import WhfTable

# fractions of the gap (mu_minus, -beta) spanned by the window of L-
EXCHANGE_WINDOW_FRACTIONS = (0.75, 0.15)


def check_exchange_strip(profile: RegularityProfile, beta: float):
    if not beta > 1:
        raise ValueError(f'Exchange option needs beta > 1, got {beta}.')
    if not profile.mu_minus < -beta:
        raise ValueError(f'Exchange option with beta={beta} needs mu_minus < {-beta}, got mu_minus={profile.mu_minus}.')
    if not profile.mu_plus > 0:
        raise ValueError(f'Exchange option needs mu_plus > 0, got {profile.mu_plus}.')


def exchange_minus_window(profile: RegularityProfile, beta: float) -> Tuple[float, float]:
    """ Apex window of L- inside (mu_minus, -beta). """
    check_exchange_strip(profile, beta)
    gap = profile.mu_minus + beta
    lo, hi = EXCHANGE_WINDOW_FRACTIONS
    return -beta + lo * gap, -beta + hi * gap


def exchange_laplace(model: LevyModel, table: WhfTable, q: complex, x1: float, x2: float, beta: float,
                     one_dim: CachedContour, power_dim: Optional[CachedContour] = None) -> LaplaceValue:
    """
    V~ = I1 + (I2 + I3)/q, where I1 is the European-like term, I2 the term of the atom a_minus and I3 the double
    integral over L- (eta) and L+ (xi).

    The double integral carries exp(-i*x2*xi) on L+, so for x2 > 0 the wings of L+ must point down, staying above
    L-. The terms of I1 carry exp(i*(x1 - x2)*xi) and exp(i*(x1 - x2/beta)*xi); for x2 > 0 the two exponents may
    differ in sign and the second term gets its own contour.

    Args:
        model: Levy model, with mu_minus < -beta.
        table: Wiener-Hopf factors of q with atoms, L- lying below -beta.
        q: spectral parameter.
        x1, x2: state, x1 <= x2.
        beta: power, > 1.
        one_dim: contour of the terms of I1 with exp(i*(x1 - x2)*xi), apex above 0, oriented by the sign of x1 - x2.
        power_dim: contour of the term of I1 with exp(i*(x1 - x2/beta)*xi), apex above 0, oriented by the sign of
            x1 - x2/beta; None uses one_dim, which has the right orientation when x2 <= 0.

    Returns:
        The transform with parts (I1, I2, I3).
    """

    check_exchange_strip(model.profile, beta)
    if not x1 <= x2:
        raise ValueError(f'Exchange option needs x1 <= x2, got x1={x1}, x2={x2}.')

    pair = table.pair
    if not pair.minus.nodes.imag.max() < -beta:
        raise ValueError(f'L- must lie below -beta={-beta}; its apex is {pair.minus.apex}.')
    if x2 > 0 and not pair.plus.omega < 0:
        raise ValueError(f'Exchange option with x2={x2} > 0 needs L+ with downward wings.')
    power_dim = one_dim if power_dim is None else power_dim
    if one_dim.below_zero or power_dim.below_zero:
        raise ValueError('The first term of the exchange option needs contours above 0.')

    e_beta, e_one = math.exp(beta * x2), math.exp(x2)

    xi0 = one_dim.contour.nodes
    bracket = (e_beta / (beta - 1j * xi0) - e_one / (-1j * xi0)) * np.exp(1j * (x1 - x2) * xi0)
    first = one_dim.contour.integrate(bracket / (q + one_dim.psi)) / (2 * math.pi)

    xi1 = power_dim.contour.nodes
    power = beta * e_one * np.exp(1j * (x1 - x2 / beta) * xi1) / ((beta - 1j * xi1) * (-1j * xi1))
    first += power_dim.contour.integrate(power / (q + power_dim.psi)) / (2 * math.pi)

    eta = pair.minus.nodes
    plus_plus = table.plus_on_minus - table.a_plus
    minus_minus = table.minus_on_plus - table.a_minus

    second = 0j
    if table.a_minus != 0:
        values = np.exp(1j * (x1 - x2) * eta) * plus_plus / (1j * eta * (1 - 1j * eta))
        second = table.a_minus * e_one * pair.minus.integrate(values) / (2 * math.pi)

    xi = pair.plus.nodes[:, None]
    eta_row = eta[None, :]
    terms = (e_beta * np.exp(-1j * x2 * xi) / (1j * eta_row - beta)
             + beta * e_one * np.exp(-1j * x2 * xi / beta) * (1 - 1j * xi / beta)
             / ((beta - 1j * xi) * (-1j * xi) * (1j * eta_row - 1 - 1j * xi * (1 - 1 / beta)))
             - e_one * np.exp(-1j * x2 * xi) * (1 - 1j * xi) / ((-1j * xi) * (1j * eta_row - 1)))
    # 1/(i*(eta - xi)) = i/(xi - eta)
    matrix = 1j * pair.kernel * terms

    u_plus = minus_minus * pair.plus.derivatives
    u_minus = np.exp(1j * (x1 - x2) * eta) * plus_plus * pair.minus.derivatives
    coefficient = pair.plus.zeta * pair.minus.zeta / (2 * math.pi) ** 2
    third = coefficient * (u_plus @ (matrix @ u_minus))

    return LaplaceValue(q=q, value=first + (second + third) / q, parts=(first, second, third))

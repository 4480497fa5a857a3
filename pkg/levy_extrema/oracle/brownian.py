""" Closed forms for Brownian motion with drift, X_t = mu*t + sigma*W_t, from the reflection principle. """

import math

import numpy as np
from scipy import integrate
from scipy.stats import norm


def _check(sigma: float, T: float):
    if not sigma > 0:
        raise ValueError(f'sigma must be positive, got {sigma}.')
    if not T > 0:
        raise ValueError(f'Maturity must be positive, got T={T}.')


def bm_joint_cdf(sigma: float, mu: float, T: float, a1: float, a2: float, x1: float = 0.0,
                 x2: float = 0.0) -> float:
    """
    P[x1 + X_T <= a1, max(x2, x1 + running maximum of X) <= a2]:
    Phi((a1 - mu*T)/(sigma*sqrt(T))) - exp(2*mu*a2/sigma**2) * Phi((a1 - 2*a2 - mu*T)/(sigma*sqrt(T))) with the levels
    measured from x1.

    Args:
        sigma: volatility.
        mu: drift.
        T: maturity.
        a1: level of X_T.
        a2: level of the running maximum.
        x1, x2: state, x1 <= x2.

    Returns:
        The probability.
    """

    _check(sigma, T)
    if not x1 <= x2:
        raise ValueError(f'State must satisfy x1 <= x2, got x1={x1}, x2={x2}.')
    if x2 > a2:
        return 0.0

    b1, b2 = min(a1, a2) - x1, a2 - x1
    scale = sigma * math.sqrt(T)
    reflected = math.exp(2 * mu * b2 / sigma ** 2) * norm.cdf((b1 - 2 * b2 - mu * T) / scale)
    value = norm.cdf((b1 - mu * T) / scale) - reflected
    return float(min(1.0, max(0.0, value)))


def bm_no_touch(sigma: float, mu: float, T: float, a2: float, x1: float = 0.0, x2: float = 0.0) -> float:
    """ P[max(x2, x1 + running maximum of X) <= a2]. """
    return bm_joint_cdf(sigma, mu, T, a2, a2, x1=x1, x2=x2)


def bm_joint_density(sigma: float, mu: float, T: float, w, m):
    """ Density of (X_T, running maximum) at (w, m), m >= max(w, 0). """
    w, m = np.asarray(w, dtype=float), np.asarray(m, dtype=float)
    s2 = sigma ** 2
    reflected = 2 * m - w
    density = (2 * reflected / (sigma ** 3 * T ** 1.5 * math.sqrt(2 * math.pi))
               * np.exp(-reflected ** 2 / (2 * s2 * T) + mu * w / s2 - mu ** 2 * T / (2 * s2)))
    return np.where((m >= w) & (m >= 0), density, 0.0)


def bm_exchange(sigma: float, mu: float, T: float, beta: float, x1: float = 0.0, x2: float = 0.0,
                epsabs: float = 1e-13, epsrel: float = 1e-11) -> float:
    """
    E[(exp(beta*(x1 + X_T)) - exp(max(x2, x1 + running maximum)))+] by two-dimensional quadrature of the joint density.
    The payoff is positive only for w > max(-x1, x2/beta - x1) and max(w, 0) <= m < beta*(x1 + w) - x1.

    Args:
        sigma: volatility.
        mu: drift.
        T: maturity.
        beta: power, > 1.
        x1, x2: state, x1 <= x2.
        epsabs, epsrel: tolerances of scipy.integrate.dblquad.

    Returns:
        The price.
    """

    _check(sigma, T)
    if not beta > 1:
        raise ValueError(f'Exchange option needs beta > 1, got {beta}.')
    if not x1 <= x2:
        raise ValueError(f'Exchange option needs x1 <= x2, got x1={x1}, x2={x2}.')

    def _integrand(m, w):
        payoff = math.exp(beta * (x1 + w)) - math.exp(max(x2, x1 + m))
        if payoff <= 0:
            return 0.0
        return payoff * float(bm_joint_density(sigma, mu, T, w, m))

    # the exponential tilt moves the mass of exp(beta*w) by beta*sigma**2*T
    w_lo = max(-x1, x2 / beta - x1)
    w_hi = w_lo + abs(mu) * T + beta * sigma ** 2 * T + 15 * sigma * math.sqrt(T)
    value, _ = integrate.dblquad(_integrand, w_lo, w_hi, lambda w: max(w, 0.0), lambda w: beta * (x1 + w) - x1,
                                 epsabs=epsabs, epsrel=epsrel)
    return float(value)


def bm_joint_cdf_laplace(sigma: float, mu: float, q: float, a1: float, a2: float, x1: float = 0.0,
                         x2: float = 0.0) -> float:
    """ int_0^inf exp(-q*T) * bm_joint_cdf(T) dT for real q > 0, by scipy.integrate.quad. """
    if not q > 0:
        raise ValueError(f'Time quadrature of the transform needs real q > 0, got {q}.')

    def _integrand(T):
        if T == 0:
            return 0.0
        return math.exp(-q * T) * bm_joint_cdf(sigma, mu, T, a1, a2, x1=x1, x2=x2)

    value, _ = integrate.quad(_integrand, 0, np.inf, epsabs=1e-13, epsrel=1e-11, limit=200)
    return float(value)

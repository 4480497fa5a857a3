""" Laplace transform of E[f(x1 + X_T, max(x2, x1 + running maximum))] for a payoff given by its transforms.

V~ = (1/(2*pi)) * int exp(i*x1*xi1) / (q + psi(xi1)) * f1^(xi1, x2) d xi1
     + a_minus/(2*pi*q) * int_{L-} exp(i*x1*eta) * phi_plus_plus(eta) * w0^(eta, x2) d eta
     + 1/(2*pi*q) * int_{L-} exp(i*(x1 - x2)*eta) * phi_plus_plus(eta) * w^(eta) d eta,

    w^(eta) = (1/(2*pi)) * int_{L+} exp(i*x2*xi1) / (i*(xi1 - eta)) * phi_minus_minus(xi1) * f1^(xi1, x2) d xi1
              + (1/(2*pi)**2) * int_{L+} int_{L2} exp(i*x2*(xi1 + xi2)) / (i*(eta - xi1 - xi2))
              * phi_minus_minus(xi1) * f^(xi1, xi2) d xi1 d xi2.
"""

import math
from typing import Optional

import numpy as np

from .cpdf import CachedContour, LaplaceValue
from .payoffs import GeneralPayoff
from ..contours.select import contour_in_window
from ..contours.sinh import SinhContour
from ..model.levy import LevyModel
from ..quad.trapezoid import ErrorBudget, TrapezoidGrid, step_for_tolerance
from ..whf.factors import WhfTable

# entries of the eta x (xi1, xi2) kernel formed at once
CHUNK_ENTRIES = 2 ** 21


def flat_xi2_contour(level: float, tol: float, half_width: float, n: Optional[int] = None) -> SinhContour:
    """
    Flat contour Im xi2 = level for the inner xi2 integral, with integrands decaying like |xi2|**(-2).

    Args:
        level: imaginary part of the contour.
        tol: error tolerance.
        half_width: strip half-width around the level in which the integrand is analytic.
        n: override of the half-count.

    Returns:
        The contour.
    """

    d = math.pi / 4
    omega1, b = contour_in_window((level - half_width, level + half_width), 0.0, d)
    zeta = step_for_tolerance(ErrorBudget(tol=tol, d=d, hardy_norm_est=10.0))
    if n is None:
        # |g(y)| ~ exp(-|y|)*2/b: solve for the truncation of the tail
        n = int(math.ceil(math.log(4 / (b * tol)) / zeta)) + 1
    return SinhContour(omega1=omega1, b=b, omega=0.0, grid=TrapezoidGrid.symmetric(zeta, max(n, 8)), d=d)


def check_general_contours(table: WhfTable, xi2_contour: SinhContour):
    """ Im(xi1 + xi2) > Im(eta) on all node pairs, so that the y-integrals defining w^ converge. """
    lowest_sum = table.pair.plus.nodes.imag.min() + xi2_contour.nodes.imag.min()
    highest_eta = table.pair.minus.nodes.imag.max()
    if not lowest_sum > highest_eta:
        raise ValueError(f'Contours violate Im(xi1 + xi2) > Im(eta): {lowest_sum} <= {highest_eta}.')


def laplace_value_general(model: LevyModel, table: WhfTable, q: complex, x1: float, x2: float,
                          payoff: GeneralPayoff, one_dim: CachedContour,
                          xi2_contour: Optional[SinhContour] = None) -> LaplaceValue:
    """
    Three-term representation of V~ for a payoff given by transform handles.

    Args:
        model: Levy model.
        table: Wiener-Hopf factors of q with atoms.
        q: spectral parameter.
        x1, x2: state, x1 <= x2.
        payoff: transform handles; f_hat None means f does not depend on x2 and the last term vanishes.
        one_dim: contour of the first term, above 0.
        xi2_contour: contour of the xi2 integral, needed when payoff.f_hat is given.

    Returns:
        The transform with parts (European term, atom term, running-maximum term).
    """

    if not x1 <= x2:
        raise ValueError(f'State must satisfy x1 <= x2, got x1={x1}, x2={x2}.')
    if one_dim.below_zero:
        raise ValueError('The first term of the general representation needs a contour above 0.')

    contour = one_dim.contour
    xi0 = contour.nodes
    values = np.exp(1j * x1 * xi0) * payoff.f1_hat(xi0, x2) / (q + one_dim.psi)
    first = contour.integrate(values) / (2 * math.pi)

    pair = table.pair
    eta = pair.minus.nodes
    plus_plus = table.plus_on_minus - table.a_plus

    second = 0j
    if payoff.w0_hat is not None and table.a_minus != 0:
        values = np.exp(1j * x1 * eta) * plus_plus * payoff.w0_hat(eta, x2)
        second = table.a_minus * pair.minus.integrate(values) / (2 * math.pi)

    third = 0j
    if payoff.f_hat is not None:
        if xi2_contour is None:
            raise ValueError('The running-maximum term needs a contour for xi2.')
        check_general_contours(table, xi2_contour)

        xi = pair.plus.nodes
        minus_minus = table.minus_on_plus - table.a_minus
        weights = minus_minus * pair.plus.derivatives * pair.plus.zeta

        # single integral in xi1: kernel 1/(i*(xi1 - eta)) = -i*D_plus
        single = np.exp(1j * x2 * xi) * weights * payoff.f1_hat(xi, x2)
        w_hat = (-1j * (single @ pair.kernel)) / (2 * math.pi)

        # double integral in (xi1, xi2), accumulated over chunks of eta
        s = xi2_contour.nodes
        amplitudes = (np.exp(1j * x2 * (xi[:, None] + s[None, :])) * weights[:, None]
                      * payoff.f_hat(xi[:, None], s[None, :])
                      * (xi2_contour.derivatives * xi2_contour.zeta)[None, :]).ravel()
        sums = (xi[:, None] + s[None, :]).ravel()
        chunk = max(1, CHUNK_ENTRIES // sums.size)
        double = np.empty(eta.size, dtype=complex)
        for start in range(0, eta.size, chunk):
            block = eta[start:start + chunk, None] - sums[None, :]
            double[start:start + chunk] = (1 / (1j * block)) @ amplitudes
        w_hat = w_hat + double / (2 * math.pi) ** 2

        values = np.exp(1j * (x1 - x2) * eta) * plus_plus * w_hat
        third = pair.minus.integrate(values) / (2 * math.pi)

    return LaplaceValue(q=q, value=first + (second + third) / q, parts=(first, second, third))

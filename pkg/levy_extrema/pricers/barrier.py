import math
from typing import Optional, Tuple

import numpy as np

from .cpdf import CachedContour, LaplaceValue, no_touch_laplace
from .payoffs import ConstantPayoff, DigitalPut, TerminalPayoff, VanillaPut
from ..model.levy import LevyModel
from ..whf.factors import WhfTable


def knock_out_decomposition(payoff: TerminalPayoff, h: float) -> Tuple[float, Optional[TerminalPayoff]]:
    """
    Writes the payoff below the barrier as G*1(x < h) = amount*1(x < h) + D*1(x < h), with D a payoff whose log-strike
    is at most h. Only values below h reach surviving paths, so the barrier price is amount times the no-touch
    probability plus the barrier price of D.

    Args:
        payoff: payoff at maturity.
        h: barrier.

    Returns:
        (amount, D), D is None when the payoff is constant below the barrier.
    """

    if isinstance(payoff, ConstantPayoff):
        return payoff.amount, None
    if isinstance(payoff, DigitalPut) and payoff.log_strike >= h:
        return 1.0, None
    if isinstance(payoff, VanillaPut) and payoff.log_strike > h:
        # (K - e^x) = (K - e^h) + (e^h - e^x) for x < h
        return payoff.strike - math.exp(h), VanillaPut(math.exp(h))
    if payoff.log_strike > h:
        raise ValueError(f'Cannot truncate {type(payoff).__name__} with log-strike {payoff.log_strike} above the '
                         f'barrier {h}.')
    return 0.0, payoff


def barrier_laplace(model: LevyModel, table: WhfTable, q: complex, x: float, h: float, payoff: TerminalPayoff,
                    one_dim: Optional[CachedContour]) -> LaplaceValue:
    """
    Laplace transform of the up-and-out price E[G(x + X_T); running maximum of x + X below h], no rebate:
    V~ = q^{-1}*(E_q G)(x) - q^{-1}*(E+_q 1_[h, inf) E-_q G)(x).

    The European term is (1/(2*pi)) * int exp(i*x*xi) * G^(xi) / (q + psi(xi)) d xi on a contour above 0, the
    knock-out correction is
    (1/(2*pi)**2) * int_{L-} d eta exp(i*(x - h)*eta) * phi_plus(eta) * int_{L+} d xi exp(i*h*xi) * phi_minus(xi)
    * G^(xi) / (i*(eta - xi)).
    G is first split by knock_out_decomposition, so that the exponent h - k on L+ is never negative.

    Args:
        model: Levy model.
        table: Wiener-Hopf factors of q.
        q: spectral parameter.
        x: log-spot, below the barrier.
        h: barrier.
        payoff: payoff at maturity.
        one_dim: contour of the European term of the split payoff, apex above 0, oriented by the sign of
            x - log_strike; None when the split payoff is constant.

    Returns:
        The transform with parts (European term, knock-out correction).
    """

    if not x < h:
        raise ValueError(f'Barrier pricing needs x < h, got x={x}, h={h}.')

    amount, rest = knock_out_decomposition(payoff, h)
    value = amount * no_touch_laplace(model, table, q, x, x, h).value if amount else 0j
    european, correction = amount / q, amount - q * value

    if rest is None:
        return LaplaceValue(q=q, value=value, parts=(european, correction))

    if one_dim is None or one_dim.below_zero:
        raise ValueError('The European term of a barrier price needs a contour above 0.')

    contour = one_dim.contour
    xi0 = contour.nodes
    values = rest.shifted_transform(xi0, x) / (q + one_dim.psi)
    rest_european = contour.integrate(values) / (2 * math.pi)

    pair = table.pair
    xi, eta = pair.plus.nodes, pair.minus.nodes
    u_plus = rest.shifted_transform(xi, h) * table.minus_on_plus * pair.plus.derivatives
    u_minus = np.exp(1j * (x - h) * eta) * table.plus_on_minus * pair.minus.derivatives
    coefficient = pair.plus.zeta * pair.minus.zeta / (2 * math.pi) ** 2
    # 1/(i*(eta - xi)) = i/(xi - eta)
    rest_correction = 1j * coefficient * (u_plus @ (pair.kernel @ u_minus))

    value += rest_european - rest_correction / q
    return LaplaceValue(q=q, value=value, parts=(european + rest_european, correction + rest_correction))

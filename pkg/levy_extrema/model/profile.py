import math
from dataclasses import dataclass
from typing import Optional, Tuple


@dataclass(frozen=True)
class RegularityProfile:
    """
    Analytic-continuation data of a characteristic exponent: psi is analytic in the strip i*(mu_minus, mu_plus)
    widened by the cone of angles (gamma_minus, gamma_plus), and Re psi grows like |xi|**order on the narrower
    positivity cone (positive_gamma_minus, positive_gamma_plus).

    Arguments:
        order: order nu of the process, in (0, 2].
        strip: (mu_minus, mu_plus) with mu_minus < 0 <= mu_plus or mu_minus <= 0 < mu_plus.
        cone: (gamma_minus, gamma_plus) with gamma_minus < 0 < gamma_plus.
        positive_cone: (gamma'_minus, gamma'_plus).
        drift: drift mu of the representation psi = -i*mu*xi + psi0.
        is_sl: whether the process is Stieltjes-Levy.
        is_signed_sl: whether the process belongs to the signed Stieltjes-Levy class (Merton, Meixner).
        order_tag: '0+' or '1+' for the limiting orders, None otherwise.
    """

    order: float
    strip: Tuple[float, float]
    cone: Tuple[float, float]
    positive_cone: Tuple[float, float]
    drift: float = 0.0
    is_sl: bool = True
    is_signed_sl: bool = False
    order_tag: Optional[str] = None

    def __post_init__(self):
        mu_minus, mu_plus = self.strip
        gamma_minus, gamma_plus = self.cone
        gp_minus, gp_plus = self.positive_cone

        if not (mu_minus < 0 <= mu_plus or mu_minus <= 0 < mu_plus):
            raise ValueError(f'Strip ({mu_minus}, {mu_plus}) must contain 0 with at least one side open.')
        if not gamma_minus < 0 < gamma_plus:
            raise ValueError(f'Cone angles must satisfy gamma_minus < 0 < gamma_plus, got {self.cone}.')
        if not (gamma_minus <= gp_minus <= 0 <= gp_plus <= gamma_plus):
            raise ValueError(f'Positivity cone {self.positive_cone} must lie inside the cone {self.cone} '
                             f'and contain the real axis.')
        if abs(gp_minus) + gp_plus <= 0:
            raise ValueError('Positivity cone is degenerate.')
        if not 0 < self.order <= 2 and self.order_tag != '0+':
            raise ValueError(f'Order must be in (0, 2], got {self.order}.')
        if self.order_tag not in (None, '0+', '1+'):
            raise ValueError(f'Unknown order tag {self.order_tag}.')

    @property
    def mu_minus(self) -> float:
        return self.strip[0]

    @property
    def mu_plus(self) -> float:
        return self.strip[1]

    @property
    def standing_assumption(self) -> bool:
        """ Either the order is at least 1 or there is no drift: neither extremum has an atom at 0. """
        return self.order >= 1 or self.drift == 0

    @property
    def finite_variation_with_drift(self) -> bool:
        return not self.standing_assumption

    @property
    def order_factor(self) -> float:
        return min(1.0, 1.0 / self.order)


def kobol_cones(order: float) -> Tuple[Tuple[float, float], Tuple[float, float]]:
    """
    Cone and positivity cone of a KoBoL exponent of the given order.

    Args:
        order: largest order among the jump components (2 if a Brownian part is present).

    Returns:
        The cone (-pi/2, pi/2) and the positivity cone +-(pi/2)*min(1, 1/order).
    """

    half_pi = math.pi / 2
    width = half_pi * min(1.0, 1.0 / order)
    return (-half_pi, half_pi), (-width, width)

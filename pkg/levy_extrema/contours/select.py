""" Parameter selection for the sinh contours and the sinh-deformed Bromwich contour.

Every sinh contour is placed through a window (lo, hi) of the imaginary axis: as the contour is shifted in the strip
|Im y| < d of the y coordinate, the apexes of the shifted contours sweep exactly the window. Choosing the window inside
the strip of analyticity of the integrand is therefore enough to control the discretization error.
"""

import math
from typing import Iterable, Optional, Tuple

import numpy as np

from .sinh import BromwichContour, SinhContour
from ..model.levy import LevyModel
from ..model.profile import RegularityProfile
from ..quad.trapezoid import ErrorBudget, TrapezoidGrid, step_for_tolerance, truncation_for_tolerance

FAMILIES = ('standard', 'I', 'II')

# fractions of mu_plus (resp. mu_minus) spanned by the default windows
WINDOW_FRACTIONS = (0.15, 0.75)

DEFAULT_HARDY_NORM = 10.0


def deformation_angles(profile: RegularityProfile, family: str = 'standard') -> Tuple[float, float, float]:
    """
    Wing angles of L-, L+ and the Bromwich angle of a deformation family.

    Args:
        profile: regularity profile of the model.
        family: 'standard' (pi/4), 'I' ((pi/2)/4.5 and Bromwich (pi/2)/9) or 'II' ((pi/2)/5 and Bromwich (pi/2)/10).

    Returns:
        (omega_minus, omega_plus, omega_ell).
    """

    gp_minus, gp_plus = profile.positive_cone
    if gp_minus == 0 or gp_plus == 0:
        raise ValueError('Positivity cone touches the real axis on one side: sinh deformations are not applicable, '
                         'sub-polynomial deformations would be needed.')

    if family == 'standard':
        base, omega_l = math.pi / 4, math.pi / 20
    elif family == 'I':
        base, omega_l = (math.pi / 2) / 4.5, math.pi / 18
    elif family == 'II':
        base, omega_l = (math.pi / 2) / 5, math.pi / 20
    else:
        raise ValueError(f'Unknown deformation family {family}, expected one of {FAMILIES}.')

    if profile.is_signed_sl:
        omega = min(math.pi / 8, base * profile.order_factor)
    else:
        omega = base * profile.order_factor

    return -omega, omega, omega_l


def default_window(profile: RegularityProfile, side: str) -> Tuple[float, float]:
    lo, hi = WINDOW_FRACTIONS
    mu_minus, mu_plus = profile.strip

    if side == 'plus':
        if not mu_plus > 0:
            raise ValueError(f'The strip ({mu_minus}, {mu_plus}) has no room above the real axis.')
        return lo * mu_plus, hi * mu_plus
    if side == 'minus':
        if not mu_minus < 0:
            raise ValueError(f'The strip ({mu_minus}, {mu_plus}) has no room below the real axis.')
        return hi * mu_minus, lo * mu_minus

    raise ValueError(f'Unknown side {side}.')


def contour_in_window(window: Tuple[float, float], omega: float, d: float) -> Tuple[float, float]:
    """
    Anchor and scale of the contour whose shifts by |Im y| <= d have apexes filling the window.

    Args:
        window: (lo, hi) on the imaginary axis.
        omega: wing angle.
        d: strip half-width, with |omega| + d < pi/2.

    Returns:
        (omega1, b).
    """

    lo, hi = window
    if not lo < hi:
        raise ValueError(f'Empty window ({lo}, {hi}).')
    if not abs(omega) + d < math.pi / 2:
        raise ValueError(f'Strip half-width d={d} too large for the wing angle omega={omega}.')

    b = (hi - lo) / (math.sin(omega + d) - math.sin(omega - d))
    omega1 = hi - b * math.sin(omega + d)
    return omega1, b


def admissibility_floor(model: LevyModel, windows: Iterable[Tuple[float, float]], margin: float = 0.1) -> float:
    """
    Smallest real q for which q + psi(i*w) stays positive for every w of the windows.

    Args:
        model: Levy model.
        windows: windows of the contours in use.
        margin: relative margin.

    Returns:
        sigma_floor >= 0.
    """

    points = []
    for lo, hi in windows:
        points.extend(np.linspace(lo, hi, 9))
    values = -np.real(model.psi(1j * np.asarray(points)))
    return (1 + margin) * max(0.0, float(values.max()))


def _log1pexp(t: float) -> float:
    return t + math.log1p(math.exp(-t)) if t > 0 else math.log1p(math.exp(t))


def _clipped_exp(t: float) -> float:
    return math.exp(max(t, -700.0))


def factor_envelope(model: LevyModel, b: float, q_min: float):
    """ Envelope of the integrands ln(1 + psi(eta)/q)/eta * chi'(y) / (xi - eta) of the factor formulas. """

    order = model.profile.order
    log_scale = math.log(abs(model.c_infinity(0.0)))

    def _envelope(y):
        log_ratio = log_scale + order * (math.log(0.5 * b) + y) - math.log(q_min)
        growth = _log1pexp(log_ratio) + math.pi
        return _clipped_exp(math.log(4 * growth / b) - y)

    return _envelope


def algebraic_envelope(model: LevyModel, b: float, q_min: float, decay: float, oscillation: float = 0.0):
    """
    Envelope of integrands decaying like |xi|**(-1-decay), possibly damped by an exponential factor
    exp(-oscillation*(cosh(y) - 1)) coming from exp(i*x*xi).
    """

    log_scale = math.log(max(abs(model.c_infinity(0.0)), 1e-12))

    def _envelope(y):
        log_size = math.log(0.5 * b) + y
        log_damping = -oscillation * (math.cosh(y) - 1) if oscillation > 0 else 0.0
        log_magnitude = -max(math.log(q_min), log_scale + decay * log_size)
        return _clipped_exp(log_damping + log_magnitude - math.log(decay))

    return _envelope


def _sinh_contour(window, omega, d, tol, envelope_builder, hardy, n=None, upper=400.0):
    omega1, b = contour_in_window(window, omega, d)
    zeta = step_for_tolerance(ErrorBudget(tol=tol, d=d, hardy_norm_est=hardy))

    if n is None:
        envelope = envelope_builder(b)
        lam = truncation_for_tolerance(envelope, tol, upper=upper)
        n = max(int(math.ceil(lam / zeta)), 8)

    return SinhContour(omega1=omega1, b=b, omega=omega, grid=TrapezoidGrid.symmetric(zeta, n), d=d)


def select_params(model: LevyModel, role: str, tol: float, *, q_min: float, family: str = 'standard',
                  x: float = 0.0, above_zero: bool = False, window: Optional[Tuple[float, float]] = None,
                  decay: Optional[float] = None, omega: Optional[float] = None, n: Optional[int] = None,
                  hardy: float = DEFAULT_HARDY_NORM) -> SinhContour:
    """
    Builds a sinh contour for one of the integrals of the pricing formulas.

    Args:
        model: Levy model.
        role: 'xi_plus' (L+, wings up, apex above 0), 'eta_minus' (L-, wings down, apex below 0) or 'one_dim'
            (wings follow the sign of x, the coefficient of the oscillating factor exp(i*x*xi)).
        tol: error tolerance of the integral.
        q_min: smallest |q| for which the contour is used.
        family: deformation family.
        x: coefficient of the oscillating factor, used by 'one_dim'.
        above_zero: for 'one_dim', keep the apex above 0 for every sign of x (no residue is crossed).
        window: override of the apex window.
        decay: for algebraically decaying integrands, the exponent of |xi| beyond 1 (default: the order).
        omega: override of the wing angle.
        n: override of the half-count.
        hardy: Hardy-norm estimate.

    Returns:
        The contour.
    """

    profile = model.profile
    omega_minus, omega_plus, _ = deformation_angles(profile, family)
    d = omega_plus

    if role == 'xi_plus':
        wing = omega_plus if omega is None else omega
        window = window or default_window(profile, 'plus')
    elif role == 'eta_minus':
        wing = omega_minus if omega is None else omega
        window = window or default_window(profile, 'minus')
    elif role == 'one_dim':
        sign = np.sign(x)
        if omega is not None:
            wing = omega
        else:
            wing = {1.0: omega_plus, -1.0: omega_minus, 0.0: 0.0}[float(sign)]
        if window is None:
            side = 'minus' if sign < 0 and not above_zero else 'plus'
            window = default_window(profile, side)
    else:
        raise ValueError(f'Unknown contour role {role}.')

    if wing != 0:
        d = min(abs(wing), math.pi / 2 - abs(wing) - 1e-3)

    if role == 'one_dim' or decay is not None:
        rate = profile.order if decay is None else decay
        omega1, b = contour_in_window(window, wing, d)
        oscillation = abs(x) * b * abs(math.sin(wing))

        def _builder(scale):
            return algebraic_envelope(model, scale, q_min, rate, oscillation)
    else:
        def _builder(scale):
            return factor_envelope(model, scale, q_min)

    return _sinh_contour(window, wing, d, tol, _builder, hardy, n=n)


def bromwich_params(T: float, tol: float, omega_l: float, sigma_floor: float = 0.0, strip_fraction: float = 0.9,
                    n: Optional[int] = None) -> BromwichContour:
    """
    Sinh-deformed Bromwich contour q(y) = sigma + i*b*sinh(i*omega_l + y) for maturity T.

    The strip |Im y| < d = strip_fraction*omega_l is kept free of singularities by placing the apex of the most
    deformed contour of the strip at sigma_s = sigma_floor + 1/T. Lambda and b*T are chosen to minimize the number of
    nodes subject to the truncation and discretization errors not exceeding tol.

    Args:
        T: maturity.
        tol: error tolerance.
        omega_l: angle in (0, pi/2).
        sigma_floor: abscissa left of which the transform may be singular.
        strip_fraction: d / omega_l.
        n: override of the number of nodes.

    Returns:
        The Bromwich contour.
    """

    if not T > 0:
        raise ValueError(f'Maturity must be positive, got T={T}.')
    if not 0 < omega_l < math.pi / 4:
        raise ValueError(f'Bromwich angle must lie in (0, pi/4), got {omega_l}.')

    d = strip_fraction * omega_l
    sigma_s = max(sigma_floor, 0.0) + 1.0 / T
    energy = math.log(10.0 / tol) + T * sigma_s

    s, s_up = math.sin(omega_l), math.sin(omega_l + d)
    growth = 2 * math.cos(omega_l) * math.sin(d)

    lam_min = math.acosh(s_up / s) + 0.05
    best = None
    for lam in np.linspace(lam_min, 5.0, 200):
        bt = energy / (s * math.cosh(lam) - s_up)
        count = lam * (energy + bt * growth) / (2 * math.pi * d)
        if best is None or count < best[0]:
            best = (count, lam, bt)

    count, lam, bt = best
    n_nodes = int(math.ceil(count)) if n is None else int(n)
    zeta = lam / n_nodes
    b = bt / T
    sigma = sigma_s + b * s_up

    return BromwichContour(sigma=sigma, b=b, omega=omega_l, grid=TrapezoidGrid(zeta=zeta, n_neg=0, n_pos=n_nodes),
                           d=d)

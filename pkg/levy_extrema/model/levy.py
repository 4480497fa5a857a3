""" Characteristic exponents of one-dimensional Levy processes.

The convention is E[exp(i*xi*X_t)] = exp(-t*psi(xi)). Every model carries a RegularityProfile describing where psi
can be continued analytically, which is all the contour machinery needs to know about the model.
"""

import math
from typing import Callable, List, Tuple, Union

import numpy as np
from scipy.special import gamma

from .profile import RegularityProfile, kobol_cones

ArrayLike = Union[complex, np.ndarray]


class LevyModel:
    """
    Base class of the Levy models. Subclasses implement psi0 (the exponent without drift), the profile and the
    asymptotic terms of psi0.
    """

    kind = 'levy'

    def __init__(self, mu: float = 0.0):
        self.mu = float(mu)

    @property
    def profile(self) -> RegularityProfile:
        raise NotImplementedError

    def psi0(self, xi: ArrayLike) -> ArrayLike:
        raise NotImplementedError

    def psi(self, xi: ArrayLike) -> ArrayLike:
        xi = np.asarray(xi, dtype=complex)
        return -1j * self.mu * xi + self.psi0(xi)

    def asymptotic_terms(self) -> List[Tuple[float, Callable[[float], complex]]]:
        """
        Leading terms of psi0 at infinity: pairs (order, coefficient) with
        psi0(rho*exp(i*phi)) ~ sum coefficient(phi) * rho**order as rho -> +inf.
        """
        raise NotImplementedError

    def second_moment(self) -> float:
        """ psi''(0), the second instantaneous moment. """
        raise NotImplementedError

    def mean(self) -> float:
        """ First cumulant kappa_1 = i*psi'(0) per unit time. """
        raise NotImplementedError

    def c_infinity(self, phi: float) -> complex:
        """
        Coefficient c_inf(phi) of the asymptotics psi(rho*exp(i*phi)) ~ c_inf(phi) * rho**nu as rho -> +inf.

        Args:
            phi: direction, inside the cone of the profile.

        Returns:
            c_inf(phi).
        """

        gamma_minus, gamma_plus = self.profile.cone
        if not gamma_minus < phi < gamma_plus:
            raise ValueError(f'Direction phi={phi} lies outside the cone ({gamma_minus}, {gamma_plus}).')

        terms = self.asymptotic_terms()
        order = max(term[0] for term in terms)
        total = 0j
        for term_order, term_coeff in terms:
            if term_order == order:
                total += term_coeff(phi)

        return complex(total)

    def __repr__(self):
        return f'{type(self).__name__}({self.__dict__})'


class GeneralKoBoL(LevyModel):
    """
    KoBoL (CGMY) process with Levy density c_plus*exp(lambda_minus*x)*x**(-nu_plus-1) on x>0 and
    c_minus*exp(lambda_plus*x)*|x|**(-nu_minus-1) on x<0, optional Brownian part sigma2 and drift mu.

    Arguments:
        c_plus, c_minus: intensities, nonnegative.
        nu_plus, nu_minus: orders in (0, 2), different from 1.
        lambda_plus: damping of negative jumps, >= 0.
        lambda_minus: damping of positive jumps, <= 0.
        mu: drift.
        sigma2: variance of the Brownian part.
    """

    kind = 'kobol-general'

    def __init__(self, c_plus: float, c_minus: float, nu_plus: float, nu_minus: float, lambda_plus: float,
                 lambda_minus: float, mu: float = 0.0, sigma2: float = 0.0):
        super().__init__(mu)

        for name, nu in (('nu_plus', nu_plus), ('nu_minus', nu_minus)):
            if not 0 < nu < 2:
                raise ValueError(f'{name} must lie in (0, 2), got {nu}.')
            if nu == 1:
                raise ValueError(f'{name}=1 is not supported (the KoBoL exponent has a different closed form).')
        if c_plus < 0 or c_minus < 0 or c_plus + c_minus == 0:
            raise ValueError(f'Intensities must be nonnegative and not both zero, got c_plus={c_plus}, '
                             f'c_minus={c_minus}.')
        if not (lambda_minus < 0 <= lambda_plus or lambda_minus <= 0 < lambda_plus):
            raise ValueError(f'Need lambda_minus < 0 <= lambda_plus or lambda_minus <= 0 < lambda_plus, '
                             f'got ({lambda_minus}, {lambda_plus}).')
        if sigma2 < 0:
            raise ValueError(f'sigma2 must be nonnegative, got {sigma2}.')

        self.c_plus = float(c_plus)
        self.c_minus = float(c_minus)
        self.nu_plus = float(nu_plus)
        self.nu_minus = float(nu_minus)
        self.lambda_plus = float(lambda_plus)
        self.lambda_minus = float(lambda_minus)
        self.sigma2 = float(sigma2)

    @property
    def order(self) -> float:
        if self.sigma2 > 0:
            return 2.0
        orders = [nu for nu, c in ((self.nu_plus, self.c_plus), (self.nu_minus, self.c_minus)) if c > 0]
        return max(orders)

    @property
    def profile(self) -> RegularityProfile:
        cone, positive_cone = kobol_cones(self.order)
        return RegularityProfile(order=self.order, strip=(self.lambda_minus, self.lambda_plus), cone=cone,
                                 positive_cone=positive_cone, drift=self.mu, is_sl=True)

    def _check_cuts(self, xi: np.ndarray):
        # cuts: i*[lambda_plus, +inf) and i*(-inf, lambda_minus]
        right = -self.lambda_minus - 1j * xi
        left = self.lambda_plus + 1j * xi
        for name, arg, c in (('i*(-inf, lambda_minus]', right, self.c_plus),
                             ('i*[lambda_plus, +inf)', left, self.c_minus)):
            if c == 0:
                continue
            on_cut = (arg.imag == 0) & (arg.real <= 0)
            if np.any(on_cut):
                bad = xi[on_cut].ravel()[0]
                raise ValueError(f'xi={bad} lies on the cut {name} of the KoBoL exponent.')

    def psi0(self, xi: ArrayLike) -> ArrayLike:
        xi = np.asarray(xi, dtype=complex)
        self._check_cuts(xi)

        result = 0.5 * self.sigma2 * xi ** 2
        if self.c_plus > 0:
            kappa = -self.lambda_minus
            result = result + self.c_plus * gamma(-self.nu_plus) * (
                    kappa ** self.nu_plus - np.power(kappa - 1j * xi, self.nu_plus))
        if self.c_minus > 0:
            kappa = self.lambda_plus
            result = result + self.c_minus * gamma(-self.nu_minus) * (
                    kappa ** self.nu_minus - np.power(kappa + 1j * xi, self.nu_minus))

        return result

    def asymptotic_terms(self):
        """
        Positive jumps of order nu contribute -c_plus*Gamma(-nu)*(-i*xi)**nu, that is
        -c_plus*Gamma(-nu)*exp(i*nu*(phi - pi/2)) * rho**nu, negative jumps -c_minus*Gamma(-nu)*(i*xi)**nu, that is
        -c_minus*Gamma(-nu)*exp(i*nu*(phi + pi/2)) * rho**nu, and the Brownian part (sigma2/2)*exp(2*i*phi) * rho**2.
        """
        terms = []
        if self.c_plus > 0:
            a = -self.c_plus * gamma(-self.nu_plus)
            nu = self.nu_plus
            terms.append((nu, lambda phi, a=a, nu=nu: a * np.exp(1j * nu * (phi - math.pi / 2))))
        if self.c_minus > 0:
            a = -self.c_minus * gamma(-self.nu_minus)
            nu = self.nu_minus
            terms.append((nu, lambda phi, a=a, nu=nu: a * np.exp(1j * nu * (phi + math.pi / 2))))
        if self.sigma2 > 0:
            s = self.sigma2
            terms.append((2.0, lambda phi, s=s: 0.5 * s * np.exp(2j * phi)))
        return terms

    def second_moment(self) -> float:
        m2 = self.sigma2
        if self.c_plus > 0:
            m2 += self.c_plus * gamma(2 - self.nu_plus) * (-self.lambda_minus) ** (self.nu_plus - 2)
        if self.c_minus > 0:
            m2 += self.c_minus * gamma(2 - self.nu_minus) * self.lambda_plus ** (self.nu_minus - 2)
        return float(m2)

    def mean(self) -> float:
        kappa1 = self.mu
        if self.c_plus > 0:
            kappa1 -= self.nu_plus * self.c_plus * gamma(-self.nu_plus) * (-self.lambda_minus) ** (self.nu_plus - 1)
        if self.c_minus > 0:
            kappa1 += self.nu_minus * self.c_minus * gamma(-self.nu_minus) * self.lambda_plus ** (self.nu_minus - 1)
        return float(kappa1)

    def mirrored(self) -> 'GeneralKoBoL':
        """ The model of -X: running maxima of -X are running minima of X. """
        return GeneralKoBoL(c_plus=self.c_minus, c_minus=self.c_plus, nu_plus=self.nu_minus, nu_minus=self.nu_plus,
                            lambda_plus=-self.lambda_minus, lambda_minus=-self.lambda_plus, mu=-self.mu,
                            sigma2=self.sigma2)


class KoBoL(GeneralKoBoL):
    """
    KoBoL with equal intensities and orders on both sides:
    psi0(xi) = c*Gamma(-nu)*[(-lambda_minus)**nu - (-lambda_minus - i*xi)**nu + lambda_plus**nu - (lambda_plus + i*xi)**nu].
    """

    kind = 'kobol'

    def __init__(self, c: float, nu: float, lambda_plus: float, lambda_minus: float, mu: float = 0.0):
        super().__init__(c_plus=c, c_minus=c, nu_plus=nu, nu_minus=nu, lambda_plus=lambda_plus,
                         lambda_minus=lambda_minus, mu=mu)

    @property
    def c(self) -> float:
        return self.c_plus

    @property
    def nu(self) -> float:
        return self.nu_plus


class BrownianMotion(LevyModel):
    """
    Brownian motion with drift, psi(xi) = sigma**2*xi**2/2 - i*mu*xi.

    The exponent is entire; strip_halfwidth sets the strip used by the contours.
    """

    kind = 'brownian'

    def __init__(self, sigma: float, mu: float = 0.0, strip_halfwidth: float = 3.0):
        super().__init__(mu)
        if not sigma > 0:
            raise ValueError(f'sigma must be positive, got {sigma}.')
        if not strip_halfwidth > 0:
            raise ValueError(f'strip_halfwidth must be positive, got {strip_halfwidth}.')
        self.sigma = float(sigma)
        self.strip_halfwidth = float(strip_halfwidth)

    @property
    def profile(self) -> RegularityProfile:
        s = self.strip_halfwidth
        quarter_pi = math.pi / 4
        return RegularityProfile(order=2.0, strip=(-s, s), cone=(-math.pi / 2, math.pi / 2),
                                 positive_cone=(-quarter_pi, quarter_pi), drift=self.mu, is_sl=True)

    def psi0(self, xi):
        xi = np.asarray(xi, dtype=complex)
        return 0.5 * self.sigma ** 2 * xi ** 2

    def asymptotic_terms(self):
        s2 = self.sigma ** 2
        return [(2.0, lambda phi: 0.5 * s2 * np.exp(2j * phi))]

    def second_moment(self) -> float:
        return self.sigma ** 2

    def mean(self) -> float:
        return self.mu

    def positive_root(self, q: complex) -> complex:
        """ Root of q + psi(xi) = 0 in the upper half-plane. """
        s2 = self.sigma ** 2
        disc = np.sqrt(complex(-self.mu ** 2 - 2 * s2 * q))
        roots = [(1j * self.mu + disc) / s2, (1j * self.mu - disc) / s2]
        return max(roots, key=lambda r: r.imag)

    def negative_root(self, q: complex) -> complex:
        """ Root of q + psi(xi) = 0 in the lower half-plane. """
        s2 = self.sigma ** 2
        disc = np.sqrt(complex(-self.mu ** 2 - 2 * s2 * q))
        roots = [(1j * self.mu + disc) / s2, (1j * self.mu - disc) / s2]
        return min(roots, key=lambda r: r.imag)


def psi(model: LevyModel, xi: ArrayLike) -> ArrayLike:
    return model.psi(xi)


def c_infinity(model: LevyModel, phi: float) -> complex:
    return model.c_infinity(phi)


def calibrate_second_moment(family: str, m2: float, **params) -> float:
    """
    Intensity that gives the second instantaneous moment psi''(0) = m2.

    Args:
        family: 'kobol', 'kobol-general' (intensities c*c_plus, c*c_minus with the given ratios) or 'brownian'.
        m2: target second moment.
        params: remaining parameters of the family.

    Returns:
        c for the KoBoL families, sigma**2 for Brownian motion.
    """

    if not m2 > 0:
        raise ValueError(f'Second moment must be positive, got m2={m2}.')

    if family == 'brownian':
        return float(m2)

    if family == 'kobol':
        unit = KoBoL(c=1.0, nu=params['nu'], lambda_plus=params['lambda_plus'],
                     lambda_minus=params['lambda_minus'])
    elif family == 'kobol-general':
        unit = GeneralKoBoL(c_plus=params.get('c_plus', 1.0), c_minus=params.get('c_minus', 1.0),
                            nu_plus=params['nu_plus'], nu_minus=params['nu_minus'],
                            lambda_plus=params['lambda_plus'], lambda_minus=params['lambda_minus'])
    else:
        raise ValueError(f'Unknown model family {family}.')

    return m2 / unit.second_moment()


def build_model(kind: str, **params) -> LevyModel:
    """
    Builds a model from flat parameters, calibrating the intensity to m2 when no intensity is given.

    Args:
        kind: 'kobol', 'kobol-general' or 'brownian'.
        params: model parameters; m2 replaces c (or sigma) when present.

    Returns:
        The model.
    """

    params = dict(params)
    mu = params.pop('mu', 0.0)

    if kind == 'kobol':
        nu, lp, lm = params.pop('nu'), params.pop('lambda_plus'), params.pop('lambda_minus')
        c = params.pop('c', None)
        if c is None:
            c = calibrate_second_moment('kobol', params.pop('m2'), nu=nu, lambda_plus=lp, lambda_minus=lm)
        model = KoBoL(c=c, nu=nu, lambda_plus=lp, lambda_minus=lm, mu=mu)
    elif kind == 'kobol-general':
        keys = ('nu_plus', 'nu_minus', 'lambda_plus', 'lambda_minus')
        shape = {key: params.pop(key) for key in keys}
        c_plus, c_minus = params.pop('c_plus', 1.0), params.pop('c_minus', 1.0)
        m2 = params.pop('m2', None)
        if m2 is not None:
            scale = calibrate_second_moment('kobol-general', m2, c_plus=c_plus, c_minus=c_minus, **shape)
            c_plus, c_minus = scale * c_plus, scale * c_minus
        model = GeneralKoBoL(c_plus=c_plus, c_minus=c_minus, mu=mu, sigma2=params.pop('sigma2', 0.0), **shape)
    elif kind == 'brownian':
        sigma = params.pop('sigma', None)
        if sigma is None:
            sigma = math.sqrt(params.pop('m2'))
        model = BrownianMotion(sigma=sigma, mu=mu, strip_halfwidth=params.pop('strip_halfwidth', 3.0))
    else:
        raise ValueError(f'Unknown model kind {kind}.')

    params.pop('m2', None)
    if params:
        raise KeyError(f'Unused model parameters for {kind}: {sorted(params)}.')

    return model

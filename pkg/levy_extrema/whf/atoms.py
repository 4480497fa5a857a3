""" Atoms of the extrema at zero and the factors with the atoms removed.

A process of order nu < 1 with drift mu > 0 stays at its running minimum 0 with positive probability up to T_q, so
phi_minus = a_minus + phi_minus_minus; phi_plus has no atom and is evaluated with the drift factor q/(q - i*mu*xi)
split off. The case mu < 0 is the mirror image.
"""

import math
from typing import Optional, Tuple

import numpy as np

from .factors import cauchy_kernel, phi_minus, phi_plus
from ..contours.select import select_params
from ..contours.sinh import SinhContour
from ..model.levy import LevyModel

SIDES = ('plus', 'minus')


def _check_supported(model: LevyModel):
    profile = model.profile
    if profile.order_tag == '0+' and profile.drift == 0:
        raise ValueError('Driftless processes of order 0+ (Variance Gamma like) are not supported: '
                         'both extrema have atoms that the factor formulas do not separate.')


def _drift_separated_log(model: LevyModel, q: complex, nodes: np.ndarray) -> np.ndarray:
    mu = model.profile.drift
    return np.log(1 + model.psi0(nodes) / (q - 1j * mu * nodes))


def atom_contour(model: LevyModel, side: str, tol: float, q_min: float) -> SinhContour:
    """ Contour of the atom integral: above 0 for a_minus, below 0 for a_plus. """
    decay = 1 - model.profile.order
    role = 'xi_plus' if side == 'minus' else 'eta_minus'
    return select_params(model, role, tol, q_min=q_min, decay=decay)


def atom(model: LevyModel, q: complex, side: str, tol: float = 1e-12,
         contour: Optional[SinhContour] = None) -> complex:
    """
    Mass of the atom at 0 of the infimum (side='minus') or supremum (side='plus') at time T_q.

    a_minus = exp[-(1/(2*pi*i)) * int_{L+} ln(1 + psi0(eta)/(q - i*mu*eta)) / eta d eta] when mu > 0, and
    a_plus = exp[(1/(2*pi*i)) * int_{L-} ln(1 + psi0(eta)/(q - i*mu*eta)) / eta d eta] when mu < 0. The atom on the
    side the drift points to is 0.

    Args:
        model: Levy model.
        q: spectral parameter.
        side: 'plus' or 'minus'.
        tol: error tolerance; the atom is shared by all points, so it is computed more accurately than the factors.
        contour: override of the integration contour.

    Returns:
        The atom, real in [0, 1] for real q > 0.
    """

    if side not in SIDES:
        raise ValueError(f'Unknown side {side}, expected one of {SIDES}.')
    _check_supported(model)

    profile = model.profile
    if profile.standing_assumption:
        return 0.0
    if (side == 'minus') != (profile.drift > 0):
        return 0.0

    if contour is None:
        contour = atom_contour(model, side, tol, q_min=abs(q))

    values = _drift_separated_log(model, q, contour.nodes) / contour.nodes
    integral = contour.integrate(values)
    sign = -1 if side == 'minus' else 1
    value = np.exp(sign * integral / (2j * math.pi))

    if np.isreal(q) and np.real(q) > 0:
        return float(np.real(value))
    return complex(value)


def phi_plus_drift_separated(model: LevyModel, q: complex, xi_targets, integration_contour: SinhContour) -> np.ndarray:
    """
    phi_plus(xi) = q/(q - i*mu*xi) * exp[(1/(2*pi*i)) * int_{L-} xi*ln(1 + psi0(eta)/(q - i*mu*eta)) /
    (eta*(xi - eta)) d eta], valid for mu > 0.
    """

    targets = np.atleast_1d(np.asarray(xi_targets, dtype=complex))
    if not targets.imag.min() > integration_contour.nodes.imag.max():
        raise ValueError('phi_plus needs an integration contour lying strictly below every target.')

    mu = model.profile.drift
    nodes = integration_contour.nodes
    weights = integration_contour.zeta * _drift_separated_log(model, q, nodes) / nodes * integration_contour.derivatives
    exponent = -1j / (2 * math.pi) * targets * (cauchy_kernel(targets, nodes) @ weights)
    return q / (q - 1j * mu * targets) * np.exp(exponent)


def phi_minus_drift_separated(model: LevyModel, q: complex, xi_targets,
                              integration_contour: SinhContour) -> np.ndarray:
    """ Mirror of phi_plus_drift_separated, valid for mu < 0. """

    targets = np.atleast_1d(np.asarray(xi_targets, dtype=complex))
    if not targets.imag.max() < integration_contour.nodes.imag.min():
        raise ValueError('phi_minus needs an integration contour lying strictly above every target.')

    mu = model.profile.drift
    nodes = integration_contour.nodes
    weights = integration_contour.zeta * _drift_separated_log(model, q, nodes) / nodes * integration_contour.derivatives
    exponent = 1j / (2 * math.pi) * targets * (cauchy_kernel(targets, nodes) @ weights)
    return q / (q - 1j * mu * targets) * np.exp(exponent)


class FactorEvaluator:
    """
    Evaluates phi_plus_plus (side='plus') or phi_minus_minus (side='minus'), the factor with its atom removed.

    Arguments:
        model: Levy model.
        q: spectral parameter.
        side: 'plus' or 'minus'.
        contour: integration contour, below the targets for 'plus' and above them for 'minus'.
        atom: atom of the side.
        drift_separated: use the representation with the drift factor split off.
    """

    def __init__(self, model: LevyModel, q: complex, side: str, contour: SinhContour, atom: complex = 0.0,
                 drift_separated: bool = False):
        self.model = model
        self.q = q
        self.side = side
        self.contour = contour
        self.atom = atom
        self.drift_separated = drift_separated

    def __call__(self, xi_targets) -> np.ndarray:
        if self.side == 'plus':
            if self.drift_separated:
                values = phi_plus_drift_separated(self.model, self.q, xi_targets, self.contour)
            else:
                values = phi_plus(self.model, self.q, xi_targets, self.contour)
        else:
            if self.drift_separated:
                values = phi_minus_drift_separated(self.model, self.q, xi_targets, self.contour)
            else:
                values = phi_minus(self.model, self.q, xi_targets, self.contour)
        return values - self.atom


def decompose(model: LevyModel, q: complex, side: str, tol: float = 1e-12,
              contour: Optional[SinhContour] = None) -> Tuple[complex, FactorEvaluator]:
    """
    Splits phi_plus (side='plus') or phi_minus (side='minus') into its atom at 0 and the remainder.

    Args:
        model: Levy model.
        q: spectral parameter, real positive or on a validated Bromwich contour.
        side: 'plus' or 'minus'.
        tol: error tolerance.
        contour: override of the integration contour of the factor.

    Returns:
        (atom, evaluator of the factor with the atom removed).
    """

    if side not in SIDES:
        raise ValueError(f'Unknown side {side}, expected one of {SIDES}.')
    _check_supported(model)

    profile = model.profile
    value = atom(model, q, side, tol=tol)

    if contour is None:
        role = 'eta_minus' if side == 'plus' else 'xi_plus'
        contour = select_params(model, role, tol, q_min=abs(q))

    drift_separated = profile.finite_variation_with_drift and value == 0.0

    return value, FactorEvaluator(model, q, side, contour, atom=value, drift_separated=drift_separated)

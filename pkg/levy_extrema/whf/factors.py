""" Wiener-Hopf factors on sinh contours.

phi_plus(xi) = E[exp(i*xi*sup_{t<T_q} X_t)] and phi_minus(xi) = E[exp(i*xi*inf_{t<T_q} X_t)], T_q ~ Exp(q), satisfy
phi_plus * phi_minus = q / (q + psi). Each factor is computed by the trapezoid rule on a contour lying on the far side of
its targets, and the factor on its own side of the real axis follows from the identity.
"""

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from ..contours.select import select_params
from ..contours.sinh import SinhContour
from ..model.levy import LevyModel

KERNEL_FLOOR = 1e-12


def log_factor_weights(model: LevyModel, q: complex, contour: SinhContour,
                       psi_values: Optional[np.ndarray] = None) -> np.ndarray:
    """ zeta * ln(1 + psi(eta)/q) / eta * chi'(y) at the nodes of the integration contour. """
    if psi_values is None:
        psi_values = model.psi(contour.nodes)
    values = np.log(1 + psi_values / q) / contour.nodes * contour.derivatives
    if not np.all(np.isfinite(values)):
        j = int(np.argmax(~np.isfinite(values)))
        raise FloatingPointError(f'Non-finite log-factor integrand at eta={contour.nodes[j]} for q={q}.')
    return contour.zeta * values


def cauchy_kernel(targets: np.ndarray, nodes: np.ndarray) -> np.ndarray:
    """ Matrix [1/(targets_t - nodes_k)]. """
    differences = targets[:, None] - nodes[None, :]
    closest = np.abs(differences).min() if differences.size else np.inf
    if not closest > KERNEL_FLOOR:
        raise ValueError(f'Singular kernel: a target lies within {closest} of an integration node; shift the grids.')
    return 1.0 / differences


def _factor(model, q, targets, contour, kernel, psi_values, sign):
    targets = np.atleast_1d(np.asarray(targets, dtype=complex))
    if kernel is None:
        kernel = cauchy_kernel(targets, contour.nodes)
    weights = log_factor_weights(model, q, contour, psi_values)
    exponent = sign * 1j / (2 * math.pi) * targets * (kernel @ weights)
    return np.exp(exponent)


def phi_plus(model: LevyModel, q: complex, xi_targets, integration_contour: SinhContour,
             kernel: Optional[np.ndarray] = None, psi_values: Optional[np.ndarray] = None) -> np.ndarray:
    """
    phi_plus(xi) = exp[(1/(2*pi*i)) * int xi*ln(1 + psi(eta)/q) / (eta*(xi - eta)) d eta] over a contour below xi.

    Args:
        model: Levy model.
        q: spectral parameter.
        xi_targets: points above the integration contour.
        integration_contour: contour of the minus type.
        kernel: precomputed [1/(xi_t - eta_k)].
        psi_values: precomputed psi at the contour nodes.

    Returns:
        phi_plus at the targets.
    """

    targets = np.atleast_1d(np.asarray(xi_targets, dtype=complex))
    if not targets.imag.min() > integration_contour.nodes.imag.max():
        raise ValueError('phi_plus needs an integration contour lying strictly below every target.')
    return _factor(model, q, targets, integration_contour, kernel, psi_values, sign=-1)


def phi_minus(model: LevyModel, q: complex, xi_targets, integration_contour: SinhContour,
              kernel: Optional[np.ndarray] = None, psi_values: Optional[np.ndarray] = None) -> np.ndarray:
    """
    phi_minus(xi) = exp[-(1/(2*pi*i)) * int xi*ln(1 + psi(eta)/q) / (eta*(xi - eta)) d eta] over a contour above xi.

    Args:
        model: Levy model.
        q: spectral parameter.
        xi_targets: points below the integration contour.
        integration_contour: contour of the plus type.
        kernel: precomputed [1/(xi_t - eta_k)].
        psi_values: precomputed psi at the contour nodes.

    Returns:
        phi_minus at the targets.
    """

    targets = np.atleast_1d(np.asarray(xi_targets, dtype=complex))
    if not targets.imag.max() < integration_contour.nodes.imag.min():
        raise ValueError('phi_minus needs an integration contour lying strictly above every target.')
    return _factor(model, q, targets, integration_contour, kernel, psi_values, sign=1)


def phi_from_identity(q: complex, phi_other: np.ndarray, psi_values: np.ndarray) -> np.ndarray:
    """ q / ((q + psi) * phi_other), the factor completing phi_other in the Wiener-Hopf identity. """
    denominator = (q + np.asarray(psi_values)) * np.asarray(phi_other)
    if np.any(denominator == 0):
        raise ZeroDivisionError('Zero divisor in the Wiener-Hopf identity: the contour is not admissible for this q.')
    return q / denominator


class ContourPair:
    """
    The contours L+ (wings up, above 0) and L- (wings down, below 0) with the data shared by all q: psi at the nodes
    and the kernel D_plus = [1/(xi_plus_j - xi_minus_k)].

    Arguments:
        model: Levy model.
        plus: contour L+.
        minus: contour L-.
    """

    def __init__(self, model: LevyModel, plus: SinhContour, minus: SinhContour):
        if not plus.nodes.imag.min() > minus.nodes.imag.max():
            raise ValueError(f'L+ (apex {plus.apex}) must lie strictly above L- (apex {minus.apex}).')

        self.model = model
        self.plus = plus
        self.minus = minus
        self.psi_plus = model.psi(plus.nodes)
        self.psi_minus = model.psi(minus.nodes)
        self.kernel = cauchy_kernel(plus.nodes, minus.nodes)

    @classmethod
    def from_model(cls, model: LevyModel, tol: float, q_min: float, family: str = 'standard',
                   plus_window: Optional[Tuple[float, float]] = None,
                   minus_window: Optional[Tuple[float, float]] = None, omega_plus: Optional[float] = None,
                   omega_minus: Optional[float] = None, n_plus: Optional[int] = None,
                   n_minus: Optional[int] = None) -> 'ContourPair':
        """
        Builds L+ and L- for the factor formulas at error tolerance tol, valid for every |q| >= q_min.

        Args:
            model: Levy model.
            tol: error tolerance.
            q_min: smallest |q| the pair is used for.
            family: deformation family.
            plus_window, minus_window: apex windows overriding the defaults.
            omega_plus, omega_minus: wing angles overriding the family.
            n_plus, n_minus: half-counts overriding the truncation rule.

        Returns:
            The pair.
        """

        plus = select_params(model, 'xi_plus', tol, q_min=q_min, family=family, window=plus_window,
                             omega=omega_plus, n=n_plus)
        minus = select_params(model, 'eta_minus', tol, q_min=q_min, family=family, window=minus_window,
                              omega=omega_minus, n=n_minus)
        return cls(model, plus, minus)

    @property
    def windows(self) -> Tuple[Tuple[float, float], Tuple[float, float]]:
        """ Apex ranges swept by the strip families of L+ and L-. """
        ranges = []
        for contour in (self.plus, self.minus):
            low = contour.omega1 + contour.b * math.sin(contour.omega - contour.d)
            high = contour.omega1 + contour.b * math.sin(contour.omega + contour.d)
            ranges.append((min(low, high), max(low, high)))
        return ranges[0], ranges[1]

    @property
    def grid_sizes(self) -> dict:
        return {'n_plus': self.plus.size, 'n_minus': self.minus.size}


@dataclass(frozen=True)
class WhfTable:
    """
    Wiener-Hopf factors of one q on both contours of a pair, plus the atoms a_plus, a_minus.
    """

    q: complex
    pair: ContourPair
    plus_on_plus: np.ndarray
    minus_on_minus: np.ndarray
    plus_on_minus: np.ndarray
    minus_on_plus: np.ndarray
    a_plus: float = 0.0
    a_minus: float = 0.0

    @property
    def psi_plus(self) -> np.ndarray:
        return self.pair.psi_plus

    @property
    def psi_minus(self) -> np.ndarray:
        return self.pair.psi_minus


def build_whf_table(model: LevyModel, q: complex, pair: ContourPair, with_atoms: bool = False) -> WhfTable:
    """
    Evaluates phi_plus and phi_minus on both contours of the pair.

    Args:
        model: Levy model.
        q: spectral parameter.
        pair: contours and cached data.
        with_atoms: also compute the atoms (needed only by the pricers that split them off).

    Returns:
        The table.
    """

    plus_on_plus = phi_plus(model, q, pair.plus.nodes, pair.minus, kernel=pair.kernel, psi_values=pair.psi_minus)
    minus_on_minus = phi_minus(model, q, pair.minus.nodes, pair.plus, kernel=-pair.kernel.T,
                               psi_values=pair.psi_plus)

    plus_on_minus = phi_from_identity(q, minus_on_minus, pair.psi_minus)
    minus_on_plus = phi_from_identity(q, plus_on_plus, pair.psi_plus)

    a_plus = a_minus = 0.0
    if with_atoms and model.profile.finite_variation_with_drift:
        from .atoms import atom

        side = 'minus' if model.profile.drift > 0 else 'plus'
        value = atom(model, q, side, tol=1e-12)
        if side == 'minus':
            a_minus = value
        else:
            a_plus = value

    return WhfTable(q=q, pair=pair, plus_on_plus=plus_on_plus, minus_on_minus=minus_on_minus,
                    plus_on_minus=plus_on_minus, minus_on_plus=minus_on_plus, a_plus=a_plus, a_minus=a_minus)

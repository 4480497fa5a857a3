""" Payoffs and their Fourier transforms G^(xi) = int exp(-i*x*xi) G(x) dx.

The transforms of the payoffs below are defined in the upper half-plane and carry a factor exp(-i*k*xi); the
integrals of the pricing formulas are deformed according to the sign of the coefficient of i*xi in the exponent.
"""

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

KINDS = ('cpdf', 'no_touch', 'barrier', 'exchange', 'general')


@dataclass(frozen=True)
class PayoffSpec:
    """
    Arguments:
        kind: 'cpdf', 'no_touch', 'barrier', 'exchange' or 'general'.
        a1: level of X_T for cpdf.
        a2: level of the running maximum for cpdf and no_touch.
        h: barrier for barrier options.
        beta: power for the exchange option.
        terminal: payoff at maturity for barrier options.
        general: transform handles for the general representation.
    """

    kind: str
    a1: Optional[float] = None
    a2: Optional[float] = None
    h: Optional[float] = None
    beta: Optional[float] = None
    terminal: Optional['TerminalPayoff'] = None
    general: Optional['GeneralPayoff'] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f'Unknown payoff kind {self.kind}, expected one of {KINDS}.')

        required = {'cpdf': ('a1', 'a2'), 'no_touch': ('a2',), 'barrier': ('h', 'terminal'), 'exchange': ('beta',),
                    'general': ('general',)}[self.kind]
        missing = [name for name in required if getattr(self, name) is None]
        if missing:
            raise ValueError(f'Payoff {self.kind} needs {missing}.')

        if self.kind == 'cpdf' and not self.a1 <= self.a2:
            raise ValueError(f'cpdf needs a1 <= a2, got a1={self.a1}, a2={self.a2}.')
        if self.kind == 'exchange' and not self.beta > 1:
            raise ValueError(f'Exchange option needs beta > 1, got {self.beta}.')

    @property
    def level(self) -> float:
        """ The level reported in the a1_or_h column. """
        if self.kind == 'cpdf':
            return self.a1
        if self.kind == 'barrier':
            return self.h
        if self.kind == 'exchange':
            return self.beta
        return math.nan


class TerminalPayoff:
    """ Payoff G(X_T) of a barrier option, with G^(xi) = exp(-i*k*xi)*amplitude(xi). """

    # log-strike k of the factor exp(-i*k*xi) of the transform
    log_strike = 0.0

    def amplitude(self, xi):
        raise NotImplementedError

    def transform(self, xi):
        return self.shifted_transform(xi, 0.0)

    def shifted_transform(self, xi, x: float):
        """ exp(i*x*xi)*G^(xi), the two exponentials merged into one. """
        xi = np.asarray(xi, dtype=complex)
        return np.exp(1j * (x - self.log_strike) * xi) * self.amplitude(xi)

    def __call__(self, x):
        raise NotImplementedError


class DigitalPut(TerminalPayoff):
    """ G(x) = 1 for x <= k, with G^(xi) = exp(-i*k*xi)/(-i*xi). """

    def __init__(self, k: float):
        self.log_strike = float(k)

    def amplitude(self, xi):
        return 1 / (-1j * np.asarray(xi, dtype=complex))

    def __call__(self, x):
        return np.where(np.asarray(x) <= self.log_strike, 1.0, 0.0)


class VanillaPut(TerminalPayoff):
    """ G(x) = (K - exp(x))+, with G^(xi) = K*exp(-i*k*xi)/((-i*xi)*(1 - i*xi)), k = ln K. """

    def __init__(self, strike: float):
        if not strike > 0:
            raise ValueError(f'Strike must be positive, got {strike}.')
        self.strike = float(strike)
        self.log_strike = math.log(strike)

    def amplitude(self, xi):
        xi = np.asarray(xi, dtype=complex)
        return self.strike / ((-1j * xi) * (1 - 1j * xi))

    def __call__(self, x):
        return np.maximum(self.strike - np.exp(np.asarray(x)), 0.0)


class ConstantPayoff(TerminalPayoff):
    """ G(x) = amount. The transform is a multiple of the delta function, so barrier pricing uses no-touch. """

    def __init__(self, amount: float = 1.0):
        self.amount = float(amount)

    def amplitude(self, xi):
        raise ValueError('A constant payoff has no function-valued Fourier transform.')

    def __call__(self, x):
        return np.full(np.shape(x), self.amount)


@dataclass(frozen=True)
class GeneralPayoff:
    """
    Transform handles of a payoff f(x1, x2) of (X_T, running maximum), f_+ its extension by zero to the plane.

    Arguments:
        f1_hat: (xi1, x2) -> transform of f_+ in x1.
        f_hat: (xi1, xi2) -> transform of f_+ in both variables, None when f does not depend on x2.
        w0_hat: (eta, x2) -> transform in y of w0(y, x2) = 1(y >= x2)*(f_+(y, y) - f_+(y, x2)), None when w0 = 0.
        x1_exponent: k such that exp(i*x1*xi1)*f1_hat decays like exp(i*(x1 - k)*xi1), used to orient contours.
    """

    f1_hat: Callable
    f_hat: Optional[Callable] = None
    w0_hat: Optional[Callable] = None
    x1_exponent: float = 0.0


def cpdf_general_payoff(a1: float, a2: float, x2: float) -> GeneralPayoff:
    """
    Handles of the joint cpdf payoff 1(x1 <= a1)*1(x2 <= a2) extended by zero outside x1 <= x2.

    Args:
        a1: level of X_T.
        a2: level of the running maximum.
        x2: current running maximum.

    Returns:
        The handles.
    """

    if not a1 <= a2:
        raise ValueError(f'cpdf needs a1 <= a2, got a1={a1}, a2={a2}.')

    def f1_hat(xi1, state_x2):
        xi1 = np.asarray(xi1, dtype=complex)
        if state_x2 > a2:
            return np.zeros_like(xi1)
        k = min(a1, state_x2)
        return np.exp(-1j * k * xi1) / (-1j * xi1)

    def f_hat(xi1, xi2):
        xi1 = np.asarray(xi1, dtype=complex)
        xi2 = np.asarray(xi2, dtype=complex)
        first = np.exp(-1j * a2 * xi2 - 1j * a1 * xi1) / (-1j * xi1)
        second = np.exp(-1j * a1 * (xi1 + xi2)) / (-1j * (xi1 + xi2))
        return (first - second) / (-1j * xi2)

    def w0_hat(eta, state_x2):
        eta = np.asarray(eta, dtype=complex)
        if not state_x2 < a1:
            return np.zeros_like(eta)
        return (np.exp(-1j * a1 * eta) - np.exp(-1j * state_x2 * eta)) / (-1j * eta)

    return GeneralPayoff(f1_hat=f1_hat, f_hat=f_hat, w0_hat=w0_hat, x1_exponent=min(a1, x2))


def european_general_payoff(terminal: TerminalPayoff) -> GeneralPayoff:
    """ Handles of a payoff G(x1) that does not depend on the running maximum. """

    def f1_hat(xi1, state_x2):
        return terminal.transform(xi1)

    return GeneralPayoff(f1_hat=f1_hat, x1_exponent=terminal.log_strike)

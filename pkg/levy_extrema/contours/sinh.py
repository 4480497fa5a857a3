""" Sinh-deformed contours.

A contour of the xi-plane is chi(y) = i*omega1 + b*sinh(i*omega + y), y real. Its apex chi(0) = i*(omega1 + b*sin(omega))
lies on the imaginary axis; the wings go up when omega > 0 and down when omega < 0. The Bromwich contour of the
q-plane is the rotated hyperbola q(y) = sigma + i*b*sinh(i*omega + y).
"""

import math
from dataclasses import dataclass, field

import numpy as np

from ..quad.trapezoid import TrapezoidGrid


@dataclass(frozen=True)
class SinhContour:
    """
    Arguments:
        omega1: anchor on the imaginary axis.
        b: scale, positive.
        omega: wing angle in (-pi/2, pi/2).
        grid: trapezoid grid in the y coordinate.
        d: half-width of the strip of analyticity used to choose the step.
    """

    omega1: float
    b: float
    omega: float
    grid: TrapezoidGrid
    d: float = 0.0
    nodes: np.ndarray = field(init=False, repr=False, compare=False)
    derivatives: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not self.b > 0:
            raise ValueError(f'Contour scale must be positive, got b={self.b}.')
        if not abs(self.omega) < math.pi / 2:
            raise ValueError(f'Wing angle must lie in (-pi/2, pi/2), got omega={self.omega}.')

        y = self.grid.nodes
        nodes = 1j * self.omega1 + self.b * np.sinh(1j * self.omega + y)
        derivatives = self.b * np.cosh(1j * self.omega + y)
        nodes.setflags(write=False)
        derivatives.setflags(write=False)
        object.__setattr__(self, 'nodes', nodes)
        object.__setattr__(self, 'derivatives', derivatives)

    @property
    def apex(self) -> float:
        return self.omega1 + self.b * math.sin(self.omega)

    @property
    def zeta(self) -> float:
        return self.grid.zeta

    @property
    def size(self) -> int:
        return self.grid.size

    def point(self, y):
        return 1j * self.omega1 + self.b * np.sinh(1j * self.omega + np.asarray(y, dtype=complex))

    def derivative(self, y):
        return self.b * np.cosh(1j * self.omega + np.asarray(y, dtype=complex))

    def integrate(self, values: np.ndarray, axis: int = -1) -> np.ndarray:
        """ zeta * sum_j values_j * chi'(y_j) along the given axis. """
        return self.zeta * np.sum(values * self.derivatives, axis=axis)

    def with_grid(self, grid: TrapezoidGrid) -> 'SinhContour':
        return SinhContour(omega1=self.omega1, b=self.b, omega=self.omega, grid=grid, d=self.d)

    def shifted(self, omega1: float) -> 'SinhContour':
        """ Same wings and grid, translated along the imaginary axis. """
        return SinhContour(omega1=omega1, b=self.b, omega=self.omega, grid=self.grid, d=self.d)


@dataclass(frozen=True)
class BromwichContour:
    """
    Arguments:
        sigma: abscissa parameter.
        b: scale, positive.
        omega: angle in (0, pi/2).
        grid: trapezoid grid over y >= 0 (conjugate symmetry supplies y < 0).
        d: half-width of the strip of analyticity in y.
    """

    sigma: float
    b: float
    omega: float
    grid: TrapezoidGrid
    d: float = 0.0
    nodes: np.ndarray = field(init=False, repr=False, compare=False)
    derivatives: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not self.b > 0:
            raise ValueError(f'Bromwich scale must be positive, got b={self.b}.')
        if not 0 < self.omega < math.pi / 2:
            raise ValueError(f'Bromwich angle must lie in (0, pi/2), got omega={self.omega}.')
        if self.grid.n_neg != 0:
            raise ValueError('Bromwich grid must start at y=0.')
        if not self.sigma - self.b * math.sin(self.omega) > 0:
            raise ValueError(f'Bromwich contour crosses into the left half-plane: '
                             f'sigma - b*sin(omega) = {self.sigma - self.b * math.sin(self.omega)}.')

        y = self.grid.nodes
        nodes = self.sigma + 1j * self.b * np.sinh(1j * self.omega + y)
        derivatives = 1j * self.b * np.cosh(1j * self.omega + y)
        nodes.setflags(write=False)
        derivatives.setflags(write=False)
        object.__setattr__(self, 'nodes', nodes)
        object.__setattr__(self, 'derivatives', derivatives)

    @property
    def apex(self) -> float:
        return self.sigma - self.b * math.sin(self.omega)

    @property
    def zeta(self) -> float:
        return self.grid.zeta

    @property
    def size(self) -> int:
        return self.grid.size

from dataclasses import dataclass, field
from typing import Iterable, List, Tuple

import numpy as np

from .sinh import SinhContour
from ..model.levy import LevyModel

CUT_DISTANCE_FLOOR = 1e-8


@dataclass
class DeformationReport:
    """
    Result of validate_deformation.

    Arguments:
        flag: True if some (q, node) pair violates the admissibility condition.
        offending: the offending (q, node) pairs.
    """

    flag: bool = False
    offending: List[Tuple[complex, complex]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.flag


def validate_deformation(model: LevyModel, contour: SinhContour, q_set: Iterable[complex],
                         verbose: bool = True) -> DeformationReport:
    """
    Checks that 1 + psi(xi)/q stays away from (-inf, 0] at every node of the contour and for every q, so that the
    principal logarithm of the factor formulas is the analytic one.
    For Stieltjes-Levy models and real positive q only the apex condition q + psi(i*apex) > 0 is checked.
    If everything is fine flag is False, otherwise it is True.

    Args:
        model: Levy model.
        contour: contour to check.
        q_set: values of the spectral parameter.
        verbose: print the report.

    Returns:
        The report.
    """

    if verbose:
        print('\nChecking that 1 + psi(xi)/q stays off (-inf, 0] on the contour.\n')

    report = DeformationReport()
    q_values = np.atleast_1d(np.asarray(list(q_set), dtype=complex))
    if q_values.size == 0:
        raise ValueError('validate_deformation needs at least one q.')

    real_positive = np.all(q_values.imag == 0) and np.all(q_values.real > 0)

    if model.profile.is_sl and real_positive:
        apex_psi = complex(model.psi(1j * contour.apex))
        for q in q_values:
            if not (q + apex_psi).real > 0:
                report.offending.append((complex(q), 1j * contour.apex))
                if verbose:
                    print(f'q={q.real} + psi(i*{contour.apex}) = {(q + apex_psi).real} is not positive.')
    else:
        psi_values = model.psi(contour.nodes)
        for q in q_values:
            z = 1 + psi_values / q
            on_cut = (np.abs(z.imag) <= CUT_DISTANCE_FLOOR * np.abs(z)) & (z.real <= 0)
            for node in contour.nodes[on_cut]:
                report.offending.append((complex(q), complex(node)))
            if verbose and np.any(on_cut):
                print(f'q={q}: 1 + psi/q crosses (-inf, 0] at {int(on_cut.sum())} nodes, '
                      f'first at xi={contour.nodes[on_cut][0]}.')

    report.flag = len(report.offending) > 0

    if verbose and not report.flag:
        print('Everything seems to be OK.\n')

    return report


def check_contours_disjoint(plus: SinhContour, minus: SinhContour, verbose: bool = True) -> bool:
    """
    Checks that the plus contour lies strictly above the minus contour: apexes ordered and no node of one contour
    at or below/above the other.
    If everything is fine flag is False, otherwise it is True.

    Args:
        plus: contour L+.
        minus: contour L-.
        verbose: print the report.

    Returns:
        Whether or not a problem was found.
    """

    if verbose:
        print('\nChecking that the contours L+ and L- do not intersect.\n')

    flag = False

    if not plus.apex > minus.apex:
        if verbose:
            print(f'Apex of L+ ({plus.apex}) is not above the apex of L- ({minus.apex}).')
        flag = True

    lowest_plus = plus.nodes.imag.min()
    highest_minus = minus.nodes.imag.max()
    if not lowest_plus > highest_minus:
        if verbose:
            print(f'Lowest node of L+ (Im={lowest_plus}) is not above the highest node of L- (Im={highest_minus}).')
        flag = True

    distance = np.abs(plus.nodes[:, None] - minus.nodes[None, :]).min()
    if not distance > 0:
        if verbose:
            print('L+ and L- share a node.')
        flag = True

    if verbose and not flag:
        print('Everything seems to be OK.\n')

    return flag

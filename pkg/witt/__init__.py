"""Witt algebra curves, density modules and integral forms of enveloping algebras"""

from witt.operators import ShiftOperator, density_operator, witt_operator
from witt.curves import ModuleCurve, density_curve, laurent_curve
from witt.enveloping import WittElement, grouplike_from_automorphism, pushforward
from witt.integrality import integral_witt_index, pin_degree_zero, witt_liftings
from witt.checks import check_witt

__all__ = [
    'ShiftOperator',
    'density_operator',
    'witt_operator',
    'ModuleCurve',
    'density_curve',
    'laurent_curve',
    'WittElement',
    'grouplike_from_automorphism',
    'pushforward',
    'integral_witt_index',
    'pin_degree_zero',
    'witt_liftings',
    'check_witt',
]

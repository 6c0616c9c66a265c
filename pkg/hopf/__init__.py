"""Free Hopf algebras, divided powers, curves and liftings"""

from hopf.algebra import GeneratorId, Family, NCPoly, TensorElement, HopfContext, classify
from hopf.divided import DividedPowerElement, divided_power_product
from hopf.curves import Curve, curve_combine, antipode_curve, seed_lifting
from hopf.lifting import extend_lifting, solve_integral_lift, divided_power_oracle, solver_oracle
from hopf.structural import check_free_structural, verschiebung
from hopf.checks import check_hopf, check_lifting

__all__ = [
    'GeneratorId',
    'Family',
    'NCPoly',
    'TensorElement',
    'HopfContext',
    'classify',
    'DividedPowerElement',
    'divided_power_product',
    'Curve',
    'curve_combine',
    'antipode_curve',
    'seed_lifting',
    'extend_lifting',
    'solve_integral_lift',
    'divided_power_oracle',
    'solver_oracle',
    'check_free_structural',
    'verschiebung',
    'check_hopf',
    'check_lifting',
]

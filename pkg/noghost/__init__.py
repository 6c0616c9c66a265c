"""Partition descent matrices and transverse spaces of null vectors"""

from noghost.descent import DescentMatrix, certify_descent_matrix, descent_coefficient, descent_oracle
from noghost.transverse import TransverseLattice, discriminant_report, transverse_lattice, transverse_space
from noghost.checks import check_noghost

__all__ = [
    'DescentMatrix',
    'certify_descent_matrix',
    'descent_coefficient',
    'descent_oracle',
    'TransverseLattice',
    'discriminant_report',
    'transverse_lattice',
    'transverse_space',
    'check_noghost',
]

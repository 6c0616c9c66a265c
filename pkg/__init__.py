"""
zlift - exact integrality certificates for liftings, lattice vertex algebras and Witt curves
"""

__version__ = "0.1.0"

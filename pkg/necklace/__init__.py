"""Necklace factorization of the integral exponential series"""

from necklace.series import (
    NecklaceClass, GammaSpace, gamma_window, necklace_classes, expand_necklace_direct,
    expand_necklace_product, zero_mode_factor, zero_mode_series, check_necklace
)

__all__ = [
    'NecklaceClass',
    'GammaSpace',
    'gamma_window',
    'necklace_classes',
    'expand_necklace_direct',
    'expand_necklace_product',
    'zero_mode_factor',
    'zero_mode_series',
    'check_necklace',
]

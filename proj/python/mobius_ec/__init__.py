"""Moebius function of an elliptic curve and the contour function m(z)."""

from ._core import (
    Session,
    __version__,
    bessel_j1,
    bessel_y1,
    coefficients,
    hankel2_1_regularized,
    mellin_j1_check,
    mellin_y1_check,
    parse_curve,
)

__all__ = [
    "Session",
    "__version__",
    "bessel_j1",
    "bessel_y1",
    "coefficients",
    "hankel2_1_regularized",
    "mellin_j1_check",
    "mellin_y1_check",
    "parse_curve",
]

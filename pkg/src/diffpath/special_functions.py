# The rational approximations in erf() use the coefficients of fdlibm's s_erf.c:
#
# ====================================================
# Copyright (C) 1993 by Sun Microsystems, Inc. All rights reserved.
#
# Developed at SunPro, a Sun Microsystems, Inc. business.
# Permission to use, copy, modify, and distribute this
# software is freely granted, provided that this notice
# is preserved.
# ====================================================
"""
Error function.

``erf`` is a piecewise rational approximation (absolute error well below
1.5e-7; in double precision it is accurate to a few ulp).  ``erf_series_oracle``
sums the Maclaurin series and exists to test it.
"""

from __future__ import annotations

import math

import numpy as np
from numpy.polynomial import Polynomial

from .errors import DomainError

__all__ = ["erf", "erf_series_oracle", "ERF_MAX_ABS_ERROR"]

#: Documented bound on |erf(z) - true erf(z)|.
ERF_MAX_ABS_ERROR = 1.5e-7

_EFX = 1.28379167095512586316e-01
_ERX = 8.45062911510467529297e-01

# [0, 0.84375): erf(x) = x + x * P(x^2)/Q(x^2)
_PP = Polynomial([1.28379167095512558561e-01, -3.25042107247001499370e-01,
                  -2.84817495755985104766e-02, -5.77027029648944159157e-03,
                  -2.37630166566501626084e-05])
_QQ = Polynomial([1.0, 3.97917223959155352819e-01, 6.50222499887672944485e-02,
                  5.08130628187576562776e-03, 1.32494738004321644526e-04,
                  -3.96022827877536812320e-06])
# [0.84375, 1.25): erf(x) = erx + P(x-1)/Q(x-1)
_PA = Polynomial([-2.36211856075265944077e-03, 4.14856118683748331666e-01,
                  -3.72207876035701323847e-01, 3.18346619901161753674e-01,
                  -1.10894694282396677476e-01, 3.54783043256182359371e-02,
                  -2.16637559486879084300e-03])
_QA = Polynomial([1.0, 1.06420880400844228286e-01, 5.40397917702171048937e-01,
                  7.18286544141962662868e-02, 1.26171219808761642112e-01,
                  1.36370839120290507362e-02, 1.19844998467991074170e-02])
# [1.25, 1/0.35): erfc(x) = exp(-x^2 - 0.5625 + R(1/x^2)/S(1/x^2)) / x
_RA = Polynomial([-9.86494403484714822705e-03, -6.93858572707181764372e-01,
                  -1.05586262253232909814e01, -6.23753324503260060396e01,
                  -1.62396669462573470355e02, -1.84605092906711035994e02,
                  -8.12874355063065934246e01, -9.81432934416914548592e00])
_SA = Polynomial([1.0, 1.96512716674392571292e01, 1.37657754143519042600e02,
                  4.34565877475229228821e02, 6.45387271733267880336e02,
                  4.29008140027567833386e02, 1.08635005541779435134e02,
                  6.57024977031928170135e00, -6.04244152148580987438e-02])
# [1/0.35, 6)
_RB = Polynomial([-9.86494292470009928597e-03, -7.99283237680523006574e-01,
                  -1.77579549177547519889e01, -1.60636384855821916062e02,
                  -6.37566443368389627722e02, -1.02509513161107724954e03,
                  -4.83519191608651397019e02])
_SB = Polynomial([1.0, 3.03380607434824582924e01, 3.25792512996573918826e02,
                  1.53672958608443695994e03, 3.19985821950859553908e03,
                  2.55305040643316442583e03, 4.74528541206955367215e02,
                  -2.24409524465858183362e01])

_BREAKS = np.array([2.0**-28, 0.84375, 1.25, 1 / 0.35, 6.0])


def _erf_nonneg(a: np.ndarray) -> np.ndarray:
    out = np.ones_like(a)  # a >= 6 rounds to 1 in double precision
    band = np.searchsorted(_BREAKS, a, side="right")

    m = band == 0
    out[m] = a[m] + _EFX * a[m]
    m = band == 1
    z = a[m] * a[m]
    out[m] = a[m] + a[m] * _PP(z) / _QQ(z)
    m = band == 2
    s = a[m] - 1.0
    out[m] = _ERX + _PA(s) / _QA(s)
    for k, (r, s_) in ((3, (_RA, _SA)), (4, (_RB, _SB))):
        m = band == k
        z = a[m] * a[m]
        w = 1.0 / z
        out[m] = 1.0 - np.exp(-z - 0.5625 + r(w) / s_(w)) / a[m]
    return out


def erf(z):
    """
    Error function, elementwise.

    Parameters
    ----------
    z : float or array_like
        Finite real argument(s).

    Returns
    -------
    float or ndarray
        erf(z), in [-1, 1].  A Python float is returned for scalar input.

    Raises
    ------
    DomainError
        If any element of `z` is NaN or infinite.
    """
    arr = np.asarray(z, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise DomainError("erf requires finite arguments")
    flat = arr.ravel()
    out = np.copysign(_erf_nonneg(np.abs(flat)), flat).reshape(arr.shape)
    if out.ndim == 0:
        return float(out)
    return out


def erf_series_oracle(z: float, tol: float = 1e-12) -> float:
    """
    erf(z) from partial sums of its Maclaurin series.

    ``erf z = 2/sqrt(pi) * sum_n (-1)^n z^(2n+1) / (n! (2n+1))``, truncated
    once the magnitude of the next term falls below `tol`.  Terms are summed
    with :func:`math.fsum` to keep cancellation error near 1e-12 at |z| = 4.

    Raises
    ------
    DomainError
        If |z| > 4 (cancellation makes the series unreliable there) or
        ``tol <= 0``.
    """
    if not math.isfinite(z) or abs(z) > 4.0:
        raise DomainError(f"series oracle is certified for |z| <= 4, got {z!r}")
    if not tol > 0:
        raise DomainError("tol must be positive")
    terms = []
    power = z  # (-1)^n z^(2n+1) / n!
    n = 0
    while True:
        term = power / (2 * n + 1)
        terms.append(term)
        n += 1
        power *= -z * z / n
        if abs(power / (2 * n + 1)) < tol:
            break
    return 2.0 / math.sqrt(math.pi) * math.fsum(terms)

#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#-------------------------------------------------------------------------------
# This file is part of pdwalk package.
#
# Copyright (C) since 2021 pdwalk developers
# Use of this source is governed by the MIT license, see LICENSE file.
#-------------------------------------------------------------------------------


"""
This module contains the continuous theory of diffusion in randomized media
that the walk ensembles are compared to.

For large times the position density follows the stretched exponential family

    P(x) = a b / (2 sigma Gamma(1/b)) exp(-|a x / sigma|^b),
    a = sqrt(Gamma(3/b) / Gamma(1/b))

with variance ``sigma^2``. Odd moments vanish and even moments are

    E(x^2n) = Gamma((2n+1)/b) / Gamma(1/b) (sigma / a)^2n.

Matching the Taylor expansion of the characteristic function with the
expansion of the evolution generator links the integrated generator
coefficients to ``sigma`` and to the excess kurtosis

    phi = f(b) = Gamma(5/b) Gamma(1/b) / Gamma(3/b)^2 - 3,

which decreases strictly on ``1 <= b <= 2`` and can therefore be inverted to
read ``b`` off measured moments.

All Gamma function ratios are evaluated through log-Gamma differences.
"""


__author__ = "pdwalk developers"


import math
import dataclasses

import numpy
import scipy.special
import scipy.integrate
import scipy.optimize

#
# Custom modules.
#
from pdwalk.errors import InvalidArgumentError, OutOfRangeError


B_DOMAIN = (0.5, 3.5)
"""Admissible interval of the decay exponent."""

B_INVERSE_DOMAIN = (1.0, 2.0)
"""Interval on which the inverse of f is taken by default."""

QUAD_EPSABS = 1e-10
"""Absolute tolerance of the adaptive quadrature."""

EXPANSION_MAX_K_SIGMA = 0.5
"""Largest ``|k| sigma`` for which the characteristic function expansion is checked."""


def _check_b(b):
    b = float(b)
    if not B_DOMAIN[0] <= b <= B_DOMAIN[1]:
        raise InvalidArgumentError(
            "Exponent b={} outside of admissible interval [{}, {}]".format(b, *B_DOMAIN)
        )
    return b

def scale_factor(b):
    """
    Scale ``a = sqrt(Gamma(3/b) / Gamma(1/b))``.

    :param float b: Decay exponent.
    :rtype: float
    """
    b = _check_b(b)
    return math.exp(0.5 * (scipy.special.gammaln(3.0 / b) - scipy.special.gammaln(1.0 / b)))


@dataclasses.dataclass(frozen = True)
class TheoryProfile:
    """
    Stretched exponential density with exponent ``b`` and standard deviation
    ``sigma``.
    """
    b: float
    sigma: float

    def __post_init__(self):
        object.__setattr__(self, 'b', _check_b(self.b))
        if not self.sigma > 0.0 or not math.isfinite(self.sigma):
            raise InvalidArgumentError("Standard deviation must be positive, got {}".format(self.sigma))
        object.__setattr__(self, 'sigma', float(self.sigma))

    @property
    def a(self):
        """Derived scale factor."""
        return scale_factor(self.b)

    @property
    def cutoff(self):
        """Integration cutoff ``12 sigma max(1, 2/b)``."""
        return 12.0 * self.sigma * max(1.0, 2.0 / self.b)


@dataclasses.dataclass(frozen = True)
class GeneratorMoments:
    """
    Integrated generator coefficients at fixed time: ``lambda2_integral`` equals
    ``sigma^2`` and ``lambda4_integral`` equals ``-f(b) sigma^4``.
    """
    lambda2_integral: float
    lambda4_integral: float
    phi: float


@dataclasses.dataclass(frozen = True)
class ExpansionReport:
    """Characteristic function by quadrature against its fourth order series."""
    k: float
    quadrature: float
    series: float
    residual: float


#-------------------------------------------------------------------------------


def f_of_b(b):
    """
    Excess kurtosis of the stretched exponential family,
    ``f(b) = Gamma(5/b) Gamma(1/b) / Gamma(3/b)^2 - 3``.

    :param float b: Decay exponent within ``[0.5, 3.5]``.
    :rtype: float
    """
    b = _check_b(b)
    gammaln = scipy.special.gammaln
    return math.exp(gammaln(5.0 / b) + gammaln(1.0 / b) - 2.0 * gammaln(3.0 / b)) - 3.0

def b_from_phi(phi, extended = False):
    """
    Invert :py:func:`f_of_b` by bisection.

    :param float phi: Excess kurtosis, within ``[f(2), f(1)] = [0, 3]``.
    :param bool extended: Search the whole admissible interval ``[0.5, 3.5]``
        instead of ``[1, 2]``.
    :return: Exponent ``b`` with ``|f(b) - phi| < 1e-10``.
    :rtype: float
    :raises pdwalk.errors.OutOfRangeError: When ``phi`` lies outside the range of f.
    """
    phi = float(phi)
    low, high = B_DOMAIN if extended else B_INVERSE_DOMAIN
    f_low, f_high = f_of_b(low), f_of_b(high)
    if not math.isfinite(phi) or phi > f_low + 1e-12 or phi < f_high - 1e-12:
        raise OutOfRangeError(
            "Excess kurtosis {} outside of [{:.6g}, {:.6g}]".format(phi, f_high, f_low)
        )
    if phi >= f_low:
        return low
    if phi <= f_high:
        return high
    return float(scipy.optimize.bisect(
        lambda b: f_of_b(b) - phi,
        low,
        high,
        xtol = 1e-14,
        rtol = 4 * numpy.finfo(float).eps,
        maxiter = 200
    ))

def clamp_phi(phi):
    """
    Clamp excess kurtosis into the range of f on ``[1, 2]``.

    :return: Tuple of clamped value and flag telling whether clamping happened.
    :rtype: tuple
    """
    low, high = f_of_b(B_INVERSE_DOMAIN[1]), f_of_b(B_INVERSE_DOMAIN[0])
    clamped = min(max(float(phi), low), high)
    return clamped, clamped != phi

def stretched_exp_pdf(x, profile):
    """
    Evaluate stretched exponential density.

    :param x: Position or array of positions.
    :param TheoryProfile profile: Density parameters.
    :return: Density value(s).
    """
    b, sigma = profile.b, profile.sigma
    a = profile.a
    norm = a * b / (2.0 * sigma * math.exp(scipy.special.gammaln(1.0 / b)))
    return norm * numpy.exp(-numpy.abs(a * numpy.asarray(x, dtype = float) / sigma) ** b)

def even_moment_formula(n, profile):
    """
    Closed form of the even moment ``E(x^2n)``.

    :param int n: Half order, at least 1.
    :param TheoryProfile profile: Density parameters.
    :rtype: float
    """
    n = int(n)
    if n < 1:
        raise InvalidArgumentError("Moment half order must be at least 1, got {}".format(n))
    b = profile.b
    ratio = math.exp(scipy.special.gammaln((2 * n + 1) / b) - scipy.special.gammaln(1.0 / b))
    return ratio * (profile.sigma / profile.a) ** (2 * n)

def quadrature_moment(order, profile):
    """
    Moment ``E(x^order)`` of the density by adaptive quadrature.

    :param int order: Moment order, 0 gives the normalization.
    :param TheoryProfile profile: Density parameters.
    :rtype: float
    """
    if order % 2:
        return 0.0
    value, _ = scipy.integrate.quad(
        lambda x: x ** order * stretched_exp_pdf(x, profile),
        0.0,
        profile.cutoff,
        epsabs = QUAD_EPSABS,
        epsrel = 1e-12,
        limit = 500
    )
    return 2.0 * value

def characteristic_function(k, profile):
    """
    Characteristic function ``int exp(-ikx) P(x) dx`` by quadrature. The
    density is even, so only the cosine part survives.

    :param float k: Wavenumber.
    :param TheoryProfile profile: Density parameters.
    :rtype: float
    """
    k = float(k)
    if k == 0.0:
        return 1.0
    value, _ = scipy.integrate.quad(
        lambda x: stretched_exp_pdf(x, profile),
        0.0,
        profile.cutoff,
        weight = 'cos',
        wvar = k,
        epsabs = QUAD_EPSABS,
        epsrel = 1e-12,
        limit = 500
    )
    return 2.0 * value

def characteristic_expansion_check(profile, k):
    """
    Compare quadrature characteristic function with its Taylor series
    ``1 - sigma^2 k^2 / 2 + (f(b) + 3) sigma^4 k^4 / 24``.

    :param TheoryProfile profile: Density parameters.
    :param float k: Wavenumber with ``|k| sigma <= 0.5``.
    :rtype: ExpansionReport
    """
    k = float(k)
    if not math.isfinite(k) or abs(k) * profile.sigma > EXPANSION_MAX_K_SIGMA:
        raise OutOfRangeError(
            "Wavenumber {} outside of validated range |k| sigma <= {}".format(k, EXPANSION_MAX_K_SIGMA)
        )
    sigma2 = profile.sigma ** 2
    series = 1.0 - sigma2 * k ** 2 / 2.0 + (f_of_b(profile.b) + 3.0) * sigma2 ** 2 * k ** 4 / 24.0
    if k == 0.0:
        return ExpansionReport(k, 1.0, 1.0, 0.0)
    quadrature = characteristic_function(k, profile)
    return ExpansionReport(k, quadrature, series, quadrature - series)

def generator_moments(b, sigma_of_t):
    """
    Integrated generator coefficients matching a stretched exponential with
    exponent ``b`` and standard deviation ``sigma_of_t``.

    :param float b: Decay exponent.
    :param float sigma_of_t: Standard deviation at the time of interest.
    :rtype: GeneratorMoments
    """
    sigma_of_t = float(sigma_of_t)
    if not sigma_of_t > 0.0:
        raise InvalidArgumentError("Standard deviation must be positive, got {}".format(sigma_of_t))
    phi = f_of_b(b)
    sigma2 = sigma_of_t ** 2
    return GeneratorMoments(
        lambda2_integral = sigma2,
        lambda4_integral = -phi * sigma2 ** 2,
        phi = phi
    )

def discretized_profile(profile, spacing, half_range):
    """
    Sample density on a regular grid and normalize it into a histogram.

    :param TheoryProfile profile: Density parameters.
    :param float spacing: Grid spacing.
    :param float half_range: Grid covers ``-half_range .. half_range``.
    :return: Tuple of grid points and normalized weights.
    :rtype: tuple
    """
    count = int(round(half_range / spacing))
    grid = numpy.arange(-count, count + 1) * spacing
    weights = stretched_exp_pdf(grid, profile)
    return grid, weights / weights.sum()

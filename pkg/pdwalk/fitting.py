#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#-------------------------------------------------------------------------------
# This file is part of pdwalk package.
#
# Copyright (C) since 2021 pdwalk developers
# Use of this source is governed by the MIT license, see LICENSE file.
#-------------------------------------------------------------------------------


"""
This module contains estimators of the anomalous diffusion exponents.

Spatial profile
    ``ln P(x) = -delta |x|^b + kappa`` is fitted in log space. For fixed ``b``
    the model is linear in ``(delta, kappa)``, so the fit is a one-dimensional
    search over ``b`` (coarse grid scan followed by golden-section refinement)
    around an inner linear least squares solve.

Temporal spread
    ``ln sigma^2 = 2d ln t + ln c^2`` is an ordinary least squares line.

Moments
    The excess kurtosis of a distribution is mapped back to ``b`` through the
    inverse of :py:func:`pdwalk.theory.f_of_b`.
"""


__author__ = "pdwalk developers"


import math
import logging
import dataclasses

import numpy
import scipy.optimize

#
# Custom modules.
#
import pdwalk.const
import pdwalk.theory
import pdwalk.ensemble
from pdwalk.errors import InvalidArgumentError, InsufficientDataError, DegenerateProfileError


LOGGER = logging.getLogger(__name__)

MIN_POINTS = 4
"""Minimal number of usable sites for the spatial profile fit."""

GRID_STEP = 0.05
"""Step of the coarse pre-scan over the exponent."""

B_TOLERANCE = 1e-6
"""Tolerance of the golden-section refinement of the exponent."""


@dataclasses.dataclass(frozen = True)
class SpatialFit:
    """
    Result of the log-space stretched exponential fit. Standard errors are
    conditional: ``stderr_delta`` comes from the inner linear solve at the
    optimal ``b``, ``stderr_b`` from the linearized model at the optimum.
    """
    b: float
    delta: float
    intercept: float
    stderr_b: float
    stderr_delta: float
    residual_rms: float
    points_used: int

    def log_profile(self, positions):
        """Fitted ``ln P`` at given positions."""
        return -self.delta * numpy.abs(numpy.asarray(positions, dtype = float)) ** self.b + self.intercept


@dataclasses.dataclass(frozen = True)
class TemporalFit:
    """Result of the log-log variance power law fit ``sigma^2 = c^2 t^2d``."""
    two_d: float
    c_squared: float
    stderr_two_d: float
    points_used: int

    def variance_at(self, steps):
        """Fitted variance at given step(s)."""
        return self.c_squared * numpy.asarray(steps, dtype = float) ** self.two_d


@dataclasses.dataclass(frozen = True)
class MomentEstimate:
    """Exponent read off the excess kurtosis, ``clamped`` flags a clamped kurtosis."""
    b: float
    phi: float
    clamped: bool


#-------------------------------------------------------------------------------


def _inner_fit(abs_x, log_p, b, sqrt_w):
    """
    Solve linear least squares for ``(delta, kappa)`` at fixed ``b``.

    :return: Tuple of coefficients, sum of squared residuals and design matrix.
    """
    design = numpy.column_stack([-abs_x ** b, numpy.ones_like(abs_x)])
    coef, _, _, _ = numpy.linalg.lstsq(design * sqrt_w[:, None], log_p * sqrt_w, rcond = None)
    residuals = (design @ coef - log_p) * sqrt_w
    return coef, float(residuals @ residuals), design

def usable_sites(dist, min_prob):
    """
    Mask of sites entering the spatial fit: probability above ``min_prob`` and,
    when the step is known, on the parity support of the walk.
    """
    probabilities = dist.probabilities
    mask = probabilities > min_prob
    if dist.step is not None:
        mask &= (dist.positions - dist.step) % 2 == 0
    return mask

def fit_spatial_profile(dist, min_prob = pdwalk.const.DEFAULT_MIN_PROB,
                        b_range = pdwalk.const.DEFAULT_B_RANGE, weighted = False):
    """
    Fit ``ln P(x) = -delta |x|^b + kappa`` to a distribution.

    Only sites on the parity support of the walk (``x`` and ``t`` of equal
    parity, when the distribution knows its step) carrying probability above
    ``min_prob`` enter the fit.

    :param pdwalk.walk.Distribution dist: Normalized distribution.
    :param float min_prob: Probability cutoff.
    :param tuple b_range: Search interval of the exponent.
    :param bool weighted: Weight sites by their probability (count weighting)
        instead of the plain unweighted log-space fit.
    :rtype: SpatialFit
    """
    if abs(dist.total() - 1.0) > pdwalk.ensemble.NORMALIZATION_TOLERANCE:
        raise InvalidArgumentError("Distribution is not normalized, total {}".format(dist.total()))
    if numpy.count_nonzero(dist.probabilities > 0.0) <= 1:
        raise DegenerateProfileError("All probability is concentrated on a single site")
    b_low, b_high = (float(value) for value in b_range)
    if not 0.0 < b_low < b_high:
        raise InvalidArgumentError("Invalid exponent search range {}".format(b_range))

    mask = usable_sites(dist, min_prob)
    points = int(numpy.count_nonzero(mask))
    if points < MIN_POINTS:
        raise InsufficientDataError(
            "Only {} sites above probability {} (at least {} needed)".format(points, min_prob, MIN_POINTS)
        )
    abs_x = numpy.abs(dist.positions[mask]).astype(float)
    log_p = numpy.log(dist.probabilities[mask])
    sqrt_w = numpy.sqrt(dist.probabilities[mask]) if weighted else numpy.ones(points)
    if numpy.unique(abs_x).size < 2:
        raise DegenerateProfileError("Usable sites share a single distance from the origin")

    def objective(b):
        return _inner_fit(abs_x, log_p, b, sqrt_w)[1]

    grid = numpy.arange(b_low, b_high + GRID_STEP / 2, GRID_STEP)
    grid = grid[grid <= b_high]
    values = numpy.array([objective(b) for b in grid])
    best = int(numpy.argmin(values))
    lower = grid[max(best - 1, 0)]
    upper = grid[min(best + 1, grid.size - 1)]
    try:
        if not 0 < best < grid.size - 1:
            raise ValueError('minimum on the edge of the search range')
        result = scipy.optimize.minimize_scalar(
            objective,
            bracket = (lower, grid[best], upper),
            method = 'golden',
            options = {'xtol': B_TOLERANCE / max(grid[best], 1.0)}
        )
    except ValueError:
        # Edge minimum or flat bracket, refine within the neighbouring cells.
        result = scipy.optimize.minimize_scalar(
            objective,
            bounds = (lower, upper),
            method = 'bounded',
            options = {'xatol': B_TOLERANCE}
        )
    b_hat = float(result.x)
    if not b_low <= b_hat <= b_high or objective(b_hat) > values[best]:
        b_hat = float(grid[best])

    coef, ssr, design = _inner_fit(abs_x, log_p, b_hat, sqrt_w)
    delta, kappa = float(coef[0]), float(coef[1])
    dof = points - 3
    scale = ssr / dof if dof > 0 else 0.0

    weighted_design = design * sqrt_w[:, None]
    inner_cov = scale * numpy.linalg.pinv(weighted_design.T @ weighted_design)
    stderr_delta = math.sqrt(max(inner_cov[0, 0], 0.0))

    # Linearized model in (b, delta, kappa); log|x| is taken as zero at x = 0.
    log_abs = numpy.log(numpy.where(abs_x > 0.0, abs_x, 1.0))
    jacobian = numpy.column_stack([
        -delta * abs_x ** b_hat * log_abs,
        -abs_x ** b_hat,
        numpy.ones_like(abs_x)
    ]) * sqrt_w[:, None]
    full_cov = scale * numpy.linalg.pinv(jacobian.T @ jacobian)
    stderr_b = math.sqrt(max(full_cov[0, 0], 0.0))

    fit = SpatialFit(
        b = b_hat,
        delta = delta,
        intercept = kappa,
        stderr_b = stderr_b,
        stderr_delta = stderr_delta,
        residual_rms = math.sqrt(ssr / points),
        points_used = points
    )
    LOGGER.debug("pdwalk: Spatial fit b=%.4f delta=%.4f on %d sites", fit.b, fit.delta, points)
    return fit

def fit_variance_power_law(series):
    """
    Fit ``ln sigma^2 = 2d ln t + ln c^2`` by ordinary least squares.

    :param series: Sequence of ``(t, sigma^2)`` pairs, at least three.
    :rtype: TemporalFit
    """
    series = [(float(t), float(var)) for t, var in series]
    if len(series) < 3:
        raise InsufficientDataError("At least 3 points are needed, got {}".format(len(series)))
    steps = numpy.array([t for t, _ in series])
    variances = numpy.array([var for _, var in series])
    if numpy.any(steps < 1.0):
        raise InvalidArgumentError("Steps must be at least 1")
    if numpy.any(variances <= 0.0):
        raise InvalidArgumentError("Variances must be positive for the log-log fit")

    log_t = numpy.log(steps)
    log_v = numpy.log(variances)
    design = numpy.column_stack([log_t, numpy.ones_like(log_t)])
    coef, _, _, _ = numpy.linalg.lstsq(design, log_v, rcond = None)
    residuals = design @ coef - log_v
    dof = len(series) - 2
    scale = float(residuals @ residuals) / dof
    spread = float(numpy.sum((log_t - log_t.mean()) ** 2))
    if spread <= 0.0:
        raise InsufficientDataError("All points share the same step")
    return TemporalFit(
        two_d = float(coef[0]),
        c_squared = math.exp(float(coef[1])),
        stderr_two_d = math.sqrt(scale / spread),
        points_used = len(series)
    )

def estimate_b_from_moments(dist):
    """
    Estimate exponent from the excess kurtosis ``m4 / m2^2 - 3`` of the
    distribution, inverting :py:func:`pdwalk.theory.f_of_b` on ``[1, 2]``.

    :param pdwalk.walk.Distribution dist: Normalized distribution.
    :rtype: MomentEstimate
    """
    m2 = pdwalk.ensemble.even_central_moment(dist, 2)
    if m2 <= 0.0:
        raise InvalidArgumentError("Distribution has zero variance")
    m4 = pdwalk.ensemble.even_central_moment(dist, 4)
    phi = m4 / m2 ** 2 - 3.0
    clamped_phi, clamped = pdwalk.theory.clamp_phi(phi)
    if clamped:
        LOGGER.debug("pdwalk: Excess kurtosis %.4f clamped to %.4f", phi, clamped_phi)
    return MomentEstimate(
        b = pdwalk.theory.b_from_phi(clamped_phi),
        phi = phi,
        clamped = clamped
    )

#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#-------------------------------------------------------------------------------
# This file is part of pdwalk package.
#
# Copyright (C) since 2021 pdwalk developers
# Use of this source is governed by the MIT license, see LICENSE file.
#-------------------------------------------------------------------------------


"""
Unit tests for :py:mod:`pdwalk.fitting`.
"""


__author__ = "pdwalk developers"


import unittest

import numpy

import pdwalk.theory
import pdwalk.fitting
from pdwalk.walk import Distribution
from pdwalk.errors import InvalidArgumentError, InsufficientDataError, DegenerateProfileError


def stretched_profile(b, delta, half_width = 40, step = None):
    """Normalized ``exp(-delta |x|^b)`` on integer lattice."""
    positions = numpy.arange(-half_width, half_width + 1)
    weights = numpy.exp(-delta * numpy.abs(positions).astype(float) ** b)
    if step is not None:
        weights[(positions + step) % 2 == 1] = 0.0
    return Distribution(positions, weights / weights.sum(), step = step)


class TestSpatialFit(unittest.TestCase):
    """
    Log-space stretched exponential fit.
    """

    def test_01_recovery(self):
        """Noiseless profiles are recovered within one percent."""
        for b, delta in ((1.0, 0.3), (1.5, 0.08), (2.0, 0.02), (3.0, 0.0005)):
            fit = pdwalk.fitting.fit_spatial_profile(stretched_profile(b, delta), min_prob = 1e-12)
            self.assertAlmostEqual(fit.b, b, delta = 0.01 * b)
            self.assertAlmostEqual(fit.delta, delta, delta = 0.01 * delta)
            self.assertLess(fit.residual_rms, 1e-3)
            self.assertLess(fit.stderr_b, 1e-3)

    def test_02_weighted(self):
        """Probability weighted fit recovers noiseless profile as well."""
        fit = pdwalk.fitting.fit_spatial_profile(stretched_profile(1.4, 0.1), min_prob = 1e-12, weighted = True)
        self.assertAlmostEqual(fit.b, 1.4, delta = 0.014)
        self.assertAlmostEqual(fit.delta, 0.1, delta = 0.001)

    def test_03_parity(self):
        """Only sites on the parity support of the walk enter the fit."""
        dist = stretched_profile(1.2, 0.2, half_width = 20, step = 20)
        fit = pdwalk.fitting.fit_spatial_profile(dist, min_prob = 1e-12)
        self.assertEqual(fit.points_used, 21)
        self.assertAlmostEqual(fit.b, 1.2, delta = 0.012)
        mask = pdwalk.fitting.usable_sites(dist, 1e-12)
        self.assertTrue(numpy.all(dist.positions[mask] % 2 == 0))

    def test_04_fitted_curve(self):
        """Fitted log profile reproduces the data."""
        dist = stretched_profile(1.7, 0.05)
        fit = pdwalk.fitting.fit_spatial_profile(dist, min_prob = 1e-12)
        numpy.testing.assert_allclose(fit.log_profile(dist.positions), numpy.log(dist.probabilities), atol = 1e-3)

    def test_05_errors(self):
        """Unusable distributions are refused."""
        with self.assertRaises(DegenerateProfileError):
            pdwalk.fitting.fit_spatial_profile(Distribution.from_mapping({-20: 1.0, 0: 0.0}))
        with self.assertRaises(InsufficientDataError):
            pdwalk.fitting.fit_spatial_profile(Distribution.from_mapping({-1: 0.2, 0: 0.6, 1: 0.2}))
        with self.assertRaises(InvalidArgumentError):
            pdwalk.fitting.fit_spatial_profile(Distribution.from_mapping({-1: 0.2, 0: 0.6, 1: 0.1, 2: 0.05}))
        with self.assertRaises(InvalidArgumentError):
            pdwalk.fitting.fit_spatial_profile(stretched_profile(1.0, 0.3), b_range = (2.0, 1.0))

    def test_06_scale_covariance(self):
        """Stretching the profile keeps b and rescales delta by lambda^-b."""
        for b in (1.2, 1.8):
            fits = []
            for sigma in (10.0, 20.0):
                profile = pdwalk.theory.TheoryProfile(b, sigma)
                grid, weights = pdwalk.theory.discretized_profile(profile, 1.0, profile.cutoff)
                dist = Distribution(grid.astype(numpy.int64), weights)
                fits.append(pdwalk.fitting.fit_spatial_profile(dist, min_prob = 1e-12))
            self.assertAlmostEqual(fits[0].b, fits[1].b, delta = 1e-3)
            self.assertAlmostEqual(fits[1].delta / fits[0].delta, 2.0 ** -b, delta = 1e-3 * 2.0 ** -b)


class TestTemporalFit(unittest.TestCase):
    """
    Variance power law fit.
    """

    def test_01_exact(self):
        """Exact power law is recovered at machine precision."""
        series = [(t, 1.3 * t ** 0.9) for t in (5, 8, 11, 14, 17, 20)]
        fit = pdwalk.fitting.fit_variance_power_law(series)
        self.assertAlmostEqual(fit.two_d, 0.9, delta = 1e-12)
        self.assertAlmostEqual(fit.c_squared, 1.3, delta = 1e-12)
        self.assertLess(fit.stderr_two_d, 1e-10)
        self.assertEqual(fit.points_used, 6)
        self.assertAlmostEqual(float(fit.variance_at(10)), 1.3 * 10 ** 0.9, delta = 1e-10)

    def test_02_invalid(self):
        """Short or nonpositive series are refused."""
        with self.assertRaises(InsufficientDataError):
            pdwalk.fitting.fit_variance_power_law([(5, 1.0), (10, 2.0)])
        with self.assertRaises(InvalidArgumentError):
            pdwalk.fitting.fit_variance_power_law([(5, 1.0), (10, 0.0), (15, 3.0)])
        with self.assertRaises(InvalidArgumentError):
            pdwalk.fitting.fit_variance_power_law([(0, 1.0), (10, 2.0), (15, 3.0)])


class TestMomentEstimate(unittest.TestCase):
    """
    Exponent from excess kurtosis.
    """

    def test_01_recovery(self):
        """Finely discretized profiles give back their exponent."""
        for b in (1.0, 1.5, 2.0):
            profile = pdwalk.theory.TheoryProfile(b, 100.0)
            grid, weights = pdwalk.theory.discretized_profile(profile, 1.0, profile.cutoff)
            estimate = pdwalk.fitting.estimate_b_from_moments(Distribution(grid.astype(numpy.int64), weights))
            self.assertAlmostEqual(estimate.b, b, delta = 0.005)

    def test_02_clamped(self):
        """Kurtosis outside the range of the inverse is clamped and flagged."""
        estimate = pdwalk.fitting.estimate_b_from_moments(Distribution.from_mapping({-1: 0.5, 1: 0.5}))
        self.assertTrue(estimate.clamped)
        self.assertAlmostEqual(estimate.phi, -2.0, delta = 1e-12)
        self.assertAlmostEqual(estimate.b, 2.0, delta = 1e-9)
        with self.assertRaises(InvalidArgumentError):
            pdwalk.fitting.estimate_b_from_moments(Distribution.from_mapping({3: 1.0}))

    def test_03_agrees_with_profile_fit(self):
        """Moment estimate agrees with the profile fit on noiseless profiles."""
        for b in (1.0, 1.25, 1.5, 1.75, 2.0):
            profile = pdwalk.theory.TheoryProfile(b, 30.0)
            grid, weights = pdwalk.theory.discretized_profile(profile, 1.0, profile.cutoff)
            dist = Distribution(grid.astype(numpy.int64), weights)
            fit = pdwalk.fitting.fit_spatial_profile(dist, min_prob = 1e-12)
            estimate = pdwalk.fitting.estimate_b_from_moments(dist)
            self.assertLess(abs(fit.b - estimate.b), 0.05, b)


#-------------------------------------------------------------------------------


if __name__ == "__main__":
    unittest.main()

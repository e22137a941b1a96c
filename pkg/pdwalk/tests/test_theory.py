#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#-------------------------------------------------------------------------------
# This file is part of pdwalk package.
#
# Copyright (C) since 2021 pdwalk developers
# Use of this source is governed by the MIT license, see LICENSE file.
#-------------------------------------------------------------------------------


"""
Unit tests for :py:mod:`pdwalk.theory`.
"""


__author__ = "pdwalk developers"


import math
import unittest

import numpy

import pdwalk.theory
from pdwalk.theory import TheoryProfile
from pdwalk.errors import InvalidArgumentError, OutOfRangeError


class TestKurtosis(unittest.TestCase):
    """
    Excess kurtosis function and its inverse.
    """

    def test_01_known_values(self):
        """Laplace and Gaussian limits."""
        self.assertAlmostEqual(pdwalk.theory.f_of_b(1.0), 3.0, delta = 1e-12)
        self.assertAlmostEqual(pdwalk.theory.f_of_b(2.0), 0.0, delta = 1e-12)

    def test_02_monotonic(self):
        """f decreases strictly on [1, 2]."""
        values = [pdwalk.theory.f_of_b(b) for b in numpy.linspace(1.0, 2.0, 101)]
        self.assertTrue(all(left > right for left, right in zip(values, values[1:])))

    def test_03_round_trip(self):
        """Inverse recovers the exponent."""
        for b in numpy.linspace(1.0, 2.0, 41):
            self.assertAlmostEqual(pdwalk.theory.b_from_phi(pdwalk.theory.f_of_b(b)), b, delta = 1e-9)
        self.assertAlmostEqual(pdwalk.theory.b_from_phi(3.0), 1.0, delta = 1e-9)
        self.assertAlmostEqual(pdwalk.theory.b_from_phi(0.0), 2.0, delta = 1e-9)

    def test_04_extended(self):
        """Extended inverse covers the whole admissible interval."""
        for b in (0.6, 0.8, 2.5, 3.2):
            phi = pdwalk.theory.f_of_b(b)
            with self.assertRaises(OutOfRangeError):
                pdwalk.theory.b_from_phi(phi)
            self.assertAlmostEqual(pdwalk.theory.b_from_phi(phi, extended = True), b, delta = 1e-9)

    def test_05_out_of_range(self):
        """Kurtosis outside the range of f is refused, clamping is flagged."""
        for phi in (-0.1, 3.5, float('nan')):
            with self.assertRaises(OutOfRangeError):
                pdwalk.theory.b_from_phi(phi)
        value, clamped = pdwalk.theory.clamp_phi(3.5)
        self.assertTrue(clamped)
        self.assertAlmostEqual(value, 3.0, delta = 1e-12)
        value, clamped = pdwalk.theory.clamp_phi(-0.2)
        self.assertTrue(clamped)
        self.assertAlmostEqual(value, 0.0, delta = 1e-12)
        self.assertEqual(pdwalk.theory.clamp_phi(1.0), (1.0, False))

    def test_06_domain(self):
        """Exponent outside the admissible interval is refused."""
        for b in (0.4, 3.6, 0.0):
            with self.assertRaises(InvalidArgumentError):
                pdwalk.theory.f_of_b(b)


class TestProfile(unittest.TestCase):
    """
    Stretched exponential density.
    """

    def test_01_normalization_and_variance(self):
        """Density is normalized and has the requested variance."""
        for b in (0.8, 1.0, 1.5, 2.0, 3.0):
            profile = TheoryProfile(b, 1.7)
            self.assertAlmostEqual(pdwalk.theory.quadrature_moment(0, profile), 1.0, delta = 1e-8)
            self.assertAlmostEqual(pdwalk.theory.quadrature_moment(2, profile), 1.7 ** 2, delta = 1e-6 * 1.7 ** 2)
            self.assertEqual(pdwalk.theory.quadrature_moment(3, profile), 0.0)

    def test_02_moments(self):
        """Closed form even moments agree with quadrature."""
        for b in (1.0, 1.5, 2.0):
            profile = TheoryProfile(b, 2.0)
            for n in (1, 2, 3):
                closed = pdwalk.theory.even_moment_formula(n, profile)
                numeric = pdwalk.theory.quadrature_moment(2 * n, profile)
                self.assertAlmostEqual(numeric / closed, 1.0, delta = 1e-6)

    def test_03_gaussian(self):
        """Exponent 2 is the Gaussian density."""
        profile = TheoryProfile(2.0, 1.3)
        x = numpy.linspace(-4, 4, 17)
        expected = numpy.exp(-x ** 2 / (2 * 1.3 ** 2)) / math.sqrt(2 * math.pi * 1.3 ** 2)
        numpy.testing.assert_allclose(pdwalk.theory.stretched_exp_pdf(x, profile), expected, rtol = 1e-12)

    def test_04_discretized_kurtosis(self):
        """Fine discretization reproduces the kurtosis formula."""
        for b in (1.0, 1.5, 2.0):
            profile = TheoryProfile(b, 1.0)
            grid, weights = pdwalk.theory.discretized_profile(profile, 0.01, profile.cutoff)
            m2 = numpy.sum(grid ** 2 * weights)
            m4 = numpy.sum(grid ** 4 * weights)
            self.assertAlmostEqual(m4 / m2 ** 2 - 3.0, pdwalk.theory.f_of_b(b), delta = 1e-3)

    def test_05_invalid(self):
        """Invalid parameters are refused."""
        with self.assertRaises(InvalidArgumentError):
            TheoryProfile(1.5, 0.0)
        with self.assertRaises(InvalidArgumentError):
            TheoryProfile(4.0, 1.0)
        with self.assertRaises(InvalidArgumentError):
            pdwalk.theory.even_moment_formula(0, TheoryProfile(1.5, 1.0))


class TestCharacteristicFunction(unittest.TestCase):
    """
    Characteristic function and generator coefficients.
    """

    def test_01_expansion(self):
        """Fourth order series matches quadrature for small wavenumbers."""
        for b in (1.0, 1.5, 2.0):
            report = pdwalk.theory.characteristic_expansion_check(TheoryProfile(b, 1.0), 0.1)
            self.assertLess(abs(report.residual), 1e-4)

    def test_02_gaussian(self):
        """Gaussian characteristic function in closed form."""
        profile = TheoryProfile(2.0, 1.0)
        for k in (0.0, 0.3, 1.0, 2.5):
            self.assertAlmostEqual(pdwalk.theory.characteristic_function(k, profile), math.exp(-k ** 2 / 2), delta = 1e-8)

    def test_03_range(self):
        """Expansion check is limited to small wavenumbers."""
        with self.assertRaises(OutOfRangeError):
            pdwalk.theory.characteristic_expansion_check(TheoryProfile(1.5, 2.0), 0.3)

    def test_04_generator(self):
        """Integrated generator coefficients."""
        moments = pdwalk.theory.generator_moments(1.0, 2.0)
        self.assertAlmostEqual(moments.lambda2_integral, 4.0)
        self.assertAlmostEqual(moments.lambda4_integral, -48.0, delta = 1e-9)
        self.assertAlmostEqual(moments.phi, 3.0, delta = 1e-12)
        gaussian = pdwalk.theory.generator_moments(2.0, 1.0)
        self.assertAlmostEqual(gaussian.lambda4_integral, 0.0, delta = 1e-12)
        with self.assertRaises(InvalidArgumentError):
            pdwalk.theory.generator_moments(1.5, 0.0)


#-------------------------------------------------------------------------------


if __name__ == "__main__":
    unittest.main()

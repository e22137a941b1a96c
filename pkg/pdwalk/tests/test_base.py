#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#-------------------------------------------------------------------------------
# This file is part of pdwalk package.
#
# Copyright (C) since 2021 pdwalk developers
# Use of this source is governed by the MIT license, see LICENSE file.
#-------------------------------------------------------------------------------


"""
Unit tests for :py:mod:`pdwalk.base` and :py:mod:`pdwalk.app`.
"""


__author__ = "pdwalk developers"


import os
import csv
import shutil
import logging
import tempfile
import unittest

import numpy

import pdwalk.app
import pdwalk.log
import pdwalk.base
import pdwalk.const
import pdwalk.reports
from pdwalk.errors import DegenerateProfileError


class TestRunner(unittest.TestCase):
    """
    Experiment runner.
    """

    def setUp(self):
        self.tmpdir = tempfile.mkdtemp()

    def tearDown(self):
        pdwalk.log.reset_logging()
        shutil.rmtree(self.tmpdir)

    def make_runner(self, **overrides):
        settings = {
            'p_values': [0.0, 0.5],
            'maps': 30,
            'steps': 12,
            'master_seed': 21,
            'output_dir': os.path.join(self.tmpdir, 'out'),
            'log_level': 'warning'
        }
        settings.update(overrides)
        return pdwalk.app.create_runner_full(mode = 'testing', overrides = settings, config_env = None)

    def read_rows(self, file_name):
        with open(file_name, encoding = 'utf-8', newline = '') as fhd:
            lines = fhd.read().splitlines()
        self.assertTrue(lines[0].startswith('# pdwalk '))
        return list(csv.DictReader(lines[1:]))

    def test_01_create(self):
        """Factory resolves configuration and sets up logging."""
        runner = self.make_runner(log_file = os.path.join(self.tmpdir, 'pdwalk.log'), log_file_level = 'debug')
        self.assertEqual(runner.run_config.maps, 30)
        self.assertEqual(runner.run_config.recorded_steps, (5, 8, 11, 12))
        self.assertEqual(runner.logger.name, pdwalk.log.LOGGER_NAME)
        self.assertEqual(runner.logger.level, logging.DEBUG)
        runner.logger.info("pdwalk: Test message")
        self.assertTrue(os.path.isfile(os.path.join(self.tmpdir, 'pdwalk.log')))
        self.assertIn('PdwalkRunner', repr(runner))

    def test_02_distribution_data(self):
        """Emitted distribution files are normalized and row normalized."""
        runner = self.make_runner(events = 500)
        paths = runner.emit_distribution_data()
        names = {os.path.basename(path) for path in paths}
        self.assertEqual(names, {
            'distribution_p0.000.csv', 'distribution_p0.500.csv',
            'logprofile_p0.000.csv', 'logprofile_p0.500.csv',
            'counts_p0.000.csv', 'counts_p0.500.csv',
            'variance.csv'
        })

        rows = self.read_rows(os.path.join(runner.run_config.output_dir, 'distribution_p0.500.csv'))
        by_step = {}
        for row in rows:
            by_step.setdefault(int(row['t']), []).append(row)
        self.assertEqual(sorted(by_step), [5, 8, 11, 12])
        for step_rows in by_step.values():
            self.assertAlmostEqual(max(float(row['P_rownorm']) for row in step_rows), 1.0, delta = 1e-12)
            self.assertAlmostEqual(sum(float(row['P_mean']) for row in step_rows), 1.0, delta = 1e-9)
            for row in step_rows:
                self.assertAlmostEqual(float(row['P_coin0']) + float(row['P_coin1']), float(row['P_mean']), delta = 1e-11)

        counts = self.read_rows(os.path.join(runner.run_config.output_dir, 'counts_p0.500.csv'))
        self.assertEqual(sum(int(row['counts']) for row in counts if row['t'] == '12'), 500)

    def test_03_localized_maximum(self):
        """Static disorder keeps the maximum at the origin."""
        runner = self.make_runner(p_values = [0.0], maps = 200)
        summary = runner.ensemble(0.0)
        for step in (8, 12):
            dist = summary.distribution(step)
            self.assertEqual(int(dist.positions[numpy.argmax(dist.probabilities)]), 0)

    def test_04_read_back(self):
        """Distribution file reads back into the averaged distributions."""
        runner = self.make_runner(p_values = [0.5])
        runner.emit_distribution_data()
        distributions = pdwalk.reports.read_distributions_csv(
            os.path.join(runner.run_config.output_dir, 'distribution_p0.500.csv')
        )
        expected = runner.ensemble(0.5).distribution(12)
        numpy.testing.assert_allclose(distributions[12].probabilities, expected.probabilities, rtol = 1e-11, atol = 1e-300)
        numpy.testing.assert_array_equal(distributions[12].positions, expected.positions)

    def test_05_reproduce_table(self):
        """Table rows carry fits and reference values."""
        runner = self.make_runner(p_values = [0.5, 1.0], maps = 40)
        table, paths = runner.reproduce_table()
        self.assertEqual([row.p for row in table], [0.5, 1.0])
        self.assertEqual(table[0].reference, pdwalk.const.REFERENCE_TABLE[0.5])
        self.assertEqual(table[0].t, 12)
        rows = self.read_rows(paths[0])
        self.assertEqual(list(rows[0].keys()), list(pdwalk.const.CSV_HEADER_TABLE))
        self.assertEqual(rows[1]['ref_two_d'], '1.043')

    def test_06_degenerate(self):
        """Single homogeneous identity map is reported as degenerate profile."""
        runner = self.make_runner(p_values = [0.0], maps = 1, static_coin = 'identity')
        with self.assertRaises(DegenerateProfileError):
            runner.reproduce_table()
        analysis = runner.analyze_level(0.0, strict = False)
        self.assertIsNone(analysis.spatial)
        self.assertIn('spatial', analysis.failures)

    def test_07_similarities(self):
        """Neighbouring levels are compared at the last recorded step."""
        runner = self.make_runner(p_values = [1.0, 0.0, 0.5])
        result = runner.log_similarities()
        self.assertEqual([(p, q) for p, q, _ in result], [(0.0, 0.5), (0.5, 1.0)])
        for _, _, value in result:
            self.assertGreater(value, 0.0)
            self.assertLessEqual(value, 1.0 + 1e-12)

    def test_08_reference_lookup(self):
        """Reference values are found for tabulated levels only."""
        self.assertEqual(pdwalk.base.reference_for(0.2)['b'], 1.378)
        self.assertIsNone(pdwalk.base.reference_for(0.25))


#-------------------------------------------------------------------------------


if __name__ == "__main__":
    unittest.main()

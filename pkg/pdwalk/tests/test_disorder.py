#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#-------------------------------------------------------------------------------
# This file is part of pdwalk package.
#
# Copyright (C) since 2021 pdwalk developers
# Use of this source is governed by the MIT license, see LICENSE file.
#-------------------------------------------------------------------------------


"""
Unit tests for :py:mod:`pdwalk.disorder`.
"""


__author__ = "pdwalk developers"


import json
import unittest

import numpy

import pdwalk.const
import pdwalk.disorder
import pdwalk.ensemble
from pdwalk.errors import InvalidArgumentError, MapFormatError


class TestStaticMaps(unittest.TestCase):
    """
    Static coin maps.
    """

    def test_01_reproducible(self):
        """Same seed gives same map, different seeds differ."""
        first  = pdwalk.disorder.generate_static_map(42, 20)
        second = pdwalk.disorder.generate_static_map(42, 20)
        other  = pdwalk.disorder.generate_static_map(43, 20)
        self.assertEqual(first, second)
        self.assertNotEqual(first, other)
        self.assertEqual(first.labels.size, 41)

    def test_02_uniform(self):
        """Labels are drawn uniformly from all three coins."""
        counts = numpy.zeros(3)
        for seed in range(200):
            counts += numpy.bincount(pdwalk.disorder.generate_static_map(seed, 20).labels, minlength = 3)
        frequencies = counts / counts.sum()
        numpy.testing.assert_allclose(frequencies, [1 / 3] * 3, atol = 0.02)
        large = pdwalk.disorder.generate_static_map(2021, 15000)
        frequencies = numpy.bincount(large.labels, minlength = 3) / large.labels.size
        numpy.testing.assert_allclose(frequencies, [1 / 3] * 3, atol = 0.01)

    def test_03_homogeneous(self):
        """Homogeneous static maps use one coin everywhere."""
        static = pdwalk.disorder.homogeneous_static_map('balanced', 3)
        self.assertTrue(numpy.all(static.labels == pdwalk.const.COIN_BALANCED))
        self.assertEqual(static.label_at(-3), pdwalk.const.COIN_BALANCED)
        with self.assertRaises(InvalidArgumentError):
            pdwalk.disorder.homogeneous_static_map('hadamard', 3)

    def test_04_invalid(self):
        """Invalid half widths and labels are refused."""
        with self.assertRaises(InvalidArgumentError):
            pdwalk.disorder.generate_static_map(1, 0)
        with self.assertRaises(InvalidArgumentError):
            pdwalk.disorder.StaticMap(1, [0, 1, 3])


class TestDilution(unittest.TestCase):
    """
    p-dilution of static maps.
    """

    def setUp(self):
        self.static = pdwalk.disorder.generate_static_map(7, 20)

    def test_01_static_limit(self):
        """Without dilution every step copies the static base."""
        coin_map = pdwalk.disorder.dilute(self.static, 0.0, 99, 20)
        for step in range(1, 21):
            numpy.testing.assert_array_equal(coin_map.column(step), self.static.labels)
        self.assertFalse(coin_map.resampled.any())

    def test_02_full_dilution(self):
        """Full dilution resamples every cell independently of the base."""
        coin_map = pdwalk.disorder.dilute(self.static, 1.0, 99, 20)
        self.assertTrue(coin_map.resampled.all())
        other = pdwalk.disorder.dilute(pdwalk.disorder.generate_static_map(8, 20), 1.0, 99, 20)
        numpy.testing.assert_array_equal(coin_map.labels, other.labels)
        changed = 0
        for seed in range(50):
            diluted = pdwalk.disorder.dilute(self.static, 1.0, seed, 20)
            changed += numpy.count_nonzero(diluted.labels != self.static.labels)
        self.assertAlmostEqual(changed / (50 * 20 * 41), 2 / 3, delta = 0.01)

    def test_03_fraction(self):
        """Fraction of resampled cells matches the disorder level."""
        total = 0
        for seed in range(50):
            total += pdwalk.disorder.dilute(self.static, 0.3, seed, 20).resampled.sum()
        self.assertAlmostEqual(total / (50 * 20 * 41), 0.3, delta = 0.01)

    def test_04_others(self):
        """Replacement from the other coins always changes the coin."""
        coin_map = pdwalk.disorder.dilute(self.static, 0.5, 3, 20, resample = pdwalk.const.RESAMPLE_OTHERS)
        base = numpy.broadcast_to(self.static.labels, coin_map.labels.shape)
        self.assertTrue(numpy.all(coin_map.labels[coin_map.resampled] != base[coin_map.resampled]))
        self.assertTrue(numpy.all(coin_map.labels[~coin_map.resampled] == base[~coin_map.resampled]))

    def test_05_nested_levels(self):
        """Same seed, higher level resamples a superset of cells."""
        low  = pdwalk.disorder.dilute(self.static, 0.2, 5, 20)
        high = pdwalk.disorder.dilute(self.static, 0.5, 5, 20)
        self.assertTrue(numpy.all(high.resampled[low.resampled]))

    def test_06_invalid(self):
        """Invalid parameters are refused."""
        for p in (-0.1, 1.5, 'x'):
            with self.assertRaises(InvalidArgumentError):
                pdwalk.disorder.dilute(self.static, p, 1, 20)
        with self.assertRaises(InvalidArgumentError):
            pdwalk.disorder.dilute(self.static, 0.5, 1, 20, resample = 'some')
        with self.assertRaises(InvalidArgumentError):
            pdwalk.disorder.dilute(self.static, 0.5, 1, 0)


class TestEnsembleMaps(unittest.TestCase):
    """
    Coin maps of an ensemble.
    """

    def test_01_derived_seeds(self):
        """Derived seeds depend on master seed and spawn key only."""
        self.assertEqual(pdwalk.disorder.derive_seed(5, 1, 0), pdwalk.disorder.derive_seed(5, 1, 0))
        seeds = {pdwalk.disorder.derive_seed(5, idx, stream) for idx in range(100) for stream in (0, 1)}
        self.assertEqual(len(seeds), 200)
        with self.assertRaises(InvalidArgumentError):
            pdwalk.disorder.derive_seed(-1, 0)

    def test_02_map_by_index(self):
        """Maps are addressable by index, independently of ensemble size."""
        small = pdwalk.disorder.DisorderSpec(p = 0.3, maps = 10, master_seed = 17)
        large = pdwalk.disorder.DisorderSpec(p = 0.3, maps = 5000, master_seed = 17)
        self.assertEqual(pdwalk.disorder.make_coin_map(small, 7), pdwalk.disorder.make_coin_map(large, 7))
        self.assertNotEqual(pdwalk.disorder.make_coin_map(small, 7), pdwalk.disorder.make_coin_map(small, 8))

    def test_03_shared_static_base(self):
        """Shared static base is the same for all maps."""
        spec = pdwalk.disorder.DisorderSpec(p = 0.3, maps = 10, static_per_map = False)
        first  = pdwalk.disorder.make_coin_map(spec, 0)
        second = pdwalk.disorder.make_coin_map(spec, 1)
        self.assertEqual(first.static_base, second.static_base)
        self.assertFalse(numpy.array_equal(first.labels, second.labels))

    def test_04_static_coin(self):
        """Forced static coin gives homogeneous base."""
        spec = pdwalk.disorder.DisorderSpec(p = 0.0, maps = 1, steps = 5, recorded_steps = (5,), static_coin = 'identity')
        coin_map = pdwalk.disorder.make_coin_map(spec, 0)
        self.assertTrue(numpy.all(coin_map.labels == pdwalk.const.COIN_IDENTITY))

    def test_05_spec_validation(self):
        """Ensemble description is validated on construction."""
        with self.assertRaises(InvalidArgumentError):
            pdwalk.disorder.DisorderSpec(p = 1.2, maps = 10)
        with self.assertRaises(InvalidArgumentError):
            pdwalk.disorder.DisorderSpec(p = 0.2, maps = 0)
        with self.assertRaises(InvalidArgumentError):
            pdwalk.disorder.DisorderSpec(p = 0.2, maps = 10, steps = 10, recorded_steps = (5, 12))
        with self.assertRaises(InvalidArgumentError):
            pdwalk.disorder.DisorderSpec(p = 0.2, maps = 10, static_coin = 'hadamard')

    def test_06_recorded_steps(self):
        """Recorded steps are sorted and repeated steps are merged."""
        spec = pdwalk.disorder.DisorderSpec(p = 0.2, maps = 3, steps = 6, recorded_steps = (6, 4, 6))
        self.assertEqual(spec.recorded_steps, (4, 6))
        summary = pdwalk.ensemble.run_ensemble(spec)
        self.assertTrue(summary.distribution(6).is_normalized())
        self.assertTrue(summary.distribution(4).is_normalized())


class TestSerialization(unittest.TestCase):
    """
    Coin map file format.
    """

    def setUp(self):
        spec = pdwalk.disorder.DisorderSpec(p = 0.2, maps = 5, steps = 4, recorded_steps = (2, 4), master_seed = 3)
        self.coin_map = pdwalk.disorder.make_coin_map(spec, 2)
        self.text = pdwalk.disorder.serialize_map(self.coin_map)

    def test_01_round_trip(self):
        """Serialized map parses back into equal map."""
        parsed = pdwalk.disorder.parse_map(self.text)
        self.assertEqual(parsed, self.coin_map)
        self.assertEqual(parsed.static_base.seed, self.coin_map.static_base.seed)
        self.assertEqual(pdwalk.disorder.serialize_map(parsed), self.text)

    def test_02_readable(self):
        """Serialized map is self describing."""
        document = json.loads(self.text)
        self.assertEqual(document['format'], pdwalk.const.MAP_FORMAT)
        self.assertEqual(document['map_index'], 2)
        self.assertEqual(len(document['labels']), 4)
        self.assertTrue(all(len(row) == 9 and set(row) <= set('IBR') for row in document['labels']))

    def test_03_flat_symbols(self):
        """Flat list of symbols is accepted as well."""
        document = json.loads(self.text)
        document['labels'] = list(''.join(document['labels']))
        parsed = pdwalk.disorder.parse_map(json.dumps(document))
        numpy.testing.assert_array_equal(parsed.labels, self.coin_map.labels)

    def test_04_bad_symbol(self):
        """Unknown coin symbol is reported with line and field."""
        document = json.loads(self.text)
        document['labels'][1] = 'X' + document['labels'][1][1:]
        text = json.dumps(document, indent = 4, sort_keys = True)
        with self.assertRaises(MapFormatError) as ctx:
            pdwalk.disorder.parse_map(text)
        self.assertEqual(ctx.exception.field, 'labels')
        self.assertIsNotNone(ctx.exception.line)
        self.assertIn("field 'labels'", str(ctx.exception))

    def test_05_malformed(self):
        """Malformed documents are refused."""
        with self.assertRaises(MapFormatError) as ctx:
            pdwalk.disorder.parse_map('{"half_width": 2,\n "steps": }')
        self.assertEqual(ctx.exception.line, 2)
        document = json.loads(self.text)
        del document['steps']
        with self.assertRaises(MapFormatError) as ctx:
            pdwalk.disorder.parse_map(json.dumps(document))
        self.assertEqual(ctx.exception.field, 'steps')
        document = json.loads(self.text)
        document['labels'] = document['labels'][:-1]
        with self.assertRaises(MapFormatError):
            pdwalk.disorder.parse_map(json.dumps(document))
        document = json.loads(self.text)
        document['p'] = 2.0
        with self.assertRaises(MapFormatError):
            pdwalk.disorder.parse_map(json.dumps(document))


#-------------------------------------------------------------------------------


if __name__ == "__main__":
    unittest.main()

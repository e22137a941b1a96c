#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#-------------------------------------------------------------------------------
# This file is part of pdwalk package.
#
# Copyright (C) since 2021 pdwalk developers
# Use of this source is governed by the MIT license, see LICENSE file.
#-------------------------------------------------------------------------------


"""
This module contains ensemble statistics for p-diluted walks: running many
coin maps, averaging their distributions, moments, similarity of
distributions and Poissonian shot-noise emulation.

Averages are computed with :py:func:`math.fsum` per lattice bin over all maps.
The sum is exactly rounded and hence independent of map order, sharding and
worker count, so an ensemble is bitwise reproducible from its master seed.
"""


__author__ = "pdwalk developers"


import math
import logging
import concurrent.futures

import numpy

#
# Custom modules.
#
import pdwalk.walk
import pdwalk.disorder
from pdwalk.walk import Distribution
from pdwalk.errors import InvalidArgumentError


LOGGER = logging.getLogger(__name__)

SHARD_SIZE = 1000
"""Maximal number of coin maps evolved together in one batch."""

NORMALIZATION_TOLERANCE = 1e-6
"""Tolerance on the total probability accepted by moment routines."""


class EnsembleSummary:
    """
    Result of one disorder ensemble.

    :param pdwalk.disorder.DisorderSpec spec: Ensemble description.
    :param dict averaged: Averaged coin-resolved distributions keyed by step.
    :param int maps_completed: Number of evolved coin maps.
    :param float max_norm_error: Largest normalization error of any single
        walker at any step.
    """

    def __init__(self, spec, averaged, maps_completed, max_norm_error = 0.0):
        self.spec            = spec
        self.averaged        = dict(sorted(averaged.items()))
        self.maps_completed  = int(maps_completed)
        self.max_norm_error  = float(max_norm_error)
        self.variance_series = [
            (step, variance(dist)) for step, dist in self.averaged.items()
        ]

    def __repr__(self):
        return "<EnsembleSummary(p={}, maps={})>".format(self.spec.p, self.maps_completed)

    def distribution(self, step):
        """
        Return averaged distribution at given recorded step.

        :param int step: Recorded step.
        :rtype: pdwalk.walk.Distribution
        """
        try:
            return self.averaged[int(step)]
        except KeyError:
            raise InvalidArgumentError(
                "Step {} was not recorded, available steps: {}".format(step, list(self.averaged))
            )


class CountHistogram:
    """
    Detection counts per lattice position.

    :param numpy.ndarray positions: Integer positions.
    :param numpy.ndarray counts: Nonnegative counts per position.
    """

    def __init__(self, positions, counts):
        self.positions    = numpy.asarray(positions, dtype = numpy.int64)
        self.counts       = numpy.asarray(counts, dtype = numpy.int64)
        self.total_events = int(self.counts.sum())

    def __repr__(self):
        return "<CountHistogram(events={})>".format(self.total_events)

    def frequencies(self):
        """Empirical relative frequencies, all zero for an empty histogram."""
        if not self.total_events:
            return numpy.zeros(self.counts.shape)
        return self.counts / self.total_events


#-------------------------------------------------------------------------------


def _run_shard(spec, start, stop):
    """
    Evolve coin maps ``start .. stop-1`` of given ensemble.

    :return: Tuple of coin-resolved recorded probabilities of shape
        ``(stop-start, len(recorded_steps), 2T+1, 2)`` and the largest
        normalization error.
    """
    labels = numpy.stack([
        pdwalk.disorder.make_coin_map(spec, idx).labels for idx in range(start, stop)
    ])
    records, norm_error = pdwalk.walk.evolve_batch(labels, spec.recorded_steps)
    LOGGER.debug("pdwalk: Evolved coin maps %d..%d for p=%s", start, stop - 1, spec.p)
    return records, norm_error

def _shards(maps, shard_size = None):
    shard_size = shard_size or SHARD_SIZE
    return [(start, min(start + shard_size, maps)) for start in range(0, maps, shard_size)]

def average_records(records):
    """
    Average per-map records with exactly rounded summation.

    :param numpy.ndarray records: Array of shape ``(maps, ...)``.
    :return: Averaged array of shape ``(...)``.
    :rtype: numpy.ndarray
    """
    maps = records.shape[0]
    columns = numpy.ascontiguousarray(records.reshape(maps, -1).T)
    sums = numpy.array([math.fsum(column) for column in columns])
    return (sums / maps).reshape(records.shape[1:])

def run_ensemble(spec, workers = 1):
    """
    Run disorder ensemble: generate ``spec.maps`` coin maps, evolve the walker
    from ``|x=0, coin 0>`` through each, and average the recorded distributions.

    :param pdwalk.disorder.DisorderSpec spec: Ensemble description.
    :param int workers: Number of worker processes, 1 runs in process.
    :rtype: EnsembleSummary
    """
    LOGGER.info(
        "pdwalk: Running ensemble of %d coin maps for p=%s (%d steps, seed %d)",
        spec.maps,
        spec.p,
        spec.steps,
        spec.master_seed
    )
    shards = _shards(spec.maps)
    if workers > 1 and len(shards) > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers = workers) as executor:
            futures = [executor.submit(_run_shard, spec, start, stop) for start, stop in shards]
            results = [future.result() for future in futures]
    else:
        results = [_run_shard(spec, start, stop) for start, stop in shards]

    records  = numpy.concatenate([result[0] for result in results])
    averaged = average_records(records)
    max_norm_error = max(result[1] for result in results)

    positions = numpy.arange(-spec.steps, spec.steps + 1)
    distributions = {
        step: Distribution(
            positions,
            averaged[idx].sum(axis = 1),
            coin = averaged[idx],
            step = step
        ) for idx, step in enumerate(spec.recorded_steps)
    }
    summary = EnsembleSummary(spec, distributions, records.shape[0], max_norm_error)
    LOGGER.info(
        "pdwalk: Finished ensemble for p=%s, variance at t=%d is %.6f",
        spec.p,
        summary.variance_series[-1][0],
        summary.variance_series[-1][1]
    )
    return summary


#-------------------------------------------------------------------------------


def _check_normalized(dist):
    if abs(dist.total() - 1.0) > NORMALIZATION_TOLERANCE:
        raise InvalidArgumentError(
            "Distribution is not normalized, total probability is {}".format(dist.total())
        )

def mean(dist):
    """
    First moment of normalized distribution.

    :param pdwalk.walk.Distribution dist: Distribution.
    :rtype: float
    """
    _check_normalized(dist)
    return float(numpy.sum(dist.positions * dist.probabilities))

def variance(dist):
    """
    Central second moment ``sum x^2 P - (sum x P)^2``.

    :param pdwalk.walk.Distribution dist: Normalized distribution.
    :rtype: float
    """
    _check_normalized(dist)
    center = numpy.sum(dist.positions * dist.probabilities)
    return max(0.0, float(numpy.sum(dist.positions.astype(float) ** 2 * dist.probabilities) - center ** 2))

def even_central_moment(dist, order):
    """
    Even central moment ``sum (x - mean)^order P(x)``.

    :param pdwalk.walk.Distribution dist: Normalized distribution.
    :param int order: Moment order, one of 2, 4, 6.
    :rtype: float
    """
    if order not in (2, 4, 6):
        raise InvalidArgumentError("Moment order must be 2, 4 or 6, got {}".format(order))
    center = mean(dist)
    return float(numpy.sum((dist.positions - center) ** order * dist.probabilities))

def similarity(dist_p, dist_q):
    """
    Bhattacharyya coefficient ``sum sqrt(P Q)`` of two distributions on the
    same lattice.

    :param pdwalk.walk.Distribution dist_p: First distribution.
    :param pdwalk.walk.Distribution dist_q: Second distribution.
    :return: Value within ``[0, 1]``.
    :rtype: float
    """
    if not numpy.array_equal(dist_p.positions, dist_q.positions):
        raise InvalidArgumentError("Distributions are defined on different lattices")
    _check_normalized(dist_p)
    _check_normalized(dist_q)
    overlap = numpy.sum(numpy.sqrt(numpy.clip(dist_p.probabilities, 0.0, None) * numpy.clip(dist_q.probabilities, 0.0, None)))
    return float(min(1.0, max(0.0, overlap)))

def sample_counts(dist, events, seed):
    """
    Emulate detection shot noise: multinomial draw of ``events`` detections.

    :param pdwalk.walk.Distribution dist: Distribution to sample from.
    :param int events: Number of detection events, nonnegative.
    :param int seed: Seed of the draw.
    :rtype: CountHistogram
    """
    events = int(events)
    if events < 0:
        raise InvalidArgumentError("Number of events must be nonnegative, got {}".format(events))
    probabilities = numpy.clip(dist.probabilities, 0.0, None)
    total = probabilities.sum()
    if total <= 0.0:
        raise InvalidArgumentError("Distribution carries no probability")
    rng = pdwalk.disorder.make_generator(seed)
    counts = rng.multinomial(events, probabilities / total)
    return CountHistogram(dist.positions, counts)

#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#-------------------------------------------------------------------------------
# This file is part of pdwalk package.
#
# Copyright (C) since 2021 pdwalk developers
# Use of this source is governed by the MIT license, see LICENSE file.
#-------------------------------------------------------------------------------


"""
This module contains the experiment runner, the object that ties resolved
configuration, ensembles, fits and emitted files together. Runners are built
by the factories in :py:mod:`pdwalk.app`.

Module contents
---------------

* :py:class:`PdwalkRunner`
* :py:class:`LevelAnalysis`
"""


__author__ = "pdwalk developers"


import os
import logging
import dataclasses

#
# Custom modules.
#
import pdwalk.const
import pdwalk.config
import pdwalk.disorder
import pdwalk.ensemble
import pdwalk.fitting
import pdwalk.reports
from pdwalk.errors import PdwalkError


COUNTS_STREAM = 2
"""Spawn key stream number of the shot-noise draws."""


@dataclasses.dataclass
class LevelAnalysis:
    """
    Ensemble and fits of one disorder level. Fits that could not be performed
    are ``None`` and the reason is kept in ``failures``.
    """
    p: float
    summary: pdwalk.ensemble.EnsembleSummary
    spatial: pdwalk.fitting.SpatialFit = None
    temporal: pdwalk.fitting.TemporalFit = None
    moments: pdwalk.fitting.MomentEstimate = None
    failures: dict = dataclasses.field(default_factory = dict)


def reference_for(p):
    """
    Reference characteristic parameters for given disorder level, ``None``
    when the level is not tabulated.
    """
    for ref_p, values in pdwalk.const.REFERENCE_TABLE.items():
        if abs(ref_p - p) < 1e-9:
            return values
    return None


class PdwalkRunner:
    """
    Experiment runner. Ensembles are cached per disorder level, so that one
    runner may emit several artifacts without recomputation.

    :param str import_name: Name of the runner, used as logger name.
    :param flask.Config config: Layered configuration.
    """

    def __init__(self, import_name, config):
        self.name       = import_name
        self.config     = config
        self.logger     = logging.getLogger(import_name)
        self.run_config = pdwalk.config.RunConfig.from_config(config)
        self._summaries = {}

    def __repr__(self):
        return "<PdwalkRunner(mode={}, config={})>".format(
            self.run_config.mode,
            self.run_config.config_hash()[:12]
        )

    def disorder_spec(self, p):
        """
        Ensemble description of given disorder level.

        :param float p: Disorder level.
        :rtype: pdwalk.disorder.DisorderSpec
        """
        cfg = self.run_config
        return pdwalk.disorder.DisorderSpec(
            p = p,
            maps = cfg.maps,
            steps = cfg.steps,
            recorded_steps = cfg.recorded_steps,
            master_seed = cfg.master_seed,
            resample = cfg.resample,
            static_per_map = cfg.static_per_map,
            static_coin = cfg.static_coin
        )

    def ensemble(self, p):
        """
        Averaged ensemble of given disorder level, computed on first use.

        :param float p: Disorder level.
        :rtype: pdwalk.ensemble.EnsembleSummary
        """
        if p not in self._summaries:
            self._summaries[p] = pdwalk.ensemble.run_ensemble(
                self.disorder_spec(p),
                workers = self.run_config.workers
            )
        return self._summaries[p]

    def analyze_level(self, p, strict = True):
        """
        Run ensemble of given level and fit it: spatial profile and moments at
        the fit step, variance power law over all recorded steps.

        :param float p: Disorder level.
        :param bool strict: Propagate fit errors instead of recording them.
        :rtype: LevelAnalysis
        """
        cfg = self.run_config
        summary = self.ensemble(p)
        dist = summary.distribution(cfg.fit_step)
        analysis = LevelAnalysis(p, summary)

        fits = (
            ('spatial', lambda: pdwalk.fitting.fit_spatial_profile(dist, cfg.min_prob, cfg.b_range)),
            ('temporal', lambda: pdwalk.fitting.fit_variance_power_law(summary.variance_series)),
            ('moments', lambda: pdwalk.fitting.estimate_b_from_moments(dist)),
        )
        for name, func in fits:
            try:
                setattr(analysis, name, func())
            except PdwalkError as exc:
                if strict:
                    raise
                analysis.failures[name] = str(exc)
                self.logger.warning("pdwalk: Unable to perform %s fit for p=%s: %s", name, p, exc)
        return analysis

    def output_path(self, file_name):
        """
        Path of an output file, the output directory is created on demand.
        """
        os.makedirs(self.run_config.output_dir, exist_ok = True)
        return os.path.join(self.run_config.output_dir, file_name)

    #---------------------------------------------------------------------------

    def reproduce_table(self):
        """
        Reproduce the characteristic parameter table: for every disorder level
        fit the spatial profile at the fit step and the variance power law over
        the recorded steps. Rows are written as CSV and as aligned text table.

        :return: Tuple of table rows and list of written files.
        :rtype: tuple
        """
        table = []
        for p in self.run_config.p_values:
            analysis = self.analyze_level(p, strict = True)
            table.append(
                pdwalk.reports.TableRow(
                    p = p,
                    t = self.run_config.fit_step,
                    b = analysis.spatial.b,
                    stderr_b = analysis.spatial.stderr_b,
                    delta = analysis.spatial.delta,
                    stderr_delta = analysis.spatial.stderr_delta,
                    two_d = analysis.temporal.two_d,
                    stderr_two_d = analysis.temporal.stderr_two_d,
                    c_squared = analysis.temporal.c_squared,
                    b_moments = analysis.moments.b,
                    reference = reference_for(p)
                )
            )
        paths = [
            pdwalk.reports.write_table_csv(self.output_path('table.csv'), self.run_config, table),
            pdwalk.reports.write_table_text(self.output_path('table.txt'), self.run_config, table)
        ]
        self.logger.info("pdwalk: Characteristic parameter table written to %s", paths[0])
        return table, paths

    def emit_distribution_data(self):
        """
        Emit plot-ready data: per-level distribution files (with coin-resolved
        and row-normalized columns), per-level log-profile files, the variance
        file with fitted curves and, when shot noise is requested, per-level
        count histograms.

        :return: List of written files.
        :rtype: list
        """
        cfg = self.run_config
        paths = []
        levels = []
        for p in cfg.p_values:
            analysis = self.analyze_level(p, strict = False)
            tag = pdwalk.reports.level_tag(p)
            paths.append(
                pdwalk.reports.write_distribution_csv(
                    self.output_path('distribution_{}.csv'.format(tag)), cfg, analysis.summary
                )
            )
            paths.append(
                pdwalk.reports.write_logprofile_csv(
                    self.output_path('logprofile_{}.csv'.format(tag)),
                    cfg,
                    analysis.summary.distribution(cfg.fit_step),
                    analysis.spatial
                )
            )
            if cfg.events:
                paths.append(
                    pdwalk.reports.write_counts_csv(
                        self.output_path('counts_{}.csv'.format(tag)), cfg, self.shot_noise(p)
                    )
                )
            levels.append((p, analysis.summary, analysis.temporal))

        paths.append(pdwalk.reports.write_variance_csv(self.output_path('variance.csv'), cfg, levels))
        self.log_similarities()
        self.logger.info("pdwalk: Written %d data files into %s", len(paths), cfg.output_dir)
        return paths

    def shot_noise(self, p):
        """
        Emulated detection counts of all recorded steps of given level.

        :param float p: Disorder level.
        :return: :py:class:`pdwalk.ensemble.CountHistogram` keyed by step.
        :rtype: dict
        """
        cfg = self.run_config
        summary = self.ensemble(p)
        return {
            step: pdwalk.ensemble.sample_counts(
                dist,
                cfg.events,
                pdwalk.disorder.derive_seed(cfg.master_seed, int(round(p * 1e6)), step, COUNTS_STREAM)
            ) for step, dist in summary.averaged.items()
        }

    def log_similarities(self):
        """
        Log similarity of the last recorded distributions of neighbouring
        disorder levels.

        :return: List of ``(p, q, similarity)`` triplets.
        :rtype: list
        """
        levels = sorted(self.run_config.p_values)
        step = self.run_config.recorded_steps[-1]
        result = []
        for p, q in zip(levels, levels[1:]):
            value = pdwalk.ensemble.similarity(
                self.ensemble(p).distribution(step),
                self.ensemble(q).distribution(step)
            )
            self.logger.info("pdwalk: Similarity of p=%s and p=%s at t=%d is %.6f", p, q, step, value)
            result.append((p, q, value))
        return result

#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#-------------------------------------------------------------------------------
# This file is part of pdwalk package.
#
# Copyright (C) since 2021 pdwalk developers
# Use of this source is governed by the MIT license, see LICENSE file.
#-------------------------------------------------------------------------------


"""
This module contains writers and readers of the emitted data files.

Every CSV file starts with a single comment line::

    # pdwalk <version> config=<config hash> seed=<master seed>

followed by a header row and data rows. Files carry no timestamps, so that
identical configurations produce identical bytes. Floating point values are
written with twelve significant digits.
"""


__author__ = "pdwalk developers"


import os
import csv
import dataclasses

import numpy

#
# Custom modules.
#
import pdwalk
import pdwalk.const
import pdwalk.fitting
from pdwalk.walk import Distribution
from pdwalk.errors import InvalidArgumentError


FLOAT_FORMAT = '{:.12g}'


@dataclasses.dataclass(frozen = True)
class TableRow:  # pylint: disable=locally-disabled,too-many-instance-attributes
    """
    One row of the characteristic parameter table.
    """
    p: float
    t: int
    b: float
    stderr_b: float
    delta: float
    stderr_delta: float
    two_d: float
    stderr_two_d: float
    c_squared: float
    b_moments: float
    reference: dict = None

    def as_csv_row(self):
        """Values in the order of :py:const:`pdwalk.const.CSV_HEADER_TABLE`."""
        reference = self.reference or {}
        return (
            self.p, self.t, self.b, self.stderr_b, self.delta, self.stderr_delta,
            self.two_d, self.stderr_two_d, self.c_squared, self.b_moments,
            reference.get('b'), reference.get('delta'),
            reference.get('two_d'), reference.get('c_squared')
        )


#-------------------------------------------------------------------------------


def level_tag(p):
    """File name tag of disorder level, ``p0.200`` for ``p = 0.2``."""
    return 'p{:.3f}'.format(p)

def header_line(run_config):
    """
    Comment line identifying the producing configuration.

    :param pdwalk.config.RunConfig run_config: Run configuration.
    :rtype: str
    """
    return '# pdwalk {} config={} seed={}'.format(
        pdwalk.__version__,
        run_config.config_hash(),
        run_config.master_seed
    )

def format_value(value):
    """Format single CSV cell, ``None`` becomes an empty cell."""
    if value is None:
        return ''
    if isinstance(value, (bool, numpy.bool_)):
        return str(int(value))
    if isinstance(value, (int, numpy.integer)):
        return str(int(value))
    if isinstance(value, (float, numpy.floating)):
        return FLOAT_FORMAT.format(float(value))
    return str(value)

def write_csv(file_name, run_config, header, rows):
    """
    Write CSV file with identification comment and header row.

    :param str file_name: Target file.
    :param pdwalk.config.RunConfig run_config: Run configuration.
    :param tuple header: Column names.
    :param rows: Iterable of value tuples.
    :return: Name of the written file.
    :rtype: str
    """
    with open(file_name, 'w', encoding = 'utf-8', newline = '') as fhd:
        fhd.write(header_line(run_config) + '\n')
        writer = csv.writer(fhd, lineterminator = '\n')
        writer.writerow(header)
        for row in rows:
            writer.writerow([format_value(value) for value in row])
    return file_name


#-------------------------------------------------------------------------------


def distribution_rows(summary):
    """
    Rows of averaged distributions for all recorded steps, including the
    coin-resolved parts and each row normalized to its maximum.

    :param pdwalk.ensemble.EnsembleSummary summary: Ensemble result.
    """
    for step, dist in summary.averaged.items():
        peak = float(dist.probabilities.max())
        for idx, position in enumerate(dist.positions):
            probability = float(dist.probabilities[idx])
            yield (
                step,
                int(position),
                probability,
                float(dist.coin[idx, 0]) if dist.coin is not None else None,
                float(dist.coin[idx, 1]) if dist.coin is not None else None,
                probability / peak if peak > 0.0 else 0.0
            )

def write_distribution_csv(file_name, run_config, summary):
    """Write per-level distribution file."""
    return write_csv(file_name, run_config, pdwalk.const.CSV_HEADER_DISTRIBUTION, distribution_rows(summary))

def write_variance_csv(file_name, run_config, levels):
    """
    Write variance series of all levels.

    :param str file_name: Target file.
    :param pdwalk.config.RunConfig run_config: Run configuration.
    :param levels: Sequence of ``(p, summary, temporal_fit)`` triplets, the fit
        may be ``None``.
    """
    def rows():
        for p, summary, temporal in levels:
            for step, value in summary.variance_series:
                fitted = float(temporal.variance_at(step)) if temporal is not None else None
                yield (p, step, value, fitted)
    return write_csv(file_name, run_config, pdwalk.const.CSV_HEADER_VARIANCE, rows())

def write_logprofile_csv(file_name, run_config, dist, spatial_fit = None):
    """
    Write log-space profile of the fitted distribution, restricted to the sites
    entering the fit.
    """
    mask = pdwalk.fitting.usable_sites(dist, run_config.min_prob)
    positions = dist.positions[mask]
    log_p = numpy.log(dist.probabilities[mask])
    fitted = spatial_fit.log_profile(positions) if spatial_fit is not None else [None] * len(positions)
    rows = (
        (dist.step, int(position), abs(int(position)), float(value), fit_value)
        for position, value, fit_value in zip(positions, log_p, fitted)
    )
    return write_csv(file_name, run_config, pdwalk.const.CSV_HEADER_LOGPROFILE, rows)

def write_counts_csv(file_name, run_config, histograms):
    """
    Write shot-noise count histograms.

    :param dict histograms: :py:class:`pdwalk.ensemble.CountHistogram` keyed by step.
    """
    rows = (
        (step, int(position), int(count))
        for step, histogram in sorted(histograms.items())
        for position, count in zip(histogram.positions, histogram.counts)
    )
    return write_csv(file_name, run_config, pdwalk.const.CSV_HEADER_COUNTS, rows)

def write_table_csv(file_name, run_config, table):
    """Write characteristic parameter table."""
    return write_csv(file_name, run_config, pdwalk.const.CSV_HEADER_TABLE, (row.as_csv_row() for row in table))

def _cell(value, error = None, ref = None):
    text = '{:.4f}'.format(value)
    if error is not None:
        text += ' +- {:.4f}'.format(error)
    if ref is not None:
        text += ' [{:g}]'.format(ref)
    return text

def format_text_table(table):
    """
    Render characteristic parameter table as aligned plain text. Reference
    values are appended in brackets when known.

    :param list table: List of :py:class:`TableRow`.
    :rtype: str
    """
    header = ('p', 'b', 'delta', '2d', 'c^2', 'b (moments)')
    lines = []
    for row in table:
        reference = row.reference or {}
        lines.append((
            '{:.2f}'.format(row.p),
            _cell(row.b, row.stderr_b, reference.get('b')),
            _cell(row.delta, row.stderr_delta, reference.get('delta')),
            _cell(row.two_d, row.stderr_two_d, reference.get('two_d')),
            _cell(row.c_squared, None, reference.get('c_squared')),
            _cell(row.b_moments)
        ))
    widths = [max(len(item[col]) for item in [header] + lines) for col in range(len(header))]
    output = []
    for item in [header] + lines:
        output.append('  '.join(text.rjust(width) for text, width in zip(item, widths)).rstrip())
        if item is header:
            output.append('  '.join('-' * width for width in widths))
    return '\n'.join(output) + '\n'

def write_table_text(file_name, run_config, table):
    """Write aligned text table below the identification comment."""
    with open(file_name, 'w', encoding = 'utf-8') as fhd:
        fhd.write(header_line(run_config) + '\n')
        fhd.write(format_text_table(table))
    return file_name


#-------------------------------------------------------------------------------


def read_distributions_csv(file_name):
    """
    Read distribution file written by :py:func:`write_distribution_csv`, or any
    CSV with columns ``t``, ``x`` and ``P_mean``.

    :param str file_name: Source file.
    :return: :py:class:`pdwalk.walk.Distribution` keyed by step.
    :rtype: dict
    """
    if not os.path.isfile(file_name):
        raise InvalidArgumentError("Distribution file '{}' does not exist".format(file_name))
    with open(file_name, 'r', encoding = 'utf-8', newline = '') as fhd:
        lines = [line for line in fhd if not line.startswith('#')]
    reader = csv.DictReader(lines)
    missing = {'t', 'x', 'P_mean'} - set(reader.fieldnames or ())
    if missing:
        raise InvalidArgumentError("Distribution file '{}' lacks columns {}".format(file_name, sorted(missing)))

    rows = {}
    for lineno, record in enumerate(reader, start = 2):
        try:
            rows.setdefault(int(record['t']), []).append((int(record['x']), float(record['P_mean'])))
        except (TypeError, ValueError):
            raise InvalidArgumentError("Malformed row {} in distribution file '{}'".format(lineno, file_name))
    if not rows:
        raise InvalidArgumentError("Distribution file '{}' contains no data".format(file_name))

    result = {}
    for step in sorted(rows):
        data = sorted(rows[step])
        result[step] = Distribution(
            numpy.array([position for position, _ in data], dtype = numpy.int64),
            numpy.array([value for _, value in data]),
            step = step
        )
    return result

def select_step(distributions, file_name, step = None):
    """
    Pick one step out of distributions read by :py:func:`read_distributions_csv`.

    :param dict distributions: Distributions keyed by step.
    :param str file_name: Source file, for error messages.
    :param int step: Step to pick, defaults to the largest step.
    :rtype: pdwalk.walk.Distribution
    """
    if step is None:
        step = max(distributions)
    if step not in distributions:
        raise InvalidArgumentError(
            "Step {} not found in '{}', available: {}".format(step, file_name, sorted(distributions))
        )
    return distributions[step]

def read_distribution_csv(file_name, step = None):
    """
    Read single step of a distribution file.

    :param str file_name: Source file.
    :param int step: Step to read, defaults to the largest step in the file.
    :rtype: pdwalk.walk.Distribution
    """
    return select_step(read_distributions_csv(file_name), file_name, step)

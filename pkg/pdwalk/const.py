#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#-------------------------------------------------------------------------------
# This file is part of pdwalk package.
#
# Copyright (C) since 2021 pdwalk developers
# Use of this source is governed by the MIT license, see LICENSE file.
#-------------------------------------------------------------------------------


"""
This module contains global package-wide constants for pdwalk.
"""


__author__ = "pdwalk developers"


import math


COIN_IDENTITY = 0
"""Label of the *identity* coin (polarization preserving, angle 0)."""

COIN_BALANCED = 1
"""Label of the *balanced* coin (equal mixing, angle pi/4)."""

COIN_REFLECTION = 2
"""Label of the *reflection* coin (polarization swapping, angle pi/2)."""

COIN_LABELS = (
    COIN_IDENTITY,
    COIN_BALANCED,
    COIN_REFLECTION
)
"""All valid coin labels, in label order."""

COIN_ANGLES = {
    COIN_IDENTITY:   0.0,
    COIN_BALANCED:   math.pi / 4,
    COIN_REFLECTION: math.pi / 2
}
"""Mapping of coin labels to coin rotation angles in radians."""

COIN_SYMBOLS = {
    COIN_IDENTITY:   'I',
    COIN_BALANCED:   'B',
    COIN_REFLECTION: 'R'
}
"""Mapping of coin labels to one-letter symbols used in serialized coin maps."""

COIN_NAMES = {
    'identity':   COIN_IDENTITY,
    'balanced':   COIN_BALANCED,
    'reflection': COIN_REFLECTION
}
"""Mapping of human readable coin names to coin labels."""


RESAMPLE_ALL = 'all'
"""Dynamic replacement draws uniformly from all three coins."""

RESAMPLE_OTHERS = 'others'
"""Dynamic replacement draws uniformly from the two coins different from the static one."""

RESAMPLE_MODES = (
    RESAMPLE_ALL,
    RESAMPLE_OTHERS
)
"""List of valid dynamic replacement modes."""


DEFAULT_P_VALUES = (0.0, 0.1, 0.2, 0.3, 0.5, 1.0)
"""Default list of studied disorder levels."""

DEFAULT_STEPS = 20
"""Default number of walk steps."""

DEFAULT_RECORDED_STEPS = (5, 8, 11, 14, 17, 20)
"""Default list of steps at which the averaged distribution is recorded."""

DEFAULT_MASTER_SEED = 20210301
"""Default master seed of the ensemble random streams."""

DEFAULT_MIN_PROB = 1e-6
"""Default probability cutoff for the log-space profile fit."""

DEFAULT_B_RANGE = (0.5, 3.5)
"""Default search interval for the spatial decay exponent."""

MAPS_EXPERIMENTAL = 400
"""Number of coin maps per disorder level in the *experimental* preset."""

MAPS_NUMERICAL = 10000
"""Number of coin maps per disorder level in the *numerical* preset."""


MODE_EXPERIMENTAL = 'experimental'
"""Name of the *experimental* configuration preset."""

MODE_NUMERICAL = 'numerical'
"""Name of the *numerical* configuration preset."""

MODE_TESTING = 'testing'
"""Name of the *testing* configuration preset."""

MODES = (
    MODE_EXPERIMENTAL,
    MODE_NUMERICAL,
    MODE_TESTING
)
"""List of valid configuration presets."""


EXIT_SUCCESS = 0
"""Process exit code: success."""

EXIT_CONFIG_ERROR = 2
"""Process exit code: invalid configuration."""

EXIT_RUNTIME_ERROR = 3
"""Process exit code: failure during the computation."""


MAP_FORMAT = 'pdwalk-coin-map'
"""Format identifier stored in serialized coin maps."""

MAP_FORMAT_VERSION = 1
"""Version of the serialized coin map format."""


CSV_HEADER_DISTRIBUTION = ('t', 'x', 'P_mean', 'P_coin0', 'P_coin1', 'P_rownorm')
"""Column headers of the per-p distribution CSV file."""

CSV_HEADER_VARIANCE = ('p', 't', 'variance', 'variance_fit')
"""Column headers of the variance CSV file."""

CSV_HEADER_LOGPROFILE = ('t', 'x', 'abs_x', 'ln_P', 'ln_P_fit')
"""Column headers of the per-p log-profile CSV file."""

CSV_HEADER_COUNTS = ('t', 'x', 'counts')
"""Column headers of the per-p shot-noise count histogram CSV file."""

CSV_HEADER_TABLE = (
    'p', 't', 'b', 'stderr_b', 'delta', 'stderr_delta',
    'two_d', 'stderr_two_d', 'c_squared', 'b_moments',
    'ref_b', 'ref_delta', 'ref_two_d', 'ref_c_squared'
)
"""Column headers of the characteristic parameter table CSV file."""


REFERENCE_TABLE = {
    0.0: {'b': 0.800, 'delta': 1.027, 'two_d': 0.097, 'c_squared': 3.56},
    0.1: {'b': 1.126, 'delta': 0.367, 'two_d': 0.504, 'c_squared': 1.88},
    0.2: {'b': 1.378, 'delta': 0.171, 'two_d': 0.686, 'c_squared': 1.44},
    0.3: {'b': 1.568, 'delta': 0.095, 'two_d': 0.776, 'c_squared': 1.376},
    0.5: {'b': 1.863, 'delta': 0.038, 'two_d': 0.894, 'c_squared': 1.232},
    1.0: {'b': 2.138, 'delta': 0.016, 'two_d': 1.043, 'c_squared': 0.967},
}
"""
Characteristic parameters of the ideal numerical model (10 000 coin maps, fit
of the 20th step), keyed by disorder level. Used as the reproduction target.
"""

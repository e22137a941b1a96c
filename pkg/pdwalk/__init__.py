#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#-------------------------------------------------------------------------------
# This file is part of pdwalk package.
#
# Copyright (C) since 2021 pdwalk developers
# Use of this source is governed by the MIT license, see LICENSE file.
#-------------------------------------------------------------------------------


"""
pdwalk - Simulator and analysis toolkit for p-diluted disordered quantum walks
"""


__author__ = "pdwalk developers"
__version__ = "0.1.0"


# Expose runner factories and command line interface to current namespace
from .app import create_runner, create_runner_full
from .command import cli

#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#-------------------------------------------------------------------------------
# This file is part of pdwalk package.
#
# Copyright (C) since 2021 pdwalk developers
# Use of this source is governed by the MIT license, see LICENSE file.
#-------------------------------------------------------------------------------


"""
This module contains factories of pdwalk experiment runners.
The most important features of this module are the :py:func:`pdwalk.app.create_runner`
and :py:func:`pdwalk.app.create_runner_full` factory methods, that are responsible
for bootstrapping the runner (see their documentation for more details).
"""


__author__ = "pdwalk developers"


import os

#
# Custom modules.
#
import pdwalk.base
import pdwalk.config
import pdwalk.log


APP_NAME = 'pdwalk'
"""Name of the runner, also the name of the package logger."""


#-------------------------------------------------------------------------------


def create_runner_full(
        config_file = None,
        overrides   = None,
        mode        = None,
        config_env  = pdwalk.config.CONFIG_ENV):
    """
    Factory function for building pdwalk runner. This function takes number of
    optional arguments, that can be used to create a customized runner. This can
    be very usefull for purposes of testing. Each of these arguments has default
    value for the most common setup, so for disabling it entirely it is necessary
    to provide ``None`` as a value.

    :param str config_file: Name of the JSON file containing additional configurations.
    :param dict overrides: Explicit overrides keyed by lowercase configuration names.
    :param str mode: Name of the configuration preset, see :py:const:`pdwalk.config.CONFIG_MAP`.
    :param str config_env: Name of the environment variable pointing to file containing additional configurations.
    :return: pdwalk runner
    :rtype: pdwalk.base.PdwalkRunner
    """
    config = pdwalk.config.build_config(
        config_file = config_file,
        overrides = overrides,
        mode = mode,
        config_env = config_env
    )
    runner = pdwalk.base.PdwalkRunner(APP_NAME, config)

    _setup_runner_logging(runner)

    runner.logger.debug(
        "pdwalk: Runner created in mode '%s' with configuration hash %s",
        runner.run_config.mode,
        runner.run_config.config_hash()
    )
    return runner

def create_runner():
    """
    Factory function for building pdwalk runner. This function does not take
    any arguments, any necessary customizations must be done using environment
    variables.

    :return: pdwalk runner
    :rtype: pdwalk.base.PdwalkRunner
    """
    return create_runner_full(
        mode = os.getenv(pdwalk.config.MODE_ENV, None)
    )


#-------------------------------------------------------------------------------


def _setup_runner_logging(runner):
    """
    Setup default logging and logging to file for given pdwalk runner. Logging
    capabilities are adjustable by configuration.

    :param pdwalk.base.PdwalkRunner runner: pdwalk runner to be modified.
    :return: Modified pdwalk runner
    :rtype: pdwalk.base.PdwalkRunner
    """
    pdwalk.log.setup_logging_default(runner)
    pdwalk.log.setup_logging_file(runner)

    return runner

#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#-------------------------------------------------------------------------------
# This file is part of pdwalk package.
#
# Copyright (C) since 2021 pdwalk developers
# Use of this source is governed by the MIT license, see LICENSE file.
#-------------------------------------------------------------------------------


"""
This module contains logging functions for pdwalk.
"""


__author__ = "pdwalk developers"


import sys
import logging
from logging.handlers import WatchedFileHandler


LOGGER_NAME = 'pdwalk'
"""Name of the package logger, all module loggers are its children."""

_INSTALLED = []


def _log_level(config, key, what):
    log_level_str = str(config[key]).upper()
    log_level = getattr(
        logging,
        log_level_str,
        None
    )
    if not isinstance(log_level, int):
        raise ValueError(
            'Invalid {} level: {}'.format(what, log_level_str)
        )
    return log_level_str, log_level

def _install(logger, handler):
    logger.addHandler(handler)
    _INSTALLED.append(handler)

def reset_logging():
    """
    Remove all handlers installed by previous setup calls.
    """
    logger = logging.getLogger(LOGGER_NAME)
    while _INSTALLED:
        handler = _INSTALLED.pop()
        logger.removeHandler(handler)
        handler.close()

def setup_logging_default(runner):
    """
    Setup default logging features: package logger level and stderr handler.
    """
    log_level_str, log_level = _log_level(runner.config, 'PDWALK_LOG_DEFAULT_LEVEL', 'default log')

    reset_logging()
    stream_handler = logging.StreamHandler(sys.stderr)
    stream_handler.setLevel(log_level)
    stream_handler.setFormatter(
        logging.Formatter('%(levelname)s: %(message)s')
    )
    _install(runner.logger, stream_handler)

    runner.logger.setLevel(log_level)
    runner.logger.debug(
        'pdwalk: Default logging services successfully started with level %s',
        log_level_str
    )

    return runner

def setup_logging_file(runner):
    """
    Setup logging via watched file (rotated by external command). Does nothing
    when no log file is configured.
    """
    if not runner.config.get('PDWALK_LOG_FILE'):
        return runner

    log_level_str, log_level = _log_level(runner.config, 'PDWALK_LOG_FILE_LEVEL', 'log file')

    file_handler = WatchedFileHandler(runner.config['PDWALK_LOG_FILE'])
    file_handler.setLevel(log_level)
    file_handler.setFormatter(
        logging.Formatter(
            '%(asctime)s %(levelname)s: %(message)s [in %(pathname)s:%(lineno)d]'
        )
    )

    _install(runner.logger, file_handler)
    # Logger level must let through everything any handler wants.
    runner.logger.setLevel(min(handler.level for handler in _INSTALLED))
    runner.logger.debug(
        'pdwalk: File logging services successfully started to file %s with level %s',
        runner.config['PDWALK_LOG_FILE'],
        log_level_str
    )

    return runner

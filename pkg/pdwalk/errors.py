#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#-------------------------------------------------------------------------------
# This file is part of pdwalk package.
#
# Copyright (C) since 2021 pdwalk developers
# Use of this source is governed by the MIT license, see LICENSE file.
#-------------------------------------------------------------------------------


"""
This module contains error handling features for pdwalk. All exceptions raised
deliberately by the package derive from :py:class:`PdwalkError`, the command
line interface uses :py:func:`exit_code_for` to turn them into process exit
codes.
"""


__author__ = "pdwalk developers"


import pdwalk.const


class PdwalkError(Exception):
    """
    Base class for all pdwalk exceptions.
    """

class InvalidArgumentError(PdwalkError, ValueError):
    """
    Operation received an argument outside of its domain.
    """

class OutOfRangeError(PdwalkError, ValueError):
    """
    Value lies outside of the validated range of a numerical routine. Callers
    may clamp and retry.
    """

class CapacityError(PdwalkError):
    """
    Walker light cone would leave the allocated lattice.
    """

class InsufficientDataError(PdwalkError):
    """
    Not enough usable data points for the requested fit.
    """

class DegenerateProfileError(PdwalkError):
    """
    Probability profile carries no shape information (all mass on one site).
    """

class MapFormatError(PdwalkError):
    """
    Serialized coin map could not be parsed.
    """
    def __init__(self, message, line = None, field = None):
        self.line  = line
        self.field = field
        details = []
        if line is not None:
            details.append('line {}'.format(line))
        if field is not None:
            details.append("field '{}'".format(field))
        if details:
            message = '{} ({})'.format(message, ', '.join(details))
        super().__init__(message)

class ConfigurationError(PdwalkError):
    """
    Invalid run configuration, always naming the offending key.
    """
    def __init__(self, key, message):
        self.key = key
        super().__init__("Configuration key '{}': {}".format(key, message))


def exit_code_for(exc):
    """
    Return process exit code appropriate for given exception.

    :param Exception exc: Exception to be classified, ``None`` means success.
    :return: Process exit code.
    :rtype: int
    """
    if exc is None:
        return pdwalk.const.EXIT_SUCCESS
    if isinstance(exc, ConfigurationError):
        return pdwalk.const.EXIT_CONFIG_ERROR
    return pdwalk.const.EXIT_RUNTIME_ERROR

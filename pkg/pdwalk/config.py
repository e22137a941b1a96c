#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#-------------------------------------------------------------------------------
# This file is part of pdwalk package.
#
# Copyright (C) since 2021 pdwalk developers
# Use of this source is governed by the MIT license, see LICENSE file.
#-------------------------------------------------------------------------------


"""
This module contains default configurations for pdwalk runs. One of the classes
defined in this module is the starting point of every run configuration. The
values may be then optionally overwritten by a JSON configuration file, by
additional JSON configuration file defined indirectly via environment variable
and finally by explicit overrides (command line flags). Please refer to the
documentation of :py:func:`build_config` for more details on this process.

There are following predefined configuration classess available:

:py:class:`pdwalk.config.NumericalConfig`
    Ideal numerical model, 10 000 coin maps per disorder level.

:py:class:`pdwalk.config.ExperimentalConfig`
    Experiment sized ensembles, 400 coin maps per disorder level.

:py:class:`pdwalk.config.TestingConfig`
    Small ensembles and verbose logging for testing environments.

There is also following constant structure containing mapping of simple configuration
names to configuration classess:

:py:const:`CONFIG_MAP`

Configuration files use the lowercase names of :py:class:`RunConfig` fields
as keys, for example::

    {
        "p_values": [0.0, 0.2, 1.0],
        "maps": 400,
        "master_seed": 7,
        "output_dir": "results"
    }
"""


__author__ = "pdwalk developers"


import os
import json
import hashlib
import numbers
import dataclasses

import flask

#
# Custom modules.
#
import pdwalk.const
from pdwalk.errors import ConfigurationError


CONFIG_ENV = 'PDWALK_CONFIG_FILE'
"""Name of the environment variable pointing to additional configuration file."""

MODE_ENV = 'PDWALK_MODE'
"""Name of the environment variable selecting the configuration preset."""

LOG_LEVELS = ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL')
"""Accepted logging level names, case insensitive."""


class BaseConfig:  # pylint: disable=locally-disabled,too-few-public-methods
    """
    Base class for default configurations of pdwalk runs. The configuration keys
    must be written in UPPERCASE to be correctly recognized.
    """

    PDWALK_MODE = pdwalk.const.MODE_NUMERICAL
    """Name of the configuration preset."""

    PDWALK_P_VALUES = list(pdwalk.const.DEFAULT_P_VALUES)
    """List of studied disorder levels."""

    PDWALK_STEPS = pdwalk.const.DEFAULT_STEPS
    """Number of walk steps, also the lattice half width."""

    PDWALK_RECORDED_STEPS = list(pdwalk.const.DEFAULT_RECORDED_STEPS)
    """Steps at which the averaged distributions are recorded."""

    PDWALK_MAPS = pdwalk.const.MAPS_NUMERICAL
    """Number of coin maps per disorder level."""

    PDWALK_MASTER_SEED = pdwalk.const.DEFAULT_MASTER_SEED
    """Master seed of all random streams."""

    PDWALK_OUTPUT_DIR = 'pdwalk-output'
    """Directory for all emitted files."""

    PDWALK_MIN_PROB = pdwalk.const.DEFAULT_MIN_PROB
    """Probability cutoff for the log-space profile fit."""

    PDWALK_B_RANGE = list(pdwalk.const.DEFAULT_B_RANGE)
    """Search interval of the spatial decay exponent."""

    PDWALK_FIT_STEP = None
    """Step of the spatial profile fit, ``None`` means the last step."""

    PDWALK_RESAMPLE = pdwalk.const.RESAMPLE_ALL
    """Dynamic coin replacement mode, ``all`` or ``others``."""

    PDWALK_STATIC_PER_MAP = True
    """Redraw the static base for every coin map (``False`` shares one base)."""

    PDWALK_STATIC_COIN = None
    """Force homogeneous static base with given coin name, ``None`` draws it randomly."""

    PDWALK_WORKERS = 1
    """Number of worker processes for the ensemble runs."""

    PDWALK_EVENTS = 0
    """Number of emulated detection events per distribution, 0 disables shot noise."""

    PDWALK_LOG_DEFAULT_LEVEL = 'info'
    """Default logging level, case insensitive. One of the values ``DEBUG``, ``INFO``, ``WARNING``, ``ERROR``, ``CRITICAL``."""

    PDWALK_LOG_FILE = None
    """Log file, ``None`` disables file logging."""

    PDWALK_LOG_FILE_LEVEL = 'info'
    """File logging level, case insensitive. One of the values ``DEBUG``, ``INFO``, ``WARNING``, ``ERROR``, ``CRITICAL``."""


class NumericalConfig(BaseConfig):  # pylint: disable=locally-disabled,too-few-public-methods
    """
    Class containing run configurations for the ideal *numerical* model.
    """


class ExperimentalConfig(BaseConfig):  # pylint: disable=locally-disabled,too-few-public-methods
    """
    Class containing run configurations sized like the *experiment*.
    """

    PDWALK_MODE = pdwalk.const.MODE_EXPERIMENTAL
    """Overwrite default :py:const:`pdwalk.config.BaseConfig.PDWALK_MODE`."""

    PDWALK_MAPS = pdwalk.const.MAPS_EXPERIMENTAL
    """Overwrite default :py:const:`pdwalk.config.BaseConfig.PDWALK_MAPS`."""


class TestingConfig(BaseConfig):  # pylint: disable=locally-disabled,too-few-public-methods
    """
    Class containing *testing* run configurations.
    """

    PDWALK_MODE = pdwalk.const.MODE_TESTING
    """Overwrite default :py:const:`pdwalk.config.BaseConfig.PDWALK_MODE`."""

    PDWALK_MAPS = 50
    """Overwrite default :py:const:`pdwalk.config.BaseConfig.PDWALK_MAPS`."""

    PDWALK_LOG_DEFAULT_LEVEL = 'debug'
    """Overwrite default :py:const:`pdwalk.config.BaseConfig.PDWALK_LOG_DEFAULT_LEVEL`."""


CONFIG_MAP = {
    pdwalk.const.MODE_NUMERICAL:    NumericalConfig,
    pdwalk.const.MODE_EXPERIMENTAL: ExperimentalConfig,
    pdwalk.const.MODE_TESTING:      TestingConfig,
    'default':                      NumericalConfig
}
"""Configuration map for easy mapping of configuration aliases to config objects."""


FILE_KEYS = {
    'mode':           'PDWALK_MODE',
    'p_values':       'PDWALK_P_VALUES',
    'steps':          'PDWALK_STEPS',
    'recorded_steps': 'PDWALK_RECORDED_STEPS',
    'maps':           'PDWALK_MAPS',
    'master_seed':    'PDWALK_MASTER_SEED',
    'output_dir':     'PDWALK_OUTPUT_DIR',
    'min_prob':       'PDWALK_MIN_PROB',
    'b_range':        'PDWALK_B_RANGE',
    'fit_step':       'PDWALK_FIT_STEP',
    'resample':       'PDWALK_RESAMPLE',
    'static_per_map': 'PDWALK_STATIC_PER_MAP',
    'static_coin':    'PDWALK_STATIC_COIN',
    'workers':        'PDWALK_WORKERS',
    'events':         'PDWALK_EVENTS',
    'log_level':      'PDWALK_LOG_DEFAULT_LEVEL',
    'log_file':       'PDWALK_LOG_FILE',
    'log_file_level': 'PDWALK_LOG_FILE_LEVEL',
}
"""Mapping of configuration file keys to configuration keys."""


#-------------------------------------------------------------------------------


@dataclasses.dataclass(frozen = True)
class RunConfig:  # pylint: disable=locally-disabled,too-many-instance-attributes
    """
    Fully resolved and validated run configuration.
    """
    mode: str
    p_values: tuple
    steps: int
    recorded_steps: tuple
    maps: int
    master_seed: int
    output_dir: str
    min_prob: float
    b_range: tuple
    fit_step: int
    resample: str
    static_per_map: bool
    static_coin: str
    workers: int
    events: int

    @classmethod
    def from_config(cls, config):
        """
        Validate layered configuration and build run configuration from it.

        :param flask.Config config: Layered configuration.
        :rtype: RunConfig
        :raises pdwalk.errors.ConfigurationError: On invalid value, naming the key.
        """
        def get(name):
            return config.get(FILE_KEYS[name])

        mode = get('mode')
        if mode not in pdwalk.const.MODES:
            raise ConfigurationError('mode', "unknown preset {!r}, expected one of {}".format(mode, list(pdwalk.const.MODES)))

        p_values = _number_list('p_values', get('p_values'))
        if not p_values:
            raise ConfigurationError('p_values', "at least one disorder level is required")
        for p in p_values:
            if not 0.0 <= p <= 1.0:
                raise ConfigurationError('p_values', "disorder level {} outside of [0, 1]".format(p))

        steps = _integer('steps', get('steps'), minimum = 1)
        recorded = tuple(sorted(set(
            _integer('recorded_steps', value, minimum = 1) for value in _sequence('recorded_steps', get('recorded_steps'))
        )))
        if not recorded:
            raise ConfigurationError('recorded_steps', "at least one recorded step is required")
        if recorded[-1] > steps:
            raise ConfigurationError('recorded_steps', "recorded step {} exceeds number of steps {}".format(recorded[-1], steps))

        maps = _integer('maps', get('maps'), minimum = 1)
        master_seed = _integer('master_seed', get('master_seed'), minimum = 0)
        if master_seed >= 2 ** 64:
            raise ConfigurationError('master_seed', "seed must fit into 64 bits")

        output_dir = get('output_dir')
        if not isinstance(output_dir, str) or not output_dir:
            raise ConfigurationError('output_dir', "expected non-empty path")

        min_prob = _number('min_prob', get('min_prob'))
        if not 0.0 <= min_prob < 1.0:
            raise ConfigurationError('min_prob', "cutoff {} outside of [0, 1)".format(min_prob))

        b_range = _number_list('b_range', get('b_range'))
        if len(b_range) != 2 or not 0.0 < b_range[0] < b_range[1]:
            raise ConfigurationError('b_range', "expected two increasing positive numbers")

        fit_step = get('fit_step')
        if fit_step is None:
            fit_step = steps
        fit_step = _integer('fit_step', fit_step, minimum = 1)
        if fit_step not in recorded:
            raise ConfigurationError('fit_step', "step {} is not among recorded steps {}".format(fit_step, list(recorded)))

        resample = get('resample')
        if resample not in pdwalk.const.RESAMPLE_MODES:
            raise ConfigurationError('resample', "expected one of {}".format(list(pdwalk.const.RESAMPLE_MODES)))

        static_per_map = get('static_per_map')
        if not isinstance(static_per_map, bool):
            raise ConfigurationError('static_per_map', "expected boolean")

        static_coin = get('static_coin')
        if static_coin is not None and static_coin not in pdwalk.const.COIN_NAMES:
            raise ConfigurationError('static_coin', "expected one of {}".format(sorted(pdwalk.const.COIN_NAMES)))

        return cls(
            mode = mode,
            p_values = tuple(p_values),
            steps = steps,
            recorded_steps = recorded,
            maps = maps,
            master_seed = master_seed,
            output_dir = output_dir,
            min_prob = min_prob,
            b_range = tuple(b_range),
            fit_step = fit_step,
            resample = resample,
            static_per_map = static_per_map,
            static_coin = static_coin,
            workers = _integer('workers', get('workers'), minimum = 1),
            events = _integer('events', get('events'), minimum = 0)
        )

    def to_dict(self):
        """
        Export configuration into dictionary containing only primitive data types.
        """
        result = dataclasses.asdict(self)
        for key in ('p_values', 'recorded_steps', 'b_range'):
            result[key] = list(result[key])
        return result

    def config_hash(self):
        """
        Hash of all settings that influence emitted numbers. Output directory
        and worker count are excluded.

        :rtype: str
        """
        relevant = self.to_dict()
        del relevant['output_dir']
        del relevant['workers']
        canonical = json.dumps(relevant, sort_keys = True, separators = (',', ':'))
        return hashlib.sha256(canonical.encode('utf-8')).hexdigest()


#-------------------------------------------------------------------------------


def _sequence(key, value):
    if isinstance(value, (str, bytes)) or not isinstance(value, (list, tuple)):
        raise ConfigurationError(key, "expected list, got {!r}".format(value))
    return value

def _number(key, value):
    if isinstance(value, bool) or not isinstance(value, numbers.Real):
        raise ConfigurationError(key, "expected number, got {!r}".format(value))
    return float(value)

def _number_list(key, value):
    return [_number(key, item) for item in _sequence(key, value)]

def _integer(key, value, minimum = None):
    if isinstance(value, bool) or not isinstance(value, numbers.Integral):
        raise ConfigurationError(key, "expected integer, got {!r}".format(value))
    value = int(value)
    if minimum is not None and value < minimum:
        raise ConfigurationError(key, "value {} is smaller than {}".format(value, minimum))
    return value

def default_recorded_steps(steps):
    """
    Default recorded steps for given number of steps: the standard set cut at
    ``steps``, always including ``steps`` itself.

    :param int steps: Number of walk steps.
    :rtype: list
    """
    recorded = [step for step in pdwalk.const.DEFAULT_RECORDED_STEPS if step < steps]
    return recorded + [steps]

def load_config_file(file_name):
    """
    Load configuration file and translate its keys into configuration keys.

    :param str file_name: Path to JSON configuration file.
    :return: Dictionary with UPPERCASE configuration keys.
    :rtype: dict
    """
    def load(fhd):
        content = json.load(fhd)
        if not isinstance(content, dict):
            raise ConfigurationError('config_file', "'{}' must contain a JSON object".format(file_name))
        return translate_keys(content)

    config = flask.Config(os.getcwd())
    try:
        config.from_file(file_name, load = load)
    except OSError as exc:
        raise ConfigurationError('config_file', "unable to read '{}': {}".format(file_name, exc.strerror))
    except json.JSONDecodeError as exc:
        raise ConfigurationError('config_file', "malformed JSON in '{}' at line {}: {}".format(file_name, exc.lineno, exc.msg))
    return dict(config)

def translate_keys(values):
    """
    Translate lowercase configuration keys into configuration keys.

    :param dict values: Configuration values keyed by lowercase field names.
    :rtype: dict
    :raises pdwalk.errors.ConfigurationError: On unknown key.
    """
    result = {}
    for key, value in values.items():
        if key not in FILE_KEYS:
            raise ConfigurationError(key, "unknown configuration key")
        result[FILE_KEYS[key]] = value
    return result

def build_config(config_file = None, overrides = None, mode = None, config_env = CONFIG_ENV):
    """
    Build layered configuration. The layers are applied in following order,
    later layers win:

    1. configuration class selected by ``mode`` (or by the ``mode`` key of the
       configuration file, or by ``PDWALK_MODE`` environment variable),
    2. configuration file ``config_file``,
    3. configuration file pointed to by environment variable ``config_env``,
    4. explicit ``overrides`` keyed by lowercase field names.

    :param str config_file: Name of the JSON configuration file.
    :param dict overrides: Explicit overrides.
    :param str mode: Name of the configuration preset.
    :param str config_env: Name of the environment variable pointing to file containing additional configurations.
    :return: Layered configuration.
    :rtype: flask.Config
    """
    layers = []
    if config_file:
        layers.append(load_config_file(config_file))
    if config_env and os.getenv(config_env, None):
        layers.append(load_config_file(os.getenv(config_env)))
    if overrides:
        layers.append(translate_keys(overrides))

    if mode is None:
        for layer in reversed(layers):
            if 'PDWALK_MODE' in layer:
                mode = layer['PDWALK_MODE']
                break
    if mode is None:
        mode = os.getenv(MODE_ENV, 'default')
    if mode not in CONFIG_MAP:
        raise ConfigurationError('mode', "unknown preset {!r}, expected one of {}".format(mode, list(pdwalk.const.MODES)))

    config = flask.Config(os.getcwd())
    config.from_object(CONFIG_MAP[mode])
    for layer in layers:
        config.from_mapping(layer)
    config['PDWALK_MODE'] = CONFIG_MAP[mode].PDWALK_MODE

    # Recorded steps follow the number of steps unless given explicitly.
    explicit = any('PDWALK_RECORDED_STEPS' in layer for layer in layers)
    if not explicit and isinstance(config['PDWALK_STEPS'], int) and not isinstance(config['PDWALK_STEPS'], bool):
        if config['PDWALK_STEPS'] >= 1:
            config['PDWALK_RECORDED_STEPS'] = default_recorded_steps(config['PDWALK_STEPS'])

    for key in ('log_level', 'log_file_level'):
        if str(config[FILE_KEYS[key]]).upper() not in LOG_LEVELS:
            raise ConfigurationError(key, "expected one of {}".format(list(LOG_LEVELS)))
    return config

def parse_config(config_file = None, overrides = None, mode = None, config_env = CONFIG_ENV):
    """
    Resolve run configuration from defaults, configuration file and flags.

    :param str config_file: Name of the JSON configuration file.
    :param dict overrides: Explicit overrides keyed by lowercase field names.
    :param str mode: Name of the configuration preset.
    :param str config_env: Name of the environment variable pointing to file containing additional configurations.
    :rtype: RunConfig
    """
    return RunConfig.from_config(
        build_config(config_file, overrides, mode, config_env)
    )

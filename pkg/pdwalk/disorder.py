#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#-------------------------------------------------------------------------------
# This file is part of pdwalk package.
#
# Copyright (C) since 2021 pdwalk developers
# Use of this source is governed by the MIT license, see LICENSE file.
#-------------------------------------------------------------------------------


"""
This module contains the p-diluted disorder model. A *static map* assigns one
of the three coins to every lattice position. A *coin map* extends it to the
whole space-time rectangle ``x = -T .. T``, ``t = 1 .. steps``: every cell
independently keeps the static coin with probability ``1 - p`` or receives a
freshly drawn coin with probability ``p``.

Random numbers come from the counter-based :py:class:`numpy.random.Philox`
bit generator. Every coin map owns a stream derived from
``(master_seed, map_index)`` through :py:class:`numpy.random.SeedSequence`
spawn keys, so a map is a pure function of its seeds regardless of generation
order, sharding or worker count.

Coin maps are serialized as JSON documents::

    {
        "format": "pdwalk-coin-map",
        "version": 1,
        "half_width": 3,
        "steps": 3,
        "p": 0.2,
        "master_seed": 1,
        "map_index": 0,
        "resample": "all",
        "static_base": ["I", "B", "R", "I", "B", "R", "I"],
        "labels": ["IBRIBRI", "IBBIBRI", "RBRIBRI"]
    }

Rows of ``labels`` run over steps ``1 .. steps``, characters over positions
``-T .. T``. A flat array of single letters is accepted as well.
"""


__author__ = "pdwalk developers"


import json
import dataclasses

import numpy

#
# Custom modules.
#
import pdwalk.const
from pdwalk.errors import InvalidArgumentError, MapFormatError


_STREAM_STATIC = 0
_STREAM_DILUTE = 1

_SYMBOL_LABELS = {symbol: label for label, symbol in pdwalk.const.COIN_SYMBOLS.items()}


def derive_seed(master_seed, *key):
    """
    Derive independent 64-bit seed for given spawn key.

    :param int master_seed: Master seed, nonnegative.
    :param int key: Spawn key components (map index, stream number, ...).
    :rtype: int
    """
    if int(master_seed) < 0:
        raise InvalidArgumentError("Master seed must be nonnegative, got {}".format(master_seed))
    seq = numpy.random.SeedSequence(
        int(master_seed),
        spawn_key = tuple(int(k) for k in key)
    )
    return int(seq.generate_state(1, numpy.uint64)[0])

def make_generator(seed):
    """
    Create counter-based random generator for given seed.

    :param int seed: 64-bit seed.
    :rtype: numpy.random.Generator
    """
    return numpy.random.Generator(numpy.random.Philox(int(seed)))


#-------------------------------------------------------------------------------


class StaticMap:
    """
    Time independent coin assignment over positions ``-T .. T``.

    :param int half_width: Lattice half width ``T``.
    :param numpy.ndarray labels: Coin labels, ``2T+1`` entries.
    :param int seed: Seed the map was drawn with, ``None`` for constructed maps.
    """

    def __init__(self, half_width, labels, seed = None):
        self.half_width = int(half_width)
        self.labels     = numpy.array(labels, dtype = numpy.int8)
        self.seed       = seed
        if self.labels.shape != (2 * self.half_width + 1,):
            raise InvalidArgumentError(
                "Static map needs {} labels, got {}".format(2 * self.half_width + 1, self.labels.size)
            )
        _check_labels(self.labels)
        self.labels.setflags(write = False)

    def __repr__(self):
        return "<StaticMap(half_width={}, seed={})>".format(self.half_width, self.seed)

    def __eq__(self, other):
        if not isinstance(other, StaticMap):
            return NotImplemented
        return self.half_width == other.half_width and numpy.array_equal(self.labels, other.labels)

    def label_at(self, position):
        """Return coin label at given position."""
        return int(self.labels[int(position) + self.half_width])


class CoinMap:
    """
    Space-time coin assignment, one disorder realization.

    :param int half_width: Lattice half width ``T``.
    :param int steps: Number of steps covered.
    :param numpy.ndarray labels: Coin labels of shape ``(steps, 2T+1)``; row
        ``t-1`` holds the coins applied at step ``t``.
    :param float p: Disorder level the map was generated with.
    :param int master_seed: Master seed of the ensemble, if any.
    :param int map_index: Index of the map within the ensemble, if any.
    :param StaticMap static_base: Static map the dilution started from.
    :param numpy.ndarray resampled: Optional boolean mask of resampled cells.
    :param str resample: Dynamic replacement mode.
    """

    def __init__(self, half_width, steps, labels, p, static_base, master_seed = None,
                 map_index = None, resampled = None, resample = pdwalk.const.RESAMPLE_ALL):
        self.half_width  = int(half_width)
        self.steps       = int(steps)
        self.labels      = numpy.array(labels, dtype = numpy.int8)
        self.p           = float(p)
        self.static_base = static_base
        self.master_seed = master_seed
        self.map_index   = map_index
        self.resampled   = None if resampled is None else numpy.array(resampled, dtype = bool)
        self.resample    = resample
        if self.labels.shape != (self.steps, 2 * self.half_width + 1):
            raise InvalidArgumentError(
                "Coin map labels must have shape ({}, {}), got {}".format(
                    self.steps,
                    2 * self.half_width + 1,
                    self.labels.shape
                )
            )
        if static_base.half_width != self.half_width:
            raise InvalidArgumentError("Static base and coin map half widths differ")
        if self.resampled is not None and self.resampled.shape != self.labels.shape:
            raise InvalidArgumentError("Resample mask must match coin map shape")
        _check_labels(self.labels)
        self.labels.setflags(write = False)

    def __repr__(self):
        return "<CoinMap(half_width={}, steps={}, p={}, map_index={})>".format(
            self.half_width,
            self.steps,
            self.p,
            self.map_index
        )

    def __eq__(self, other):
        if not isinstance(other, CoinMap):
            return NotImplemented
        same_mask = (self.resampled is None and other.resampled is None) or (
            self.resampled is not None and other.resampled is not None
            and numpy.array_equal(self.resampled, other.resampled)
        )
        return (
            self.half_width == other.half_width
            and self.steps == other.steps
            and self.p == other.p
            and self.master_seed == other.master_seed
            and self.map_index == other.map_index
            and self.resample == other.resample
            and self.static_base == other.static_base
            and numpy.array_equal(self.labels, other.labels)
            and same_mask
        )

    def column(self, step_index):
        """
        Return coin labels applied at given step.

        :param int step_index: Step number ``1 .. steps``.
        :rtype: numpy.ndarray
        """
        if not 1 <= step_index <= self.steps:
            raise InvalidArgumentError("Step {} outside of 1 .. {}".format(step_index, self.steps))
        return self.labels[step_index - 1]


@dataclasses.dataclass(frozen = True)
class DisorderSpec:
    """
    Parameters of one disorder ensemble.

    ``static_coin`` forces a homogeneous static base (a coin name from
    :py:const:`pdwalk.const.COIN_NAMES`) instead of a random one,
    ``static_per_map`` switches between a static base redrawn for every map and
    one base shared by the whole ensemble.
    Recorded steps are kept sorted and without duplicates.
    """
    p: float
    maps: int
    steps: int = pdwalk.const.DEFAULT_STEPS
    recorded_steps: tuple = pdwalk.const.DEFAULT_RECORDED_STEPS
    master_seed: int = pdwalk.const.DEFAULT_MASTER_SEED
    resample: str = pdwalk.const.RESAMPLE_ALL
    static_per_map: bool = True
    static_coin: str = None

    def __post_init__(self):
        object.__setattr__(self, 'recorded_steps', tuple(sorted({int(t) for t in self.recorded_steps})))
        _check_probability(self.p)
        if int(self.maps) < 1:
            raise InvalidArgumentError("Number of coin maps must be at least 1, got {}".format(self.maps))
        if int(self.steps) < 1:
            raise InvalidArgumentError("Number of steps must be at least 1, got {}".format(self.steps))
        if not self.recorded_steps:
            raise InvalidArgumentError("At least one recorded step is required")
        if any(t < 1 or t > self.steps for t in self.recorded_steps):
            raise InvalidArgumentError(
                "Recorded steps {} must lie within 1 .. {}".format(list(self.recorded_steps), self.steps)
            )
        if int(self.master_seed) < 0:
            raise InvalidArgumentError("Master seed must be nonnegative")
        if self.resample not in pdwalk.const.RESAMPLE_MODES:
            raise InvalidArgumentError("Unknown resample mode '{}'".format(self.resample))
        if self.static_coin is not None and self.static_coin not in pdwalk.const.COIN_NAMES:
            raise InvalidArgumentError("Unknown static coin '{}'".format(self.static_coin))


#-------------------------------------------------------------------------------


def _check_labels(labels):
    if labels.size and (labels.min() < 0 or labels.max() >= len(pdwalk.const.COIN_LABELS)):
        raise InvalidArgumentError("Coin labels must be one of {}".format(pdwalk.const.COIN_LABELS))

def _check_probability(p):
    try:
        p = float(p)
    except (TypeError, ValueError):
        raise InvalidArgumentError("Disorder level must be a number, got {!r}".format(p))
    if not 0.0 <= p <= 1.0:
        raise InvalidArgumentError("Disorder level must lie within [0, 1], got {}".format(p))
    return p

def generate_static_map(seed, half_width):
    """
    Draw static map with i.i.d. uniform coin labels.

    :param int seed: 64-bit seed.
    :param int half_width: Lattice half width, at least 1.
    :rtype: StaticMap
    """
    half_width = int(half_width)
    if half_width < 1:
        raise InvalidArgumentError("Lattice half width must be at least 1, got {}".format(half_width))
    rng = make_generator(seed)
    labels = rng.integers(0, len(pdwalk.const.COIN_LABELS), size = 2 * half_width + 1)
    return StaticMap(half_width, labels, seed = int(seed))

def homogeneous_static_map(coin_name, half_width):
    """
    Build static map using one coin everywhere.

    :param str coin_name: One of ``identity``, ``balanced``, ``reflection``.
    :param int half_width: Lattice half width.
    :rtype: StaticMap
    """
    try:
        label = pdwalk.const.COIN_NAMES[coin_name]
    except KeyError:
        raise InvalidArgumentError("Unknown coin '{}'".format(coin_name))
    return StaticMap(half_width, numpy.full(2 * int(half_width) + 1, label))

def dilute(static, p, seed, steps, resample = pdwalk.const.RESAMPLE_ALL,
           master_seed = None, map_index = None):
    """
    Perturb static map into p-diluted space-time coin map. Every cell is
    resampled with probability ``p`` and copies the static coin otherwise.

    :param StaticMap static: Static base.
    :param float p: Disorder level within ``[0, 1]``.
    :param int seed: 64-bit seed of the per-cell draws.
    :param int steps: Number of steps to cover.
    :param str resample: ``all`` draws the replacement uniformly from all three
        coins, ``others`` only from the two coins differing from the static one.
    :param int master_seed: Provenance, master seed of the ensemble.
    :param int map_index: Provenance, index of the map within the ensemble.
    :rtype: CoinMap
    """
    p = _check_probability(p)
    steps = int(steps)
    if steps < 1:
        raise InvalidArgumentError("Number of steps must be at least 1, got {}".format(steps))
    if resample not in pdwalk.const.RESAMPLE_MODES:
        raise InvalidArgumentError("Unknown resample mode '{}'".format(resample))

    rng = make_generator(seed)
    shape = (steps, static.labels.size)
    # All draws are taken for every cell, so for a given seed and map shape the
    # draws do not depend on p or on the resample mode.
    uniforms = rng.random(shape)
    fresh    = rng.integers(0, len(pdwalk.const.COIN_LABELS), size = shape)
    others   = rng.integers(1, len(pdwalk.const.COIN_LABELS), size = shape)

    base = numpy.broadcast_to(static.labels, shape)
    mask = uniforms < p
    if resample == pdwalk.const.RESAMPLE_ALL:
        replacement = fresh
    else:
        replacement = (base + others) % len(pdwalk.const.COIN_LABELS)
    labels = numpy.where(mask, replacement, base)

    return CoinMap(
        static.half_width,
        steps,
        labels,
        p,
        static,
        master_seed = master_seed,
        map_index = map_index,
        resampled = mask,
        resample = resample
    )

def static_seed(spec, map_index):
    """Seed of the static base of given map within the ensemble."""
    if spec.static_per_map:
        return derive_seed(spec.master_seed, map_index, _STREAM_STATIC)
    return derive_seed(spec.master_seed, _STREAM_STATIC)

def make_coin_map(spec, map_index):
    """
    Generate coin map number ``map_index`` of the ensemble described by ``spec``.

    :param DisorderSpec spec: Ensemble description.
    :param int map_index: Index of the map within the ensemble.
    :rtype: CoinMap
    """
    half_width = spec.steps
    if spec.static_coin is not None:
        static = homogeneous_static_map(spec.static_coin, half_width)
    else:
        static = generate_static_map(static_seed(spec, map_index), half_width)
    return dilute(
        static,
        spec.p,
        derive_seed(spec.master_seed, map_index, _STREAM_DILUTE),
        spec.steps,
        resample = spec.resample,
        master_seed = int(spec.master_seed),
        map_index = int(map_index)
    )


#-------------------------------------------------------------------------------


def _encode_row(labels):
    return ''.join(pdwalk.const.COIN_SYMBOLS[int(label)] for label in labels)

def serialize_map(coin_map):
    """
    Serialize coin map into self-describing JSON text.

    :param CoinMap coin_map: Coin map to serialize.
    :rtype: str
    """
    document = {
        'format':      pdwalk.const.MAP_FORMAT,
        'version':     pdwalk.const.MAP_FORMAT_VERSION,
        'half_width':  coin_map.half_width,
        'steps':       coin_map.steps,
        'p':           coin_map.p,
        'master_seed': coin_map.master_seed,
        'map_index':   coin_map.map_index,
        'resample':    coin_map.resample,
        'static_base': [pdwalk.const.COIN_SYMBOLS[int(label)] for label in coin_map.static_base.labels],
        'labels':      [_encode_row(row) for row in coin_map.labels],
    }
    if coin_map.static_base.seed is not None:
        document['static_seed'] = coin_map.static_base.seed
    if coin_map.resampled is not None:
        document['resampled'] = [''.join('1' if flag else '0' for flag in row) for row in coin_map.resampled]
    return json.dumps(
        document,
        indent = 4,
        sort_keys = True
    ) + '\n'

def _line_of(text, field):
    """Return 1-based line number of the first occurrence of given JSON key."""
    needle = '"{}"'.format(field)
    for lineno, line in enumerate(text.splitlines(), 1):
        if needle in line:
            return lineno
    return None

def _decode_symbols(text, field, value, rows, columns):
    """Decode row strings or flat letter array into label matrix."""
    if not isinstance(value, list):
        raise MapFormatError("Expected array", line = _line_of(text, field), field = field)
    if len(value) == rows and all(isinstance(item, str) and len(item) == columns for item in value):
        letters = ''.join(value)
    elif len(value) == rows * columns and all(isinstance(item, str) and len(item) == 1 for item in value):
        letters = ''.join(value)
    else:
        raise MapFormatError(
            "Expected {} rows of {} symbols".format(rows, columns),
            line = _line_of(text, field),
            field = field
        )
    return letters

def parse_map(text):
    """
    Parse coin map from its JSON serialization.

    :param str text: Serialized coin map.
    :return: Parsed coin map, never a partially filled one.
    :rtype: CoinMap
    :raises pdwalk.errors.MapFormatError: On malformed input.
    """
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MapFormatError("Malformed JSON: {}".format(exc.msg), line = exc.lineno)
    if not isinstance(document, dict):
        raise MapFormatError("Coin map document must be a JSON object", line = 1)

    def required(field, kind):
        if field not in document:
            raise MapFormatError("Missing required field", field = field)
        value = document[field]
        if not isinstance(value, kind) or isinstance(value, bool):
            raise MapFormatError(
                "Invalid value {!r}".format(value),
                line = _line_of(text, field),
                field = field
            )
        return value

    if document.get('format', pdwalk.const.MAP_FORMAT) != pdwalk.const.MAP_FORMAT:
        raise MapFormatError("Unknown format", line = _line_of(text, 'format'), field = 'format')
    half_width = required('half_width', int)
    steps      = required('steps', int)
    p          = required('p', (int, float))
    if half_width < 1 or steps < 1:
        field = 'half_width' if half_width < 1 else 'steps'
        raise MapFormatError("Must be positive", line = _line_of(text, field), field = field)
    if not 0.0 <= p <= 1.0:
        raise MapFormatError("Must lie within [0, 1]", line = _line_of(text, 'p'), field = 'p')
    master_seed = document.get('master_seed')
    map_index   = document.get('map_index')
    for field, value in (('master_seed', master_seed), ('map_index', map_index)):
        if value is not None and (not isinstance(value, int) or isinstance(value, bool) or value < 0):
            raise MapFormatError("Invalid value {!r}".format(value), line = _line_of(text, field), field = field)
    resample = document.get('resample', pdwalk.const.RESAMPLE_ALL)
    if resample not in pdwalk.const.RESAMPLE_MODES:
        raise MapFormatError("Unknown resample mode", line = _line_of(text, 'resample'), field = 'resample')

    columns = 2 * half_width + 1
    try:
        static_letters = _decode_symbols(text, 'static_base', required('static_base', list), 1, columns)
        static_labels  = [_SYMBOL_LABELS[letter] for letter in static_letters]
    except KeyError as exc:
        raise MapFormatError(
            "Unknown coin symbol {}".format(exc),
            line = _line_of(text, 'static_base'),
            field = 'static_base'
        )
    try:
        letters = _decode_symbols(text, 'labels', required('labels', list), steps, columns)
        labels  = numpy.array([_SYMBOL_LABELS[letter] for letter in letters]).reshape(steps, columns)
    except KeyError as exc:
        raise MapFormatError("Unknown coin symbol {}".format(exc), line = _line_of(text, 'labels'), field = 'labels')

    resampled = None
    if document.get('resampled') is not None:
        flags = _decode_symbols(text, 'resampled', document['resampled'], steps, columns)
        if set(flags) - {'0', '1'}:
            raise MapFormatError("Flags must be 0 or 1", line = _line_of(text, 'resampled'), field = 'resampled')
        resampled = numpy.array([flag == '1' for flag in flags]).reshape(steps, columns)

    static_seed_value = document.get('static_seed')
    return CoinMap(
        half_width,
        steps,
        labels,
        float(p),
        StaticMap(half_width, static_labels, seed = static_seed_value),
        master_seed = master_seed,
        map_index = map_index,
        resampled = resampled,
        resample = resample
    )

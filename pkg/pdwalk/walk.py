#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#-------------------------------------------------------------------------------
# This file is part of pdwalk package.
#
# Copyright (C) since 2021 pdwalk developers
# Use of this source is governed by the MIT license, see LICENSE file.
#-------------------------------------------------------------------------------


"""
This module contains the discrete-time quantum walk engine. The walker lives on
a line with an internal two-level coin. One step of the evolution applies a
position dependent coin operator and then shifts the coin-0 component one site
to the left and the coin-1 component one site to the right:

    |psi(t+1)> = S C(t) |psi(t)>

All coin operators are rotations of the form::

    C(theta) = [[cos theta, -i sin theta],
                [-i sin theta, cos theta]]

The lattice is stored densely over positions ``x = -T .. T`` with index offset
``T``, where ``T`` is the half width of the lattice.

Module contents
---------------

* :py:class:`CoinOperator`
* :py:class:`WalkerState`
* :py:class:`Distribution`
* :py:func:`make_coin`
* :py:func:`compose_eom_qwp`
* :py:func:`step`
* :py:func:`step_angles`
* :py:func:`evolve`
* :py:func:`evolve_batch`
* :py:func:`probability_distribution`
"""


__author__ = "pdwalk developers"


import math

import numpy

#
# Custom modules.
#
import pdwalk.const
from pdwalk.errors import InvalidArgumentError, CapacityError


_INV_SQRT2 = 1.0 / math.sqrt(2.0)

# Exact trigonometric tables for the three coin labels, so that identity and
# reflection coins never leak rounding noise into the other coin component.
_LABEL_COS = numpy.array([1.0, _INV_SQRT2, 0.0])
_LABEL_SIN = numpy.array([0.0, _INV_SQRT2, 1.0])


class CoinOperator:
    """
    Single site coin operator, a 2x2 unitary parametrized by rotation angle.

    :param float theta: Rotation angle in radians.
    :param numpy.ndarray entries: Complex 2x2 matrix.
    """

    def __init__(self, theta, entries):
        self.theta   = float(theta)
        self.entries = numpy.array(entries, dtype = numpy.complex128)
        self.entries.setflags(write = False)

    def __repr__(self):
        return "<CoinOperator(theta={:.6f})>".format(self.theta)

    def is_unitary(self, tol = 1e-12):
        """
        Check unitarity of the coin matrix.

        :param float tol: Maximal allowed deviation from identity.
        :rtype: bool
        """
        product = self.entries.conj().T @ self.entries
        return bool(numpy.max(numpy.abs(product - numpy.eye(2))) <= tol)

    def is_symmetric(self, tol = 1e-12):
        """Check that both off-diagonal entries are equal."""
        return bool(abs(self.entries[0, 1] - self.entries[1, 0]) <= tol)

    def equals_up_to_phase(self, other, tol = 1e-12):
        """
        Compare two coin operators entrywise after removing a global phase.

        :param CoinOperator other: Coin operator to compare with.
        :param float tol: Entrywise tolerance.
        :rtype: bool
        """
        mine   = self.entries
        theirs = other.entries
        # Align phases on the largest entry of this operator.
        idx = numpy.unravel_index(numpy.argmax(numpy.abs(mine)), mine.shape)
        if abs(theirs[idx]) <= tol:
            return False
        phase = mine[idx] / theirs[idx]
        phase = phase / abs(phase)
        return bool(numpy.max(numpy.abs(mine - phase * theirs)) <= tol)


def make_coin(theta):
    """
    Build coin operator for given rotation angle.

    :param float theta: Rotation angle in radians, must be finite.
    :return: Coin operator ``[[cos, -i sin], [-i sin, cos]]``.
    :rtype: CoinOperator
    """
    theta = float(theta)
    if not math.isfinite(theta):
        raise InvalidArgumentError("Coin angle must be finite, got {}".format(theta))
    cos = math.cos(theta)
    sin = math.sin(theta)
    return CoinOperator(
        theta,
        [[cos, -1j * sin], [-1j * sin, cos]]
    )

def coin_qwp():
    """Return the matrix of a quarter-wave plate aligned at 45 degrees."""
    return _INV_SQRT2 * numpy.array([[1, -1j], [-1j, 1]], dtype = numpy.complex128)

def coin_eom(phi):
    """
    Return the matrix of the electro-optic modulator polarization rotation.

    :param float phi: Modulator phase in radians.
    :rtype: numpy.ndarray
    """
    phi = float(phi)
    if not math.isfinite(phi):
        raise InvalidArgumentError("Modulator phase must be finite, got {}".format(phi))
    return numpy.array(
        [[math.cos(phi), -1j * math.sin(phi)], [-1j * math.sin(phi), math.cos(phi)]],
        dtype = numpy.complex128
    )

def compose_eom_qwp(phi):
    """
    Compose modulator rotation with the quarter-wave plate. The product is the
    rotation by ``theta = phi + pi/4``.

    :param float phi: Modulator phase in radians, must be finite.
    :return: Coin operator with ``theta = phi + pi/4`` and entries taken from
        the matrix product ``C_EOM(phi) C_QWP``.
    :rtype: CoinOperator
    """
    product = coin_eom(phi) @ coin_qwp()
    return CoinOperator(float(phi) + math.pi / 4, product)


#-------------------------------------------------------------------------------


class WalkerState:
    """
    Amplitude field of the walker at given step.

    :param int step: Number of steps already taken.
    :param int half_width: Lattice half width ``T``, positions span ``-T .. T``.
    :param numpy.ndarray amplitudes: Complex array of shape ``(2T+1, 2)``, column
        0 holds the coin-0 amplitudes, column 1 the coin-1 amplitudes.
    """

    def __init__(self, step, half_width, amplitudes):
        self.step       = int(step)
        self.half_width = int(half_width)
        self.amplitudes = numpy.array(amplitudes, dtype = numpy.complex128)
        if self.amplitudes.shape != (2 * self.half_width + 1, 2):
            raise InvalidArgumentError(
                "Amplitude array of shape {} does not match half width {}".format(
                    self.amplitudes.shape,
                    self.half_width
                )
            )
        self.amplitudes.setflags(write = False)

    def __repr__(self):
        return "<WalkerState(step={}, half_width={})>".format(self.step, self.half_width)

    @classmethod
    def initial(cls, half_width, coin = 0):
        """
        Walker localized at ``x = 0`` in given coin state at step zero.

        :param int half_width: Lattice half width, at least 1.
        :param int coin: Initial coin state, 0 or 1.
        :rtype: WalkerState
        """
        half_width = int(half_width)
        if half_width < 1:
            raise InvalidArgumentError("Lattice half width must be at least 1, got {}".format(half_width))
        if coin not in (0, 1):
            raise InvalidArgumentError("Coin state must be 0 or 1, got {}".format(coin))
        amplitudes = numpy.zeros((2 * half_width + 1, 2), dtype = numpy.complex128)
        amplitudes[half_width, coin] = 1.0
        return cls(0, half_width, amplitudes)

    @property
    def positions(self):
        """Lattice positions ``-T .. T``."""
        return numpy.arange(-self.half_width, self.half_width + 1)

    def norm(self):
        """Total probability carried by the state."""
        return float(numpy.sum(numpy.abs(self.amplitudes) ** 2))


class Distribution:
    """
    Probability distribution over lattice positions, optionally resolved by
    the coin state.

    :param numpy.ndarray positions: Integer positions.
    :param numpy.ndarray probabilities: Probabilities per position.
    :param numpy.ndarray coin: Optional array of shape ``(n, 2)`` with
        coin-resolved probabilities summing to ``probabilities``.
    :param int step: Optional step index the distribution belongs to.
    """

    def __init__(self, positions, probabilities, coin = None, step = None):
        self.positions     = numpy.asarray(positions, dtype = numpy.int64)
        self.probabilities = numpy.asarray(probabilities, dtype = numpy.float64)
        self.coin          = None if coin is None else numpy.asarray(coin, dtype = numpy.float64)
        self.step          = None if step is None else int(step)
        if self.positions.shape != self.probabilities.shape or self.positions.ndim != 1:
            raise InvalidArgumentError("Positions and probabilities must be 1-D arrays of equal length")
        if self.coin is not None and self.coin.shape != (self.positions.size, 2):
            raise InvalidArgumentError("Coin-resolved probabilities must have shape (n, 2)")

    def __repr__(self):
        return "<Distribution(step={}, sites={})>".format(self.step, self.positions.size)

    @classmethod
    def from_mapping(cls, mapping, step = None):
        """
        Build distribution from ``{position: probability}`` mapping.

        :param dict mapping: Probabilities keyed by integer position.
        :param int step: Optional step index.
        :rtype: Distribution
        """
        positions = sorted(mapping)
        return cls(positions, [mapping[x] for x in positions], step = step)

    def total(self):
        """Sum of all probabilities."""
        return float(numpy.sum(self.probabilities))

    def is_normalized(self, tol = 1e-10):
        """Check that probabilities sum to one within given tolerance."""
        return abs(self.total() - 1.0) <= tol

    def to_dict(self, threshold = 0.0):
        """
        Export distribution as ``{position: probability}`` dictionary.

        :param float threshold: Omit sites with probability not above this value.
        :rtype: dict
        """
        return {
            int(x): float(prob) for x, prob in zip(self.positions, self.probabilities)
            if prob > threshold
        }


#-------------------------------------------------------------------------------


def _coin_shift(amplitudes, cos, sin):
    """
    Apply coin then shift to amplitude array of shape ``(..., n, 2)`` with
    per-site ``cos``/``sin`` arrays of shape ``(..., n)``.
    """
    amp0 = amplitudes[..., 0]
    amp1 = amplitudes[..., 1]
    mixed0 = cos * amp0 - 1j * sin * amp1
    mixed1 = -1j * sin * amp0 + cos * amp1
    result = numpy.zeros_like(amplitudes)
    # Coin 0 moves x -> x-1, coin 1 moves x -> x+1.
    result[..., :-1, 0] = mixed0[..., 1:]
    result[..., 1:, 1]  = mixed1[..., :-1]
    return result

def _check_capacity(state):
    if state.step + 1 > state.half_width:
        raise CapacityError(
            "Step {} would push the light cone beyond lattice half width {}".format(
                state.step + 1,
                state.half_width
            )
        )

def _label_tables(coin_row, size):
    labels = numpy.asarray(coin_row)
    if labels.shape != (size,):
        raise InvalidArgumentError(
            "Coin row must cover all {} lattice sites, got shape {}".format(size, labels.shape)
        )
    if not numpy.issubdtype(labels.dtype, numpy.integer):
        raise InvalidArgumentError("Coin row must contain integer coin labels")
    if labels.size and (labels.min() < 0 or labels.max() >= len(pdwalk.const.COIN_LABELS)):
        raise InvalidArgumentError("Coin row contains unknown coin label")
    return _LABEL_COS[labels], _LABEL_SIN[labels]

def step(state, coin_row):
    """
    Advance walker state by one coin-then-shift step.

    :param WalkerState state: Current walker state.
    :param coin_row: Coin labels (see :py:const:`pdwalk.const.COIN_LABELS`) for
        every lattice site ``-T .. T``.
    :return: New walker state with incremented step counter.
    :rtype: WalkerState
    """
    _check_capacity(state)
    cos, sin = _label_tables(coin_row, state.amplitudes.shape[0])
    return WalkerState(
        state.step + 1,
        state.half_width,
        _coin_shift(state.amplitudes, cos, sin)
    )

def step_angles(state, thetas):
    """
    Advance walker state by one step with arbitrary per-site coin angles.

    :param WalkerState state: Current walker state.
    :param thetas: Coin rotation angles for every lattice site ``-T .. T``.
    :rtype: WalkerState
    """
    _check_capacity(state)
    thetas = numpy.asarray(thetas, dtype = numpy.float64)
    if thetas.shape != (state.amplitudes.shape[0],):
        raise InvalidArgumentError("Coin angles must cover all lattice sites")
    if not numpy.all(numpy.isfinite(thetas)):
        raise InvalidArgumentError("Coin angles must be finite")
    return WalkerState(
        state.step + 1,
        state.half_width,
        _coin_shift(state.amplitudes, numpy.cos(thetas), numpy.sin(thetas))
    )

def evolve(state, labels):
    """
    Evolve walker through consecutive coin rows.

    :param WalkerState state: Starting walker state.
    :param labels: Coin labels of shape ``(steps, 2T+1)``, row ``k`` is applied
        at step ``state.step + k + 1``.
    :return: List of walker states after each step.
    :rtype: list
    """
    history = []
    for coin_row in numpy.asarray(labels):
        state = step(state, coin_row)
        history.append(state)
    return history

def evolve_batch(labels, recorded_steps, coin = 0):
    """
    Evolve many independent walkers at once, each starting localized at the
    origin, and record their coin-resolved probabilities.

    :param numpy.ndarray labels: Coin labels of shape ``(maps, steps, 2T+1)``.
    :param recorded_steps: Steps (1-based) at which probabilities are recorded.
    :param int coin: Initial coin state.
    :return: Tuple of recorded probabilities with shape
        ``(maps, len(recorded_steps), 2T+1, 2)`` and the largest normalization
        error observed at any step.
    :rtype: tuple
    """
    labels = numpy.asarray(labels)
    if labels.ndim != 3:
        raise InvalidArgumentError("Batch coin labels must have shape (maps, steps, sites)")
    maps, steps, size = labels.shape
    half_width = (size - 1) // 2
    if steps > half_width:
        raise CapacityError(
            "{} steps do not fit into lattice half width {}".format(steps, half_width)
        )
    recorded = {int(t): idx for idx, t in enumerate(recorded_steps)}
    if len(recorded) != len(recorded_steps):
        raise InvalidArgumentError("Recorded steps must not repeat, got {}".format(list(recorded_steps)))
    if any(t < 1 or t > steps for t in recorded):
        raise InvalidArgumentError("Recorded steps must lie within 1 .. {}".format(steps))

    amplitudes = numpy.zeros((maps, size, 2), dtype = numpy.complex128)
    amplitudes[:, half_width, coin] = 1.0
    records = numpy.zeros((maps, len(recorded), size, 2), dtype = numpy.float64)
    max_norm_error = 0.0
    for tidx in range(steps):
        row = labels[:, tidx, :]
        amplitudes = _coin_shift(amplitudes, _LABEL_COS[row], _LABEL_SIN[row])
        probs = amplitudes.real ** 2 + amplitudes.imag ** 2
        norm_error = numpy.max(numpy.abs(1.0 - probs.sum(axis = (1, 2))))
        max_norm_error = max(max_norm_error, float(norm_error))
        if tidx + 1 in recorded:
            records[:, recorded[tidx + 1]] = probs
    return records, max_norm_error

def probability_distribution(state, coin_resolved = False):
    """
    Trace out the coin and return position probabilities.

    :param WalkerState state: Walker state.
    :param bool coin_resolved: Also keep the per-coin probabilities.
    :return: Distribution ``P(x) = |psi_0(x)|^2 + |psi_1(x)|^2``.
    :rtype: Distribution
    """
    amps  = state.amplitudes
    coin  = amps.real ** 2 + amps.imag ** 2
    return Distribution(
        state.positions,
        coin.sum(axis = 1),
        coin = coin if coin_resolved else None,
        step = state.step
    )

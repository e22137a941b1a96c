#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#-------------------------------------------------------------------------------
# This file is part of pdwalk package.
#
# Copyright (C) since 2021 pdwalk developers
# Use of this source is governed by the MIT license, see LICENSE file.
#-------------------------------------------------------------------------------


"""
This module contains commands for ``pdwalk-cli`` command line interface.

Exit codes: ``0`` on success, ``2`` on configuration error (including command
line usage errors reported by click), ``3`` on any runtime error.
"""


__author__ = "pdwalk developers"


import sys
import traceback
import functools

import click

import pdwalk.const
import pdwalk.app
import pdwalk.config
import pdwalk.theory
import pdwalk.ensemble
import pdwalk.fitting
import pdwalk.reports
import pdwalk.disorder
from pdwalk.errors import PdwalkError, InvalidArgumentError, exit_code_for


def handle_errors(func):
    """
    Decorator: Report errors raised by command and exit with matching code.
    """
    @functools.wraps(func)
    def wrapper_handle_errors(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except PdwalkError as exc:
            click.secho(
                "[FAIL] {}".format(exc),
                fg = 'red',
                err = True
            )
            sys.exit(exit_code_for(exc))

        except Exception as exc:  # pylint: disable=locally-disabled,broad-except
            click.echo(
                ''.join(traceback.TracebackException(*sys.exc_info()).format()),
                err = True
            )
            sys.exit(exit_code_for(exc))
    return wrapper_handle_errors

def run_options(func):
    """
    Decorator: Attach options shared by all ensemble running commands.
    """
    options = (
        click.option('--p', 'p_values', type = float, multiple = True, help = 'Disorder level (multiple)'),
        click.option('--maps', type = int, help = 'Number of coin maps per disorder level'),
        click.option('--steps', type = int, help = 'Number of walk steps'),
        click.option('--seed', 'master_seed', type = int, help = 'Master seed'),
        click.option('--out', 'output_dir', type = click.Path(file_okay = False), help = 'Output directory'),
        click.option('--min-prob', type = float, help = 'Probability cutoff of the profile fit'),
        click.option('--workers', type = int, help = 'Number of worker processes'),
        click.option('--events', type = int, help = 'Emulated detection events per distribution'),
        click.option('--resample', type = click.Choice(pdwalk.const.RESAMPLE_MODES), help = 'Dynamic coin replacement mode'),
        click.option('--static-coin', type = click.Choice(sorted(pdwalk.const.COIN_NAMES)), help = 'Force homogeneous static base'),
    )
    for option in reversed(options):
        func = option(func)
    return func

def flag_overrides(**flags):
    """
    Translate command line flags into configuration overrides, dropping flags
    that were not given.
    """
    return {
        key: (list(value) if isinstance(value, tuple) else value)
        for key, value in flags.items()
        if value is not None and value != ()
    }

def make_runner(ctx, **flags):
    """Build runner from global options and command flags."""
    return pdwalk.app.create_runner_full(
        config_file = ctx.obj['config_file'],
        overrides = flag_overrides(**flags),
        mode = ctx.obj['mode']
    )


#-------------------------------------------------------------------------------


@click.group()
@click.option('--config', 'config_file', type = click.Path(exists = True, dir_okay = False), help = 'JSON configuration file')
@click.option('--mode', type = click.Choice(pdwalk.const.MODES), help = 'Configuration preset')
@click.pass_context
def cli(ctx, config_file, mode):
    """Command line interface for the pdwalk simulator."""
    ctx.obj = {'config_file': config_file, 'mode': mode}


@cli.command('simulate')
@run_options
@click.pass_context
@handle_errors
def simulate(ctx, **flags):
    """Run ensembles and emit distribution, profile and variance data."""
    runner = make_runner(ctx, **flags)
    click.echo("Simulating disorder levels {} with {} coin maps each:".format(
        ', '.join('{:g}'.format(p) for p in runner.run_config.p_values),
        runner.run_config.maps
    ))
    for path in runner.emit_distribution_data():
        click.echo("    - {}".format(path))
    click.secho(
        "[OK] Distribution data was successfully written",
        fg = 'green'
    )


@cli.command('reproduce-table')
@run_options
@click.pass_context
@handle_errors
def reproduce_table(ctx, **flags):
    """Reproduce the characteristic parameter table."""
    runner = make_runner(ctx, **flags)
    table, paths = runner.reproduce_table()
    click.echo(pdwalk.reports.format_text_table(table), nl = False)
    for path in paths:
        click.echo("    - {}".format(path))
    click.secho(
        "[OK] Characteristic parameter table was successfully written",
        fg = 'green'
    )


@cli.command('fit')
@click.argument('distribution_file', type = click.Path(exists = True, dir_okay = False))
@click.option('--t', 'step', type = int, help = 'Step of the profile fit, defaults to the last step in file')
@click.option('--min-prob', type = float, help = 'Probability cutoff of the profile fit')
@click.option('--weighted/--no-weighted', default = False, help = 'Weight sites by their probability')
@click.pass_context
@handle_errors
def fit(ctx, distribution_file, step, min_prob, weighted):
    """Fit distributions stored in a distribution CSV file."""
    run_config = pdwalk.config.parse_config(
        config_file = ctx.obj['config_file'],
        overrides = flag_overrides(min_prob = min_prob),
        mode = ctx.obj['mode']
    )
    distributions = pdwalk.reports.read_distributions_csv(distribution_file)
    dist = pdwalk.reports.select_step(distributions, distribution_file, step)
    step = dist.step

    spatial = pdwalk.fitting.fit_spatial_profile(dist, run_config.min_prob, run_config.b_range, weighted = weighted)
    moments = pdwalk.fitting.estimate_b_from_moments(dist)
    click.echo("Spatial profile at t={} ({} sites):".format(step, spatial.points_used))
    click.echo("    - b:         {:.6f} +- {:.6f}".format(spatial.b, spatial.stderr_b))
    click.echo("    - delta:     {:.6f} +- {:.6f}".format(spatial.delta, spatial.stderr_delta))
    click.echo("    - kappa:     {:.6f}".format(spatial.intercept))
    click.echo("    - rms:       {:.6g}".format(spatial.residual_rms))
    click.echo("    - b moments: {:.6f}{}".format(moments.b, ' (clamped)' if moments.clamped else ''))

    if len(distributions) >= 3:
        series = [(t, pdwalk.ensemble.variance(item)) for t, item in distributions.items()]
        temporal = pdwalk.fitting.fit_variance_power_law(series)
        click.echo("Variance power law over {} steps:".format(temporal.points_used))
        click.echo("    - 2d:        {:.6f} +- {:.6f}".format(temporal.two_d, temporal.stderr_two_d))
        click.echo("    - c^2:       {:.6f}".format(temporal.c_squared))
    click.secho(
        "[OK] Fit was successfully performed",
        fg = 'green'
    )


@cli.command('map')
@click.option('--p', type = float, required = True, help = 'Disorder level')
@click.option('--index', 'map_index', type = int, default = 0, show_default = True, help = 'Index of the map within the ensemble')
@click.option('--steps', type = int, help = 'Number of walk steps')
@click.option('--seed', 'master_seed', type = int, help = 'Master seed')
@click.option('--resample', type = click.Choice(pdwalk.const.RESAMPLE_MODES), help = 'Dynamic coin replacement mode')
@click.option('--output', type = click.Path(dir_okay = False), help = 'Target file, standard output by default')
@click.pass_context
@handle_errors
def coin_map(ctx, p, map_index, steps, master_seed, resample, output):
    """Generate single coin map of an ensemble and serialize it."""
    run_config = pdwalk.config.parse_config(
        config_file = ctx.obj['config_file'],
        overrides = flag_overrides(p_values = (p,), steps = steps, master_seed = master_seed, resample = resample),
        mode = ctx.obj['mode']
    )
    if map_index < 0:
        raise InvalidArgumentError("Map index must be nonnegative, got {}".format(map_index))
    spec = pdwalk.disorder.DisorderSpec(
        p = p,
        maps = map_index + 1,
        steps = run_config.steps,
        recorded_steps = run_config.recorded_steps,
        master_seed = run_config.master_seed,
        resample = run_config.resample,
        static_per_map = run_config.static_per_map,
        static_coin = run_config.static_coin
    )
    text = pdwalk.disorder.serialize_map(pdwalk.disorder.make_coin_map(spec, map_index))
    if output:
        with open(output, 'w', encoding = 'utf-8') as fhd:
            fhd.write(text)
        click.secho(
            "[OK] Coin map was successfully written to {}".format(output),
            fg = 'green'
        )
    else:
        click.echo(text, nl = False)


#-------------------------------------------------------------------------------


@cli.group('theory')
def theory():
    """Evaluate the stretched exponential theory."""


@theory.command('f')
@click.option('--b', type = float, required = True, help = 'Decay exponent')
@handle_errors
def theory_f(b):
    """Excess kurtosis f(b)."""
    click.echo("{:.12g}".format(pdwalk.theory.f_of_b(b)))


@theory.command('finv')
@click.option('--phi', type = float, required = True, help = 'Excess kurtosis')
@click.option('--extended/--no-extended', default = False, help = 'Search the whole admissible exponent interval')
@handle_errors
def theory_finv(phi, extended):
    """Decay exponent b for given excess kurtosis."""
    click.echo("{:.12g}".format(pdwalk.theory.b_from_phi(phi, extended = extended)))


@theory.command('moment')
@click.option('--b', type = float, required = True, help = 'Decay exponent')
@click.option('--sigma', type = float, required = True, help = 'Standard deviation')
@click.option('--n', 'half_order', type = int, default = 1, show_default = True, help = 'Half order of the even moment')
@handle_errors
def theory_moment(b, sigma, half_order):
    """Even moment E(x^2n) in closed form and by quadrature."""
    profile = pdwalk.theory.TheoryProfile(b, sigma)
    click.echo("closed form: {:.12g}".format(pdwalk.theory.even_moment_formula(half_order, profile)))
    click.echo("quadrature:  {:.12g}".format(pdwalk.theory.quadrature_moment(2 * half_order, profile)))


@theory.command('expansion')
@click.option('--b', type = float, required = True, help = 'Decay exponent')
@click.option('--sigma', type = float, required = True, help = 'Standard deviation')
@click.option('--k', type = float, required = True, help = 'Wavenumber')
@handle_errors
def theory_expansion(b, sigma, k):
    """Characteristic function against its fourth order series."""
    report = pdwalk.theory.characteristic_expansion_check(pdwalk.theory.TheoryProfile(b, sigma), k)
    click.echo("quadrature: {:.12g}".format(report.quadrature))
    click.echo("series:     {:.12g}".format(report.series))
    click.echo("residual:   {:.6g}".format(report.residual))


@theory.command('generator')
@click.option('--b', type = float, required = True, help = 'Decay exponent')
@click.option('--sigma', type = float, required = True, help = 'Standard deviation')
@handle_errors
def theory_generator(b, sigma):
    """Integrated generator coefficients for given exponent and spread."""
    moments = pdwalk.theory.generator_moments(b, sigma)
    click.echo("lambda2: {:.12g}".format(moments.lambda2_integral))
    click.echo("lambda4: {:.12g}".format(moments.lambda4_integral))
    click.echo("phi:     {:.12g}".format(moments.phi))

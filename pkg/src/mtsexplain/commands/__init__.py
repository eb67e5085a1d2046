# -*- coding: utf8 -*-
# Copyright (c) 2021 mtsexplain contributors
#
# Permission is hereby granted, free of charge, to any person obtaining a copy
# of this software and associated documentation files (the "Software"), to
# deal in the Software without restriction, including without limitation the
# rights to use, copy, modify, merge, publish, distribute, sublicense, and/or
# sell copies of the Software, and to permit persons to whom the Software is
# furnished to do so, subject to the following conditions:
#
# The above copyright notice and this permission notice shall be included in
# all copies or substantial portions of the Software.
#
# THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
# IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
# FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
# AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
# LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING
# FROM, OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS
# IN THE SOFTWARE.

"""
This package implements the mtsexplain CLI.
"""

import logging
import sys
import warnings

import click
from nr.proxy import proxy  # type: ignore

from mtsexplain import __version__
from mtsexplain.model import load_config
from mtsexplain.training import ExperimentConfig

context: dict = proxy(lambda: click.get_current_context().obj)


@click.group()
@click.option('--seed', type=click.IntRange(min=0), default=0, show_default=True,
  help='The seed every random choice of the run is derived from.')
@click.option('--out', 'out_dir', metavar='dir', default='.', show_default=True,
  help='The directory to write the run artifacts to.')
@click.option('--threads', type=click.IntRange(min=1), default=1, show_default=True,
  help='Worker threads for independent grid search runs.')
@click.option('-c', '--config', 'config_file', metavar='path', type=click.Path(exists=True, dir_okay=False),
  help='An experiment configuration (YAML). Command line options take precedence.')
@click.option('-v', '--verbose', count=True, help='Increase the log verbosity.')
@click.option('-q', '--quiet', is_flag=True, help='Quiet mode, wins over --verbose.')
@click.option('-W', '--disable-warnings', is_flag=True, help='Disable Python warnings.')
@click.version_option(__version__)
def mtsexplain(seed, out_dir, threads, config_file, verbose, quiet, disable_warnings):
  """
  Train explainable convolutional classifiers for multivariate time series, explain their
  predictions with Grad-CAM attribution maps and aggregate benchmark results.
  """

  ctx = click.get_current_context()
  ctx.ensure_object(dict)
  context['seed'] = seed
  context['out'] = out_dir
  context['threads'] = threads
  context['quiet'] = quiet

  if quiet:
    level = logging.CRITICAL
  elif verbose >= 2:
    level = logging.DEBUG
  elif verbose >= 1:
    level = logging.INFO
  else:
    level = logging.WARNING

  logging.basicConfig(
    format='[%(levelname)s|%(asctime)s|%(name)s]: %(message)s',
    level=level,
  )

  if disable_warnings:
    warnings.simplefilter('ignore')
  elif not sys.warnoptions:
    warnings.simplefilter('default')

  if config_file:
    try:
      context['config'] = load_config(config_file, ExperimentConfig)
    except Exception as exc:
      sys.exit(f'error: invalid configuration {config_file}: {exc}')
  else:
    context['config'] = ExperimentConfig()


from . import evaluate
from . import explain
from . import fetch
from . import gridsearch
from . import report
from . import synth
from . import train

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

import functools

import click

from mtsexplain.datasets import generate_synthetic, split_train_test, write_regions_csv, write_ts_file
from mtsexplain.utils.io import ArtifactSet
from . import context, mtsexplain
from .commons import echo, exit_on_error, write_run


@mtsexplain.command()
@click.option('--n-per-class', type=click.IntRange(min=1), default=10, show_default=True,
  help='Samples per class before the 50/50 train/test split.')
@click.option('--length', type=click.IntRange(min=2), default=100, show_default=True, help='Series length.')
@click.option('--noise', type=click.FloatRange(min=0.0), default=0.05, show_default=True,
  help='Standard deviation of the additive Gaussian noise.')
@click.option('--dims', type=click.IntRange(min=1), default=2, show_default=True, help='Number of dimensions.')
def synth(n_per_class, length, noise, dims):
  """
  Generate the synthetic sine/pulse dataset with ground-truth explanation regions.
  """

  seed = context['seed']
  with exit_on_error():
    dataset = generate_synthetic(n_per_class, length, seed, noise, dims=dims)
    train, test = split_train_test(dataset, seed)

    artifacts = ArtifactSet()
    artifacts.add_dynamic('synthetic_TRAIN.ts', functools.partial(write_ts_file, train))
    artifacts.add_dynamic('synthetic_TEST.ts', functools.partial(write_ts_file, test))
    artifacts.add_dynamic('synthetic_regions.csv', write_regions_csv, train, test)
    echo(f'{len(train)} training and {len(test)} test samples of shape {dims}x{length}')
    write_run('synth', {'n_per_class': n_per_class, 'length': length, 'noise': noise, 'dims': dims}, artifacts)

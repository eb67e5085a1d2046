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
import sys

import click
from termcolor import colored

from mtsexplain.datasets import load_regions_csv, load_ts_file
from mtsexplain.explain import DEFAULT_THRESHOLD, ExplainError, IoUScope, explain as explain_sample, iou, \
  mask_interval, threshold_mask, write_attribution_csv, write_ppm
from mtsexplain.model import load_checkpoint
from mtsexplain.utils.io import ArtifactSet
from . import mtsexplain
from .commons import echo, exit_on_error, write_run


def parse_class(value: str):
  if value == 'auto':
    return None
  try:
    return int(value)
  except ValueError:
    raise click.BadParameter(f'expected a class id or "auto", got {value!r}')


@mtsexplain.command()
@click.option('--checkpoint', metavar='path', required=True, type=click.Path(exists=True, dir_okay=False),
  help='A checkpoint written by the train or gridsearch commands.')
@click.option('--data', 'data_path', metavar='path', required=True, type=click.Path(exists=True, dir_okay=False),
  help='The dataset (.ts) holding the sample to explain.')
@click.option('--index', type=click.IntRange(min=0), default=0, show_default=True, help='The sample index.')
@click.option('--class', 'class_', default='auto', show_default=True,
  help='The class to explain, or "auto" for the predicted class.')
@click.option('--threshold', type=float, default=DEFAULT_THRESHOLD, show_default=True,
  help='Attribution threshold of the explanation masks.')
@click.option('--regions', 'regions_path', metavar='path', type=click.Path(exists=True, dir_okay=False),
  help='A ground-truth regions CSV (as written by the synth command) to score the masks against.')
@click.option('--cell-size', type=click.IntRange(min=1), default=1, show_default=True,
  help='Pixels per cell of the PPM heatmaps.')
def explain(checkpoint, data_path, index, class_, threshold, regions_path, cell_size):
  """
  Compute the observed-variables and time attribution maps of one sample.
  """

  target = parse_class(class_)
  with exit_on_error():
    model = load_checkpoint(checkpoint)
    dataset = load_ts_file(data_path)
    if index >= len(dataset):
      raise ExplainError(f'sample index {index} out of range for {len(dataset)} samples')
    result = explain_sample(model, dataset.samples[index], target)

    artifacts = ArtifactSet()
    values = {'target_class': float(result.target_class), 'probability': float(result.probabilities[result.target_class])}
    region = load_regions_csv(regions_path).get((dataset.name, index)) if regions_path else None

    for attribution in (result.variables, result.time):
      kind = attribution.kind.value
      artifacts.add_dynamic(f'{kind}.csv', functools.partial(write_attribution_csv, attribution))
      artifacts.add_dynamic(f'{kind}.ppm', functools.partial(write_ppm, attribution, cell_size=cell_size), text=False)
      mask = threshold_mask(attribution, threshold)
      interval = mask_interval(mask)
      line = f'{kind:>9}: '
      if interval:
        values[f'{kind}_start'], values[f'{kind}_end'] = float(interval[0]), float(interval[1])
        line += f'timestamps {interval[0]}..{interval[1]}'
      else:
        line += 'empty mask'
      if region is not None:
        score = values[f'{kind}_iou'] = iou(mask, region, IoUScope.TIME_ONLY)
        values[f'{kind}_iou_cells'] = iou(mask, region, IoUScope.CELLS)
        line += f', IoU {colored(f"{score:.3f}", "green" if score >= 0.5 else "yellow")}'
      echo(line)

    if regions_path and region is None:
      print(f'warning: no ground-truth region for sample {index} of {dataset.name}', file=sys.stderr)

    names = dataset.class_names
    label = names[result.target_class] if result.target_class < len(names) else str(result.target_class)
    echo(f'explained class {label!r} '
      f'(p={result.probabilities[result.target_class]:.3f})')
    write_run('explain', {'checkpoint': checkpoint, 'data': data_path, 'index': index, 'class': class_,
      'threshold': threshold, 'regions': regions_path, 'cell_size': cell_size}, artifacts,
      spec=model.spec, values=values)

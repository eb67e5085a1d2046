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
The ground-truth regions CSV: one row `dataset,index,dim,t_start,t_end` per sample that
carries a planted discriminative region.
"""

import csv
from typing import Dict, TextIO, Tuple

from .base import DatasetError, MTSDataset, Region

__all__ = ['REGION_COLUMNS', 'write_regions_csv', 'load_regions_csv']

REGION_COLUMNS = ['dataset', 'index', 'dim', 't_start', 't_end']


def write_regions_csv(fp: TextIO, *datasets: MTSDataset) -> None:
  writer = csv.writer(fp, lineterminator='\n')
  writer.writerow(REGION_COLUMNS)
  for dataset in datasets:
    for index, region in enumerate(dataset.regions or []):
      if region is not None:
        writer.writerow([dataset.name, index, region.dim, region.t_start, region.t_end])


def load_regions_csv(path: str) -> Dict[Tuple[str, int], Region]:
  """
  Returns the regions keyed by `(dataset name, sample index)`.
  """

  regions = {}
  with open(path, newline='', encoding='utf8') as fp:
    reader = csv.DictReader(fp)
    if reader.fieldnames != REGION_COLUMNS:
      raise DatasetError(f'{path}: expected the header {",".join(REGION_COLUMNS)}')
    for row in reader:
      try:
        key = (row['dataset'], int(row['index']))
        regions[key] = Region(int(row['dim']), int(row['t_start']), int(row['t_end']))
      except (TypeError, ValueError):
        raise DatasetError(f'{path}: line {reader.line_num}: malformed region')
  return regions

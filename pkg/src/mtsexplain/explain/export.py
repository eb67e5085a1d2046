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
Export of attribution maps as CSV tables and binary PPM heatmaps.
"""

import csv
from typing import BinaryIO, TextIO

import numpy as np

from .attribution import AttributionMap

__all__ = ['write_attribution_csv', 'heatmap_pixels', 'write_ppm']


def write_attribution_csv(attribution: AttributionMap, fp: TextIO) -> None:
  """
  One row per timestamp, one column per dimension.
  """

  writer = csv.writer(fp, lineterminator='\n')
  writer.writerow(['timestamp'] + [f'dim_{d}' for d in range(attribution.values.shape[1])])
  for t, row in enumerate(attribution.values):
    writer.writerow([t] + [repr(float(v)) for v in row])


def heatmap_pixels(values: np.ndarray, cell_size: int = 1) -> np.ndarray:
  """
  Maps values in `[0, 1]` from white (0) to red (1). The image has one row of cells per
  dimension and one column of cells per timestamp; returns `(height, width, 3)` bytes.
  """

  if cell_size < 1:
    raise ValueError(f'cell_size must be positive, got {cell_size}')
  v = np.clip(np.asarray(values, dtype=np.float64), 0.0, 1.0).T
  fade = np.rint(255.0 * (1.0 - v)).astype(np.uint8)
  pixels = np.stack([np.full_like(fade, 255), fade, fade], axis=-1)
  if cell_size > 1:
    pixels = np.repeat(np.repeat(pixels, cell_size, axis=0), cell_size, axis=1)
  return pixels


def write_ppm(attribution: AttributionMap, fp: BinaryIO, cell_size: int = 1) -> None:
  pixels = heatmap_pixels(attribution.values, cell_size)
  height, width = pixels.shape[:2]
  fp.write(f'P6\n{width} {height}\n255\n'.encode('ascii'))
  fp.write(np.ascontiguousarray(pixels).tobytes())

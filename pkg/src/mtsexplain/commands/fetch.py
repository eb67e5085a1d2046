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

import click

from mtsexplain.datasets import download_uea
from mtsexplain.utils.io import ArtifactSet
from . import mtsexplain
from .commons import echo, exit_on_error, write_run


@mtsexplain.command()
@click.argument('name')
@click.option('--url', metavar='url', help='Download from this URL instead of the UEA archive.')
@click.option('--timeout', type=click.FloatRange(min=0), default=60.0, show_default=True,
  help='Network timeout in seconds.')
def fetch(name, url, timeout):
  """
  Download the train and test split of a UEA archive dataset in the `.ts` format.
  """

  with exit_on_error():
    files = download_uea(name, url=url, timeout=timeout)
    artifacts = ArtifactSet()
    for filename in sorted(files):
      artifacts.add_static(filename, files[filename])
      echo(f'{filename}: {len(files[filename])} bytes')
    write_run('fetch', {'name': name, 'url': url}, artifacts)

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
Downloads datasets from the public UEA/UCR archive.
"""

import io
import logging
import os
import zipfile
from typing import Dict, Optional

import nr.fs  # type: ignore
import requests

from .base import DatasetError

logger = logging.getLogger(__name__)
__all__ = ['ARCHIVE_URL', 'download_uea', 'fetch_uea']

ARCHIVE_URL = 'http://timeseriesclassification.com/Downloads/{}.zip'


def download_uea(
  name: str,
  url: Optional[str] = None,
  session: Optional[requests.Session] = None,
  timeout: float = 60.0,
) -> Dict[str, bytes]:
  """
  Downloads the archive of dataset *name* and returns the contents of its
  `<name>_TRAIN.ts` and `<name>_TEST.ts` members, keyed by file name.
  """

  url = url or ARCHIVE_URL.format(name)
  logger.info('Downloading %s', url)
  try:
    response = (session or requests).get(url, timeout=timeout)
    response.raise_for_status()
  except requests.RequestException as exc:
    raise DatasetError(f'could not download {name!r}: {exc}')

  try:
    archive = zipfile.ZipFile(io.BytesIO(response.content))
  except zipfile.BadZipFile:
    raise DatasetError(f'{url} did not return a zip archive')

  wanted = (f'{name}_TRAIN.ts', f'{name}_TEST.ts')
  files: Dict[str, bytes] = {}
  with archive:
    for member in archive.namelist():
      basename = os.path.basename(member)
      if basename in wanted:
        files[basename] = archive.read(member)

  missing = [f for f in wanted if f not in files]
  if missing:
    raise DatasetError('archive for {!r} does not contain {}'.format(name, ', '.join(missing)))
  return files


def fetch_uea(name: str, directory: str, **kwargs) -> Dict[str, str]:
  """
  Like #download_uea(), but writes the files into *directory* and returns their paths.
  """

  os.makedirs(directory, exist_ok=True)
  paths = {}
  for filename, content in download_uea(name, **kwargs).items():
    path = paths[filename] = os.path.join(directory, filename)
    with nr.fs.atomic_file.dispatch(path, 'wb') as fp:
      fp.write(content)
    logger.debug('Wrote %s', path)
  return paths

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

import logging
import os
from typing import Any, Callable, List, Optional

import nr.fs  # type: ignore

logger = logging.getLogger(__name__)
__all__ = ['ArtifactSet']


class ArtifactSet:
  """
  Represents the output files of a run either by static content or by a function that
  renders the contents into a file-like object. The files are written to disk in one go,
  each one atomically.
  """

  def __init__(self) -> None:
    self._files: List[dict] = []

  def add_static(self, filename: str, content: Any) -> None:
    def _write(fp):
      fp.write(content)
    self.add_dynamic(filename, _write, text=isinstance(content, str))

  def add_dynamic(self, filename: str, render_func: Callable, *args: Any, text: bool = True) -> None:
    if filename in self.filenames():
      raise ValueError(f'duplicate artifact {filename!r}')
    self._files.append({'filename': filename, 'render_func': render_func, 'args': args, 'text': text})

  def filenames(self) -> List[str]:
    return [f['filename'] for f in self._files]

  def abspaths(self, parent_directory: Optional[str] = None) -> List[str]:
    return [os.path.normpath(os.path.join(parent_directory or '.', f)) for f in self.filenames()]

  def write_all(self, parent_directory: Optional[str] = None) -> List[str]:
    """
    Writes all files relative to *parent_directory*, creating directories as needed.
    Returns the paths that were written.
    """

    paths = []
    for file_, filename in zip(self._files, self.abspaths(parent_directory)):
      os.makedirs(os.path.dirname(filename) or '.', exist_ok=True)
      mode = 'w' if file_['text'] else 'wb'
      with nr.fs.atomic_file.dispatch(filename, mode) as fp:
        file_['render_func'](fp, *file_['args'])
      logger.debug('Wrote %s', filename)
      paths.append(filename)
    return paths

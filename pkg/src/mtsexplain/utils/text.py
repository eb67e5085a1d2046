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

from typing import List, Optional, Sequence, Union

__all__ = ['indent_text', 'format_table']


def indent_text(text: str, indent: Union[str, int]) -> str:
  """
  Indents the *text* by *indent*.
  """

  if isinstance(indent, int):
    indent = ' ' * indent
  return '\n'.join(indent + l for l in text.splitlines())


def format_table(header: Sequence[str], rows: Sequence[Sequence[object]], align: Optional[str] = None) -> str:
  """
  Renders *rows* as a plain text table with columns padded to equal width. *align* holds
  one character per column, `l` or `r` (default: first column left, all others right).
  """

  cells: List[List[str]] = [[str(c) for c in header]] + [[str(c) for c in row] for row in rows]
  widths = [max(len(row[i]) for row in cells) for i in range(len(header))]
  align = align or 'l' + 'r' * (len(header) - 1)
  lines = []
  for row in cells:
    parts = [c.ljust(w) if a == 'l' else c.rjust(w) for c, w, a in zip(row, widths, align)]
    lines.append('  '.join(parts).rstrip())
  return '\n'.join(lines)

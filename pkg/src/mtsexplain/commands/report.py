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

from mtsexplain.reporting import TIE_METHODS, average_rank, load_published_results, load_results, \
  rank_standard_error, wins_ties, write_ranks_csv
from mtsexplain.utils.io import ArtifactSet
from mtsexplain.utils.text import format_table, indent_text
from . import mtsexplain
from .commons import echo, exit_on_error, parse_list, write_run


@mtsexplain.command()
@click.option('--results', 'results_path', metavar='path', type=click.Path(exists=True, dir_okay=False),
  help='A results CSV: one row per dataset, one accuracy column per classifier.')
@click.option('--published', is_flag=True, help='Rank the bundled published UEA results.')
@click.option('--ties', type=click.Choice(TIE_METHODS), default='average', show_default=True,
  help='How tied accuracies are ranked; "min" reproduces the published average ranks.')
@click.option('--classifiers', metavar='list', help='Comma separated subset of classifiers to rank.')
def report(results_path, published, ties, classifiers):
  """
  Average rank, standard error of the rank and wins/ties of every classifier over a
  results table.
  """

  if bool(results_path) == published:
    raise click.UsageError('expected exactly one of --results and --published')

  with exit_on_error():
    table = load_published_results() if published else load_results(results_path)
    names = parse_list(classifiers, str)
    if names:
      table = table.columns([n.strip() for n in names])
    table.check_nonempty()

    ranks = average_rank(table, ties)
    errors = rank_standard_error(table, ties)
    wins = wins_ties(table)

    artifacts = ArtifactSet()
    artifacts.add_dynamic('ranks.csv', functools.partial(write_ranks_csv, table, ties=ties))

    rows = [(name, f'{ranks[name]:.3f}', f'{errors[name]:.3f}', wins[name])
      for name in sorted(table.classifiers, key=lambda n: ranks[n])]
    echo(f'{len(table.classifiers)} classifiers on {len(table.datasets)} datasets (ties: {ties})')
    echo(indent_text(format_table(['classifier', 'avg rank', 'std error', 'wins/ties'], rows), 2))

    values = {f'{name}_average_rank': ranks[name] for name in table.classifiers}
    write_run('report', {'results': results_path, 'published': published or None, 'ties': ties,
      'classifiers': classifiers}, artifacts, values=values)

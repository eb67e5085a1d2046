
import io
import json

import numpy as np
import pytest

from mtsexplain.model import Architecture, ModelSpec
from mtsexplain.reporting import ReportError, ResultsTable, RunManifest, average_rank, load_manifest, \
  load_published_results, load_results, make_run_id, persist_run, rank_matrix, rank_standard_error, \
  wins_ties, write_ranks_csv
from mtsexplain.utils.io import ArtifactSet

PUBLISHED_WINS = {'XCM': 16, 'MLSTM-FCN': 7, 'WEASEL+MUSE': 7}


def _table(text):
  return load_results(io.StringIO(text))


def test_average_rank_basics():
  table = _table('dataset,a,b\nx,0.9,0.8\ny,0.7,0.6\n')
  assert average_rank(table) == {'a': 1.0, 'b': 2.0}
  assert wins_ties(table) == {'a': 2, 'b': 0}

  tied = _table('dataset,a,b,c\nx,0.5,0.5,0.5\n')
  assert average_rank(tied) == {'a': 2.0, 'b': 2.0, 'c': 2.0}
  assert average_rank(tied, ties='min') == {'a': 1.0, 'b': 1.0, 'c': 1.0}
  assert wins_ties(tied) == {'a': 1, 'b': 1, 'c': 1}

  assert average_rank(_table('dataset,only\nx,0.3\ny,0.9\n')) == {'only': 1.0}


def test_blanks_rank_last():
  table = _table('dataset,a,b,c\nx,0.9,,0.8\ny,,,0.5\n')
  assert rank_matrix(table).tolist() == [[1.0, 3.0, 2.0], [2.5, 2.5, 1.0]]
  assert wins_ties(table) == {'a': 1, 'b': 0, 'c': 1}


def test_rank_standard_error():
  table = _table('dataset,a,b\nx,0.9,0.8\ny,0.6,0.7\n')
  errors = rank_standard_error(table)
  assert errors['a'] == pytest.approx(np.std([1, 2], ddof=1) / np.sqrt(2))
  assert rank_standard_error(_table('dataset,a,b\nx,0.9,0.8\n')) == {'a': 0.0, 'b': 0.0}


def test_published_results():
  table = load_published_results()
  assert len(table.datasets) == 30
  assert len(table.classifiers) == 11

  ranks = average_rank(table)
  assert ranks['XCM'] < ranks['MLSTM-FCN'] < ranks['WEASEL+MUSE']
  assert min(ranks, key=ranks.get) == 'XCM'
  averaged = ranks['XCM']

  # shared best positions reproduce the published ranks
  ranks = average_rank(table, ties='min')
  assert abs(ranks['XCM'] - 2.3) < abs(averaged - 2.3)
  for name, expected in (('XCM', 2.3), ('MLSTM-FCN', 3.5), ('WEASEL+MUSE', 4.0)):
    assert abs(ranks[name] - expected) <= 0.2, name
  assert ranks['XCM'] < ranks['MLSTM-FCN'] < ranks['WEASEL+MUSE']

  wins = wins_ties(table)
  for name, published in PUBLISHED_WINS.items():
    assert wins[name] >= published - 1, name

  motions = table.datasets.index('Basic Motions')
  row = ResultsTable([table.datasets[motions]], list(table.classifiers), table.accuracy[motions:motions + 1])
  credited = [name for name, count in wins_ties(row).items() if count]
  assert {'XCM', 'XCM-Seq', 'MTEX-CNN', 'MLSTM-FCN', 'WEASEL+MUSE'} <= set(credited)


def test_columns_subset():
  table = load_published_results().columns(['XCM', 'ED'])
  assert table.classifiers == ['XCM', 'ED']
  with pytest.raises(ReportError):
    table.columns(['nope'])


def test_malformed_results():
  with pytest.raises(ReportError) as excinfo:
    _table('dataset,a,b\nx,0.9,0.8\ny,0.9\n')
  assert 'line 3' in str(excinfo.value)
  with pytest.raises(ReportError) as excinfo:
    _table('dataset,a\nx,high\n')
  assert 'line 2' in str(excinfo.value)
  with pytest.raises(ReportError):
    _table('dataset,a\nx,1.5\n')
  with pytest.raises(ReportError):
    _table('')
  with pytest.raises(ReportError):
    average_rank(_table('dataset,a\n'))


def test_write_ranks_csv():
  fp = io.StringIO()
  write_ranks_csv(_table('dataset,a,b\nx,0.9,0.8\n'), fp)
  assert fp.getvalue().splitlines() == [
    'classifier,average_rank,rank_std_error,wins_ties',
    'a,1.0000,0.0000,1',
    'b,2.0000,0.0000,0',
  ]


def test_run_ids():
  assert make_run_id('train', 0, {'epochs': '1'}) == make_run_id('train', 0, {'epochs': '1'})
  assert make_run_id('train', 0, {'epochs': '1'}) != make_run_id('train', 1, {'epochs': '1'})
  assert len(make_run_id('synth', 0, {})) == 16


def test_persist_run(tmp_path):
  artifacts = ArtifactSet()
  artifacts.add_static('notes.txt', 'hello\n')
  artifacts.add_static('blob.bin', b'\x00\x01')
  artifacts.add_dynamic('values.csv', lambda fp, n: fp.write(f'n\n{n}\n'), 3)
  with pytest.raises(ValueError):
    artifacts.add_static('notes.txt', '')

  spec = ModelSpec(Architecture.XCM, 100, 2, 2)
  manifest = RunManifest(run_id='abc', command='train', seed=4, arguments={'epochs': '1'}, spec=spec,
    values={'parameters': 17028.0})
  path = persist_run(manifest, artifacts, str(tmp_path / 'out'))
  assert manifest.files == ['blob.bin', 'notes.txt', 'train.manifest.json', 'values.csv']
  assert (tmp_path / 'out' / 'blob.bin').read_bytes() == b'\x00\x01'
  assert (tmp_path / 'out' / 'values.csv').read_text() == 'n\n3\n'

  data = json.loads(open(path).read())
  assert data['run-id'] == 'abc'
  assert data['spec']['architecture'] == 'xcm'
  loaded = load_manifest(path)
  assert (loaded.command, loaded.seed, loaded.files) == ('train', 4, manifest.files)
  assert loaded.spec.input_t == 100
  assert loaded.values == {'parameters': 17028.0}

  with pytest.raises(ReportError):
    load_manifest(str(tmp_path / 'missing.json'))


import json

from click.testing import CliRunner

from mtsexplain.commands import mtsexplain
from mtsexplain.datasets import load_regions_csv


def _run(out, *args):
  return CliRunner().invoke(mtsexplain, ['-q', '--out', str(out)] + [str(a) for a in args])


def _manifest(directory, command):
  return json.loads((directory / f'{command}.manifest.json').read_text())


def _synth(tmp_path, seed=0):
  result = _run(tmp_path / 'data', '--seed', seed, 'synth')
  assert result.exit_code == 0, result.output
  return tmp_path / 'data'


def test_synth_is_reproducible(tmp_path):
  data = _synth(tmp_path)
  manifest = _manifest(data, 'synth')
  assert manifest['files'] == ['synth.manifest.json', 'synthetic_TEST.ts', 'synthetic_TRAIN.ts',
    'synthetic_regions.csv']

  again = _run(tmp_path / 'again', 'synth')
  assert again.exit_code == 0, again.output
  for name in manifest['files']:
    assert (data / name).read_bytes() == (tmp_path / 'again' / name).read_bytes(), name

  other = _run(tmp_path / 'other', '--seed', 1, 'synth')
  assert other.exit_code == 0
  assert _manifest(tmp_path / 'other', 'synth')['run-id'] != manifest['run-id']


def test_train_eval_explain(tmp_path):
  data = _synth(tmp_path)
  model_dir = tmp_path / 'model'
  result = _run(model_dir, 'train', '--arch', 'xcm', '--train', data / 'synthetic_TRAIN.ts',
    '--batch', 1, '--window-pct', 0.2, '--epochs', 1)
  assert result.exit_code == 0, result.output
  manifest = _manifest(model_dir, 'train')
  assert manifest['values'] == {'parameters': 17028.0, 'steps': 10.0}
  assert manifest['batch-size'] == 1
  assert len((model_dir / 'loss_curve.csv').read_text().splitlines()) == 2

  checkpoint = model_dir / 'model.ckpt'
  result = _run(tmp_path / 'eval', 'eval', '--checkpoint', checkpoint, '--test', data / 'synthetic_TEST.ts')
  assert result.exit_code == 0, result.output
  metrics = json.loads((tmp_path / 'eval' / 'metrics.json').read_text())
  assert sum(map(sum, metrics['confusion'])) == 10
  assert (tmp_path / 'eval' / 'confusion.csv').read_text().splitlines()[0] == 'true \\ predicted,negative,positive'

  regions = load_regions_csv(str(data / 'synthetic_regions.csv'))
  index = min(i for name, i in regions if name == 'synthetic_TEST')
  result = _run(tmp_path / 'explain', 'explain', '--checkpoint', checkpoint, '--data', data / 'synthetic_TEST.ts',
    '--index', index, '--regions', data / 'synthetic_regions.csv', '--cell-size', 2)
  assert result.exit_code == 0, result.output
  manifest = _manifest(tmp_path / 'explain', 'explain')
  assert set(manifest['files']) == {'explain.manifest.json', 'time.csv', 'time.ppm', 'variables.csv', 'variables.ppm'}
  assert 0.0 <= manifest['values']['time_iou'] <= 1.0
  assert 'variables_iou_cells' in manifest['values']
  assert (tmp_path / 'explain' / 'time.ppm').read_bytes().startswith(b'P6\n200 4\n255\n')

  result = _run(tmp_path / 'explain', 'explain', '--checkpoint', checkpoint, '--data', data / 'synthetic_TEST.ts',
    '--index', 10)
  assert result.exit_code == 1
  assert 'error: sample index 10 out of range' in result.output


def test_train_is_deterministic(tmp_path):
  data = _synth(tmp_path)
  for name in ('a', 'b'):
    result = _run(tmp_path / name, 'train', '--train', data / 'synthetic_TRAIN.ts', '--epochs', 2, '--filters', 4)
    assert result.exit_code == 0, result.output
  for name in ('model.ckpt', 'loss_curve.csv', 'train_metrics.json'):
    assert (tmp_path / 'a' / name).read_bytes() == (tmp_path / 'b' / name).read_bytes(), name


def test_train_usage_errors(tmp_path):
  result = _run(tmp_path, 'train')
  assert result.exit_code == 2
  data = _synth(tmp_path)
  result = _run(tmp_path, 'train', '--train', data / 'synthetic_TRAIN.ts', '--window-pct', 1.5)
  assert result.exit_code == 1
  assert 'window_pct' in result.output


def test_eval_rejects_corrupt_checkpoint(tmp_path):
  data = _synth(tmp_path)
  broken = tmp_path / 'broken.ckpt'
  broken.write_bytes(b'not a checkpoint')
  result = _run(tmp_path / 'eval', 'eval', '--checkpoint', broken, '--test', data / 'synthetic_TEST.ts')
  assert result.exit_code == 1
  assert 'error:' in result.output


def test_gridsearch_single_cell(tmp_path):
  data = _synth(tmp_path)
  out = tmp_path / 'grid'
  result = _run(out, 'gridsearch', '--train', data / 'synthetic_TRAIN.ts', '--batch-sizes', 5,
    '--window-pcts', 0.4, '--folds', 2, '--epochs', 1, '--filters', 4)
  assert result.exit_code == 0, result.output
  assert len((out / 'cv_table.csv').read_text().splitlines()) == 3
  manifest = _manifest(out, 'gridsearch')
  assert (manifest['batch-size'], manifest['window-pct']) == (5, 0.4)
  assert manifest['retrained-on-full-train'] is True
  assert 'model.ckpt' in manifest['files']


def test_config_file(tmp_path):
  data = _synth(tmp_path)
  config = tmp_path / 'experiment.yml'
  config.write_text('model:\n  filters: 2\ntrain:\n  epochs: 1\n  batch-size: 5\n')
  result = CliRunner().invoke(mtsexplain, ['-q', '--out', str(tmp_path / 'model'), '-c', str(config),
    'train', '--train', str(data / 'synthetic_TRAIN.ts')])
  assert result.exit_code == 0, result.output
  manifest = _manifest(tmp_path / 'model', 'train')
  assert manifest['spec']['filters'] == 2
  assert manifest['values']['steps'] == 2.0

  config.write_text('train:\n  epochs: many\n')
  result = CliRunner().invoke(mtsexplain, ['-c', str(config), 'synth'])
  assert result.exit_code == 1
  assert 'invalid configuration' in result.output


def test_report(tmp_path):
  result = _run(tmp_path, 'report', '--published', '--ties', 'min')
  assert result.exit_code == 0, result.output
  lines = (tmp_path / 'ranks.csv').read_text().splitlines()
  assert lines[0] == 'classifier,average_rank,rank_std_error,wins_ties'
  assert len(lines) == 12
  assert _manifest(tmp_path, 'report')['values']['XCM_average_rank'] < 2.5

  table = CliRunner().invoke(mtsexplain, ['--out', str(tmp_path / 'loud'), 'report', '--published',
    '--classifiers', 'XCM,ED'])
  assert table.exit_code == 0, table.output
  assert table.output.splitlines()[2].split()[0] == 'XCM'

  assert _run(tmp_path, 'report').exit_code == 2
  malformed = tmp_path / 'results.csv'
  malformed.write_text('dataset,a,b\nx,0.9\n')
  result = _run(tmp_path, 'report', '--results', malformed)
  assert result.exit_code == 1
  assert 'line 2' in result.output


def test_fetch(tmp_path, monkeypatch):
  calls = []

  def download(name, url=None, timeout=None):
    calls.append((name, url))
    return {f'{name}_TRAIN.ts': b'train', f'{name}_TEST.ts': b'test'}

  monkeypatch.setattr('mtsexplain.commands.fetch.download_uea', download)
  result = _run(tmp_path, 'fetch', 'BasicMotions')
  assert result.exit_code == 0, result.output
  assert calls == [('BasicMotions', None)]
  assert (tmp_path / 'BasicMotions_TEST.ts').read_bytes() == b'test'
  assert _manifest(tmp_path, 'fetch')['files'] == ['BasicMotions_TEST.ts', 'BasicMotions_TRAIN.ts',
    'fetch.manifest.json']

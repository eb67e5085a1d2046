
import io
import zipfile

import numpy as np
import pytest
import requests

from mtsexplain.datasets import DatasetError, MTSDataset, Region, download_uea, fetch_uea, \
  generate_synthetic, load_regions_csv, load_ts_file, pulse_window, split_train_test, stratified_folds, \
  to_onehot, write_regions_csv, write_ts_file

HEADER = '@problemName Toy\n@timeStamps false\n@univariate false\n@dimensions 2\n@classLabel true label_a label_b\n'


def _write(tmp_path, text, name='toy.ts'):
  path = tmp_path / name
  path.write_text(text)
  return str(path)


def test_load_ts_record(tmp_path):
  dataset = load_ts_file(_write(tmp_path, HEADER + '@data\n0.0,1.0:2.0,3.0:label_a\n'))
  assert dataset.name == 'Toy'
  assert len(dataset) == 1
  assert dataset.samples.tolist() == [[[0.0, 1.0], [2.0, 3.0]]]
  assert dataset.labels.tolist() == [0]
  assert dataset.class_names == ['label_a', 'label_b']


def test_load_ts_empty(tmp_path):
  dataset = load_ts_file(_write(tmp_path, HEADER + '@data\n'))
  assert len(dataset) == 0
  assert dataset.n_dims == 2
  assert dataset.n_classes == 2


def test_load_ts_case_insensitive_directives(tmp_path):
  text = '@PROBLEMNAME Upper\n@UNIVARIATE true\n@CLASSLABEL true x y\n@DATA\n1,2,3:y\n'
  dataset = load_ts_file(_write(tmp_path, text))
  assert dataset.samples.shape == (1, 1, 3)
  assert dataset.labels.tolist() == [1]


@pytest.mark.parametrize('text', [
  '@equalLength false\n' + HEADER + '@data\n',
  '@missing true\n' + HEADER + '@data\n',
  '@timeStamps true\n@classLabel true a\n@data\n',
  HEADER + '@data\n0.0,?:2.0,3.0:label_a\n',
  HEADER + '@data\n0.0,1.0:2.0,3.0:label_a\n0.0,1.0,2.0:2.0,3.0,4.0:label_b\n',
  HEADER + '@data\n0.0,1.0:2.0:label_a\n',
])
def test_load_ts_unsupported(tmp_path, text):
  with pytest.raises(DatasetError) as excinfo:
    load_ts_file(_write(tmp_path, text))
  assert 'unsupported dataset feature' in str(excinfo.value)


def test_load_ts_errors_name_the_line(tmp_path):
  with pytest.raises(DatasetError) as excinfo:
    load_ts_file(_write(tmp_path, HEADER + '@data\n0.0,1.0:2.0,3.0:label_c\n'))
  assert 'line 7' in str(excinfo.value)
  assert 'label_c' in str(excinfo.value)

  with pytest.raises(DatasetError):
    load_ts_file(_write(tmp_path, HEADER))


@pytest.mark.parametrize('value', ['inf', '-inf', 'Infinity', '1e999'])
def test_load_ts_rejects_infinite_values(tmp_path, value):
  with pytest.raises(DatasetError) as excinfo:
    load_ts_file(_write(tmp_path, HEADER + f'@data\n0.0,{value}:2.0,3.0:label_a\n'))
  assert 'line 7' in str(excinfo.value)
  assert 'finite' in str(excinfo.value)


def test_load_ts_rejects_invalid_utf8(tmp_path):
  path = tmp_path / 'binary.ts'
  path.write_bytes(HEADER.encode('utf8') + b'@data\n0.0,1.0:2.0,3.0:label_\xff\n')
  with pytest.raises(DatasetError) as excinfo:
    load_ts_file(str(path))
  assert 'UTF-8' in str(excinfo.value)


def test_ts_round_trip_is_exact(tmp_path):
  dataset = generate_synthetic(3, 17, seed=4, dims=3)
  path = str(tmp_path / 'synthetic.ts')
  write_ts_file(dataset, path)
  loaded = load_ts_file(path)
  assert np.array_equal(loaded.samples, dataset.samples)
  assert np.array_equal(loaded.labels, dataset.labels)
  assert loaded.class_names == dataset.class_names

  buffer = io.StringIO()
  write_ts_file(dataset, buffer)
  assert buffer.getvalue() == (tmp_path / 'synthetic.ts').read_text()


def test_synthetic_defaults():
  dataset = generate_synthetic()
  assert len(dataset) == 20
  assert dataset.samples.shape == (20, 2, 100)
  assert dataset.class_counts().tolist() == [10, 10]
  assert pulse_window(100) == (60, 80)
  assert dataset.regions[:10] == [None] * 10
  assert dataset.regions[10:] == [Region(0, 60, 80)] * 10
  assert np.array_equal(generate_synthetic().samples, dataset.samples)
  assert not np.array_equal(generate_synthetic(seed=1).samples, dataset.samples)


def test_synthetic_without_noise():
  dataset = generate_synthetic(noise=0.0)
  positives = dataset.samples[dataset.labels == 1]
  assert np.all(positives[:, 0, 60:80] == 2.0)
  assert np.all(np.abs(dataset.samples[dataset.labels == 0]) <= 1.0)


def test_stratified_folds():
  dataset = generate_synthetic()
  folds = stratified_folds(dataset, 5, seed=0)
  for fold in range(5):
    assert np.bincount(dataset.labels[folds.indices(fold)], minlength=2).tolist() == [2, 2]
  assert sum(len(val) for _, val in folds) == 20
  assert not stratified_folds(dataset, 1).fold_of_sample.any()

  uneven = dataset.subset(list(range(20)) + [0])
  folds = stratified_folds(uneven, 5, seed=3)
  sizes = sorted(int(np.sum(folds.fold_of_sample[uneven.labels == 0] == f)) for f in range(5))
  assert sizes == [2, 2, 2, 2, 3]

  with pytest.raises(DatasetError) as excinfo:
    stratified_folds(dataset.subset(list(range(13))), 5)
  assert "'positive'" in str(excinfo.value)


def test_split_train_test():
  train, test = split_train_test(generate_synthetic(), seed=0)
  assert (len(train), len(test)) == (10, 10)
  assert train.class_counts().tolist() == [5, 5]
  assert (train.name, test.name) == ('synthetic_TRAIN', 'synthetic_TEST')
  assert sum(r is not None for r in test.regions) == 5


def test_dataset_validation():
  with pytest.raises(DatasetError):
    MTSDataset(np.zeros((2, 3)), [0, 1], ['a', 'b'])
  with pytest.raises(DatasetError):
    MTSDataset(np.zeros((2, 1, 3)), [0, 2], ['a', 'b'])
  with pytest.raises(DatasetError):
    MTSDataset(np.zeros((1, 1, 3)), [0], ['a', 'b'], regions=[Region(0, 2, 5)])
  dataset = MTSDataset(np.zeros((1, 2, 3)), [1], ['a', 'b'])
  assert dataset.as_input().shape == (1, 1, 3, 2)
  with pytest.raises(ValueError):
    dataset.samples[0, 0, 0] = 1.0


def test_onehot():
  assert to_onehot([0], 2).tolist() == [[1.0, 0.0]]
  assert to_onehot([1, 0], 2).tolist() == [[0.0, 1.0], [1.0, 0.0]]
  with pytest.raises(DatasetError):
    to_onehot([2], 2)


def test_regions_csv(tmp_path):
  train, test = split_train_test(generate_synthetic(), seed=0)
  path = tmp_path / 'regions.csv'
  with path.open('w') as fp:
    write_regions_csv(fp, train, test)
  regions = load_regions_csv(str(path))
  assert len(regions) == 10
  for dataset in (train, test):
    for index, region in enumerate(dataset.regions):
      assert regions.get((dataset.name, index)) == region

  path.write_text('dataset,index\nx,1\n')
  with pytest.raises(DatasetError):
    load_regions_csv(str(path))


class _Response:

  def __init__(self, content, status=200):
    self.content = content
    self.status = status

  def raise_for_status(self):
    if self.status >= 400:
      raise requests.HTTPError(f'{self.status} error')


class _Session:

  def __init__(self, response):
    self.response = response
    self.urls = []

  def get(self, url, timeout=None):
    self.urls.append(url)
    return self.response


def _archive(members):
  buffer = io.BytesIO()
  with zipfile.ZipFile(buffer, 'w') as archive:
    for name, data in members.items():
      archive.writestr(name, data)
  return buffer.getvalue()


def test_download_uea(tmp_path):
  content = _archive({'Toy/Toy_TRAIN.ts': b'train', 'Toy/Toy_TEST.ts': b'test', 'Toy/readme.txt': b''})
  session = _Session(_Response(content))
  assert download_uea('Toy', session=session) == {'Toy_TRAIN.ts': b'train', 'Toy_TEST.ts': b'test'}
  assert session.urls == ['http://timeseriesclassification.com/Downloads/Toy.zip']

  paths = fetch_uea('Toy', str(tmp_path / 'data'), session=session)
  assert open(paths['Toy_TEST.ts'], 'rb').read() == b'test'

  with pytest.raises(DatasetError):
    download_uea('Toy', session=_Session(_Response(b'not a zip')))
  with pytest.raises(DatasetError):
    download_uea('Toy', session=_Session(_Response(content, status=404)))
  with pytest.raises(DatasetError) as excinfo:
    download_uea('Toy', session=_Session(_Response(_archive({'Toy_TRAIN.ts': b''}))))
  assert 'Toy_TEST.ts' in str(excinfo.value)

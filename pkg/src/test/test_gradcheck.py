
import numpy as np
import pytest

from mtsexplain.tensor import BatchNorm, ClassifierHead, ConcatWidth, Conv1d, Conv1x1, Conv2d, Dense, \
  Dropout, Flatten, GlobalAveragePooling1d, Mode, Padding, ReLU, check_layer, relative_error

TOLERANCE = 1e-4


def _away_from_zero(rng, shape):
  return rng.uniform(0.05, 1.0, size=shape) * rng.choice([-1.0, 1.0], size=shape)


@pytest.mark.parametrize('seed', range(20))
def test_layer_gradients(seed):
  rng = np.random.default_rng(seed)
  x = rng.standard_normal((2, 1, 8, 2))
  features = rng.standard_normal((2, 3, 8, 2))
  cases = [
    (Conv2d(1, 3, 3, rng=rng), [x]),
    (Conv2d(3, 2, 4, stride_h=2, rng=rng), [features]),
    (Conv2d(1, 2, 3, padding=Padding.VALID, rng=rng), [x]),
    (Conv1d(1, 3, 2, 2, rng=rng), [x]),
    (Conv1d(3, 2, 2, 2, stride_h=2, rng=rng), [features]),
    (Conv1x1(3, rng=rng), [features]),
    (BatchNorm(3), [features]),
    (ConcatWidth(), [x, rng.standard_normal((2, 1, 8, 1))]),
    (GlobalAveragePooling1d(), [rng.standard_normal((2, 3, 8, 1))]),
    (Flatten(), [features]),
    (Dense(5, 4, l2=0.2, rng=rng), [rng.standard_normal((3, 5))]),
    (ClassifierHead(5, 2, rng=rng), [rng.standard_normal((3, 5))]),
    (Dropout(0.4), [features]),
    (ReLU(), [_away_from_zero(rng, (2, 3, 8, 2))]),
  ]
  for layer, inputs in cases:
    report = check_layer(layer, inputs, TOLERANCE, seed=seed)
    assert report.passed, f'{layer.describe()}: {report}'
    assert report.checked > 0


@pytest.mark.parametrize('seed', range(20))
def test_sample_statistics_batchnorm_gradients(seed):
  rng = np.random.default_rng(seed)
  layer = BatchNorm(3)
  layer.per_sample = True
  layer.gamma.value[...] = rng.uniform(0.5, 2.0, size=3)
  report = check_layer(layer, [rng.standard_normal((2, 3, 8, 2))], TOLERANCE, seed=seed, mode=Mode.INFERENCE)
  assert report.passed, str(report)
  assert report.checked > 0


def test_linear_layer_is_exact():
  rng = np.random.default_rng(0)
  report = check_layer(Dense(4, 3, rng=rng), [rng.standard_normal((2, 4))], 1e-7)
  assert report.passed, str(report)


def test_relative_error_floor():
  assert relative_error(1.0, 1.0) == 0.0
  assert relative_error(1e-9, 0.0) == pytest.approx(1e-6)
  assert relative_error(2.0, 1.0) == pytest.approx(0.5)

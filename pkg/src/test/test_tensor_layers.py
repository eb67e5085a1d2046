
import math

import numpy as np
import pytest

from mtsexplain.tensor import Adam, BatchNorm, ClassifierHead, ConcatWidth, Conv1d, Conv1x1, Conv2d, \
  Dropout, ForwardContext, GlobalAveragePooling1d, Mode, Padding, Parameter, ReLU, ShapeError, \
  cross_entropy_loss, output_length, pad_amounts, softmax

INFERENCE = ForwardContext(Mode.INFERENCE)


def test_output_length_and_padding():
  assert output_length(100, 20, 1, Padding.SAME) == 100
  assert output_length(100, 8, 2, Padding.SAME) == 50
  assert output_length(7, 3, 2, Padding.SAME) == 4
  assert output_length(10, 3, 1, Padding.VALID) == 8
  assert pad_amounts(3, 3, 1, Padding.SAME) == (1, 1)
  assert pad_amounts(4, 2, 1, Padding.SAME) == (0, 1)
  assert pad_amounts(10, 20, 1, Padding.SAME) == (9, 10)
  with pytest.raises(ShapeError) as excinfo:
    output_length(3, 5, 1, Padding.VALID)
  assert 'kernel exceeds input' in str(excinfo.value)


def test_conv2d_shapes_and_values():
  layer = Conv2d(1, 128, 20)
  y, _ = layer.forward(np.zeros((1, 1, 100, 2)), ctx=INFERENCE)
  assert y.shape == (1, 128, 100, 2)
  assert not y.any()

  layer = Conv2d(1, 1, 3)
  layer.weight.value[...] = 1.0
  y, _ = layer.forward(np.array([1.0, 2.0, 3.0]).reshape(1, 1, 3, 1), ctx=INFERENCE)
  assert y.ravel().tolist() == [3.0, 6.0, 5.0]

  with pytest.raises(ValueError):
    Conv2d(1, 0, 3)
  with pytest.raises(ShapeError):
    Conv2d(1, 2, 5, padding=Padding.VALID).forward(np.zeros((1, 1, 3, 1)), ctx=INFERENCE)


def test_conv2d_strided_matches_direct_sum():
  rng = np.random.default_rng(1)
  layer = Conv2d(2, 3, 4, stride_h=2, rng=rng)
  layer.bias.value[...] = rng.standard_normal(3)
  x = rng.standard_normal((2, 2, 9, 3))
  y, _ = layer.forward(x, ctx=INFERENCE)
  assert y.shape == (2, 3, 5, 3)

  before, _ = pad_amounts(9, 4, 2, Padding.SAME)
  xp = np.pad(x, ((0, 0), (0, 0), (before, 4), (0, 0)))
  for f in range(3):
    for t in range(5):
      window = xp[:, :, 2 * t:2 * t + 4, :]
      expected = np.einsum('bcuw,cu->bw', window, layer.weight.value[f]) + layer.bias.value[f]
      np.testing.assert_allclose(y[:, f, t, :], expected, rtol=1e-12)


def test_conv1d_spans_the_width():
  layer = Conv1d(1, 128, 20, 2)
  y, _ = layer.forward(np.zeros((1, 1, 100, 2)), ctx=INFERENCE)
  assert y.shape == (1, 128, 100, 1)

  identity = Conv1d(1, 1, 1, 1)
  identity.weight.value[...] = 1.0
  x = np.arange(5.0).reshape(1, 1, 5, 1)
  assert np.array_equal(identity.forward(x, ctx=INFERENCE)[0], x)

  layer = Conv1d(1, 1, 1, 2)
  layer.weight.value[...] = 1.0
  x = np.array([[1, 1], [2, 2], [3, 3], [4, 4]], dtype=float).reshape(1, 1, 4, 2)
  assert layer.forward(x, ctx=INFERENCE)[0].ravel().tolist() == [2.0, 4.0, 6.0, 8.0]

  with pytest.raises(ShapeError):
    layer.forward(np.zeros((1, 1, 4, 3)), ctx=INFERENCE)


def test_conv1x1():
  layer = Conv1x1(128)
  assert sum(p.size for p in layer.parameters()) == 129
  assert layer.forward(np.ones((1, 128, 100, 2)), ctx=INFERENCE)[0].shape == (1, 1, 100, 2)

  layer.weight.value[...] = 0.0
  assert not layer.forward(np.ones((1, 128, 4, 2)), ctx=INFERENCE)[0].any()

  layer = Conv1x1(2)
  layer.weight.value[...] = [1.0, -1.0]
  x = np.stack([np.full((3, 2), 3.0), np.full((3, 2), 5.0)])[None]
  y, _ = layer.forward(x, ctx=INFERENCE)
  assert np.all(y == -2.0)
  assert not ReLU().forward(y, ctx=INFERENCE)[0].any()


def test_batchnorm_modes():
  layer = BatchNorm(1)
  x = np.array([1.0, 3.0]).reshape(1, 1, 2, 1)
  y, _ = layer.forward(x, ctx=ForwardContext(Mode.CHECK))
  np.testing.assert_allclose(y.ravel(), [-1.0, 1.0], atol=1e-4)
  assert layer.running_mean.tolist() == [0.0]

  y, _ = layer.forward(x, ctx=ForwardContext(Mode.TRAIN))
  np.testing.assert_allclose(layer.running_mean, [0.02])
  np.testing.assert_allclose(layer.running_var, [0.99 + 0.01 * 1.0])

  # Running statistics start at mean 0 and variance 1.
  fresh = BatchNorm(1)
  y, _ = fresh.forward(x, ctx=INFERENCE)
  np.testing.assert_allclose(y.ravel(), x.ravel() / math.sqrt(1.0 + 1e-5))

  constant = BatchNorm(1)
  constant.beta.value[...] = 0.5
  y, _ = constant.forward(np.full((2, 1, 3, 1), 7.0), ctx=ForwardContext(Mode.CHECK))
  np.testing.assert_allclose(y, 0.5)

  affine = BatchNorm(1)
  affine.gamma.value[...] = 2.0
  affine.beta.value[...] = 1.0
  standardized = np.array([-1.0, 1.0]).reshape(1, 1, 2, 1)
  y, _ = affine.forward(standardized, ctx=ForwardContext(Mode.CHECK))
  np.testing.assert_allclose(y.ravel(), [-1.0, 3.0], atol=1e-4)


def test_batchnorm_sample_statistics():
  layer = BatchNorm(1)
  layer.running_mean[...] = 10.0
  x = np.array([1.0, 3.0, 10.0, 30.0]).reshape(2, 1, 2, 1)
  layer.per_sample = True
  assert layer.sample_stats.tolist() == [1.0]
  y, _ = layer.forward(x, ctx=INFERENCE)
  np.testing.assert_allclose(y.ravel(), [-1.0, 1.0, -1.0, 1.0], atol=1e-4)
  single, _ = layer.forward(x[:1], ctx=ForwardContext(Mode.CHECK))
  np.testing.assert_allclose(y[:1], single)
  assert layer.running_mean.tolist() == [10.0]

  layer.per_sample = False
  y, _ = layer.forward(x[:1], ctx=INFERENCE)
  assert y.ravel()[0] < -5.0


def test_relu_forward_and_backward():
  layer = ReLU()
  x = np.array([-1.0, 0.0, 2.0])
  y, cache = layer.forward(x, ctx=INFERENCE)
  assert y.tolist() == [0.0, 0.0, 2.0]
  assert layer.backward(np.ones(3), cache).inputs[0].tolist() == [0.0, 0.0, 1.0]
  assert np.array_equal(layer.forward(np.abs(x), ctx=INFERENCE)[0], np.abs(x))


def test_dropout():
  x = np.random.default_rng(0).standard_normal((2, 3, 8, 2))
  assert np.array_equal(Dropout(0.0).forward(x, ctx=ForwardContext(Mode.TRAIN, np.random.default_rng(0)))[0], x)
  assert np.array_equal(Dropout(0.4).forward(x, ctx=INFERENCE)[0], x)

  first = Dropout(0.5).forward(x, ctx=ForwardContext(Mode.TRAIN, np.random.default_rng(3)))[0]
  second = Dropout(0.5).forward(x, ctx=ForwardContext(Mode.TRAIN, np.random.default_rng(3)))[0]
  assert np.array_equal(first, second)
  kept = first != 0
  np.testing.assert_allclose(first[kept], 2.0 * x[kept])

  with pytest.raises(ValueError):
    Dropout(1.0)


def test_concat_and_pooling():
  y, _ = ConcatWidth().forward(np.zeros((1, 1, 100, 2)), np.ones((1, 1, 100, 1)), ctx=INFERENCE)
  assert y.shape == (1, 1, 100, 3)
  assert y[..., 2].all() and not y[..., :2].any()
  with pytest.raises(ShapeError):
    ConcatWidth().forward(np.zeros((1, 1, 10, 2)), np.zeros((1, 1, 9, 1)), ctx=INFERENCE)

  gap = GlobalAveragePooling1d()
  assert gap.forward(np.array([1.0, 2.0, 3.0, 4.0]).reshape(1, 1, 4, 1), ctx=INFERENCE)[0].tolist() == [[2.5]]
  assert gap.forward(np.full((1, 2, 5, 1), 3.0), ctx=INFERENCE)[0].tolist() == [[3.0, 3.0]]


def test_classifier_head_and_losses():
  head = ClassifierHead(128, 2)
  assert sum(p.size for p in head.parameters()) == 258
  with pytest.raises(ValueError):
    ClassifierHead(128, 1)

  np.testing.assert_allclose(softmax(np.zeros((1, 4))), 0.25)
  np.testing.assert_allclose(softmax(np.array([[1e3, 1e3]])), 0.5)

  onehot = np.array([[1.0, 0.0], [0.0, 1.0]])
  assert cross_entropy_loss(onehot, onehot) == 0.0
  assert cross_entropy_loss(np.full((1, 3), 1 / 3), np.array([[0.0, 1.0, 0.0]])) == pytest.approx(math.log(3))
  probs = np.array([[0.5, 0.5], [0.75, 0.25]])
  assert cross_entropy_loss(probs, onehot) == pytest.approx((math.log(2) + math.log(4)) / 2)
  assert cross_entropy_loss(probs, onehot) == pytest.approx(1.0397, abs=1e-4)
  with pytest.raises(ShapeError):
    cross_entropy_loss(probs, np.ones((2, 3)))


def test_adam_step():
  param = Parameter(np.zeros(1))
  param.grad[...] = 1.0
  Adam(lr=0.001).step([param])
  assert param.value[0] == pytest.approx(-0.001, rel=1e-6)
  assert param.grad[0] == 0.0

  still = Parameter(np.array([0.5, -0.5]))
  Adam().step([still])
  assert still.value.tolist() == [0.5, -0.5]

  def run():
    p = Parameter(np.array([1.0, 2.0]))
    optimizer = Adam(lr=0.01)
    for g in ([0.3, -0.1], [0.2, 0.4], [-1.0, 0.0]):
      p.grad[...] = g
      optimizer.step([p])
    return p.value

  assert np.array_equal(run(), run())


import functools

import numpy as np
import pytest

from mtsexplain.datasets import generate_synthetic, split_train_test
from mtsexplain.explain import IoUScope, explain, iou, threshold_mask
from mtsexplain.model import Architecture, ModelSpec, build_model, predict
from mtsexplain.training import TrainConfig, evaluate, train

pytestmark = pytest.mark.slow

SEEDS = range(5)


def _spec(architecture):
  return ModelSpec(architecture, 100, 2, 2, window_pct=0.2)


@functools.lru_cache(maxsize=None)
def _trained(architecture, seed):
  train_set, test_set = split_train_test(generate_synthetic(seed=seed), seed)
  model = build_model(_spec(architecture), seed)
  train(model, train_set, TrainConfig(epochs=100, batch_size=1, seed=seed))
  return model, test_set


def _time_iou(model, sample, region):
  return iou(threshold_mask(explain(model, sample, 1).time), region, IoUScope.TIME_ONLY)


def test_noise_free_training_set_is_learned():
  dataset = generate_synthetic(noise=0.0)
  model = build_model(_spec(Architecture.XCM), 0)
  train(model, dataset, TrainConfig(epochs=100, batch_size=1, seed=0))
  assert evaluate(model, dataset).accuracy == 1.0


def test_xcm_classifies_the_synthetic_test_set():
  accuracies = [evaluate(*_trained(Architecture.XCM, seed)).accuracy for seed in SEEDS]
  assert sum(accuracy == 1.0 for accuracy in accuracies) >= 4, accuracies


def test_xcm_time_map_locates_the_pulse():
  xcm, test_set = _trained(Architecture.XCM, 0)
  mtex, _ = _trained(Architecture.MTEX_CNN, 0)
  _, labels = predict(xcm, test_set.samples)
  hits = [i for i in range(len(test_set)) if test_set.labels[i] == 1 and labels[i] == 1]
  assert hits

  xcm_scores = [_time_iou(xcm, test_set.samples[i], test_set.regions[i]) for i in hits]
  mtex_scores = [_time_iou(mtex, test_set.samples[i], test_set.regions[i]) for i in hits]
  assert 0.45 <= np.mean(xcm_scores) <= 0.85, xcm_scores
  assert np.mean(mtex_scores) < np.mean(xcm_scores), (mtex_scores, xcm_scores)


import io

import numpy as np
import pytest

from mtsexplain.datasets import Region, generate_synthetic
from mtsexplain.explain import AttributionMap, ExplainError, IoUScope, MapKind, explain, gradcam_generic, \
  gradcam_time, gradcam_variables, heatmap_pixels, iou, mask_interval, normalize_map, tap_gradients, \
  threshold_mask, upsample_map, weighted_activation_map, write_attribution_csv, write_ppm
from mtsexplain.model import TIME_BLOCK, VARS_BLOCK, Architecture, ModelError, ModelSpec, build_model


def _model(architecture=Architecture.XCM, t=20, seed=0, classes=2):
  return build_model(ModelSpec(architecture, t, 2, classes, filters=4, window_pct=0.2), seed)


def _time_map(values):
  values = np.asarray(values, dtype=float)[:, None]
  return AttributionMap(MapKind.TIME, values, 0, normalized=True)


def test_weighted_activation_map():
  rng = np.random.default_rng(0)
  activations = rng.standard_normal((3, 5, 2))
  assert not weighted_activation_map(activations, np.zeros_like(activations)).any()
  single = activations[:1]
  assert np.array_equal(weighted_activation_map(single, np.ones_like(single)), np.maximum(single[0], 0.0))
  with pytest.raises(ExplainError):
    weighted_activation_map(activations, activations[:2])

  gradients = rng.standard_normal((3, 5, 2))
  for alpha in (0.5, 2.0, 40.0):
    np.testing.assert_allclose(weighted_activation_map(activations, alpha * gradients),
      alpha * weighted_activation_map(activations, gradients))


def test_scaled_class_scores_scale_the_raw_maps():
  model = _model()
  sample = generate_synthetic(1, 20, seed=0).samples[1]
  activations, gradients = tap_gradients(model, sample, 1, TIME_BLOCK)
  before = gradcam_time(model, sample, 1)

  classifier = model.graph.nodes['classifier']['layer']
  classifier.weight.value *= 2.0
  scaled_activations, scaled_gradients = tap_gradients(model, sample, 1, TIME_BLOCK)
  assert np.array_equal(scaled_activations, activations)
  np.testing.assert_allclose(scaled_gradients, 2.0 * gradients)
  np.testing.assert_allclose(gradcam_time(model, sample, 1).values, before.values)


def test_zero_gradient_gives_zero_maps():
  model = _model()
  classifier = model.graph.nodes['classifier']['layer']
  classifier.weight.value[...] = 0.0
  sample = generate_synthetic(1, 20, seed=0).samples[1]
  for class_c in (0, 1):
    assert not gradcam_variables(model, sample, class_c).values.any()
    assert not gradcam_time(model, sample, class_c).values.any()


def test_attribution_invariants():
  rng = np.random.default_rng(0)
  samples = generate_synthetic(5, 20, seed=1).samples
  for trial in range(100):
    architecture = [Architecture.XCM, Architecture.XCM_SEQ][trial % 2]
    model = _model(architecture, seed=trial % 7)
    sample = samples[rng.integers(len(samples))]
    class_c = int(rng.integers(2))

    variables = gradcam_variables(model, sample, class_c)
    time = gradcam_time(model, sample, class_c)
    for attribution in (variables, time):
      assert attribution.shape == (20, 2)
      assert np.all(attribution.values >= 0.0)
      assert attribution.values.max() in (0.0, 1.0)
      assert np.array_equal(normalize_map(attribution.values), attribution.values)
      rescaled = AttributionMap(attribution.kind, 3.5 * attribution.values, class_c).normalize()
      assert np.array_equal(threshold_mask(rescaled).cells, threshold_mask(attribution).cells)
    assert np.array_equal(time.values[:, 0], time.values[:, 1])


def test_tap_gradients_and_generic_path():
  model = _model()
  sample = generate_synthetic(1, 20, seed=0).samples[1]
  activations, gradients = tap_gradients(model, sample, 1, VARS_BLOCK)
  assert activations.shape == gradients.shape == (4, 20, 2)

  exact = gradcam_variables(model, sample, 1)
  generic = gradcam_generic(model, VARS_BLOCK, sample, 1)
  assert generic.kind == MapKind.VARIABLES
  assert np.array_equal(exact.values, generic.values)

  with pytest.raises(ModelError):
    gradcam_generic(model, 'missing', sample, 1)
  with pytest.raises(ExplainError):
    gradcam_variables(model, sample, 2)
  with pytest.raises(ExplainError):
    gradcam_time(model, sample[:, :10], 0)


def test_upsample_map():
  source = np.zeros((50, 1))
  source[20, 0] = 1.0
  out = upsample_map(source, (100, 2))
  assert out.shape == (100, 2)
  assert np.count_nonzero(out[:, 0]) >= 2
  assert np.array_equal(out[:, 0], out[:, 1])
  assert np.array_equal(upsample_map(out, (100, 2)), out)


def test_explain_mtex_cnn_is_upsampled():
  model = _model(Architecture.MTEX_CNN, t=24)
  sample = generate_synthetic(1, 24, seed=0).samples[0]
  result = explain(model, sample)
  assert result.upsampled
  assert result.variables.shape == result.time.shape == (24, 2)
  assert result.target_class == int(np.argmax(result.probabilities))
  with pytest.raises(ExplainError):
    gradcam_variables(model, sample, 0)


def test_explain_predicted_and_requested_class():
  model = _model()
  sample = generate_synthetic(1, 20, seed=0).samples[0]
  result = explain(model, sample)
  assert not result.upsampled
  assert result.target_class == int(np.argmax(result.probabilities))
  assert explain(model, sample, 1 - result.target_class).target_class == 1 - result.target_class
  np.testing.assert_allclose(result.probabilities.sum(), 1.0)


def test_threshold_mask():
  mask = threshold_mask(_time_map([0.59, 0.60, 0.61]))
  assert mask.cells[:, 0].tolist() == [False, False, True]
  assert not threshold_mask(_time_map(np.zeros(4))).cells.any()
  single = np.zeros((5, 2))
  single[3, 1] = 1.0
  assert np.argwhere(threshold_mask(AttributionMap(MapKind.VARIABLES, single, 0, True)).cells).tolist() == [[3, 1]]
  with pytest.raises(ExplainError):
    threshold_mask(AttributionMap(MapKind.TIME, np.ones((3, 1)), 0))


def test_iou():
  values = np.zeros(100)
  values[63:77] = 1.0
  mask = threshold_mask(_time_map(values))
  assert mask_interval(mask) == (63, 76)
  assert iou(mask, Region(0, 60, 80)) == pytest.approx(0.7)

  values = np.zeros(100)
  values[60:80] = 1.0
  assert iou(threshold_mask(_time_map(values)), Region(0, 60, 80)) == 1.0
  assert iou(threshold_mask(_time_map(values)), Region(0, 0, 10)) == 0.0
  assert mask_interval(threshold_mask(_time_map(np.zeros(100)))) is None

  cells = np.zeros((10, 2))
  cells[2:6, :] = 1.0
  mask = threshold_mask(AttributionMap(MapKind.VARIABLES, cells, 0, True))
  assert iou(mask, Region(0, 2, 6), IoUScope.TIME_ONLY) == 1.0
  assert iou(mask, Region(0, 2, 6), IoUScope.CELLS) == 0.5
  with pytest.raises(ExplainError):
    iou(mask, Region(2, 2, 6))


def test_export():
  values = np.array([[0.0, 1.0], [0.5, 0.25], [1.0, 0.0]])
  attribution = AttributionMap(MapKind.VARIABLES, values, 1, True)

  text = io.StringIO()
  write_attribution_csv(attribution, text)
  assert text.getvalue().splitlines() == ['timestamp,dim_0,dim_1', '0,0.0,1.0', '1,0.5,0.25', '2,1.0,0.0']

  pixels = heatmap_pixels(values)
  assert pixels.shape == (2, 3, 3)
  assert pixels[0, 0].tolist() == [255, 255, 255]
  assert pixels[0, 2].tolist() == [255, 0, 0]
  assert pixels[0, 1].tolist() == [255, 128, 128]

  image = io.BytesIO()
  write_ppm(attribution, image, cell_size=2)
  data = image.getvalue()
  assert data.startswith(b'P6\n6 4\n255\n')
  assert len(data) == len(b'P6\n6 4\n255\n') + 6 * 4 * 3

import json
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from seaswarm.genmodel import (
    Activation,
    FitDivergence,
    Layer,
    MlpModel,
    ResponseCurveDataset,
    ShapeParams,
    YieldVector,
    fit_mlp,
    load_default_datasets,
    load_default_models,
    loss_and_grads,
    mlp_forward,
    model_from_dict,
    model_to_dict,
    shape_from_yields,
    yields_from_factors,
)
from seaswarm.ecology import EcoConfig, factors_from_ei


def forward_oracle(model, x):
    """Layer-by-layer evaluation with explicit loops, independent of numpy
    matmul, used to check the production forward pass."""
    values = [(x - model.input_min) / (model.input_max - model.input_min)]
    for layer in model.layers:
        rows = layer.weights.tolist()
        bias = layer.bias.tolist()
        nxt = []
        for row, b in zip(rows, bias):
            acc = b
            for w, v in zip(row, values):
                acc += w * v
            if layer.activation is Activation.TANH:
                acc = math.tanh(acc)
            elif layer.activation is Activation.SIGMOID:
                acc = 1.0 / (1.0 + math.exp(-acc))
            nxt.append(acc)
        values = nxt
    return min(max(values[0], 0.0), 1.0)


def test_zero_weights_sigmoid_gives_half():
    model = MlpModel(
        factor="salinity",
        input_min=0.0,
        input_max=1.0,
        layers=(Layer(np.zeros((1, 1)), np.zeros(1), Activation.SIGMOID),),
    )
    for x in (0.0, 0.5, 123.0, -7.0):
        assert mlp_forward(model, x) == 0.5


def test_identity_passthrough():
    model = MlpModel(
        factor="salinity",
        input_min=0.0,
        input_max=1.0,
        layers=(Layer(np.ones((1, 1)), np.zeros(1), Activation.IDENTITY),),
    )
    assert mlp_forward(model, 0.3) == pytest.approx(0.3)


def test_non_finite_input_rejected():
    model = load_default_models()["water_temperature"]
    with pytest.raises(ValueError):
        mlp_forward(model, float("nan"))
    with pytest.raises(ValueError):
        mlp_forward(model, float("inf"))


def test_bundled_models_match_forward_oracle():
    models = load_default_models()
    probe = {
        "water_temperature": [4.0, 10.0, 16.0],
        "salinity": [20.0, 28.0, 35.0],
        "flow_velocity": [0.05, 0.3, 0.5],
        "irradiation": [20.0, 110.0, 180.0],
        "nutrient_concentration": [2.0, 10.0, 25.0],
    }
    for name, model in models.items():
        for x in probe[name]:
            assert mlp_forward(model, x) == pytest.approx(forward_oracle(model, x), abs=1e-9)


def test_output_always_clamped():
    big = MlpModel(
        factor="salinity",
        input_min=0.0,
        input_max=1.0,
        layers=(Layer(np.array([[100.0]]), np.array([50.0]), Activation.IDENTITY),),
    )
    assert mlp_forward(big, 5.0) == 1.0
    assert mlp_forward(big, -5.0) == 0.0


def test_model_invariants_enforced():
    with pytest.raises(ValueError):
        MlpModel("x", 1.0, 0.0, (Layer(np.zeros((1, 1)), np.zeros(1), Activation.TANH),))
    with pytest.raises(ValueError):  # final width != 1
        MlpModel("x", 0.0, 1.0, (Layer(np.zeros((2, 1)), np.zeros(2), Activation.TANH),))
    with pytest.raises(ValueError):  # incompatible chain
        MlpModel(
            "x",
            0.0,
            1.0,
            (
                Layer(np.zeros((3, 1)), np.zeros(3), Activation.TANH),
                Layer(np.zeros((1, 2)), np.zeros(1), Activation.SIGMOID),
            ),
        )


# --- gradients ---------------------------------------------------------------


def numeric_gradients(w1, b1, w2, b2, xs, ys, h=1e-5):
    params = [w1.copy(), b1.copy(), w2.copy(), b2.copy()]
    grads = []
    for index, p in enumerate(params):
        g = np.zeros_like(p)
        it = np.nditer(p, flags=["multi_index"])
        while not it.finished:
            idx = it.multi_index
            original = p[idx]
            p[idx] = original + h
            plus, _ = loss_and_grads(*params, xs, ys)
            p[idx] = original - h
            minus, _ = loss_and_grads(*params, xs, ys)
            p[idx] = original
            g[idx] = (plus - minus) / (2 * h)
            it.iternext()
        grads.append(g)
    return grads


def test_analytic_gradients_match_central_differences():
    rng = np.random.default_rng(7)
    for trial in range(20):
        hidden = int(rng.integers(2, 6))
        n = int(rng.integers(8, 16))
        w1 = rng.normal(size=(hidden, 1))
        b1 = rng.normal(size=hidden)
        w2 = rng.normal(size=(1, hidden))
        b2 = rng.normal(size=1)
        xs = np.sort(rng.uniform(0, 1, size=n))
        ys = rng.uniform(0, 1, size=n)
        _, analytic = loss_and_grads(w1, b1, w2, b2, xs, ys)
        numeric = numeric_gradients(w1, b1, w2, b2, xs, ys)
        for a, g in zip(analytic, numeric):
            denom = np.maximum(np.abs(a) + np.abs(g), 1e-8)
            rel = np.abs(a - g) / denom
            assert rel.max() < 1e-4, f"trial {trial}: rel err {rel.max()}"


# --- fitting -----------------------------------------------------------------


def test_fit_constant_dataset():
    data = ResponseCurveDataset("salinity", tuple((float(i), 0.5) for i in range(10)))
    _, mse = fit_mlp(data, hidden=8, epochs=6000, lr=0.5, seed=3)
    assert mse < 1e-3


def test_fit_linear_ramp():
    data = ResponseCurveDataset("salinity", tuple((i / 15, i / 15) for i in range(16)))
    _, mse = fit_mlp(data, hidden=8, epochs=5000, lr=0.5, seed=3)
    assert mse < 5e-3


def test_fit_deterministic():
    data = load_default_datasets()["salinity"]
    m1, mse1 = fit_mlp(data, hidden=8, epochs=500, lr=0.5, seed=11)
    m2, mse2 = fit_mlp(data, hidden=8, epochs=500, lr=0.5, seed=11)
    assert mse1 == mse2
    for a, b in zip(m1.layers, m2.layers):
        assert np.array_equal(a.weights, b.weights)
        assert np.array_equal(a.bias, b.bias)


def test_fit_divergence_reports_epoch(monkeypatch):
    # tanh/sigmoid keep the loss finite for any (dataset, lr), so the guard is
    # exercised through a stubbed loss that turns non-finite mid-run
    import seaswarm.genmodel as gm

    real = gm.loss_and_grads
    calls = {"n": 0}

    def flaky(*args):
        loss, grads = real(*args)
        calls["n"] += 1
        if calls["n"] >= 4:
            return float("nan"), grads
        return loss, grads

    monkeypatch.setattr(gm, "loss_and_grads", flaky)
    data = ResponseCurveDataset("salinity", tuple((float(i), float(i % 2)) for i in range(10)))
    with pytest.raises(FitDivergence) as info:
        fit_mlp(data, hidden=4, epochs=2000, lr=0.5, seed=0)
    assert info.value.epoch == 3


def test_dataset_validation():
    with pytest.raises(ValueError):
        ResponseCurveDataset("x", tuple((float(i), 0.5) for i in range(5)))  # too few
    with pytest.raises(ValueError):
        ResponseCurveDataset("x", ((0.0, 0.5),) * 9)  # not increasing
    with pytest.raises(ValueError):
        ResponseCurveDataset("x", tuple((float(i), 1.5) for i in range(9)))  # y out of range


# --- shape mapping -----------------------------------------------------------


def test_shape_mapping_table():
    assert shape_from_yields(YieldVector(1, 1, 1, 1, 1)) == ShapeParams(1, 1, 1, 1)
    partial = shape_from_yields(YieldVector(0, 0, 0, 0.2, 0.6))
    assert partial == ShapeParams(0, 0, 0, pytest.approx(0.4))
    mixed = shape_from_yields(YieldVector(0.3, 0.7, 0.5, 0.4, 0.4))
    assert mixed.blade_width == pytest.approx(0.7)
    assert mixed.blade_length == pytest.approx(0.5)
    assert mixed.blade_density == pytest.approx(0.3)
    assert mixed.stipe_length == pytest.approx(0.4)


@given(
    st.tuples(*[st.floats(min_value=0, max_value=1, allow_nan=False)] * 5),
    st.floats(min_value=0, max_value=1, allow_nan=False),
)
def test_shape_total_and_clamp_idempotent(values, w):
    shape = shape_from_yields(YieldVector(*values), stipe_irradiation_weight=w)
    for v in (shape.blade_width, shape.blade_length, shape.blade_density, shape.stipe_length):
        assert 0.0 <= v <= 1.0
    # for in-range yields the clamp is a no-op: output equals the raw mapping
    t, s, f, i, n = values
    assert shape.blade_width == s
    assert shape.blade_length == f
    assert shape.blade_density == t
    assert shape.stipe_length == min(1.0, max(0.0, w * i + (1 - w) * n))


def test_yields_from_factors_requires_all_models():
    models = load_default_models()
    factors = factors_from_ei(0.0, EcoConfig())
    y = yields_from_factors(models, factors)
    for value in (y.temperature_yield, y.salinity_yield, y.flow_yield, y.irradiation_yield, y.nutrient_yield):
        assert 0.0 <= value <= 1.0
    del models["salinity"]
    with pytest.raises(KeyError):
        yields_from_factors(models, factors)


def test_end_to_end_blade_width_monotone_in_salinity():
    # bundled salinity curve is monotone non-decreasing, so blade width must be
    model = load_default_models()["salinity"]
    xs = np.linspace(20.0, 35.0, 100)
    widths = [mlp_forward(model, x) for x in xs]
    for a, b in zip(widths, widths[1:]):
        assert b >= a - 1e-9


def test_model_json_round_trip():
    model = load_default_models()["irradiation"]
    data = model_to_dict(model)
    again = model_to_dict(model_from_dict(json.loads(json.dumps(data))))
    assert data == again

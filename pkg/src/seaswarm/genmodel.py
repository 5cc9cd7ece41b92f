"""Per-factor MLP inference and fitting.

Each of the five natural factors gets its own tiny network (1 input, one
tanh hidden layer, sigmoid output) fitted against a response curve of
(factor value, relative yield) samples. At play time the five yields are
collapsed onto the four shape parameters that price a seaweed.

Weights and curves live in versioned JSON files (see ``save_model`` /
``load_model``); the bundled defaults are regenerated deterministically by
the ``fit`` CLI subcommand.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .ecology import FACTOR_NAMES, NaturalFactors

SCHEMA_VERSION = 1


class Activation(enum.Enum):
    TANH = "tanh"
    IDENTITY = "identity"
    SIGMOID = "sigmoid"


class FitDivergence(RuntimeError):
    """Raised when training produces a non-finite loss."""

    def __init__(self, epoch: int):
        super().__init__(f"loss became non-finite at epoch {epoch}")
        self.epoch = epoch


def _apply(activation: Activation, z: np.ndarray) -> np.ndarray:
    if activation is Activation.TANH:
        return np.tanh(z)
    if activation is Activation.SIGMOID:
        return 1.0 / (1.0 + np.exp(-z))
    return z


@dataclass(frozen=True)
class Layer:
    weights: np.ndarray  # (out, in), row-major in JSON
    bias: np.ndarray  # (out,)
    activation: Activation


@dataclass(frozen=True)
class MlpModel:
    factor: str
    input_min: float
    input_max: float
    layers: tuple[Layer, ...]

    def __post_init__(self) -> None:
        if self.input_min >= self.input_max:
            raise ValueError("input_norm needs min < max")
        if not self.layers:
            raise ValueError("model needs at least one layer")
        width = 1
        for layer in self.layers:
            if layer.weights.ndim != 2 or layer.weights.shape[1] != width:
                raise ValueError("incompatible layer dimensions")
            if layer.bias.shape != (layer.weights.shape[0],):
                raise ValueError("bias shape mismatch")
            width = layer.weights.shape[0]
        if width != 1:
            raise ValueError("final layer must output a single value")


def mlp_forward(model: MlpModel, x: float) -> float:
    """Yield in [0, 1] for a factor value in physical units."""
    if not np.isfinite(x):
        raise ValueError(f"non-finite input {x!r}")
    h = np.array([(x - model.input_min) / (model.input_max - model.input_min)])
    for layer in model.layers:
        h = _apply(layer.activation, layer.weights @ h + layer.bias)
    return float(np.clip(h[0], 0.0, 1.0))


@dataclass(frozen=True)
class YieldVector:
    temperature_yield: float
    salinity_yield: float
    flow_yield: float
    irradiation_yield: float
    nutrient_yield: float


@dataclass(frozen=True)
class ShapeParams:
    blade_width: float
    blade_length: float
    blade_density: float
    stipe_length: float

    def as_dict(self) -> dict[str, float]:
        return {
            "blade_width": self.blade_width,
            "blade_length": self.blade_length,
            "blade_density": self.blade_density,
            "stipe_length": self.stipe_length,
        }


def shape_from_yields(y: YieldVector, stipe_irradiation_weight: float = 0.5) -> ShapeParams:
    """Collapse the five yields onto the four shape parameters.

    Width follows salinity, length follows flow, density follows temperature;
    the stipe blends the irradiation and nutrient yields (even split by
    default).
    """
    w = stipe_irradiation_weight
    clamp = lambda v: max(0.0, min(1.0, v))
    return ShapeParams(
        blade_width=clamp(y.salinity_yield),
        blade_length=clamp(y.flow_yield),
        blade_density=clamp(y.temperature_yield),
        stipe_length=clamp(w * y.irradiation_yield + (1.0 - w) * y.nutrient_yield),
    )


_YIELD_FIELD_BY_FACTOR = {
    "water_temperature": "temperature_yield",
    "salinity": "salinity_yield",
    "flow_velocity": "flow_yield",
    "irradiation": "irradiation_yield",
    "nutrient_concentration": "nutrient_yield",
}


def yields_from_factors(models: dict[str, MlpModel], f: NaturalFactors) -> YieldVector:
    """Run each factor through its own model."""
    missing = [name for name in FACTOR_NAMES if name not in models]
    if missing:
        raise KeyError(f"no model configured for {missing}")
    values = {
        _YIELD_FIELD_BY_FACTOR[name]: mlp_forward(models[name], getattr(f, name))
        for name in FACTOR_NAMES
    }
    return YieldVector(**values)


# --- fitting -----------------------------------------------------------------


@dataclass(frozen=True)
class ResponseCurveDataset:
    """(factor value, yield) samples for one factor, strictly increasing in x."""

    factor: str
    samples: tuple[tuple[float, float], ...]

    def __post_init__(self) -> None:
        if len(self.samples) < 8:
            raise ValueError("need at least 8 samples")
        xs = [x for x, _ in self.samples]
        ys = [y for _, y in self.samples]
        if any(not np.isfinite(v) for pair in self.samples for v in pair):
            raise ValueError("samples must be finite")
        if any(b <= a for a, b in zip(xs, xs[1:])):
            raise ValueError("factor values must be strictly increasing")
        if any(y < 0.0 or y > 1.0 for y in ys):
            raise ValueError("yields must lie in [0, 1]")

    @property
    def xs(self) -> np.ndarray:
        return np.array([x for x, _ in self.samples])

    @property
    def ys(self) -> np.ndarray:
        return np.array([y for _, y in self.samples])


def loss_and_grads(
    w1: np.ndarray,
    b1: np.ndarray,
    w2: np.ndarray,
    b2: np.ndarray,
    xs: np.ndarray,
    ys: np.ndarray,
) -> tuple[float, tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]]:
    """MSE and its analytic gradients for the tanh-hidden / sigmoid-out net.

    xs are already normalized. Shapes: w1 (H, 1), b1 (H,), w2 (1, H), b2 (1,).
    """
    n = xs.shape[0]
    z1 = w1 @ xs[np.newaxis, :] + b1[:, np.newaxis]  # (H, n)
    a1 = np.tanh(z1)
    z2 = w2 @ a1 + b2[:, np.newaxis]  # (1, n)
    out = 1.0 / (1.0 + np.exp(-z2))
    err = out - ys[np.newaxis, :]
    loss = float(np.mean(err**2))

    d_z2 = (2.0 / n) * err * out * (1.0 - out)  # (1, n)
    g_w2 = d_z2 @ a1.T
    g_b2 = d_z2.sum(axis=1)
    d_a1 = w2.T @ d_z2  # (H, n)
    d_z1 = d_a1 * (1.0 - a1**2)
    g_w1 = d_z1 @ xs[:, np.newaxis]
    g_b1 = d_z1.sum(axis=1)
    return loss, (g_w1, g_b1, g_w2, g_b2)


def fit_mlp(
    dataset: ResponseCurveDataset,
    hidden: int = 8,
    epochs: int = 6000,
    lr: float = 0.5,
    seed: int = 0,
) -> tuple[MlpModel, float]:
    """Full-batch gradient descent; deterministic for a given seed.

    Returns the fitted model and the final MSE. Raises FitDivergence if the
    loss ever turns non-finite.
    """
    if hidden < 1 or epochs < 1 or lr <= 0:
        raise ValueError("need hidden >= 1, epochs >= 1, lr > 0")
    xs_raw = dataset.xs
    ys = dataset.ys
    x_min, x_max = float(xs_raw[0]), float(xs_raw[-1])
    xs = (xs_raw - x_min) / (x_max - x_min)

    rng = np.random.default_rng(seed)
    w1 = rng.uniform(-1.0, 1.0, size=(hidden, 1))
    b1 = rng.uniform(-1.0, 1.0, size=hidden)
    w2 = rng.uniform(-1.0, 1.0, size=(1, hidden))
    b2 = np.zeros(1)

    loss = float("nan")
    for epoch in range(epochs):
        loss, (g_w1, g_b1, g_w2, g_b2) = loss_and_grads(w1, b1, w2, b2, xs, ys)
        if not np.isfinite(loss):
            raise FitDivergence(epoch)
        w1 -= lr * g_w1
        b1 -= lr * g_b1
        w2 -= lr * g_w2
        b2 -= lr * g_b2

    model = MlpModel(
        factor=dataset.factor,
        input_min=x_min,
        input_max=x_max,
        layers=(
            Layer(w1, b1, Activation.TANH),
            Layer(w2, b2, Activation.SIGMOID),
        ),
    )
    final_loss, _ = loss_and_grads(w1, b1, w2, b2, xs, ys)
    return model, final_loss


# --- JSON round trip ---------------------------------------------------------


def model_to_dict(model: MlpModel) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "factor": model.factor,
        "input_norm": [model.input_min, model.input_max],
        "layers": [
            {
                "weights": layer.weights.tolist(),
                "bias": layer.bias.tolist(),
                "activation": layer.activation.value,
            }
            for layer in model.layers
        ],
    }


def model_from_dict(data: dict) -> MlpModel:
    if data.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported model schema {data.get('schema_version')!r}")
    layers = tuple(
        Layer(
            np.array(entry["weights"], dtype=float),
            np.array(entry["bias"], dtype=float),
            Activation(entry["activation"]),
        )
        for entry in data["layers"]
    )
    lo, hi = data["input_norm"]
    return MlpModel(factor=data["factor"], input_min=float(lo), input_max=float(hi), layers=layers)


def save_model(model: MlpModel, path: Path) -> None:
    path.write_text(json.dumps(model_to_dict(model), indent=2, sort_keys=True) + "\n")


def load_model(path: Path) -> MlpModel:
    return model_from_dict(json.loads(path.read_text()))


def dataset_to_dict(dataset: ResponseCurveDataset) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "factor": dataset.factor,
        "samples": [[x, y] for x, y in dataset.samples],
    }


def dataset_from_dict(data: dict) -> ResponseCurveDataset:
    if data.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported dataset schema {data.get('schema_version')!r}")
    return ResponseCurveDataset(
        factor=data["factor"],
        samples=tuple((float(x), float(y)) for x, y in data["samples"]),
    )


def load_dataset(path: Path) -> ResponseCurveDataset:
    return dataset_from_dict(json.loads(path.read_text()))


def save_dataset(dataset: ResponseCurveDataset, path: Path) -> None:
    path.write_text(json.dumps(dataset_to_dict(dataset), indent=2, sort_keys=True) + "\n")


def default_data_dir() -> Path:
    return Path(__file__).parent / "data"


def load_default_models() -> dict[str, MlpModel]:
    """The bundled per-factor models, keyed by factor name."""
    models = {}
    for name in FACTOR_NAMES:
        models[name] = load_model(default_data_dir() / "models" / f"{name}.json")
    return models


def load_default_datasets() -> dict[str, ResponseCurveDataset]:
    datasets = {}
    for name in FACTOR_NAMES:
        datasets[name] = load_dataset(default_data_dir() / "curves" / f"{name}.json")
    return datasets

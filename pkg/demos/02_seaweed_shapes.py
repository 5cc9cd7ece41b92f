"""From ecology to morphology: factors -> per-factor models -> shape.

Sweeps the index over its range and shows how the four shape parameters
(and with them the selling price) respond, then draws a row of silhouettes.
"""

import numpy as np

from seaswarm.ecology import EcoConfig, factors_from_ei
from seaswarm.genmodel import load_default_models, shape_from_yields, yields_from_factors
from seaswarm.swarm import PriceWeights, SeaweedPlant, price_of, swarm_geometry

cfg = EcoConfig()
models = load_default_models()
weights = PriceWeights()

print(f"{'ei':>6} {'width':>6} {'length':>7} {'density':>8} {'stipe':>6} {'price':>6}")
eis = np.linspace(-cfg.a2, cfg.a1, 7)
shapes = []
for ei in eis:
    yields = yields_from_factors(models, factors_from_ei(float(ei), cfg))
    shape = shape_from_yields(yields)
    shapes.append(shape)
    plant = SeaweedPlant(0, shape, maturity=1.0, health=1.0, spawn_tick=0, disease_seed=0)
    print(
        f"{ei:>6.2f} {shape.blade_width:>6.3f} {shape.blade_length:>7.3f} "
        f"{shape.blade_density:>8.3f} {shape.stipe_length:>6.3f} {price_of(plant, weights):>6.3f}"
    )

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, axes = plt.subplots(1, len(shapes), figsize=(2 * len(shapes), 3.2), sharey=True)
    for ax, ei, shape in zip(axes, eis, shapes):
        plant = SeaweedPlant(int(ei * 100) + 50, shape, 1.0, 1.0, 0, 0)
        geom = swarm_geometry(plant)
        for seg in geom.segments:
            ax.plot([seg.x0, seg.x1], [seg.y0, seg.y1], color="darkgreen", lw=seg.thickness * 80)
        for poly in geom.polylines:
            xs = [x for x, _ in poly.points] + [poly.points[0][0]]
            ys = [y for _, y in poly.points] + [poly.points[0][1]]
            ax.fill(xs, ys, color="seagreen", alpha=0.6)
        ax.set_title(f"ei={ei:.2f}", fontsize=9)
        ax.set_xlim(-0.8, 0.8)
        ax.set_ylim(0, 1.4)
        ax.axis("off")
    fig.suptitle("seaweed silhouettes across the index range")
    fig.tight_layout()
    fig.savefig("demos/output/seaweed_shapes.png", dpi=120)
    print("\nwrote demos/output/seaweed_shapes.png")
except ImportError:
    print("\n(matplotlib not installed; skipping the plot)")

"""Disease patches from thresholded gradient noise.

Health drives both the step threshold ("edge") and the noise frequency:
sick seaweed gets large dense glowing patches, healthy seaweed small loose
ones. The mask is pure function of (edge, scale, seed), which is all a
client needs to redraw it pixel-identically.
"""

from seaswarm.noise import noise_grid
from seaswarm.pathology import disease_mask_fraction, mask_params_from_health

print(f"{'health':>6} {'edge':>6} {'scale':>6} {'patch fraction':>15}")
healths = [0.0, 0.25, 0.5, 0.75, 1.0]
for health in healths:
    params = mask_params_from_health(health, seed=7)
    fraction = disease_mask_fraction(params, resolution=64)
    print(f"{health:>6.2f} {params.edge:>6.2f} {params.noise_scale:>6.2f} {fraction:>15.3f}")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, axes = plt.subplots(1, len(healths), figsize=(3 * len(healths), 3.4))
    for ax, health in zip(axes, healths):
        params = mask_params_from_health(health, seed=7)
        grid = noise_grid(params.seed, params.noise_scale, 128)
        ax.imshow(grid > params.edge, cmap="viridis", interpolation="nearest")
        ax.set_title(f"health={health:.2f}", fontsize=9)
        ax.axis("off")
    fig.suptitle("glowing patch masks: sicker = larger and denser")
    fig.tight_layout()
    fig.savefig("demos/output/disease_masks.png", dpi=120)
    print("\nwrote demos/output/disease_masks.png")
except ImportError:
    print("\n(matplotlib not installed; skipping the plot)")

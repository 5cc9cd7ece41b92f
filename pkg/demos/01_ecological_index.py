"""Walk the ecological index through one full token cycle.

The index rises while the first insertions help the ecology, slides back to
zero as pressure builds, and dips negative during the crisis third of the
cycle. Factor values ride along with it.
"""

import numpy as np

from seaswarm.ecology import EcoConfig, Stage, ei_from_insertions, factors_from_ei, stage_of

cfg = EcoConfig()

print(f"cycle of {cfg.cycle} insertions: prosperity ends at {cfg.c1}, decline at {cfg.c2}\n")
print(f"{'c':>4} {'ei':>8} {'stage':<11} {'temp degC':>9} {'salinity':>9} {'nutrients':>9}")
for c in range(0, cfg.cycle, 8):
    ei = ei_from_insertions(c, cfg)
    f = factors_from_ei(ei, cfg)
    print(
        f"{c:>4} {ei:>8.3f} {stage_of(c, cfg).value:<11} "
        f"{f.water_temperature:>9.2f} {f.salinity:>9.2f} {f.nutrient_concentration:>9.2f}"
    )

# the three stages partition the cycle
counts = {stage: 0 for stage in Stage}
for c in range(cfg.cycle):
    counts[stage_of(c, cfg)] += 1
print("\nstage widths:", {s.value: n for s, n in counts.items()})

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    cs = np.linspace(0, cfg.cycle - 1e-9, 600)
    eis = [ei_from_insertions(c, cfg) for c in cs]
    fig, ax = plt.subplots(figsize=(7, 3))
    ax.plot(cs, eis, lw=2)
    ax.axhline(0, color="grey", lw=0.5)
    for boundary in (cfg.c1, cfg.c2):
        ax.axvline(boundary, color="grey", ls="--", lw=0.5)
    ax.set_xlabel("seaweed-target token insertions in cycle")
    ax.set_ylabel("ecological index")
    ax.set_title("one full cycle: prosperity / decline / crisis")
    fig.tight_layout()
    fig.savefig("demos/output/ecological_index.png", dpi=120)
    print("\nwrote demos/output/ecological_index.png")
except ImportError:
    print("\n(matplotlib not installed; skipping the plot)")

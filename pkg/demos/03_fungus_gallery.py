"""Generate a petri dish of procedural fungi.

Both body plans share the four-level structure (stipe, metulae, phialides,
conidia); every length, angle, count, and thickness comes from a per-species
interval, so each seed is a new individual of the same family.
"""

from seaswarm.fungigen import SPECIES_RULES, FungusSpecies, fungus_geometry, generate_fungus

for species in FungusSpecies:
    rules = SPECIES_RULES[species]
    print(f"{species.value}: metulae {rules.metula_count}, conidia/phialide {rules.conidia_count}")

print()
for seed in range(4):
    tree = generate_fungus(FungusSpecies.PENICILLIUM_LIKE, seed)
    total_phialides = sum(len(m.phialides) for m in tree.metulae)
    total_conidia = sum(len(p.conidia) for m in tree.metulae for p in m.phialides)
    print(
        f"seed {seed}: {len(tree.metulae)} metulae, {total_phialides} phialides, "
        f"{total_conidia} conidia, stipe {tree.stipe_length:.2f}"
    )

try:
    import math

    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, axes = plt.subplots(2, 5, figsize=(12, 5.5))
    for row, (species, tint) in enumerate(
        [(FungusSpecies.PENICILLIUM_LIKE, "steelblue"), (FungusSpecies.ASPERGILLUS_LIKE, "purple")]
    ):
        for col in range(5):
            ax = axes[row][col]
            geom = fungus_geometry(generate_fungus(species, 100 + col))
            for seg in geom.segments:
                ax.plot([seg.x0, seg.x1], [seg.y0, seg.y1], color=tint, lw=seg.thickness * 60)
            for circle in geom.circles:
                ax.add_patch(plt.Circle((circle.x, circle.y), circle.radius, color=tint, alpha=0.7))
            ax.set_xlim(-0.9, 0.9)
            ax.set_ylim(0, 1.8)
            ax.set_aspect("equal")
            ax.axis("off")
        axes[row][0].set_title(species.value, loc="left", fontsize=9)
    fig.suptitle("procedural fungi, five seeds per species")
    fig.tight_layout()
    fig.savefig("demos/output/fungus_gallery.png", dpi=120)
    print("\nwrote demos/output/fungus_gallery.png")
except ImportError:
    print("\n(matplotlib not installed; skipping the plot)")

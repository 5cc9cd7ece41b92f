"""Rule-based procedural fungus trees.

Two conidiophore body plans, one loosely after Penicillium (sparse brush)
and one after Aspergillus (dense head). Every scalar is drawn uniformly from
a per-species interval; structure is a fixed four-level parent-children
hierarchy: stipe -> metulae -> phialides -> conidia (spheres).

Draw order is part of the contract so a tree is reproducible from
(species, seed): stipe length, stipe thickness, metula count, metula fan
spread; then per metula in index order: length, thickness, phialide count,
phialide fan spread, then per phialide: length, thickness, conidia count,
then per conidium: radius, spacing. Child angles fan symmetrically about the
parent axis across the drawn spread.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import cos, radians, sin

import numpy as np

from .geometry import Circle, GeometryDescriptor, Segment

Interval = tuple[float, float]


class FungusSpecies(enum.Enum):
    PENICILLIUM_LIKE = "penicillium_like"
    ASPERGILLUS_LIKE = "aspergillus_like"


@dataclass(frozen=True)
class SpeciesRules:
    metula_count: tuple[int, int] = (2, 5)
    phialide_count: tuple[int, int] = (2, 5)
    conidia_count: tuple[int, int] = (3, 8)
    stipe_length: Interval = (0.6, 1.0)
    metula_length: Interval = (0.2, 0.4)
    phialide_length: Interval = (0.1, 0.2)
    branch_angle_spread: Interval = (20.0, 70.0)  # degrees
    stipe_thickness: Interval = (0.035, 0.06)
    metula_thickness: Interval = (0.02, 0.035)
    phialide_thickness: Interval = (0.012, 0.02)
    conidium_radius: Interval = (0.02, 0.04)
    conidium_spacing: Interval = (0.01, 0.03)

    def __post_init__(self) -> None:
        for name in self.__dataclass_fields__:
            lo, hi = getattr(self, name)
            if lo > hi:
                raise ValueError(f"{name} interval has min > max")


SPECIES_RULES: dict[FungusSpecies, SpeciesRules] = {
    FungusSpecies.PENICILLIUM_LIKE: SpeciesRules(),
    # Denser conidial head, shorter brush
    FungusSpecies.ASPERGILLUS_LIKE: SpeciesRules(
        conidia_count=(6, 12),
        phialide_length=(0.08, 0.15),
        branch_angle_spread=(40.0, 80.0),
    ),
}


@dataclass(frozen=True)
class Conidium:
    radius: float
    spacing: float  # gap to the previous element along the phialide axis


@dataclass(frozen=True)
class Phialide:
    length: float
    thickness: float
    angle: float  # degrees relative to the parent metula axis
    conidia: tuple[Conidium, ...]


@dataclass(frozen=True)
class Metula:
    length: float
    thickness: float
    angle: float  # degrees relative to the stipe axis
    phialides: tuple[Phialide, ...]


@dataclass(frozen=True)
class FungusTree:
    species: FungusSpecies
    seed: int
    stipe_length: float
    stipe_thickness: float
    metulae: tuple[Metula, ...]


def _fan_angles(n: int, spread: float) -> list[float]:
    if n == 1:
        return [0.0]
    return [-spread / 2.0 + spread * i / (n - 1) for i in range(n)]


def generate_fungus(species: FungusSpecies, seed: int) -> FungusTree:
    """Deterministic tree for (species, seed); see module docstring for order."""
    rules = SPECIES_RULES[species]
    rng = np.random.default_rng(seed)

    def draw(interval: Interval) -> float:
        return float(rng.uniform(interval[0], interval[1]))

    def draw_count(interval: tuple[int, int]) -> int:
        return int(rng.integers(interval[0], interval[1], endpoint=True))

    stipe_length = draw(rules.stipe_length)
    stipe_thickness = draw(rules.stipe_thickness)
    metula_count = draw_count(rules.metula_count)
    metula_spread = draw(rules.branch_angle_spread)

    metulae = []
    for m_angle in _fan_angles(metula_count, metula_spread):
        m_length = draw(rules.metula_length)
        m_thickness = draw(rules.metula_thickness)
        phialide_count = draw_count(rules.phialide_count)
        phialide_spread = draw(rules.branch_angle_spread)
        phialides = []
        for p_angle in _fan_angles(phialide_count, phialide_spread):
            p_length = draw(rules.phialide_length)
            p_thickness = draw(rules.phialide_thickness)
            conidia_count = draw_count(rules.conidia_count)
            conidia = tuple(
                Conidium(radius=draw(rules.conidium_radius), spacing=draw(rules.conidium_spacing))
                for _ in range(conidia_count)
            )
            phialides.append(
                Phialide(length=p_length, thickness=p_thickness, angle=p_angle, conidia=conidia)
            )
        metulae.append(
            Metula(length=m_length, thickness=m_thickness, angle=m_angle, phialides=tuple(phialides))
        )
    return FungusTree(
        species=species,
        seed=seed,
        stipe_length=stipe_length,
        stipe_thickness=stipe_thickness,
        metulae=tuple(metulae),
    )


def fungus_geometry(t: FungusTree) -> GeometryDescriptor:
    """Flatten the tree into petri-dish segments and conidium circles."""
    segments = []
    circles = []
    base = (0.0, 0.0)
    stipe_dir = 90.0  # straight up
    tip = _advance(base, stipe_dir, t.stipe_length)
    segments.append(Segment(*base, *tip, t.stipe_thickness))
    for metula in t.metulae:
        m_dir = stipe_dir + metula.angle
        m_tip = _advance(tip, m_dir, metula.length)
        segments.append(Segment(*tip, *m_tip, metula.thickness))
        for phialide in metula.phialides:
            p_dir = m_dir + phialide.angle
            p_tip = _advance(m_tip, p_dir, phialide.length)
            segments.append(Segment(*m_tip, *p_tip, phialide.thickness))
            pos = p_tip
            for conidium in phialide.conidia:
                pos = _advance(pos, p_dir, conidium.spacing + conidium.radius)
                circles.append(Circle(pos[0], pos[1], conidium.radius))
                pos = _advance(pos, p_dir, conidium.radius)
    return GeometryDescriptor(segments=tuple(segments), circles=tuple(circles))


def _advance(point: tuple[float, float], direction_deg: float, distance: float) -> tuple[float, float]:
    theta = radians(direction_deg)
    return (point[0] + distance * cos(theta), point[1] + distance * sin(theta))


# --- serialization -----------------------------------------------------------


def tree_to_dict(t: FungusTree) -> dict:
    return {
        "species": t.species.value,
        "seed": t.seed,
        "stipe_length": t.stipe_length,
        "stipe_thickness": t.stipe_thickness,
        "metulae": [
            {
                "length": m.length,
                "thickness": m.thickness,
                "angle": m.angle,
                "phialides": [
                    {
                        "length": p.length,
                        "thickness": p.thickness,
                        "angle": p.angle,
                        "conidia": [{"radius": c.radius, "spacing": c.spacing} for c in p.conidia],
                    }
                    for p in m.phialides
                ],
            }
            for m in t.metulae
        ],
    }


def tree_from_dict(data: dict) -> FungusTree:
    return FungusTree(
        species=FungusSpecies(data["species"]),
        seed=int(data["seed"]),
        stipe_length=float(data["stipe_length"]),
        stipe_thickness=float(data["stipe_thickness"]),
        metulae=tuple(
            Metula(
                length=float(m["length"]),
                thickness=float(m["thickness"]),
                angle=float(m["angle"]),
                phialides=tuple(
                    Phialide(
                        length=float(p["length"]),
                        thickness=float(p["thickness"]),
                        angle=float(p["angle"]),
                        conidia=tuple(
                            Conidium(radius=float(c["radius"]), spacing=float(c["spacing"]))
                            for c in p["conidia"]
                        ),
                    )
                    for p in m["phialides"]
                ),
            )
            for m in data["metulae"]
        ),
    )

"""Seaweed population lifecycle: growth, spawning, pricing, harvest, extinction.

The engine owns the single SwarmState and mutates it through these
functions; everything here is deterministic given its arguments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

from .genmodel import ShapeParams
from .geometry import GeometryDescriptor, Polyline, Segment
from .noise import xorshift32


@dataclass
class SeaweedPlant:
    id: int
    shape: ShapeParams
    maturity: float  # [0, 1] growth progress
    health: float  # [0, 1], broadcast from the pathology state
    spawn_tick: int
    disease_seed: int  # uint32, drives this plant's patch mask


@dataclass(frozen=True)
class PriceWeights:
    w_width: float = 0.25
    w_length: float = 0.25
    w_density: float = 0.25
    w_stipe: float = 0.25
    disease_penalty: float = 0.5  # k: price multiplier hits 1-k at health 0
    full_price: float = 2.0  # tokens for a perfect healthy plant

    def __post_init__(self) -> None:
        weights = (self.w_width, self.w_length, self.w_density, self.w_stipe)
        if any(w < 0 for w in weights):
            raise ValueError("weights must be non-negative")
        if abs(sum(weights) - 1.0) > 1e-9:
            raise ValueError("weights must sum to 1")
        if not 0.0 <= self.disease_penalty <= 1.0:
            raise ValueError("disease_penalty must lie in [0, 1]")
        if self.full_price <= 0:
            raise ValueError("full_price must be positive")


@dataclass(frozen=True)
class SwarmConfig:
    capacity: int = 60
    growth_rate: float = 0.01  # maturity/s at ei = 1
    spawn_rate: float = 0.05  # plants/s at ei = 1
    initial_population: int = 12
    initial_maturity: float = 1.0
    reseed_count: int = 3  # juveniles restored when a cycle restarts after extinction

    def __post_init__(self) -> None:
        if self.capacity < 1 or self.growth_rate <= 0 or self.spawn_rate < 0:
            raise ValueError("bad swarm config")
        if not 0 <= self.initial_population <= self.capacity:
            raise ValueError("initial_population must fit capacity")


@dataclass
class SwarmState:
    capacity: int
    plants: list[SeaweedPlant] = field(default_factory=list)
    spawn_accumulator: float = 0.0
    extinct: bool = False
    next_plant_id: int = 0

    def add_plant(
        self,
        shape: ShapeParams,
        maturity: float,
        health: float,
        tick: int,
        disease_seed: int,
    ) -> SeaweedPlant:
        plant = SeaweedPlant(
            id=self.next_plant_id,
            shape=shape,
            maturity=maturity,
            health=health,
            spawn_tick=tick,
            disease_seed=disease_seed,
        )
        self.next_plant_id += 1
        self.plants.append(plant)
        return plant


def growth_step(
    s: SwarmState,
    ei: float,
    dt: float,
    cfg: SwarmConfig,
    shape_source: Callable[[], ShapeParams],
    seed_source: Callable[[], int],
    health: float,
    tick: int,
) -> SwarmState:
    """Advance maturities and spawn new plants for one dt.

    Growth and spawning scale with max(ei, 0): at or below zero the swarm is
    frozen. New plants snapshot their shape from shape_source (the live
    factor-driven models) and inherit the swarm-wide health.
    """
    if dt <= 0:
        raise ValueError("dt must be positive")
    drive = max(ei, 0.0)
    if drive == 0.0:
        return s
    gain = cfg.growth_rate * drive * dt
    for plant in s.plants:
        plant.maturity = min(1.0, plant.maturity + gain)
    if s.extinct:
        return s  # an emptied-out swarm cannot reseed itself
    s.spawn_accumulator += cfg.spawn_rate * drive * dt
    while s.spawn_accumulator >= 1.0:
        s.spawn_accumulator -= 1.0
        if len(s.plants) < s.capacity:
            s.add_plant(shape_source(), 0.0, health, tick, seed_source())
    return s


def price_of(p: SeaweedPlant, w: PriceWeights) -> float:
    """Selling price in tokens: shape-weighted base, discounted by disease."""
    base = (
        w.w_width * p.shape.blade_width
        + w.w_length * p.shape.blade_length
        + w.w_density * p.shape.blade_density
        + w.w_stipe * p.shape.stipe_length
    )
    return w.full_price * base * (1.0 - w.disease_penalty * (1.0 - p.health))


def harvest(s: SwarmState, in_crisis: bool) -> SeaweedPlant | None:
    """Remove the oldest mature plant, if any.

    Oldest means earliest spawn_tick, ties broken by lowest id. A swarm found
    empty during the crisis stage is marked extinct: harvesting continues to
    cost tokens but yields nothing until the next cycle reseeds it.
    """
    best: SeaweedPlant | None = None
    for plant in s.plants:
        if plant.maturity >= 1.0:
            if best is None or (plant.spawn_tick, plant.id) < (best.spawn_tick, best.id):
                best = plant
    if best is not None:
        s.plants.remove(best)
    if in_crisis and not s.plants:
        s.extinct = True
    return best


_FROND_POINTS = 12


def swarm_geometry(p: SeaweedPlant) -> GeometryDescriptor:
    """2D silhouette: a stipe segment plus a fan of elliptical frond outlines.

    Deterministic for a given plant: fan jitter comes from xorshift32 seeded
    by the plant id, so redrawing the same plant yields the same scene.
    """
    stipe_len = 0.15 + 0.55 * p.shape.stipe_length
    stipe = Segment(0.0, 0.0, 0.0, stipe_len, 0.015 + 0.02 * p.shape.blade_width)

    n_fronds = int(math.floor(3.0 + 9.0 * p.shape.blade_density + 0.5))
    frond_len = (0.1 + 0.6 * p.shape.blade_length) * max(p.maturity, 0.05)
    frond_halfwidth = (0.02 + 0.09 * p.shape.blade_width) * max(p.maturity, 0.05)

    state = (p.id + 1) & 0xFFFFFFFF
    polylines = []
    for i in range(n_fronds):
        if n_fronds > 1:
            base = -55.0 + 110.0 * i / (n_fronds - 1)
        else:
            base = 0.0
        state = xorshift32(state)
        jitter = (state / 0xFFFFFFFF - 0.5) * 10.0
        theta = math.radians(90.0 + base + jitter)
        cx = math.cos(theta)
        cy = math.sin(theta)
        points = []
        for k in range(_FROND_POINTS):
            phi = 2.0 * math.pi * k / _FROND_POINTS
            # ellipse along the frond axis, anchored at the stipe top
            along = 0.5 * frond_len * (1.0 + math.cos(phi + math.pi))
            across = frond_halfwidth * math.sin(phi)
            x = cx * along - cy * across
            y = stipe_len + cy * along + cx * across
            points.append((x, y))
        polylines.append(Polyline(points=tuple(points), closed=True))
    return GeometryDescriptor(segments=(stipe,), polylines=tuple(polylines))

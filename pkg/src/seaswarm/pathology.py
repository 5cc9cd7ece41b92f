"""Oomycete infection, fungus-driven curing, and the disease patch mask.

One oomycete exists at a time; it infects the whole swarm through a shared
health scalar. Curing difficulty and respawn speed both track the ecological
index: a poor ecology needs more fungi and re-infects sooner. "Inversely
proportional" is realized as clamped linear interpolation over the index
range, since the index crosses zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .noise import noise_grid


@dataclass(frozen=True)
class PathologyConfig:
    fungi_min: int = 2  # fungi to cure at the top of the index range
    fungi_max: int = 10  # ... and at the bottom
    respawn_min: float = 15.0  # seconds until reinfection at the bottom
    respawn_max: float = 90.0  # ... and at the top
    infected_health: float = 0.3  # health the swarm drops to on infection
    ei_min: float = -0.5  # index range endpoints (engine wires the real ones)
    ei_max: float = 1.0

    def __post_init__(self) -> None:
        if not 1 <= self.fungi_min <= self.fungi_max:
            raise ValueError("need 1 <= fungi_min <= fungi_max")
        if not 0 < self.respawn_min <= self.respawn_max:
            raise ValueError("need 0 < respawn_min <= respawn_max")
        if not 0.0 <= self.infected_health <= 1.0:
            raise ValueError("infected_health must lie in [0, 1]")
        if self.ei_min >= self.ei_max:
            raise ValueError("need ei_min < ei_max")


def _unit_position(ei: float, cfg: PathologyConfig) -> float:
    t = (ei - cfg.ei_min) / (cfg.ei_max - cfg.ei_min)
    return max(0.0, min(1.0, t))


def required_fungi(ei: float, cfg: PathologyConfig) -> int:
    """Fungi needed to kill the oomycete; more when the ecology is worse."""
    t = _unit_position(ei, cfg)
    value = cfg.fungi_max + t * (cfg.fungi_min - cfg.fungi_max)
    return max(cfg.fungi_min, min(cfg.fungi_max, math.ceil(value)))


def respawn_delay(ei: float, cfg: PathologyConfig) -> float:
    """Seconds until the next oomycete; shorter when the ecology is worse."""
    t = _unit_position(ei, cfg)
    return cfg.respawn_min + t * (cfg.respawn_max - cfg.respawn_min)


@dataclass
class PathologyState:
    oomycete_present: bool
    required_fungi: int
    fungi_count: int = 0
    respawn_timer: float = 0.0
    swarm_health: float = 1.0

    @classmethod
    def initial(cls, ei: float, cfg: PathologyConfig) -> "PathologyState":
        # The exhibition opens mid-outbreak: there is something to cure.
        return cls(
            oomycete_present=True,
            required_fungi=required_fungi(ei, cfg),
            swarm_health=cfg.infected_health,
        )


def cultivate_fungus(st: PathologyState, ei: float, cfg: PathologyConfig) -> PathologyState:
    """One fungi-target token: grow a fungus, heal, maybe kill the oomycete.

    Difficulty tracks the live index, so the requirement is re-derived at
    every cultivation. Without an oomycete the fungus is decorative.
    """
    st.fungi_count += 1
    if not st.oomycete_present:
        return st
    st.required_fungi = required_fungi(ei, cfg)
    if st.fungi_count >= st.required_fungi:
        st.oomycete_present = False
        st.swarm_health = 1.0
        st.fungi_count = 0
        st.respawn_timer = respawn_delay(ei, cfg)
    else:
        st.swarm_health = min(1.0, st.fungi_count / st.required_fungi)
    return st


def pathology_tick(st: PathologyState, ei: float, dt: float, cfg: PathologyConfig) -> PathologyState:
    """Count down toward reinfection while no oomycete is present."""
    if dt <= 0:
        raise ValueError("dt must be positive")
    if st.oomycete_present:
        return st
    st.respawn_timer -= dt
    if st.respawn_timer <= 0.0:
        st.respawn_timer = 0.0
        st.oomycete_present = True
        st.required_fungi = required_fungi(ei, cfg)
        st.swarm_health = cfg.infected_health
        st.fungi_count = 0
    return st


# --- patch mask --------------------------------------------------------------


@dataclass(frozen=True)
class DiseaseMaskParams:
    edge: float  # step threshold: noise above it glows
    noise_scale: float  # lattice cells across the mask
    seed: int

    def __post_init__(self) -> None:
        if not 0.0 <= self.edge <= 1.0:
            raise ValueError("edge must lie in [0, 1]")
        if self.noise_scale <= 0:
            raise ValueError("noise_scale must be positive")


@dataclass(frozen=True)
class MaskMapping:
    edge_min: float = 0.35
    edge_max: float = 0.95
    scale_min: float = 2.0
    scale_max: float = 8.0


def mask_params_from_health(health: float, cfg: MaskMapping = MaskMapping(), seed: int = 0) -> DiseaseMaskParams:
    """Healthier seaweed: higher edge (fewer patches) and finer, looser noise."""
    if not 0.0 <= health <= 1.0:
        raise ValueError("health must lie in [0, 1]")
    return DiseaseMaskParams(
        edge=cfg.edge_min + (cfg.edge_max - cfg.edge_min) * health,
        noise_scale=cfg.scale_min + (cfg.scale_max - cfg.scale_min) * health,
        seed=seed,
    )


def disease_mask_fraction(params: DiseaseMaskParams, resolution: int = 64) -> float:
    """Fraction of mask cells whose noise value exceeds the edge threshold."""
    if resolution < 16:
        raise ValueError("resolution must be >= 16")
    grid = noise_grid(params.seed, params.noise_scale, resolution)
    return float((grid > params.edge).sum()) / float(resolution * resolution)

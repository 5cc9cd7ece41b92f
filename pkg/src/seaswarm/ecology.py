"""Ecological index curve, its three stages, and the derived natural factors.

The index rises with the first token insertions of a cycle, peaks, falls back
to zero, dips negative, and returns to zero at the cycle boundary. Only
seaweed-target insertions move it; the engine owns that rule.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field


class Stage(enum.Enum):
    PROSPERITY = "prosperity"
    DECLINE = "decline"
    CRISIS = "crisis"


@dataclass(frozen=True)
class FactorRange:
    minimum: float
    maximum: float
    baseline: float

    def __post_init__(self) -> None:
        if not self.minimum < self.maximum:
            raise ValueError("factor range needs min < max")
        if not (self.minimum <= self.baseline <= self.maximum):
            raise ValueError("factor baseline outside [min, max]")


# Literature-plausible physical spans; exhibition configuration, not facts.
DEFAULT_FACTOR_RANGES: dict[str, FactorRange] = {
    "water_temperature": FactorRange(4.0, 16.0, 10.0),
    "salinity": FactorRange(20.0, 35.0, 30.0),
    "flow_velocity": FactorRange(0.05, 0.5, 0.2),
    "irradiation": FactorRange(20.0, 180.0, 80.0),
    "nutrient_concentration": FactorRange(2.0, 25.0, 10.0),
}

FACTOR_NAMES = tuple(DEFAULT_FACTOR_RANGES)


@dataclass(frozen=True)
class EcoConfig:
    """Shape of the index curve plus the physical factor ranges."""

    a1: float = 1.0  # positive peak height
    a2: float = 0.5  # crisis trough depth
    c1: int = 40  # insertions ending prosperity
    c2: int = 80  # insertions ending decline
    cycle: int = 120  # insertions per full cycle
    factor_ranges: dict[str, FactorRange] = field(
        default_factory=lambda: dict(DEFAULT_FACTOR_RANGES)
    )

    def __post_init__(self) -> None:
        if not (0 < self.c1 < self.c2 < self.cycle):
            raise ValueError("need 0 < c1 < c2 < cycle")
        if self.a1 <= 0 or self.a2 <= 0:
            raise ValueError("amplitudes must be positive")
        if set(self.factor_ranges) != set(FACTOR_NAMES):
            raise ValueError(f"factor_ranges must cover exactly {FACTOR_NAMES}")


@dataclass(frozen=True)
class NaturalFactors:
    water_temperature: float  # degC
    salinity: float  # PSU
    flow_velocity: float  # m/s
    irradiation: float  # umol photons m^-2 s^-1
    nutrient_concentration: float  # umol/L

    def as_dict(self) -> dict[str, float]:
        return {name: getattr(self, name) for name in FACTOR_NAMES}


def ei_from_insertions(c: float, cfg: EcoConfig) -> float:
    """Index value at insertion count ``c`` within the cycle.

    Piecewise: a quarter-sine rise to a1 over [0, c1], a quarter-cosine fall
    back to 0 over (c1, c2], then a negative half-sine arch of depth a2 over
    (c2, cycle). Continuous at every joint. Accepts real c so the joints can
    be probed; the game only evaluates integers.
    """
    if not math.isfinite(c) or c < 0 or c >= cfg.cycle:
        raise ValueError(f"insertion count {c!r} outside [0, {cfg.cycle})")
    if c <= cfg.c1:
        return cfg.a1 * math.sin(math.pi * c / (2.0 * cfg.c1))
    if c <= cfg.c2:
        # quarter-cosine fall, written as its sine mirror so c2 lands on an exact 0
        return cfg.a1 * math.sin(math.pi * (cfg.c2 - c) / (2.0 * (cfg.c2 - cfg.c1)))
    return -cfg.a2 * math.sin(math.pi * (c - cfg.c2) / (cfg.cycle - cfg.c2))


def stage_of(c: float, cfg: EcoConfig) -> Stage:
    """Stage for insertion count ``c``; boundaries belong to the earlier stage."""
    if not math.isfinite(c) or c < 0 or c >= cfg.cycle:
        raise ValueError(f"insertion count {c!r} outside [0, {cfg.cycle})")
    if c <= cfg.c1:
        return Stage.PROSPERITY
    if c <= cfg.c2:
        return Stage.DECLINE
    return Stage.CRISIS


def factors_from_ei(ei: float, cfg: EcoConfig) -> NaturalFactors:
    """Map the index onto the five physical factors.

    u = ei/a1 clamped to [-1, 1]; positive u pulls each factor from its
    baseline toward its max, negative u toward its min. Monotone in ei and
    equal to the baseline at ei = 0.
    """
    u = max(-1.0, min(1.0, ei / cfg.a1))
    values: dict[str, float] = {}
    for name, rng in cfg.factor_ranges.items():
        span = (rng.maximum - rng.baseline) if u >= 0 else (rng.baseline - rng.minimum)
        values[name] = max(rng.minimum, min(rng.maximum, rng.baseline + span * u))
    return NaturalFactors(**values)


@dataclass
class EcoState:
    """Current point on the curve plus lifetime counters."""

    insertions_in_cycle: int = 0
    total_insertions: int = 0
    ei: float = 0.0
    stage: Stage = Stage.PROSPERITY
    factors: NaturalFactors = None  # type: ignore[assignment]

    @classmethod
    def initial(cls, cfg: EcoConfig) -> "EcoState":
        state = cls()
        state.refresh(cfg)
        return state

    def advance(self, cfg: EcoConfig) -> None:
        """Count one seaweed-target insertion and re-derive ei/stage/factors."""
        self.total_insertions += 1
        self.insertions_in_cycle = (self.insertions_in_cycle + 1) % cfg.cycle
        self.refresh(cfg)

    def refresh(self, cfg: EcoConfig) -> None:
        self.ei = ei_from_insertions(self.insertions_in_cycle, cfg)
        self.stage = stage_of(self.insertions_in_cycle, cfg)
        self.factors = factors_from_ei(self.ei, cfg)

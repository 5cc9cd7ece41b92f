"""Deterministic fixed-timestep world loop.

All mutation funnels through ``Engine.apply_event`` and ``Engine.tick``;
given the same config and event trace the final state is bit-identical,
which the canonical JSON serialization (and its hash) makes checkable.

Randomness is split into per-purpose streams derived from the master seed,
so seaweed disease seeds and fungus trees cannot perturb each other.
"""

from __future__ import annotations

import dataclasses
import enum
import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .ecology import FACTOR_NAMES, EcoConfig, EcoState, FactorRange, Stage
from .economy import SettlementConfig, TokenLedger, record_harvest, settle
from .fungigen import FungusSpecies, FungusTree, generate_fungus, tree_to_dict
from .genmodel import (
    MlpModel,
    ShapeParams,
    load_default_models,
    load_model,
    shape_from_yields,
    yields_from_factors,
)
from .pathology import MaskMapping, PathologyConfig, PathologyState, cultivate_fungus, pathology_tick
from .swarm import PriceWeights, SwarmConfig, SwarmState, growth_step, harvest, price_of


class SequencingError(ValueError):
    """An event arrived for a tick the engine is no longer at."""


class TraceError(ValueError):
    """A trace violates the format or ordering contract."""


class Target(enum.Enum):
    SEAWEED = "seaweed"
    FUNGI = "fungi"


class EventKind(enum.Enum):
    INSERT_TOKEN = "insert_token"
    SWITCH_TARGET = "switch_target"
    RESET = "reset"


@dataclass(frozen=True)
class SimEvent:
    tick: int
    kind: EventKind
    target: Target | None = None  # None on insert_token: route via current_target

    def __post_init__(self) -> None:
        if self.tick < 0:
            raise ValueError("event tick must be >= 0")
        if self.kind is not EventKind.INSERT_TOKEN and self.target is not None:
            raise ValueError(f"{self.kind.value} takes no target")

    def to_dict(self) -> dict:
        out: dict = {"tick": self.tick, "kind": self.kind.value}
        if self.target is not None:
            out["target"] = self.target.value
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "SimEvent":
        try:
            kind = EventKind(data["kind"])
        except (KeyError, ValueError) as exc:
            raise TraceError(f"bad event kind in {data!r}") from exc
        target = None
        if "target" in data and data["target"] is not None:
            try:
                target = Target(data["target"])
            except ValueError as exc:
                raise TraceError(f"bad target in {data!r}") from exc
        return cls(tick=int(data.get("tick", 0)), kind=kind, target=target)


# seed-stream purposes
_PURPOSE_DISEASE = 1
_PURPOSE_FUNGUS = 2


def derive_seed(master_seed: int, purpose: int, index: int) -> int:
    """Stable uint32 drawn from the (master, purpose, index) stream."""
    seq = np.random.SeedSequence((master_seed, purpose, index))
    return int(seq.generate_state(1, dtype=np.uint32)[0])


@dataclass(frozen=True)
class EngineConfig:
    dt: float = 0.1
    master_seed: int = 42
    snapshot_every: int = 10  # ticks between replay snapshots
    eco: EcoConfig = field(default_factory=EcoConfig)
    swarm: SwarmConfig = field(default_factory=SwarmConfig)
    price: PriceWeights = field(default_factory=PriceWeights)
    settlement: SettlementConfig = field(default_factory=SettlementConfig)
    pathology: PathologyConfig = field(default_factory=PathologyConfig)
    mask: MaskMapping = field(default_factory=MaskMapping)
    model_dir: str | None = None  # None: bundled default weights

    def __post_init__(self) -> None:
        if self.dt <= 0:
            raise ValueError("dt must be positive")
        if self.snapshot_every < 1:
            raise ValueError("snapshot_every must be >= 1")
        ratio = self.settlement.period / self.dt
        if abs(ratio - round(ratio)) > 1e-9:
            raise ValueError("settlement period must be an integer multiple of dt")
        # The curing/respawn maps span exactly the index range the curve can produce.
        object.__setattr__(
            self,
            "pathology",
            dataclasses.replace(self.pathology, ei_min=-self.eco.a2, ei_max=self.eco.a1),
        )

    @property
    def settlement_ticks(self) -> int:
        return round(self.settlement.period / self.dt)

    def to_dict(self) -> dict:
        return {
            "dt": self.dt,
            "master_seed": self.master_seed,
            "snapshot_every": self.snapshot_every,
            "model_dir": self.model_dir,
            "eco": {
                "a1": self.eco.a1,
                "a2": self.eco.a2,
                "c1": self.eco.c1,
                "c2": self.eco.c2,
                "cycle": self.eco.cycle,
                "factor_ranges": {
                    name: [r.minimum, r.maximum, r.baseline]
                    for name, r in self.eco.factor_ranges.items()
                },
            },
            "swarm": {
                "capacity": self.swarm.capacity,
                "growth_rate": self.swarm.growth_rate,
                "spawn_rate": self.swarm.spawn_rate,
                "initial_population": self.swarm.initial_population,
                "initial_maturity": self.swarm.initial_maturity,
                "reseed_count": self.swarm.reseed_count,
            },
            "price": {
                "w_width": self.price.w_width,
                "w_length": self.price.w_length,
                "w_density": self.price.w_density,
                "w_stipe": self.price.w_stipe,
                "disease_penalty": self.price.disease_penalty,
                "full_price": self.price.full_price,
            },
            "settlement": {"period": self.settlement.period},
            "pathology": {
                "fungi_min": self.pathology.fungi_min,
                "fungi_max": self.pathology.fungi_max,
                "respawn_min": self.pathology.respawn_min,
                "respawn_max": self.pathology.respawn_max,
                "infected_health": self.pathology.infected_health,
            },
            "mask": {
                "edge_min": self.mask.edge_min,
                "edge_max": self.mask.edge_max,
                "scale_min": self.mask.scale_min,
                "scale_max": self.mask.scale_max,
            },
        }

    @classmethod
    def from_dict(cls, data: dict) -> "EngineConfig":
        kwargs: dict = {}
        for key in ("dt", "master_seed", "snapshot_every", "model_dir"):
            if key in data:
                kwargs[key] = data[key]
        if "eco" in data:
            eco = dict(data["eco"])
            ranges = eco.pop("factor_ranges", None)
            if ranges is not None:
                eco["factor_ranges"] = {
                    name: FactorRange(*values) for name, values in ranges.items()
                }
            kwargs["eco"] = EcoConfig(**eco)
        if "swarm" in data:
            kwargs["swarm"] = SwarmConfig(**data["swarm"])
        if "price" in data:
            kwargs["price"] = PriceWeights(**data["price"])
        if "settlement" in data:
            kwargs["settlement"] = SettlementConfig(**data["settlement"])
        if "pathology" in data:
            kwargs["pathology"] = PathologyConfig(**data["pathology"])
        if "mask" in data:
            kwargs["mask"] = MaskMapping(**data["mask"])
        return cls(**kwargs)

    @classmethod
    def from_file(cls, path: Path) -> "EngineConfig":
        return cls.from_dict(json.loads(Path(path).read_text()))


@dataclass
class SimState:
    tick: int
    sim_time: float
    eco: EcoState
    swarm: SwarmState
    pathology: PathologyState
    ledger: TokenLedger
    current_target: Target
    fungi_gallery: list[FungusTree]
    rng_seed: int


class Engine:
    """Owns the world state; the sole writer of it."""

    def __init__(self, config: EngineConfig, models: dict[str, MlpModel] | None = None):
        self.config = config
        if models is not None:
            self.models = models
        elif config.model_dir is not None:
            self.models = {
                name: load_model(Path(config.model_dir) / f"{name}.json") for name in FACTOR_NAMES
            }
        else:
            self.models = load_default_models()
        self.state = self._initial_state()

    # -- construction ---------------------------------------------------------

    def _shape_now(self) -> ShapeParams:
        return shape_from_yields(yields_from_factors(self.models, self.state.eco.factors))

    def _next_disease_seed(self) -> int:
        return derive_seed(
            self.config.master_seed, _PURPOSE_DISEASE, self.state.swarm.next_plant_id
        )

    def _initial_state(self) -> SimState:
        cfg = self.config
        eco = EcoState.initial(cfg.eco)
        pathology = PathologyState.initial(eco.ei, cfg.pathology)
        swarm = SwarmState(capacity=cfg.swarm.capacity)
        shape = shape_from_yields(yields_from_factors(self.models, eco.factors))
        for _ in range(cfg.swarm.initial_population):
            swarm.add_plant(
                shape,
                cfg.swarm.initial_maturity,
                pathology.swarm_health,
                tick=0,
                disease_seed=derive_seed(cfg.master_seed, _PURPOSE_DISEASE, swarm.next_plant_id),
            )
        return SimState(
            tick=0,
            sim_time=0.0,
            eco=eco,
            swarm=swarm,
            pathology=pathology,
            ledger=TokenLedger(),
            current_target=Target.SEAWEED,
            fungi_gallery=[],
            rng_seed=cfg.master_seed,
        )

    # -- event application ----------------------------------------------------

    def apply_event(self, e: SimEvent) -> None:
        state = self.state
        if e.tick != state.tick:
            raise SequencingError(f"event for tick {e.tick} arrived at tick {state.tick}")
        if e.kind is EventKind.SWITCH_TARGET:
            state.current_target = (
                Target.FUNGI if state.current_target is Target.SEAWEED else Target.SEAWEED
            )
            return
        if e.kind is EventKind.RESET:
            self.state = self._initial_state()
            return
        target = e.target if e.target is not None else state.current_target
        if target is Target.SEAWEED:
            self._insert_seaweed_token()
        else:
            self._insert_fungi_token()

    def _insert_seaweed_token(self) -> None:
        state = self.state
        cfg = self.config
        state.ledger.inserted_seaweed += 1
        state.eco.advance(cfg.eco)
        if state.swarm.extinct and state.eco.ei > 0:
            # New cycle under way: restock a few juveniles so the world can recover.
            state.swarm.extinct = False
            for _ in range(cfg.swarm.reseed_count):
                if len(state.swarm.plants) < state.swarm.capacity:
                    state.swarm.add_plant(
                        self._shape_now(),
                        0.0,
                        state.pathology.swarm_health,
                        tick=state.tick,
                        disease_seed=self._next_disease_seed(),
                    )
        harvested = harvest(state.swarm, in_crisis=state.eco.stage is Stage.CRISIS)
        if harvested is not None:
            record_harvest(state.ledger, price_of(harvested, cfg.price))

    def _insert_fungi_token(self) -> None:
        state = self.state
        index = state.ledger.inserted_fungi
        state.ledger.inserted_fungi += 1
        species = (
            FungusSpecies.PENICILLIUM_LIKE if index % 2 == 0 else FungusSpecies.ASPERGILLUS_LIKE
        )
        seed = derive_seed(self.config.master_seed, _PURPOSE_FUNGUS, index)
        state.fungi_gallery.append(generate_fungus(species, seed))
        was_present = state.pathology.oomycete_present
        cultivate_fungus(state.pathology, state.eco.ei, self.config.pathology)
        if was_present and not state.pathology.oomycete_present:
            state.fungi_gallery.clear()  # the brood is spent killing the oomycete

    # -- time -----------------------------------------------------------------

    def tick(self) -> None:
        state = self.state
        cfg = self.config
        state.tick += 1
        state.sim_time = state.tick * cfg.dt
        growth_step(
            state.swarm,
            state.eco.ei,
            cfg.dt,
            cfg.swarm,
            shape_source=self._shape_now,
            seed_source=self._next_disease_seed,
            health=state.pathology.swarm_health,
            tick=state.tick,
        )
        was_absent = not state.pathology.oomycete_present
        pathology_tick(state.pathology, state.eco.ei, cfg.dt, cfg.pathology)
        if was_absent and state.pathology.oomycete_present:
            state.fungi_gallery.clear()  # reinfection wipes the cultivated brood
        for plant in state.swarm.plants:
            plant.health = state.pathology.swarm_health
        if state.tick % cfg.settlement_ticks == 0:
            settle(state.ledger)

    def run(self, ticks: int, events: list[SimEvent] | None = None) -> None:
        """Advance ``ticks`` steps, applying queued events at their ticks.

        Events scheduled for the final tick are applied after the last step,
        so a run of N ticks covers events up to and including tick N.
        """
        pending = sorted(events or [], key=lambda e: e.tick) if events else []
        idx = 0
        for _ in range(ticks):
            while idx < len(pending) and pending[idx].tick == self.state.tick:
                self.apply_event(pending[idx])
                idx += 1
            self.tick()
        while idx < len(pending) and pending[idx].tick == self.state.tick:
            self.apply_event(pending[idx])
            idx += 1


# --- canonical serialization ---------------------------------------------------


def state_to_dict(state: SimState) -> dict:
    return {
        "tick": state.tick,
        "sim_time": state.sim_time,
        "rng_seed": state.rng_seed,
        "current_target": state.current_target.value,
        "eco": {
            "insertions_in_cycle": state.eco.insertions_in_cycle,
            "total_insertions": state.eco.total_insertions,
            "ei": state.eco.ei,
            "stage": state.eco.stage.value,
            "factors": state.eco.factors.as_dict(),
        },
        "swarm": {
            "capacity": state.swarm.capacity,
            "spawn_accumulator": state.swarm.spawn_accumulator,
            "extinct": state.swarm.extinct,
            "next_plant_id": state.swarm.next_plant_id,
            "plants": [
                {
                    "id": p.id,
                    "shape": p.shape.as_dict(),
                    "maturity": p.maturity,
                    "health": p.health,
                    "spawn_tick": p.spawn_tick,
                    "disease_seed": p.disease_seed,
                }
                for p in state.swarm.plants
            ],
        },
        "pathology": {
            "oomycete_present": state.pathology.oomycete_present,
            "required_fungi": state.pathology.required_fungi,
            "fungi_count": state.pathology.fungi_count,
            "respawn_timer": state.pathology.respawn_timer,
            "swarm_health": state.pathology.swarm_health,
        },
        "ledger": {
            "inserted_seaweed": state.ledger.inserted_seaweed,
            "inserted_fungi": state.ledger.inserted_fungi,
            "dispensed": state.ledger.dispensed,
            "unsettled_pool": list(state.ledger.unsettled_pool),
            "settlement_carry": state.ledger.settlement_carry,
        },
        "fungi_gallery": [tree_to_dict(t) for t in state.fungi_gallery],
    }


def state_hash(state: SimState) -> str:
    payload = json.dumps(state_to_dict(state), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(payload.encode()).hexdigest()


# --- trace I/O ------------------------------------------------------------------


def load_trace(path: Path) -> list[SimEvent]:
    events = []
    for line_no, line in enumerate(Path(path).read_text().splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        try:
            events.append(SimEvent.from_dict(json.loads(line)))
        except json.JSONDecodeError as exc:
            raise TraceError(f"line {line_no}: invalid JSON") from exc
    return events


def save_trace(events: list[SimEvent], path: Path) -> None:
    Path(path).write_text("".join(json.dumps(e.to_dict()) + "\n" for e in events))


def run_replay(
    config: EngineConfig,
    trace: list[SimEvent],
    ticks: int,
    snapshot_every: int | None = None,
) -> tuple[SimState, list[dict]]:
    """Replay a trace for a fixed number of ticks, collecting state snapshots."""
    for earlier, later in zip(trace, trace[1:]):
        if later.tick < earlier.tick:
            raise TraceError("trace events must be sorted by tick")
    if trace and ticks < max(e.tick for e in trace):
        raise TraceError("ticks must cover the last event")
    every = snapshot_every if snapshot_every is not None else config.snapshot_every
    engine = Engine(config)
    snapshots = [state_to_dict(engine.state)]
    idx = 0
    for _ in range(ticks):
        while idx < len(trace) and trace[idx].tick == engine.state.tick:
            engine.apply_event(trace[idx])
            idx += 1
        engine.tick()
        if engine.state.tick % every == 0:
            snapshots.append(state_to_dict(engine.state))
    while idx < len(trace) and trace[idx].tick == engine.state.tick:
        engine.apply_event(trace[idx])
        idx += 1
    return engine.state, snapshots

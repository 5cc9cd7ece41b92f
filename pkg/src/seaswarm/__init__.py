"""Token-driven digital seaweed ecosystem.

A deterministic fixed-timestep world in which game-token insertions harvest
procedurally shaped seaweed or cultivate curative fungi, an ecological index
couples player pressure to growth, disease, and pricing, and harvested value
is periodically settled back as whole tokens.
"""

from .ecology import EcoConfig, EcoState, NaturalFactors, Stage, ei_from_insertions, factors_from_ei, stage_of
from .economy import SettlementConfig, TokenLedger, record_harvest, settle
from .engine import Engine, EngineConfig, EventKind, SimEvent, SimState, Target, run_replay, state_hash
from .fungigen import FungusSpecies, FungusTree, fungus_geometry, generate_fungus
from .genmodel import MlpModel, ResponseCurveDataset, ShapeParams, YieldVector, fit_mlp, mlp_forward, shape_from_yields, yields_from_factors
from .pathology import DiseaseMaskParams, PathologyConfig, PathologyState, cultivate_fungus, disease_mask_fraction, mask_params_from_health, pathology_tick, required_fungi, respawn_delay
from .swarm import PriceWeights, SeaweedPlant, SwarmConfig, SwarmState, growth_step, harvest, price_of, swarm_geometry

__version__ = "0.1.0"

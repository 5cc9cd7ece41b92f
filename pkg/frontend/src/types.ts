// Wire types for the /state and /stream snapshot schema (schema_version 1).

export interface ShapeParams {
  blade_width: number;
  blade_length: number;
  blade_density: number;
  stipe_length: number;
}

export interface MaskParams {
  edge: number;
  noise_scale: number;
  seed: number;
}

export interface Geometry {
  segments: [number, number, number, number, number][]; // x0 y0 x1 y1 thickness
  polylines: { points: [number, number][]; closed: boolean }[];
  circles: [number, number, number][]; // x y radius
}

export interface PlantSnapshot {
  id: number;
  shape: ShapeParams;
  maturity: number;
  health: number;
  mask: MaskParams;
  geometry: Geometry;
}

export interface FungusSnapshot {
  tree: { species: string; seed: number };
  geometry: Geometry;
}

export interface LedgerSnapshot {
  inserted_seaweed: number;
  inserted_fungi: number;
  dispensed: number;
  settlement_carry: number;
}

export interface OomyceteSnapshot {
  present: boolean;
  required_fungi: number;
  fungi_count: number;
  respawn_timer: number;
}

export interface Snapshot {
  schema_version: number;
  tick: number;
  sim_time: number;
  ei: number;
  stage: "prosperity" | "decline" | "crisis";
  factors: Record<string, number>;
  plants: PlantSnapshot[];
  fungi: FungusSnapshot[];
  ledger: LedgerSnapshot;
  current_target: "seaweed" | "fungi";
  oomycete: OomyceteSnapshot;
  swarm_health: number;
  extinct: boolean;
  unsettled_profit: number;
  settlement_countdown: number;
  settlement_period: number;
}

export interface EventAck {
  accepted: boolean;
  tick: number;
}

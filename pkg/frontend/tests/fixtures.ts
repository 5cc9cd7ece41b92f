import type { Geometry, PlantSnapshot, Snapshot } from "../src/types.js";

export function plantFixture(id = 1, overrides: Partial<PlantSnapshot> = {}): PlantSnapshot {
  const geometry: Geometry = {
    segments: [[0, 0, 0, 0.5, 0.02]],
    polylines: [
      { points: [[0, 0.5], [0.1, 0.6], [0, 0.7], [-0.1, 0.6]], closed: true },
      { points: [[0, 0.5], [0.2, 0.55], [0, 0.62], [-0.2, 0.55]], closed: true },
    ],
    circles: [],
  };
  return {
    id,
    shape: { blade_width: 0.5, blade_length: 0.5, blade_density: 0.5, stipe_length: 0.5 },
    maturity: 1.0,
    health: 0.6,
    mask: { edge: 0.59, noise_scale: 5.6, seed: 17 },
    geometry,
    ...overrides,
  };
}

export function snapshotFixture(overrides: Partial<Snapshot> = {}): Snapshot {
  return {
    schema_version: 1,
    tick: 10,
    sim_time: 1.0,
    ei: 0.2,
    stage: "prosperity",
    factors: { salinity: 30 },
    plants: [plantFixture(1), plantFixture(2, { maturity: 0.4 })],
    fungi: [
      {
        tree: { species: "penicillium_like", seed: 5 },
        geometry: {
          segments: [
            [0, 0, 0, 0.8, 0.05],
            [0, 0.8, 0.2, 1.0, 0.03],
            [0.2, 1.0, 0.3, 1.1, 0.02],
          ],
          polylines: [],
          circles: [[0.3, 1.15, 0.03], [0.3, 1.2, 0.03]],
        },
      },
    ],
    ledger: { inserted_seaweed: 3, inserted_fungi: 1, dispensed: 2, settlement_carry: 0.4 },
    current_target: "seaweed",
    oomycete: { present: true, required_fungi: 6, fungi_count: 1, respawn_timer: 0 },
    swarm_health: 0.6,
    extinct: false,
    unsettled_profit: 1.2,
    settlement_countdown: 12.5,
    settlement_period: 20,
    ...overrides,
  };
}

export class CountingCtx {
  canvas = { width: 840, height: 420 };
  fillStyle: string = "";
  strokeStyle = "";
  lineWidth = 1;
  globalAlpha = 1;
  font = "";
  textAlign = "";
  counts: Record<string, number> = {};
  texts: string[] = [];

  private bump(name: string) {
    this.counts[name] = (this.counts[name] ?? 0) + 1;
  }

  save() { this.bump("save"); }
  restore() { this.bump("restore"); }
  translate() { this.bump("translate"); }
  scale() { this.bump("scale"); }
  beginPath() { this.bump("beginPath"); }
  moveTo() { this.bump("moveTo"); }
  lineTo() { this.bump("lineTo"); }
  closePath() { this.bump("closePath"); }
  stroke() { this.bump("stroke"); }
  fill() { this.bump("fill"); }
  arc() { this.bump("arc"); }
  rect() { this.bump("rect"); }
  fillRect() { this.bump("fillRect"); }
  clearRect() { this.bump("clearRect"); }
  clip() { this.bump("clip"); }
  fillText(text: string) { this.bump("fillText"); this.texts.push(text); }
}

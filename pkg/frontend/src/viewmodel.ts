// Render-side state: the latest snapshot plus an index history for the
// status chart. Pure transcription; game rules stay server-side.

import type { Snapshot } from "./types.js";

export interface EiPoint {
  tick: number;
  ei: number;
  stage: string;
}

export type ConnectionStatus = "connecting" | "live" | "lost";

export class ViewModel {
  latest: Snapshot | null = null;
  connection: ConnectionStatus = "connecting";
  readonly eiHistory: EiPoint[] = [];

  constructor(public historyCapacity: number = 600) {}

  applySnapshot(snap: Snapshot): void {
    if (this.latest !== null && snap.tick < this.latest.tick) {
      // engine reset: start the story over
      this.eiHistory.length = 0;
    }
    const last = this.eiHistory[this.eiHistory.length - 1];
    if (!last || last.tick !== snap.tick) {
      this.eiHistory.push({ tick: snap.tick, ei: snap.ei, stage: snap.stage });
      if (this.eiHistory.length > this.historyCapacity) {
        this.eiHistory.splice(0, this.eiHistory.length - this.historyCapacity);
      }
    }
    this.latest = snap;
  }

  setConnection(up: boolean): void {
    this.connection = up ? "live" : "lost";
  }

  matureCount(): number {
    if (!this.latest) return 0;
    return this.latest.plants.filter((p) => p.maturity >= 1.0).length;
  }

  extinctionNotice(): boolean {
    return this.latest !== null && this.latest.extinct && this.latest.plants.length === 0;
  }
}

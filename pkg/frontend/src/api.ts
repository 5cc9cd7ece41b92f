// Thin HTTP client. Every user control maps to exactly one POST /events;
// the UI never simulates rules locally, it only transcribes snapshots.

import type { EventAck, Snapshot } from "./types.js";

export type InsertTarget = "seaweed" | "fungi";

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class GameClient {
  private fetchFn: FetchLike;

  constructor(
    public baseUrl: string = "",
    fetchFn?: FetchLike,
  ) {
    this.fetchFn = fetchFn ?? ((input, init) => globalThis.fetch(input, init));
  }

  private async postJson(path: string, payload?: unknown): Promise<EventAck> {
    const response = await this.fetchFn(this.baseUrl + path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: payload === undefined ? "{}" : JSON.stringify(payload),
    });
    if (!response.ok) {
      throw new Error(`POST ${path} failed: ${response.status}`);
    }
    return (await response.json()) as EventAck;
  }

  // One button press, one event. Omitting the target routes the token to the
  // engine's current target, mirroring the shared physical acceptor.
  insertToken(target?: InsertTarget): Promise<EventAck> {
    const payload: Record<string, string> = { kind: "insert_token" };
    if (target) payload.target = target;
    return this.postJson("/events", payload);
  }

  switchTarget(): Promise<EventAck> {
    return this.postJson("/events", { kind: "switch_target" });
  }

  reset(): Promise<EventAck> {
    return this.postJson("/reset");
  }

  async getState(): Promise<Snapshot> {
    const response = await this.fetchFn(this.baseUrl + "/state");
    if (!response.ok) throw new Error(`GET /state failed: ${response.status}`);
    return (await response.json()) as Snapshot;
  }

  // Server-sent snapshot feed. The EventSource constructor is injectable so
  // non-browser tests can drive the handler directly.
  connectStream(
    onSnapshot: (snap: Snapshot) => void,
    onStatus: (up: boolean) => void,
    EventSourceCtor: typeof EventSource = globalThis.EventSource,
  ): () => void {
    const source = new EventSourceCtor(this.baseUrl + "/stream");
    source.onmessage = (message) => {
      onStatus(true);
      onSnapshot(JSON.parse(message.data) as Snapshot);
    };
    source.onerror = () => onStatus(false);
    return () => source.close();
  }
}

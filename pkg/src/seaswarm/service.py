"""HTTP boundary: player events in, state snapshots out.

The engine loop runs single-threaded; handlers only touch it through the
runner's lock, an event queue, and immutable snapshot dicts. Snapshots
stream as server-sent events with per-client drop-oldest buffers, so a slow
reader can never stall the world.

Endpoints: GET /state, GET /config, POST /events, POST /reset, GET /stream,
plus GET /mask-fraction so clients can check their noise port against the
engine's.
"""

from __future__ import annotations

import collections
import json
import threading
import time
from typing import Iterator

from fastapi import Body, FastAPI, HTTPException, Query
from fastapi.responses import StreamingResponse

from .engine import Engine, EngineConfig, EventKind, SimEvent, Target
from .fungigen import fungus_geometry, tree_to_dict
from .pathology import DiseaseMaskParams, disease_mask_fraction, mask_params_from_health
from .swarm import swarm_geometry

SNAPSHOT_SCHEMA_VERSION = 1


class EngineRunner:
    """Real-time driver for one Engine; the only code that mutates it."""

    def __init__(self, config: EngineConfig, snapshot_hz: float = 10.0, time_scale: float = 1.0):
        self.engine = Engine(config)
        self.snapshot_hz = snapshot_hz
        self.time_scale = time_scale
        self.trace: list[SimEvent] = []  # applied events; replayable via run_replay
        self._lock = threading.Lock()
        self._pending: list[dict] = []
        self._subscribers: list[tuple[collections.deque, threading.Event]] = []
        self._stop = threading.Event()
        self._thread: threading.Thread | None = None
        ticks_per_snapshot = 1.0 / (snapshot_hz * config.dt)
        self._snapshot_ticks = max(1, round(ticks_per_snapshot))

    # -- event intake ----------------------------------------------------------

    def submit(self, kind: EventKind, target: Target | None) -> int:
        """Queue an event; returns the tick it will apply at."""
        with self._lock:
            self._pending.append({"kind": kind, "target": target})
            return self.engine.state.tick

    # -- stepping ----------------------------------------------------------------

    def step(self, n: int = 1) -> None:
        """Apply queued events and advance n ticks (the loop body, callable directly)."""
        for _ in range(n):
            with self._lock:
                state = self.engine.state
                for entry in self._pending:
                    event = SimEvent(tick=state.tick, kind=entry["kind"], target=entry["target"])
                    self.engine.apply_event(event)
                    self.trace.append(event)
                    state = self.engine.state  # reset swaps the state object
                self._pending.clear()
                self.engine.tick()
                if self.engine.state.tick % self._snapshot_ticks == 0:
                    snap = self.snapshot_locked()
                else:
                    snap = None
            if snap is not None:
                self._publish(snap)

    def run_forever(self) -> None:
        tick_seconds = self.engine.config.dt / self.time_scale
        next_deadline = time.monotonic()
        while not self._stop.is_set():
            self.step()
            next_deadline += tick_seconds
            delay = next_deadline - time.monotonic()
            if delay > 0:
                self._stop.wait(delay)
            else:
                next_deadline = time.monotonic()  # fell behind; don't spiral

    def start(self) -> None:
        self._thread = threading.Thread(target=self.run_forever, daemon=True)
        self._thread.start()

    def stop(self) -> None:
        self._stop.set()
        if self._thread is not None:
            self._thread.join(timeout=2.0)

    # -- snapshots ---------------------------------------------------------------

    def snapshot(self) -> dict:
        with self._lock:
            return self.snapshot_locked()

    def snapshot_locked(self) -> dict:
        state = self.engine.state
        cfg = self.engine.config
        period = cfg.settlement.period
        countdown = period - (state.sim_time % period)
        plants = []
        for p in state.swarm.plants:
            mask = mask_params_from_health(p.health, cfg.mask, seed=p.disease_seed)
            plants.append(
                {
                    "id": p.id,
                    "shape": p.shape.as_dict(),
                    "maturity": p.maturity,
                    "health": p.health,
                    "mask": {"edge": mask.edge, "noise_scale": mask.noise_scale, "seed": mask.seed},
                    "geometry": swarm_geometry(p).as_dict(),
                }
            )
        fungi = [
            {"tree": tree_to_dict(t), "geometry": fungus_geometry(t).as_dict()}
            for t in state.fungi_gallery
        ]
        return {
            "schema_version": SNAPSHOT_SCHEMA_VERSION,
            "tick": state.tick,
            "sim_time": state.sim_time,
            "ei": state.eco.ei,
            "stage": state.eco.stage.value,
            "factors": state.eco.factors.as_dict(),
            "plants": plants,
            "fungi": fungi,
            "ledger": {
                "inserted_seaweed": state.ledger.inserted_seaweed,
                "inserted_fungi": state.ledger.inserted_fungi,
                "dispensed": state.ledger.dispensed,
                "settlement_carry": state.ledger.settlement_carry,
            },
            "current_target": state.current_target.value,
            "oomycete": {
                "present": state.pathology.oomycete_present,
                "required_fungi": state.pathology.required_fungi,
                "fungi_count": state.pathology.fungi_count,
                "respawn_timer": state.pathology.respawn_timer,
            },
            "swarm_health": state.pathology.swarm_health,
            "extinct": state.swarm.extinct,
            "unsettled_profit": sum(state.ledger.unsettled_pool),
            "settlement_countdown": countdown,
            "settlement_period": period,
        }

    def _publish(self, snap: dict) -> None:
        with self._lock:
            subscribers = list(self._subscribers)
        for buffer, signal in subscribers:
            buffer.append(snap)  # deque maxlen drops the oldest on overflow
            signal.set()

    def subscribe(self, depth: int = 16) -> tuple[collections.deque, threading.Event]:
        sub = (collections.deque(maxlen=depth), threading.Event())
        with self._lock:
            self._subscribers.append(sub)
        return sub

    def unsubscribe(self, sub: tuple[collections.deque, threading.Event]) -> None:
        with self._lock:
            if sub in self._subscribers:
                self._subscribers.remove(sub)


_VALID_KINDS = {k.value for k in EventKind}
_VALID_TARGETS = {t.value for t in Target}


def parse_event_payload(payload: dict) -> tuple[EventKind, Target | None]:
    if not isinstance(payload, dict):
        raise ValueError("event payload must be a JSON object")
    kind_raw = payload.get("kind")
    if kind_raw not in _VALID_KINDS:
        raise ValueError(f"unknown event kind {kind_raw!r}; expected one of {sorted(_VALID_KINDS)}")
    kind = EventKind(kind_raw)
    target_raw = payload.get("target")
    if target_raw is None:
        return kind, None
    if kind is not EventKind.INSERT_TOKEN:
        raise ValueError(f"{kind.value} takes no target")
    if target_raw not in _VALID_TARGETS:
        raise ValueError(f"unknown target {target_raw!r}; expected one of {sorted(_VALID_TARGETS)}")
    return kind, Target(target_raw)


def build_app(runner: EngineRunner) -> FastAPI:
    app = FastAPI(title="seaswarm", version="0.1.0")
    app.state.runner = runner

    @app.get("/state")
    def get_state() -> dict:
        return runner.snapshot()

    @app.get("/config")
    def get_config() -> dict:
        return runner.engine.config.to_dict()

    @app.post("/events")
    def post_event(payload: dict = Body(...)) -> dict:
        try:
            kind, target = parse_event_payload(payload)
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        tick = runner.submit(kind, target)
        return {"accepted": True, "tick": tick}

    @app.post("/reset")
    def post_reset() -> dict:
        runner.submit(EventKind.RESET, None)
        return {"accepted": True, "tick": 0}

    @app.get("/mask-fraction")
    def get_mask_fraction(
        seed: int = Query(...),
        edge: float = Query(...),
        noise_scale: float = Query(...),
        resolution: int = Query(64),
    ) -> dict:
        try:
            params = DiseaseMaskParams(edge=edge, noise_scale=noise_scale, seed=seed)
            fraction = disease_mask_fraction(params, resolution)
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        return {"fraction": fraction}

    @app.get("/stream")
    def stream() -> StreamingResponse:
        sub = runner.subscribe()

        def event_feed() -> Iterator[str]:
            buffer, signal = sub
            try:
                yield "data: " + json.dumps(runner.snapshot()) + "\n\n"
                while True:
                    if buffer:
                        yield "data: " + json.dumps(buffer.popleft()) + "\n\n"
                        continue
                    arrived = signal.wait(timeout=1.0)
                    signal.clear()
                    if not arrived:
                        # keepalive doubles as the generator's cancellation point
                        yield ": keepalive\n\n"
            finally:
                runner.unsubscribe(sub)

        return StreamingResponse(event_feed(), media_type="text/event-stream")

    return app

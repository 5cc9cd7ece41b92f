"""Headless entry points: serve the world, simulate policies, fit weights, replay traces.

Every command is deterministic given an explicit --seed; simulate writes
byte-stable CSV. Failures exit nonzero after printing a single JSON error
line to stderr.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import sys
from pathlib import Path

from .ecology import FACTOR_NAMES
from .engine import Engine, EngineConfig, EventKind, SimEvent, Target, load_trace, run_replay, state_hash, state_to_dict
from .genmodel import FitDivergence, fit_mlp, load_dataset, load_default_datasets, save_model

CSV_COLUMNS = [
    "tick",
    "sim_time",
    "ei",
    "stage",
    "plants",
    "health",
    "inserted_seaweed",
    "inserted_fungi",
    "dispensed",
    "extinct",
]

DEFAULT_FIT_SEED = 1000
FIT_MSE_THRESHOLD = 2e-3  # bundled curves must fit at least this well


class CliError(RuntimeError):
    pass


def _load_config(path: str | None, seed: int | None) -> EngineConfig:
    if path is not None:
        try:
            config = EngineConfig.from_file(Path(path))
        except FileNotFoundError as exc:
            raise CliError(f"config file not found: {path}") from exc
        except (json.JSONDecodeError, TypeError, ValueError) as exc:
            raise CliError(f"bad config {path}: {exc}") from exc
    else:
        config = EngineConfig()
    if seed is not None:
        config = dataclasses.replace(config, master_seed=seed)
    return config


# --- policies -----------------------------------------------------------------


def load_policy(path: Path, dt: float) -> list[SimEvent]:
    """Expand a policy file into tick-quantized events.

    Accepts a ``schedule`` of timed events, a periodic ``rate`` rule, or
    both. Rate rules place insertions at exact multiples of the period, so
    runs stay deterministic. Simultaneous events order seaweed before fungi.
    """
    try:
        data = json.loads(Path(path).read_text())
    except FileNotFoundError as exc:
        raise CliError(f"policy file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise CliError(f"policy is not valid JSON: {exc}") from exc

    timed: list[tuple[float, int, EventKind, Target | None]] = []

    schedule = data.get("schedule", [])
    last_time = -1.0
    for entry in schedule:
        t = float(entry["time"])
        if t < 0:
            raise CliError("schedule times must be non-negative")
        if t < last_time:
            raise CliError("schedule times must be sorted")
        last_time = t
        kind = EventKind(entry["kind"])
        target = Target(entry["target"]) if entry.get("target") is not None else None
        timed.append((t, 2, kind, target))

    rate = data.get("rate")
    if rate is not None:
        duration = float(rate["duration"])
        for key, target, order in (
            ("seaweed_per_min", Target.SEAWEED, 0),
            ("fungi_per_min", Target.FUNGI, 1),
        ):
            per_min = float(rate.get(key, 0.0))
            if per_min < 0:
                raise CliError(f"{key} must be >= 0")
            if per_min == 0:
                continue
            period = 60.0 / per_min
            k = 1
            while k * period <= duration:
                timed.append((k * period, order, EventKind.INSERT_TOKEN, target))
                k += 1

    timed.sort(key=lambda item: (item[0], item[1]))
    return [
        SimEvent(tick=int(round(t / dt)), kind=kind, target=target)
        for t, _, kind, target in timed
    ]


# --- commands -----------------------------------------------------------------


def cmd_simulate(args: argparse.Namespace) -> int:
    config = _load_config(args.config, args.seed)
    events: list[SimEvent] = []
    if args.policy:
        events = load_policy(Path(args.policy), config.dt)
    ticks = int(round(args.duration / config.dt))
    if events and ticks < max(e.tick for e in events):
        raise CliError("duration too short for the policy's last event")

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    engine = Engine(config)
    idx = 0
    with (out_dir / "timeseries.csv").open("w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(CSV_COLUMNS)
        for _ in range(ticks):
            while idx < len(events) and events[idx].tick == engine.state.tick:
                engine.apply_event(events[idx])
                idx += 1
            engine.tick()
            s = engine.state
            writer.writerow(
                [
                    s.tick,
                    s.sim_time,
                    s.eco.ei,
                    s.eco.stage.value,
                    len(s.swarm.plants),
                    s.pathology.swarm_health,
                    s.ledger.inserted_seaweed,
                    s.ledger.inserted_fungi,
                    s.ledger.dispensed,
                    int(s.swarm.extinct),
                ]
            )
        while idx < len(events) and events[idx].tick == engine.state.tick:
            engine.apply_event(events[idx])
            idx += 1
    final = {"state": state_to_dict(engine.state), "hash": state_hash(engine.state)}
    (out_dir / "final_state.json").write_text(json.dumps(final, indent=2, sort_keys=True) + "\n")
    print(json.dumps({"ticks": ticks, "hash": final["hash"], "out": str(out_dir)}))
    return 0


def cmd_fit(args: argparse.Namespace) -> int:
    if args.datasets:
        datasets = {}
        for name in FACTOR_NAMES:
            path = Path(args.datasets) / f"{name}.json"
            if not path.exists():
                raise CliError(f"missing dataset: {path}")
            datasets[name] = load_dataset(path)
    else:
        datasets = load_default_datasets()

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    report = {}
    failures = []
    for index, name in enumerate(FACTOR_NAMES):
        try:
            model, mse = fit_mlp(
                datasets[name],
                hidden=args.hidden,
                epochs=args.epochs,
                lr=args.lr,
                seed=args.seed + index,
            )
        except FitDivergence as exc:
            raise CliError(f"fit diverged for {name}: {exc}") from exc
        save_model(model, out_dir / f"{name}.json")
        ok = mse < FIT_MSE_THRESHOLD
        report[name] = {"mse": mse, "threshold": FIT_MSE_THRESHOLD, "ok": ok}
        if not ok:
            failures.append(name)
    payload = {
        "hidden": args.hidden,
        "epochs": args.epochs,
        "lr": args.lr,
        "seed": args.seed,
        "factors": report,
    }
    (out_dir / "fit_report.json").write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    print(json.dumps({name: entry["mse"] for name, entry in report.items()}))
    if failures:
        raise CliError(f"fit exceeded MSE threshold for: {failures}")
    return 0


def cmd_replay(args: argparse.Namespace) -> int:
    config = _load_config(args.config, args.seed)
    trace = load_trace(Path(args.trace))
    ticks = args.ticks if args.ticks is not None else (max((e.tick for e in trace), default=0) + 1)
    final_state, snapshots = run_replay(config, trace, ticks)
    if args.out:
        out_path = Path(args.out)
        out_path.parent.mkdir(parents=True, exist_ok=True)
        out_path.write_text("".join(json.dumps(s, sort_keys=True) + "\n" for s in snapshots))
    print(json.dumps({"ticks": ticks, "events": len(trace), "hash": state_hash(final_state)}))
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import EngineRunner, build_app

    config = _load_config(args.config, args.seed)
    host, _, port_text = args.bind.rpartition(":")
    if not host or not port_text.isdigit():
        raise CliError(f"bad --bind {args.bind!r}; expected host:port")
    runner = EngineRunner(config, snapshot_hz=args.snapshot_hz, time_scale=args.time_scale)
    runner.start()
    app = build_app(runner)
    try:
        uvicorn.run(app, host=host, port=int(port_text), log_level="warning")
    except SystemExit as exc:  # uvicorn raises on bind failures
        raise CliError(f"server failed to start on {args.bind}") from exc
    finally:
        runner.stop()
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="seaswarm")
    sub = parser.add_subparsers(dest="command", required=True)

    serve = sub.add_parser("serve", help="run the world behind the HTTP API")
    serve.add_argument("--config", default=None)
    serve.add_argument("--seed", type=int, default=None)
    serve.add_argument("--bind", default="127.0.0.1:8000")
    serve.add_argument("--snapshot-hz", type=float, default=10.0)
    serve.add_argument("--time-scale", type=float, default=1.0,
                       help="sim seconds per wall second (exhibition fast-forward)")
    serve.set_defaults(func=cmd_serve)

    simulate = sub.add_parser("simulate", help="headless run; writes CSV + final state")
    simulate.add_argument("--config", default=None)
    simulate.add_argument("--seed", type=int, default=None)
    simulate.add_argument("--policy", default=None)
    simulate.add_argument("--duration", type=float, required=True, help="sim seconds")
    simulate.add_argument("--out", required=True)
    simulate.set_defaults(func=cmd_simulate)

    fit = sub.add_parser("fit", help="fit per-factor models from response curves")
    fit.add_argument("--datasets", default=None, help="directory of <factor>.json curves")
    fit.add_argument("--out", required=True)
    fit.add_argument("--hidden", type=int, default=8)
    fit.add_argument("--epochs", type=int, default=6000)
    fit.add_argument("--lr", type=float, default=0.5)
    fit.add_argument("--seed", type=int, default=DEFAULT_FIT_SEED)
    fit.set_defaults(func=cmd_fit)

    replay = sub.add_parser("replay", help="re-run a recorded event trace")
    replay.add_argument("--trace", required=True)
    replay.add_argument("--config", default=None)
    replay.add_argument("--seed", type=int, default=None)
    replay.add_argument("--ticks", type=int, default=None)
    replay.add_argument("--out", default=None, help="optional snapshot JSONL dump")
    replay.set_defaults(func=cmd_replay)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return 1
    except Exception as exc:  # anything else still yields a parseable line
        print(json.dumps({"error": f"{type(exc).__name__}: {exc}"}), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

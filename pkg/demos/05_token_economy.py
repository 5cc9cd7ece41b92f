"""Three playing styles through the full engine.

Greedy play crashes the ecology and strands the player in ecological
repayment; balanced play keeps the index positive and the tokens flowing;
fungi-only play never moves the index at all.
"""

from seaswarm.engine import Engine, EngineConfig, EventKind, SimEvent, Target


def run_policy(label, seaweed_per_min, fungi_per_min, duration, capacity=None):
    overrides = {}
    if capacity is not None:
        overrides["swarm"] = {"capacity": capacity, "initial_population": min(12, capacity)}
    config = EngineConfig.from_dict(overrides)
    events = []
    for per_min, target in ((seaweed_per_min, Target.SEAWEED), (fungi_per_min, Target.FUNGI)):
        if per_min:
            period = 60.0 / per_min
            k = 1
            while k * period <= duration:
                events.append(
                    SimEvent(int(round(k * period / config.dt)), EventKind.INSERT_TOKEN, target)
                )
                k += 1
    events.sort(key=lambda e: e.tick)
    engine = Engine(config)
    series = []
    went_extinct = False
    idx = 0
    for _ in range(int(duration / config.dt)):
        while idx < len(events) and events[idx].tick == engine.state.tick:
            engine.apply_event(events[idx])
            idx += 1
        engine.tick()
        s = engine.state
        went_extinct = went_extinct or s.swarm.extinct
        series.append((s.sim_time, s.eco.ei, len(s.swarm.plants), s.ledger.dispensed))
    s = engine.state
    print(
        f"{label:<12} inserted={s.ledger.inserted_seaweed:>4}+{s.ledger.inserted_fungi:<3} "
        f"dispensed={s.ledger.dispensed:>3} plants={len(s.swarm.plants):>2} "
        f"extinct_seen={'yes' if went_extinct else 'no '} final_ei={s.eco.ei:+.3f}"
    )
    return series


print("policy        tokens in        out   swarm")
greedy = run_policy("greedy", seaweed_per_min=360, fungi_per_min=0, duration=120, capacity=20)
balanced = run_policy("balanced", seaweed_per_min=60, fungi_per_min=12, duration=360)
fungi_only = run_policy("fungi-only", seaweed_per_min=0, fungi_per_min=60, duration=120)

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, (top, bottom) = plt.subplots(2, 1, figsize=(8, 5), sharex=True)
    for label, series in (("greedy", greedy), ("balanced", balanced), ("fungi-only", fungi_only)):
        ts = [t for t, *_ in series]
        top.plot(ts, [ei for _, ei, *_ in series], label=label)
        bottom.step(ts, [d for *_, d in series], where="post", label=label)
    top.set_ylabel("ecological index")
    top.axhline(0, color="grey", lw=0.5)
    top.legend(fontsize=8)
    bottom.set_ylabel("tokens dispensed")
    bottom.set_xlabel("sim time (s)")
    fig.suptitle("player pressure vs. ecology and payout")
    fig.tight_layout()
    fig.savefig("demos/output/token_economy.png", dpi=120)
    print("\nwrote demos/output/token_economy.png")
except ImportError:
    print("\n(matplotlib not installed; skipping the plot)")

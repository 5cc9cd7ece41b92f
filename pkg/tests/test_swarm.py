import copy

import pytest
from hypothesis import given, strategies as st

from seaswarm.genmodel import ShapeParams
from seaswarm.swarm import (
    PriceWeights,
    SeaweedPlant,
    SwarmConfig,
    SwarmState,
    growth_step,
    harvest,
    price_of,
    swarm_geometry,
)

SHAPE = ShapeParams(0.5, 0.5, 0.5, 0.5)


def make_swarm(maturities, capacity=60):
    s = SwarmState(capacity=capacity)
    for i, m in enumerate(maturities):
        s.add_plant(SHAPE, m, 1.0, tick=i, disease_seed=i)
    return s


def counters(seq=iter(range(10_000))):
    return lambda: next(seq)


def test_growth_frozen_at_non_positive_ei():
    s = make_swarm([0.2, 0.8])
    before = copy.deepcopy(s)
    for ei in (0.0, -0.5):
        growth_step(s, ei, 10.0, SwarmConfig(), lambda: SHAPE, counters(), 1.0, tick=5)
    assert [p.maturity for p in s.plants] == [p.maturity for p in before.plants]
    assert s.spawn_accumulator == before.spawn_accumulator
    assert len(s.plants) == len(before.plants)


def test_growth_arithmetic():
    s = make_swarm([0.0, 0.5])
    growth_step(s, 1.0, 10.0, SwarmConfig(growth_rate=0.01), lambda: SHAPE, counters(), 1.0, tick=1)
    assert s.plants[0].maturity == pytest.approx(0.1)
    assert s.plants[1].maturity == pytest.approx(0.6)


def test_growth_clamps_at_one():
    s = make_swarm([0.95])
    growth_step(s, 1.0, 10.0, SwarmConfig(growth_rate=0.01), lambda: SHAPE, counters(), 1.0, tick=1)
    assert s.plants[0].maturity == 1.0


def test_spawning_accumulates_and_respects_capacity():
    cfg = SwarmConfig(capacity=3, spawn_rate=0.05, initial_population=0)
    s = SwarmState(capacity=3)
    # 0.05 * 1.0 * 30 s = 1.5 accumulated -> one spawn, 0.5 left
    growth_step(s, 1.0, 30.0, cfg, lambda: SHAPE, counters(), 0.7, tick=9)
    assert len(s.plants) == 1
    assert s.spawn_accumulator == pytest.approx(0.5)
    spawned = s.plants[0]
    assert spawned.maturity == 0.0
    assert spawned.health == 0.7
    assert spawned.spawn_tick == 9
    # never exceeds capacity even with a huge accumulator
    growth_step(s, 1.0, 2000.0, cfg, lambda: SHAPE, counters(), 0.7, tick=10)
    assert len(s.plants) == 3
    assert s.spawn_accumulator < 1.0


def test_harvest_oldest_first_matches_bruteforce():
    s = make_swarm([1.0, 1.0, 0.4, 1.0])
    s.plants[0].spawn_tick = 9
    s.plants[1].spawn_tick = 5
    s.plants[3].spawn_tick = 5  # tie with plants[1]; higher id loses
    mature = [p for p in s.plants if p.maturity >= 1.0]
    expected = min(mature, key=lambda p: (p.spawn_tick, p.id))
    survivors = [p.id for p in s.plants if p is not expected]
    removed = harvest(s, in_crisis=False)
    assert removed is expected
    assert [p.id for p in s.plants] == survivors


def test_harvest_without_mature_plants_is_a_noop():
    s = make_swarm([0.2, 0.9])
    before = copy.deepcopy(s)
    assert harvest(s, in_crisis=False) is None
    assert [p.id for p in s.plants] == [p.id for p in before.plants]
    assert not s.extinct


def test_harvest_last_plant_in_crisis_marks_extinct():
    s = make_swarm([1.0])
    removed = harvest(s, in_crisis=True)
    assert removed is not None
    assert s.extinct
    assert s.plants == []


def test_empty_crisis_harvest_also_marks_extinct():
    s = make_swarm([])
    assert harvest(s, in_crisis=True) is None
    assert s.extinct


def test_extinct_swarm_does_not_self_reseed():
    s = make_swarm([])
    s.extinct = True
    s.spawn_accumulator = 5.0
    growth_step(s, 1.0, 100.0, SwarmConfig(), lambda: SHAPE, counters(), 1.0, tick=3)
    assert s.plants == []


def test_price_anchors():
    w = PriceWeights()
    perfect = SeaweedPlant(0, ShapeParams(1, 1, 1, 1), 1.0, 1.0, 0, 0)
    assert price_of(perfect, w) == pytest.approx(w.full_price)
    sick = SeaweedPlant(0, ShapeParams(1, 1, 1, 1), 1.0, 0.0, 0, 0)
    assert price_of(sick, w) == pytest.approx(0.5 * w.full_price)
    bare = SeaweedPlant(0, ShapeParams(0, 0, 0, 0), 1.0, 0.3, 0, 0)
    assert price_of(bare, w) == 0.0


@given(
    st.tuples(*[st.floats(min_value=0, max_value=1, allow_nan=False)] * 4),
    st.floats(min_value=0, max_value=1, allow_nan=False),
    st.integers(min_value=0, max_value=3),
    st.floats(min_value=0.01, max_value=0.99),
)
def test_price_monotone_in_shape_and_health(shape_values, health, bump_index, delta):
    w = PriceWeights()
    base = SeaweedPlant(0, ShapeParams(*shape_values), 1.0, health, 0, 0)
    bumped_values = list(shape_values)
    bumped_values[bump_index] = min(1.0, bumped_values[bump_index] + delta)
    bumped = SeaweedPlant(0, ShapeParams(*bumped_values), 1.0, health, 0, 0)
    assert price_of(bumped, w) >= price_of(base, w) - 1e-12
    healthier = SeaweedPlant(0, ShapeParams(*shape_values), 1.0, min(1.0, health + delta), 0, 0)
    assert price_of(healthier, w) >= price_of(base, w) - 1e-12


def test_price_weights_validation():
    with pytest.raises(ValueError):
        PriceWeights(w_width=0.5, w_length=0.5, w_density=0.5, w_stipe=0.5)
    with pytest.raises(ValueError):
        PriceWeights(disease_penalty=1.5)


def test_geometry_frond_counts():
    low = SeaweedPlant(3, ShapeParams(0.5, 0.5, 0.0, 0.5), 1.0, 1.0, 0, 0)
    high = SeaweedPlant(3, ShapeParams(0.5, 0.5, 1.0, 0.5), 1.0, 1.0, 0, 0)
    assert len(swarm_geometry(low).polylines) == 3
    assert len(swarm_geometry(high).polylines) == 12
    assert len(swarm_geometry(low).segments) == 1  # the stipe


def test_geometry_deterministic_per_plant():
    plant = SeaweedPlant(17, SHAPE, 0.8, 0.6, 4, 99)
    assert swarm_geometry(plant) == swarm_geometry(plant)
    other = SeaweedPlant(18, SHAPE, 0.8, 0.6, 4, 99)
    assert swarm_geometry(other) != swarm_geometry(plant)


def test_swarm_config_validation():
    with pytest.raises(ValueError):
        SwarmConfig(capacity=0)
    with pytest.raises(ValueError):
        SwarmConfig(initial_population=99, capacity=10)

import math

import pytest
from hypothesis import given, strategies as st

from seaswarm.economy import SettlementConfig, TokenLedger, record_harvest, settle


def test_record_appends():
    ledger = TokenLedger()
    record_harvest(ledger, 1.3)
    assert ledger.unsettled_pool == [1.3]
    record_harvest(ledger, 0.0)
    assert ledger.unsettled_pool == [1.3, 0.0]


def test_negative_price_rejected():
    with pytest.raises(ValueError):
        record_harvest(TokenLedger(), -0.01)


def test_settle_floor_and_carry():
    ledger = TokenLedger(unsettled_pool=[0.7, 0.6])
    _, dispensed = settle(ledger)
    assert dispensed == 1
    assert ledger.settlement_carry == pytest.approx(0.3)
    assert ledger.unsettled_pool == []
    assert ledger.dispensed == 1


def test_settle_empty_pool():
    ledger = TokenLedger()
    _, dispensed = settle(ledger)
    assert dispensed == 0
    assert ledger.settlement_carry == 0.0


def test_carry_accumulates_across_settlements():
    ledger = TokenLedger(unsettled_pool=[0.5])
    settle(ledger)
    assert ledger.dispensed == 0
    record_harvest(ledger, 0.5)
    _, dispensed = settle(ledger)
    assert dispensed == 1
    assert ledger.settlement_carry == pytest.approx(0.0)


@given(
    st.lists(
        st.lists(st.floats(min_value=0, max_value=5, allow_nan=False), max_size=6),
        min_size=1,
        max_size=40,
    )
)
def test_conservation_over_arbitrary_settlement_histories(batches):
    ledger = TokenLedger()
    total_price = 0.0
    total_dispensed = 0
    for batch in batches:
        for price in batch:
            record_harvest(ledger, price)
            total_price += price
        _, dispensed = settle(ledger)
        total_dispensed += dispensed
        assert 0.0 <= ledger.settlement_carry < 1.0
    assert total_dispensed == ledger.dispensed
    assert total_dispensed + ledger.settlement_carry == pytest.approx(total_price, abs=1e-9)


def test_settlement_config_validation():
    with pytest.raises(ValueError):
        SettlementConfig(period=0.0)
    assert SettlementConfig().period == 20.0

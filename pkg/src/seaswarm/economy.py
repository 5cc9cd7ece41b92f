"""Token ledger and the periodic profit settlement.

Harvested plants park their selling prices in an unsettled pool; every
settlement period the pool is flushed as whole tokens. The fractional
remainder carries over instead of vanishing, so over a long run dispensed
tokens equal the floor of the total harvested price mass.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field


@dataclass(frozen=True)
class SettlementConfig:
    period: float = 20.0  # seconds between settlements

    def __post_init__(self) -> None:
        if self.period <= 0:
            raise ValueError("period must be positive")


@dataclass
class TokenLedger:
    inserted_seaweed: int = 0
    inserted_fungi: int = 0
    dispensed: int = 0
    unsettled_pool: list[float] = field(default_factory=list)
    settlement_carry: float = 0.0  # fractional token remainder in [0, 1)


def record_harvest(ledger: TokenLedger, price: float) -> TokenLedger:
    """Park one harvested plant's price until the next settlement."""
    if price < 0:
        raise ValueError(f"negative price {price!r}")
    ledger.unsettled_pool.append(price)
    return ledger


def settle(ledger: TokenLedger) -> tuple[TokenLedger, int]:
    """Flush the pool: dispense whole tokens, carry the remainder."""
    total = sum(ledger.unsettled_pool) + ledger.settlement_carry
    dispense = int(math.floor(total))
    ledger.settlement_carry = total - dispense
    ledger.unsettled_pool.clear()
    ledger.dispensed += dispense
    return ledger, dispense

"""Currency helpers: 2-decimal fixed precision, round-half-even."""

from decimal import ROUND_HALF_EVEN, Decimal

_CENT = Decimal("0.01")


def round2(x: float) -> float:
    """Round a currency amount to cents with banker's rounding."""
    return float(Decimal(repr(float(x))).quantize(_CENT, rounding=ROUND_HALF_EVEN))

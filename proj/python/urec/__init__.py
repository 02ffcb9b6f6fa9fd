"""Uniform recurrence of morphic words."""

from ._urec import (
    Error,
    Morphism,
    System,
    apply,
    classify_letters,
    compose,
    decide,
    growth_orders,
    oracle,
    power,
)

__all__ = [
    "Error",
    "Morphism",
    "System",
    "apply",
    "classify_letters",
    "compose",
    "decide",
    "growth_orders",
    "oracle",
    "power",
]

"""Decision certificates returned by similarity and proportion queries."""

from __future__ import annotations

from dataclasses import dataclass, field

__all__ = ["ProportionVerdict", "CompetitorPolicy", "check_policy"]

# How the maximality quantifier ranges over competitors.
#   "literal": competitors exclude the left-hand element/arrow, reading the
#              side condition "b' != a" at face value.
#   "all":     competitors range over the whole universe.
CompetitorPolicy = str
POLICIES = ("literal", "all")


def check_policy(policy: CompetitorPolicy) -> CompetitorPolicy:
    if policy not in POLICIES:
        raise ValueError(f"unknown competitor policy {policy!r}")
    return policy


@dataclass(frozen=True)
class ProportionVerdict:
    """A boolean decision plus the evidence it was reached with.

    ``reason`` is one of: all-trivial, maximal, empty-intersection,
    dominated, conjunct-failed.  ``exact`` is False when the underlying
    clone did not saturate, in which case the verdict only covers terms up
    to the generation depth.
    """

    holds: bool
    reason: str
    exact: bool
    max_vars: int
    depth: int
    policy: CompetitorPolicy = "literal"
    witness: str | None = None
    competitor: str | None = None
    comparisons: tuple[str, ...] = field(default=())
    failed_conjunct: str | None = None

    def __bool__(self) -> bool:
        return self.holds

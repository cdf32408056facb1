"""Exception types shared across the package."""

from __future__ import annotations


class ChannelValidationError(ValueError):
    """A channel description is malformed.

    ``field`` names the offending entry (``"transition"``, ``"input_pmfs"``, ...).
    """

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


class PreconditionError(ValueError):
    pass


class ConsistencyError(RuntimeError):
    """Two computations that must agree did not (float trouble or a bug)."""


class DegenerateRegionError(ValueError):
    def __init__(self, report):
        lines = "; ".join(v.message for v in report.violations)
        super().__init__(f"region is degenerate: {lines}")
        self.report = report


class InvalidLabelError(ValueError):
    pass


class CapacityError(ValueError):
    pass


class NotAchievable(ValueError):
    """A rate tuple lies outside the region.

    ``constraint`` is the first violated constraint and ``excess`` the amount
    (in bits) by which it is violated.
    """

    def __init__(self, constraint, excess: float):
        super().__init__(f"not achievable: {constraint} violated by {excess:.6g} bits")
        self.constraint = constraint
        self.excess = excess

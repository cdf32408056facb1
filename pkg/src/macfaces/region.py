"""Half-space description of the rate region and the non-degeneracy test."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .channel import (
    ChannelSpec,
    MICache,
    all_subsets,
    format_set,
    mask_to_set,
    set_to_mask,
)
from .errors import DegenerateRegionError

DEFAULT_MARGIN = 1e-9


@dataclass(frozen=True)
class Constraint:
    """``R(subset) <= bound`` (front) or ``R_i >= 0`` (back)."""

    subset: frozenset
    bound: float
    kind: str  # "front" or "back"

    def normal(self, M: int) -> np.ndarray:
        """Row ``a`` of the ``a . R <= b`` form."""
        a = np.zeros(M)
        idx = [u - 1 for u in self.subset]
        a[idx] = 1.0 if self.kind == "front" else -1.0
        return a

    def slack(self, rate) -> float:
        """Nonnegative iff the constraint holds."""
        total = float(sum(rate[u - 1] for u in self.subset))
        return self.bound - total if self.kind == "front" else total

    def __str__(self):
        if self.kind == "back":
            (i,) = self.subset
            return f"R_{i} >= 0"
        return f"R({format_set(self.subset)}) <= {self.bound:.6f}"


@dataclass(frozen=True, eq=False)
class HRep:
    users: int
    constraints: tuple[Constraint, ...]
    mi: MICache = field(repr=False)

    @cached_property
    def index(self) -> dict[tuple[str, frozenset], int]:
        return {(c.kind, c.subset): k for k, c in enumerate(self.constraints)}

    def front_index(self, S) -> int:
        return self.index[("front", frozenset(S))]

    def back_index(self, i: int) -> int:
        return self.index[("back", frozenset([i]))]

    def bound(self, S) -> float:
        return self.constraints[self.front_index(S)].bound

    @cached_property
    def matrix(self) -> tuple[np.ndarray, np.ndarray]:
        """``(A, b)`` with the region equal to ``{R : A R <= b}``."""
        A = np.array([c.normal(self.users) for c in self.constraints])
        b = np.array([c.bound for c in self.constraints])
        A.setflags(write=False)
        b.setflags(write=False)
        return A, b

    def contains(self, rate, tol: float = 1e-9) -> bool:
        A, b = self.matrix
        return bool(np.all(A @ np.asarray(rate, dtype=float) <= b + tol))

    @cached_property
    def degeneracy(self) -> "DegeneracyReport":
        return degeneracy_report(self.mi)

    def require_nondegenerate(self) -> None:
        if not self.degeneracy.nondegenerate:
            raise DegenerateRegionError(self.degeneracy)


def build_hrep(spec: ChannelSpec | MICache) -> HRep:
    """Back constraints ``R_i >= 0`` by user, then one front constraint per
    nonempty subset in binary-counter order."""
    mi = spec.mi if isinstance(spec, ChannelSpec) else spec
    M = mi.users
    cons = [Constraint(frozenset([i]), 0.0, "back") for i in range(1, M + 1)]
    cons += [Constraint(S, mi.front_bound(S), "front") for S in all_subsets(M, nonempty=True)]
    return HRep(M, tuple(cons), mi)


def _mi_text(S, A) -> str:
    if A:
        return f"I(X_{format_set(S)};Y|X_{format_set(A)})"
    return f"I(X_{format_set(S)};Y)"


@dataclass(frozen=True)
class Violation:
    condition: int
    S: frozenset
    A: frozenset = frozenset()
    B: frozenset | None = None
    values: tuple[float, ...] = ()

    @property
    def message(self) -> str:
        if self.condition == 1:
            return f"condition 1 violated: {_mi_text(self.S, ())}={self.values[0]:.6g}"
        return (
            f"condition 2 violated: {_mi_text(self.S, self.A)}={self.values[0]:.6g}"
            f" not < {_mi_text(self.S, self.B)}={self.values[1]:.6g}"
        )

    def to_dict(self) -> dict:
        d = {"condition": self.condition, "S": sorted(self.S), "values": list(self.values)}
        if self.condition == 2:
            d["A"] = sorted(self.A)
            d["B"] = sorted(self.B)
        d["message"] = self.message
        return d


@dataclass(frozen=True)
class DegeneracyReport:
    violations: tuple[Violation, ...]
    margin: float = DEFAULT_MARGIN

    @property
    def nondegenerate(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "nondegenerate": self.nondegenerate,
            "margin": self.margin,
            "violations": [v.to_dict() for v in self.violations],
        }


def degeneracy_report(mi: MICache, margin: float = DEFAULT_MARGIN) -> DegeneracyReport:
    if not margin > 0:
        raise ValueError("margin must be positive")
    M = mi.users
    full = (1 << M) - 1
    found: list[Violation] = []
    for s in range(1, full + 1):
        v = mi.value_mask(s, 0)
        if not v > margin:
            found.append(Violation(1, mask_to_set(s), values=(v,)))
    # Condition 2: nonempty proper S, A strictly inside B, B disjoint from S.
    for s in range(1, full):
        rest = full & ~s
        b = rest
        while True:
            vb = mi.value_mask(s, b)
            a = (b - 1) & b if b else None
            while a is not None:
                va = mi.value_mask(s, a)
                if not vb - va > margin:
                    found.append(
                        Violation(2, mask_to_set(s), mask_to_set(a), mask_to_set(b), (va, vb))
                    )
                a = None if a == 0 else (a - 1) & b
            if b == 0:
                break
            b = (b - 1) & rest
    found.sort(key=lambda v: (v.condition, set_to_mask(v.S), set_to_mask(v.A),
                              set_to_mask(v.B or ())))
    return DegeneracyReport(tuple(found), margin)


def check_degeneracy(spec: ChannelSpec, margin: float = DEFAULT_MARGIN) -> DegeneracyReport:
    return degeneracy_report(spec.mi, margin)

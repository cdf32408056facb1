"""Face labels of the rate region, their combinatorics, and decoding orders.

A face is tagged by a strictly nested chain ``S_1 > S_2 > ... > S_m`` of
nonempty user sets, whose sum-rate constraints are tight, and a set ``A``
of users with zero rate.  For a non-degenerate region every face has
exactly one such label, written ``F({1,2,3}>{1,3}>{3}|{4})``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Iterator, Sequence

import numpy as np

from .channel import (
    ChannelSpec,
    MICache,
    format_set,
    mask_to_set,
    subsets_of,
)
from .errors import (
    CapacityError,
    ConsistencyError,
    InvalidLabelError,
    NotAchievable,
    PreconditionError,
)
from .region import HRep, build_hrep

DEFAULT_TOL = 1e-9
ENUMERATION_CAP = 8


def _chain_key(s: frozenset):
    return (-len(s), tuple(sorted(s)))


@dataclass(frozen=True)
class FaceLabel:
    users: int
    chain: tuple[frozenset, ...] = ()
    zeros: frozenset = frozenset()

    def __post_init__(self):
        chain = tuple(sorted((frozenset(s) for s in self.chain), key=_chain_key))
        object.__setattr__(self, "chain", chain)
        object.__setattr__(self, "zeros", frozenset(self.zeros))

    @classmethod
    def of(cls, users: int, *chain: Iterable[int], zeros: Iterable[int] = ()) -> "FaceLabel":
        """``FaceLabel.of(3, {1, 2}, {2}, zeros={3})``."""
        return cls(users, tuple(frozenset(s) for s in chain), frozenset(zeros))

    @property
    def m(self) -> int:
        return len(self.chain)

    @property
    def is_front(self) -> bool:
        return not self.zeros

    def __str__(self) -> str:
        chain = ">".join(format_set(s) for s in self.chain)
        zeros = format_set(self.zeros) if self.zeros else ""
        return f"F({chain}|{zeros})"

    def to_dict(self) -> dict:
        return {
            "users": self.users,
            "chain": [sorted(s) for s in self.chain],
            "zeros": sorted(self.zeros),
            "label": str(self),
        }


_SET_RE = re.compile(r"\{\s*(\d+(?:\s*,\s*\d+)*)?\s*\}")
_LABEL_RE = re.compile(r"^\s*F\((?P<chain>[^|]*)\|(?P<zeros>[^)]*)\)\s*$")


def _parse_set(text: str) -> frozenset:
    m = _SET_RE.fullmatch(text.strip())
    if not m:
        raise InvalidLabelError(f"bad set syntax {text!r}")
    body = m.group(1)
    return frozenset(int(x) for x in body.split(",")) if body else frozenset()


def parse_label(text: str, users: int) -> FaceLabel:
    m = _LABEL_RE.match(text)
    if not m:
        raise InvalidLabelError(f"bad label syntax {text!r}")
    chain_txt = m.group("chain").strip()
    chain = tuple(_parse_set(t) for t in chain_txt.split(">")) if chain_txt else ()
    zeros_txt = m.group("zeros").strip()
    zeros = _parse_set(zeros_txt) if zeros_txt else frozenset()
    return FaceLabel(users, chain, zeros)


def validate_label(label: FaceLabel) -> tuple[bool, str | None]:
    """Check that ``label`` names a nonempty face.

    Returns ``(ok, diagnostic)`` where the diagnostic names the first
    violated condition.
    """
    M = label.users
    if M < 1:
        return False, "users must be >= 1"
    universe = frozenset(range(1, M + 1))
    for s in (*label.chain, label.zeros):
        if not s <= universe:
            return False, f"set {format_set(s)} has users outside 1..{M}"
    for s in label.chain:
        if not s:
            return False, "chain contains the empty set"
    for big, small in zip(label.chain, label.chain[1:]):
        if not (small < big):
            return False, (
                f"chain not telescopic: {format_set(small)} is not a proper subset "
                f"of {format_set(big)}"
            )
    if label.chain and label.zeros & label.chain[0]:
        return False, (
            f"zero-rate users {format_set(label.zeros & label.chain[0])} "
            f"meet {format_set(label.chain[0])}"
        )
    return True, None


def _require_valid(label: FaceLabel) -> None:
    ok, why = validate_label(label)
    if not ok:
        raise InvalidLabelError(f"{label}: {why}")


def face_dim(label: FaceLabel) -> int:
    _require_valid(label)
    return label.users - label.m - len(label.zeros)


def merge_labels(a: FaceLabel, b: FaceLabel) -> FaceLabel | None:
    """Label of the intersection of two faces, or ``None`` if it is empty."""
    if a.users != b.users:
        raise PreconditionError("labels belong to regions with different user counts")
    merged = FaceLabel(a.users, tuple(set(a.chain) | set(b.chain)), a.zeros | b.zeros)
    ok, _ = validate_label(merged)
    return merged if ok else None


def _chains(universe: int, length: int) -> Iterator[tuple[int, ...]]:
    """Strictly decreasing chains of nonempty submasks of ``universe``."""
    if length == 0:
        yield ()
        return

    def descend(top: int, remaining: int, prefix: tuple[int, ...]):
        if remaining == 0:
            yield prefix
            return
        s = top
        while s:
            if s != top or not prefix:
                if s.bit_count() >= remaining:
                    yield from descend(s, remaining - 1, prefix + (s,))
            s = (s - 1) & top

    yield from descend(universe, length, ())


def enumerate_faces(M: int, D: int | None = None, *, cap: int = ENUMERATION_CAP) -> list[FaceLabel]:
    """Every valid label of an ``M``-user region with dimension ``D``.

    With ``D=None`` all dimensions are returned, lowest first.
    """
    if M < 1:
        raise PreconditionError("M must be >= 1")
    if M > cap:
        raise CapacityError(
            f"enumerating faces for M={M} exceeds the cap of {cap}; "
            "use the counting functions instead"
        )
    if D is None:
        return [f for d in range(M + 1) for f in enumerate_faces(M, d, cap=cap)]
    if not 0 <= D <= M:
        raise PreconditionError(f"D must lie in 0..{M}")
    full = (1 << M) - 1
    zero_sets = sorted(range(1 << M), key=lambda a: (a.bit_count(), tuple(sorted(mask_to_set(a)))))
    out = []
    for a in zero_sets:
        m = M - a.bit_count() - D
        if m < 0:
            continue
        zeros = mask_to_set(a)
        for chain in _chains(full & ~a, m):
            out.append(FaceLabel(M, tuple(mask_to_set(s) for s in chain), zeros))
    return out


@dataclass(frozen=True)
class DecodingPlan:
    """Groups decoded jointly within, successively across; ``skipped`` have zero rate."""

    groups: tuple[frozenset, ...]
    skipped: frozenset = frozenset()

    def __str__(self) -> str:
        s = "[" + ",".join(format_set(g) for g in self.groups) + "]"
        if self.skipped:
            s += f" skip {format_set(self.skipped)}"
        return s

    def to_dict(self) -> dict:
        return {"groups": [sorted(g) for g in self.groups], "skipped": sorted(self.skipped)}


def decoding_order(label: FaceLabel) -> DecodingPlan:
    _require_valid(label)
    universe = frozenset(range(1, label.users + 1))
    first = universe - label.zeros - (label.chain[0] if label.chain else frozenset())
    groups = [first] if first else []
    for big, small in zip(label.chain, label.chain[1:]):
        groups.append(big - small)
    if label.chain:
        groups.append(label.chain[-1])
    return DecodingPlan(tuple(groups), label.zeros)


# -- geometry against a concrete channel --------------------------------


def _as_hrep(region: HRep | ChannelSpec | MICache) -> HRep:
    return region if isinstance(region, HRep) else build_hrep(region)


def _rate_vector(rate, M: int) -> np.ndarray:
    r = np.asarray(rate, dtype=float).reshape(-1)
    if r.size != M:
        raise PreconditionError(f"rate has {r.size} components, region has {M} users")
    return r


def _rsum(r: np.ndarray, s: Iterable[int]) -> float:
    return float(sum(r[u - 1] for u in s))


def membership_direct(region, rate, label: FaceLabel, tol: float = DEFAULT_TOL) -> bool:
    """All region inequalities, the chain equalities and the zero rates."""
    hrep = _as_hrep(region)
    _require_valid(label)
    if label.users != hrep.users:
        raise PreconditionError("label and region disagree on the number of users")
    r = _rate_vector(rate, hrep.users)
    if not hrep.contains(r, tol):
        return False
    if any(abs(r[u - 1]) > tol for u in label.zeros):
        return False
    return all(abs(_rsum(r, s) - hrep.bound(s)) <= tol for s in label.chain)


def membership_decomposed(region, rate, label: FaceLabel, tol: float = DEFAULT_TOL) -> bool:
    """Product test: zero-rate users, a reduced region for the users outside
    ``S_1``, and one dominant facet per chain difference ``S_i - S_{i+1}``."""
    hrep = _as_hrep(region)
    _require_valid(label)
    M = hrep.users
    if label.users != M:
        raise PreconditionError("label and region disagree on the number of users")
    r = _rate_vector(rate, M)
    mi = hrep.mi
    if np.any(r < -tol):
        return False
    if any(abs(r[u - 1]) > tol for u in label.zeros):
        return False
    universe = frozenset(range(1, M + 1))
    outside = universe - (label.chain[0] if label.chain else frozenset())
    # region of the channel seen by the users outside S_1, with S_1 known
    for L in subsets_of(outside, nonempty=True):
        if _rsum(r, L) > mi.value(L, outside - L) + tol:
            return False
    for i, top in enumerate(label.chain):
        below = label.chain[i + 1] if i + 1 < len(label.chain) else frozenset()
        block = top - below
        known = universe - top
        for K in subsets_of(block, nonempty=True, proper=True):
            if _rsum(r, K) > mi.value(K, known | (block - K)) + tol:
                return False
        if abs(_rsum(r, block) - mi.value(block, known)) > tol:
            return False
    return True


def membership(region, rate, label: FaceLabel, tol: float = DEFAULT_TOL, *,
               method: str = "decomposed") -> bool:
    """Is ``rate`` on the face tagged by ``label``?"""
    if method == "decomposed":
        return membership_decomposed(region, rate, label, tol)
    if method == "direct":
        return membership_direct(region, rate, label, tol)
    raise ValueError(f"unknown method {method!r}")


def locate_minimal_face(region, rate, tol: float = DEFAULT_TOL) -> FaceLabel:
    """Label of the smallest face containing ``rate``.

    Raises :class:`NotAchievable` if ``rate`` is outside the region.  The
    decoding order of the returned label is a schedule that achieves it.
    """
    hrep = _as_hrep(region)
    hrep.require_nondegenerate()
    M = hrep.users
    r = _rate_vector(rate, M)
    slacks = np.array([c.slack(r) for c in hrep.constraints])
    worst = int(np.argmin(slacks))
    if slacks[worst] < -tol:
        raise NotAchievable(hrep.constraints[worst], float(-slacks[worst]))
    zeros = frozenset(i for i in range(1, M + 1) if r[i - 1] <= tol)
    tight = [c.subset for c, s in zip(hrep.constraints, slacks)
             if c.kind == "front" and abs(s) <= tol]
    label = FaceLabel(M, tuple(tight), zeros)
    ok, why = validate_label(label)
    if not ok:
        raise ConsistencyError(f"tight constraints at {r.tolist()} do not form a label: {why}")
    return label


def _check_order(order: Sequence[int], M: int) -> tuple[int, ...]:
    order = tuple(int(u) for u in order)
    if sorted(order) != list(range(1, M + 1)):
        raise PreconditionError(f"{order} is not a permutation of 1..{M}")
    return order


def dominant_vertex(region, order: Sequence[int]) -> np.ndarray:
    """Vertex of the dominant facet reached by decoding single users in ``order``.

    ``order[0]`` is decoded first, treating everyone else as noise; each later
    user sees the earlier ones as side information.
    """
    hrep = _as_hrep(region)
    hrep.require_nondegenerate()
    M = hrep.users
    order = _check_order(order, M)
    r = np.zeros(M)
    known: set[int] = set()
    for u in order:
        r[u - 1] = hrep.mi.value([u], known)
        known.add(u)
    return r


def order_label(order: Sequence[int], M: int | None = None) -> FaceLabel:
    """Vertex label whose decoding order is the single users in ``order``."""
    M = len(order) if M is None else M
    order = _check_order(order, M)
    chain = [frozenset(order[k:]) for k in range(M)]
    return FaceLabel(M, tuple(chain))


def vertex_coordinates(region, label: FaceLabel) -> np.ndarray:
    """Coordinates of a vertex label.

    Zero-rate users are known to the receiver from the start; the rest are
    decoded one at a time in the label's decoding order.
    """
    hrep = _as_hrep(region)
    if face_dim(label) != 0:
        raise PreconditionError(f"{label} is not a vertex label")
    r = np.zeros(hrep.users)
    known = set(label.zeros)
    for g in decoding_order(label).groups:
        (u,) = g
        r[u - 1] = hrep.mi.value([u], known)
        known.add(u)
    return r


def witness_point(region, label: FaceLabel) -> np.ndarray:
    """A vertex of the face tagged by ``label``."""
    _require_valid(label)
    plan = decoding_order(label)
    order = [u for g in plan.groups for u in sorted(g)]
    chain = [frozenset(order[k:]) for k in range(len(order))]
    return vertex_coordinates(region, FaceLabel(label.users, tuple(chain), label.zeros))


def refining_vertices(label: FaceLabel) -> list[FaceLabel]:
    """Vertex labels of the vertices lying on the face ``label``."""
    _require_valid(label)
    return [v for v in enumerate_faces(label.users, 0) if merge_labels(v, label) == v]


def face_vertices(region, label: FaceLabel) -> np.ndarray:
    hrep = _as_hrep(region)
    return np.array([vertex_coordinates(hrep, v) for v in refining_vertices(label)])


def all_dominant_vertices(region) -> dict[tuple[int, ...], np.ndarray]:
    hrep = _as_hrep(region)
    return {p: dominant_vertex(hrep, p) for p in permutations(range(1, hrep.users + 1))}

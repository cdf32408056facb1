"""Discrete memoryless multiple-access channels and their mutual informations.

Users are numbered ``1..M`` throughout the package.  A subset of users is
passed as any iterable of those integers and stored as a ``frozenset``.
All information quantities are in bits.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import ChannelValidationError, ConsistencyError, PreconditionError

NORMALIZATION_TOL = 1e-12
# Negative MI beyond this is a bug, not rounding noise.
NEGATIVE_MI_TOL = 1e-9
PRECOMPUTE_MAX_USERS = 8

Subset = frozenset


def as_subset(users: Iterable[int], M: int) -> frozenset:
    s = frozenset(int(u) for u in users)
    bad = [u for u in s if not 1 <= u <= M]
    if bad:
        raise PreconditionError(f"users {sorted(bad)} outside 1..{M}")
    return s


def all_subsets(M: int, *, nonempty: bool = False) -> list[frozenset]:
    """Every subset of ``{1..M}``, ordered as a binary counter (user 1 = bit 0)."""
    start = 1 if nonempty else 0
    return [mask_to_set(mask) for mask in range(start, 1 << M)]


def set_to_mask(s: Iterable[int]) -> int:
    mask = 0
    for u in s:
        mask |= 1 << (u - 1)
    return mask


def mask_to_set(mask: int) -> frozenset:
    return frozenset(i + 1 for i in range(mask.bit_length()) if mask >> i & 1)


def format_set(s: Iterable[int]) -> str:
    return "{" + ",".join(str(u) for u in sorted(s)) + "}"


@dataclass(frozen=True, eq=False)
class ChannelSpec:
    """An M-user discrete MAC with a fixed product input distribution.

    ``transition`` has one row per input tuple, row-major with ``x_1``
    varying slowest, and one column per output symbol.
    """

    input_sizes: tuple[int, ...]
    output_size: int
    transition: np.ndarray
    input_pmfs: tuple[np.ndarray, ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        sizes = tuple(int(n) for n in self.input_sizes)
        object.__setattr__(self, "input_sizes", sizes)
        object.__setattr__(self, "transition", np.array(self.transition, dtype=float))
        object.__setattr__(
            self, "input_pmfs", tuple(np.array(p, dtype=float) for p in self.input_pmfs)
        )
        self.validate()
        self.transition.setflags(write=False)
        for p in self.input_pmfs:
            p.setflags(write=False)

    @property
    def users(self) -> int:
        return len(self.input_sizes)

    def validate(self) -> None:
        if len(self.input_sizes) < 1:
            raise ChannelValidationError("users", "need at least one user")
        if any(n < 1 for n in self.input_sizes):
            raise ChannelValidationError("input_sizes", "alphabet sizes must be >= 1")
        if self.output_size < 1:
            raise ChannelValidationError("output_size", "must be >= 1")
        W = self.transition
        rows = math.prod(self.input_sizes)
        if W.ndim != 2 or W.shape != (rows, self.output_size):
            raise ChannelValidationError(
                "transition",
                f"expected shape ({rows}, {self.output_size}), got {W.shape}",
            )
        if not np.all(np.isfinite(W)) or W.min() < 0 or W.max() > 1:
            raise ChannelValidationError("transition", "entries must lie in [0, 1]")
        row_sums = W.sum(axis=1)
        worst = int(np.argmax(np.abs(row_sums - 1)))
        if abs(row_sums[worst] - 1) > NORMALIZATION_TOL:
            raise ChannelValidationError(
                "transition", f"row {worst} sums to {row_sums[worst]!r}, not 1"
            )
        if len(self.input_pmfs) != len(self.input_sizes):
            raise ChannelValidationError(
                "input_pmfs", f"expected {len(self.input_sizes)} pmfs, got {len(self.input_pmfs)}"
            )
        for i, (p, n) in enumerate(zip(self.input_pmfs, self.input_sizes), start=1):
            if p.shape != (n,):
                raise ChannelValidationError(
                    "input_pmfs", f"pmf of user {i} has length {p.size}, alphabet has {n}"
                )
            if not np.all(np.isfinite(p)) or p.min() < 0 or p.max() > 1:
                raise ChannelValidationError("input_pmfs", f"pmf of user {i} leaves [0, 1]")
            if abs(p.sum() - 1) > NORMALIZATION_TOL:
                raise ChannelValidationError(
                    "input_pmfs", f"pmf of user {i} sums to {p.sum()!r}, not 1"
                )

    @property
    def transition_tensor(self) -> np.ndarray:
        """``W`` reshaped to ``(n_1, ..., n_M, n_Y)``."""
        return self.transition.reshape(*self.input_sizes, self.output_size)

    @cached_property
    def mi(self) -> "MICache":
        return MICache.from_spec(self)

    # -- serialization -------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "users": self.users,
            "input_sizes": list(self.input_sizes),
            "output_size": self.output_size,
            "input_pmfs": [p.tolist() for p in self.input_pmfs],
            "transition": self.transition.tolist(),
        }

    @classmethod
    def from_dict(cls, data: dict, name: str = "") -> "ChannelSpec":
        for key in ("users", "input_sizes", "output_size", "input_pmfs", "transition"):
            if key not in data:
                raise ChannelValidationError(key, "missing")
        if int(data["users"]) != len(data["input_sizes"]):
            raise ChannelValidationError(
                "users", f"{data['users']} users but {len(data['input_sizes'])} input sizes"
            )
        try:
            transition = np.array(data["transition"], dtype=float)
        except (TypeError, ValueError) as exc:
            raise ChannelValidationError("transition", f"not a numeric table ({exc})") from None
        try:
            pmfs = tuple(np.array(p, dtype=float) for p in data["input_pmfs"])
        except (TypeError, ValueError) as exc:
            raise ChannelValidationError("input_pmfs", f"not numeric ({exc})") from None
        return cls(
            input_sizes=tuple(data["input_sizes"]),
            output_size=int(data["output_size"]),
            transition=transition,
            input_pmfs=pmfs,
            name=name,
        )

    @classmethod
    def load(cls, path: str | Path) -> "ChannelSpec":
        path = Path(path)
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ChannelValidationError("file", f"{path}: invalid JSON ({exc})") from None
        return cls.from_dict(data, name=path.stem)

    def dumps(self) -> str:
        d = self.to_dict()
        rows = ",\n".join("    " + json.dumps(row) for row in d["transition"])
        return (
            "{\n"
            f'  "users": {d["users"]},\n'
            f'  "input_sizes": {json.dumps(d["input_sizes"])},\n'
            f'  "output_size": {d["output_size"]},\n'
            f'  "input_pmfs": {json.dumps(d["input_pmfs"])},\n'
            f'  "transition": [\n{rows}\n  ]\n'
            "}\n"
        )

    def dump(self, path: str | Path) -> None:
        Path(path).write_text(self.dumps(), encoding="utf-8")


def deterministic_channel(
    input_sizes: Sequence[int],
    output_of,
    input_pmfs: Sequence[Sequence[float]],
    *,
    output_size: int | None = None,
    name: str = "",
) -> ChannelSpec:
    """Build a channel whose output is the function ``output_of(x_1, ..., x_M)``.

    ``output_of`` must return an integer output symbol.
    """
    tuples = list(np.ndindex(*input_sizes))
    outputs = [int(output_of(*x)) for x in tuples]
    n_y = output_size if output_size is not None else max(outputs) + 1
    W = np.zeros((len(tuples), n_y))
    W[np.arange(len(tuples)), outputs] = 1.0
    return ChannelSpec(tuple(input_sizes), n_y, W, tuple(input_pmfs), name=name)


def _binary_pmfs(p_one: Sequence[float]) -> list[list[float]]:
    return [[1.0 - p, p] for p in p_one]


def integer_adder(M: int, p_one: Sequence[float] | None = None) -> ChannelSpec:
    """Binary inputs, ``Y = X_1 + ... + X_M`` as an integer.

    ``p_one[i]`` is the probability that user ``i+1`` sends a 1 (default 1/2).
    """
    p_one = [0.5] * M if p_one is None else list(p_one)
    return deterministic_channel(
        [2] * M, lambda *x: sum(x), _binary_pmfs(p_one), output_size=M + 1, name=f"adder{M}"
    )


def mod2_adder(M: int = 2, p_one: Sequence[float] | None = None) -> ChannelSpec:
    p_one = [0.5] * M if p_one is None else list(p_one)
    return deterministic_channel(
        [2] * M, lambda *x: sum(x) % 2, _binary_pmfs(p_one), output_size=2, name=f"xor{M}"
    )


def parallel_channels(M: int = 2, p_one: Sequence[float] | None = None) -> ChannelSpec:
    """Noiseless parallel bits: ``Y = (X_1, ..., X_M)`` encoded as an integer."""
    p_one = [0.5] * M if p_one is None else list(p_one)

    def out(*x):
        return sum(b << (M - 1 - i) for i, b in enumerate(x))

    return deterministic_channel(
        [2] * M, out, _binary_pmfs(p_one), output_size=2**M, name=f"parallel{M}"
    )


def binary_symmetric(crossover: float, p_one: float = 0.5) -> ChannelSpec:
    W = np.array([[1 - crossover, crossover], [crossover, 1 - crossover]])
    return ChannelSpec((2,), 2, W, ([1 - p_one, p_one],), name="bsc")


def joint_distribution(spec: ChannelSpec) -> np.ndarray:
    """Joint pmf of ``(x_1, ..., x_M, y)`` as an array of shape ``(n_1, ..., n_M, n_Y)``."""
    spec.validate()
    joint = spec.transition_tensor.copy()
    M = spec.users
    for i, p in enumerate(spec.input_pmfs):
        shape = [1] * (M + 1)
        shape[i] = p.size
        joint = joint * p.reshape(shape)
    return joint


def _entropy_terms(p: np.ndarray) -> float:
    nz = p[p > 0]
    return float(-(nz * np.log2(nz)).sum())


def conditional_output_entropy(joint: np.ndarray, given_mask: int) -> float:
    """``H(Y | X_A)`` where ``A`` is the bitmask ``given_mask``."""
    M = joint.ndim - 1
    drop = tuple(i for i in range(M) if not given_mask >> i & 1)
    marg = joint.sum(axis=drop) if drop else joint
    # marg has the kept input axes followed by y
    p_xa = marg.sum(axis=-1)
    return _entropy_terms(marg) - _entropy_terms(p_xa)


class MICache:
    """All conditional mutual informations ``I(X_S; Y | X_A)`` of one channel.

    Values derive from the ``2^M`` conditional output entropies
    ``H(Y | X_A)``, so the table of ``3^M`` values never needs to be
    materialised; :meth:`items` does so on demand.
    """

    def __init__(self, users: int, cond_entropy: np.ndarray):
        self.users = users
        self._h = np.asarray(cond_entropy, dtype=float)
        self._h.setflags(write=False)
        self._values: dict[tuple[frozenset, frozenset], float] = {}

    @classmethod
    def from_spec(cls, spec: ChannelSpec) -> "MICache":
        joint = joint_distribution(spec)
        M = spec.users
        h = np.array([conditional_output_entropy(joint, mask) for mask in range(1 << M)])
        cache = cls(M, h)
        if M <= PRECOMPUTE_MAX_USERS:
            cache.items()
        return cache

    def _value_masks(self, s: int, a: int) -> float:
        if s & a:
            raise PreconditionError("S and A must be disjoint")
        if s == 0:
            return 0.0
        v = float(self._h[a] - self._h[a | s])
        if v < 0:
            if v < -NEGATIVE_MI_TOL:
                raise ConsistencyError(
                    f"negative mutual information {v!r} for S={format_set(mask_to_set(s))}, "
                    f"A={format_set(mask_to_set(a))}"
                )
            v = 0.0
        return v

    def value(self, S: Iterable[int], A: Iterable[int] = ()) -> float:
        S = as_subset(S, self.users)
        A = as_subset(A, self.users)
        key = (S, A)
        v = self._values.get(key)
        if v is None:
            v = self._value_masks(set_to_mask(S), set_to_mask(A))
            self._values[key] = v
        return v

    __call__ = value

    def value_mask(self, s: int, a: int) -> float:
        return self._value_masks(s, a)

    def front_bound(self, S: Iterable[int]) -> float:
        """``I(X_S; Y | X_{S^c})``."""
        S = as_subset(S, self.users)
        return self.value(S, frozenset(range(1, self.users + 1)) - S)

    def items(self) -> dict[tuple[frozenset, frozenset], float]:
        """The full ``(S, A) -> I(X_S; Y | X_A)`` table, ``3^M`` entries."""
        M = self.users
        full = (1 << M) - 1
        for a in range(1 << M):
            rest = full & ~a
            s = rest
            while True:
                key = (mask_to_set(s), mask_to_set(a))
                if key not in self._values:
                    self._values[key] = self._value_masks(s, a)
                if s == 0:
                    break
                s = (s - 1) & rest
        return dict(self._values)


def mutual_info(spec: ChannelSpec, S: Iterable[int], A: Iterable[int] = ()) -> float:
    """``I(X_S; Y | X_A)`` in bits, memoised on ``spec``."""
    return spec.mi.value(S, A)


def front_bounds(spec: ChannelSpec) -> dict[frozenset, float]:
    """``I(X_S; Y | X_{S^c})`` for every nonempty ``S``."""
    return {S: spec.mi.front_bound(S) for S in all_subsets(spec.users, nonempty=True)}


def subsets_of(s: frozenset, *, proper: bool = False, nonempty: bool = False):
    items = sorted(s)
    for k in range(len(items) + 1):
        if nonempty and k == 0:
            continue
        if proper and k == len(items):
            continue
        for c in combinations(items, k):
            yield frozenset(c)

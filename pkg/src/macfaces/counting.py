"""Exact face counts of a non-degenerate M-user rate region.

Everything here is channel-free integer arithmetic.  ``N_d`` counts faces
of the dominant facet, ``N_f`` front faces (no zero-rate user), ``N_b``
back faces and ``N`` all faces, each by dimension ``D``.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import TextIO

from .errors import ConsistencyError, PreconditionError

TABLE_CAP = 24


@lru_cache(maxsize=None)
def stirling2(n: int, k: int) -> int:
    """Stirling number of the second kind ``S(n, k)``."""
    if n < 0 or k < 0:
        raise PreconditionError("n and k must be nonnegative")
    if k > n:
        raise PreconditionError(f"k={k} exceeds n={n}")
    if k == n:
        return 1
    if k == 0:
        return 0
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)


def _alternating_dominant(M: int, D: int) -> int:
    n = M - D
    return sum(math.comb(n, j) * (-1) ** (n - j) * j**M for j in range(1, n + 1))


def count_dominant(M: int, D: int) -> int:
    """``N_d(M, D)``: D-dimensional faces of the dominant facet.

    Besides ``0 <= D <= M-1`` this accepts ``D = M`` (0, the facet has no
    M-dimensional face) and ``D = -1`` (0).
    """
    if M < 0:
        raise PreconditionError("M must be nonnegative")
    if D == M:
        return 0
    if D == -1:
        return 0
    if not 0 <= D < M:
        raise PreconditionError(f"D={D} outside 0..{M - 1}")
    if D == M - 1:
        return 1
    value = _alternating_dominant(M, D)
    if value != math.factorial(M - D) * stirling2(M, M - D):
        raise ConsistencyError(f"alternating sum disagrees with Stirling form at M={M}, D={D}")
    return value


def count_front(M: int, D: int) -> int:
    """``N_f(M, D) = N_d(M, D) + N_d(M, D-1)``."""
    if not 0 <= D <= M:
        raise PreconditionError(f"D={D} outside 0..{M}")
    if D == M:
        # the region itself (for M = 0, the single point)
        return 1
    return count_dominant(M, D) + count_dominant(M, D - 1)


def count_back(M: int, D: int) -> int:
    if not 0 <= D <= M:
        raise PreconditionError(f"D={D} outside 0..{M}")
    return sum(math.comb(M, i) * count_front(i, D) for i in range(D, M))


def _total_closed_form(M: int, D: int) -> int:
    total = 0
    for i in range(D, M + 1):
        n = i - D
        inner = (n + 1) ** i - sum(
            math.comb(n, j - 1) * (-1) ** (n - j) * j**i for j in range(1, n + 1)
        )
        total += math.comb(M, i) * inner
    return total


def _total_by_front_faces(M: int, D: int) -> int:
    return sum(math.comb(M, i) * count_front(i, D) for i in range(D, M + 1))


def count_total(M: int, D: int) -> int:
    """``N(M, D)``, evaluated two ways that must agree."""
    if M < 0 or not 0 <= D <= M:
        raise PreconditionError(f"need 0 <= D <= M, got M={M}, D={D}")
    closed = _total_closed_form(M, D)
    summed = _total_by_front_faces(M, D)
    if closed != summed:
        raise ConsistencyError(f"N({M},{D}): closed form {closed} != front-face sum {summed}")
    return closed


def count_vertices(M: int) -> int:
    """``sum_{i=0}^{M} M!/i!``, which equals ``floor(e * M!)``."""
    if M < 1:
        raise PreconditionError("M must be >= 1")
    f = math.factorial(M)
    return sum(f // math.factorial(i) for i in range(M + 1))


def count_edges(M: int) -> int:
    twice = M * count_vertices(M)
    if twice % 2:
        raise ConsistencyError(f"M * vertices is odd for M={M}")
    return twice // 2


def facet_counts(M: int) -> tuple[int, int]:
    """``(facets of the region, facets of the dominant facet)``.

    For M = 1 the dominant facet is a point and the second entry is 0.
    """
    if M < 1:
        raise PreconditionError("M must be >= 1")
    region, dominant = M + 2**M - 1, 2**M - 2
    if region != count_total(M, M - 1):
        raise ConsistencyError(f"facet count mismatch for M={M}")
    if M >= 2 and dominant != count_dominant(M, M - 2):
        raise ConsistencyError(f"dominant facet count mismatch for M={M}")
    return region, dominant


@dataclass(frozen=True)
class FaceCounts:
    users: int
    per_dim: tuple[int, ...]
    dominant: tuple[int, ...]
    front: tuple[int, ...]
    back: tuple[int, ...]

    def __str__(self) -> str:
        return " ".join(f"D={d}:{n}" for d, n in enumerate(self.per_dim))


def face_counts(M: int) -> FaceCounts:
    dims = range(M + 1)
    fc = FaceCounts(
        M,
        tuple(count_total(M, d) for d in dims),
        tuple(count_dominant(M, d) for d in dims),
        tuple(count_front(M, d) for d in dims),
        tuple(count_back(M, d) for d in dims),
    )
    for d in dims:
        if fc.per_dim[d] != fc.front[d] + fc.back[d]:
            raise ConsistencyError(f"N != N_f + N_b at M={M}, D={d}")
    return fc


def count_table(M_max: int) -> list[list[int]]:
    """Row ``M-1`` holds ``[N(M, 0), ..., N(M, M)]``."""
    if not 1 <= M_max <= TABLE_CAP:
        raise PreconditionError(f"M_max must lie in 1..{TABLE_CAP}")
    return [list(face_counts(M).per_dim) for M in range(1, M_max + 1)]


CSV_HEADER = ("M", "D", "N_total", "N_dominant", "N_front", "N_back")


def write_count_csv(M_max: int, out: TextIO) -> None:
    if not 1 <= M_max <= TABLE_CAP:
        raise PreconditionError(f"M_max must lie in 1..{TABLE_CAP}")
    w = csv.writer(out, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for M in range(1, M_max + 1):
        fc = face_counts(M)
        for d in range(M + 1):
            w.writerow((M, d, fc.per_dim[d], fc.dominant[d], fc.front[d], fc.back[d]))


def count_csv(M_max: int) -> str:
    buf = io.StringIO()
    write_count_csv(M_max, buf)
    return buf.getvalue()

"""Formula-free ground truth: vertices and faces straight from the inequalities.

Nothing here uses labels or counting formulas; :func:`cross_validate`
compares this geometry against them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .counting import count_total
from .errors import CapacityError, ConsistencyError
from .facelattice import enumerate_faces, face_dim, merge_labels, vertex_coordinates
from .region import HRep, build_hrep

SINGULAR_PIVOT = 1e-10
FEASIBILITY_TOL = 1e-9
DEDUP_RADIUS = 1e-7
RANK_TOL = 1e-7
VERTEX_CAP = 5
LATTICE_CAP = 4
_BATCH = 20000


@dataclass(frozen=True, eq=False)
class VertexSet:
    vertices: np.ndarray  # (n_vertices, M)
    incidence: tuple[frozenset, ...]  # tight constraint indices per vertex

    def __len__(self):
        return len(self.vertices)

    def find(self, point, radius: float = DEDUP_RADIUS) -> int | None:
        if not len(self.vertices):
            return None
        d = np.abs(self.vertices - np.asarray(point, dtype=float)).max(axis=1)
        k = int(np.argmin(d))
        return k if d[k] <= radius else None


@dataclass(frozen=True)
class GeometricFace:
    facet_set: frozenset
    vertex_ids: frozenset
    dim: int


def _solve_batch(A: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Jordan with partial pivoting on a stack of square systems.

    Returns ``(x, ok)``; ``ok`` is False where some pivot fell below
    ``SINGULAR_PIVOT``.
    """
    K, n, _ = A.shape
    aug = np.concatenate([A, b[:, :, None]], axis=2).astype(float)
    ok = np.ones(K, dtype=bool)
    rows = np.arange(K)
    for c in range(n):
        piv = c + np.argmax(np.abs(aug[:, c:, c]), axis=1)
        top = aug[rows, c].copy()
        aug[rows, c] = aug[rows, piv]
        aug[rows, piv] = top
        p = aug[:, c, c]
        small = np.abs(p) < SINGULAR_PIVOT
        ok &= ~small
        p = np.where(small, 1.0, p)
        aug[:, c, :] /= p[:, None]
        factors = aug[:, :, c].copy()
        factors[:, c] = 0.0
        aug -= factors[:, :, None] * aug[:, c, None, :]
    return aug[:, :, n], ok


def enumerate_vertices(hrep: HRep, tol: float = FEASIBILITY_TOL, *,
                       cap: int = VERTEX_CAP) -> VertexSet:
    """All vertices, by solving every M-subset of constraints as equalities."""
    M = hrep.users
    if M > cap:
        raise CapacityError(f"vertex enumeration capped at M={cap}, got M={M}")
    A, b = hrep.matrix
    idx = np.array(list(combinations(range(len(b)), M)), dtype=np.intp)
    found: list[np.ndarray] = []
    for start in range(0, len(idx), _BATCH):
        chunk = idx[start:start + _BATCH]
        x, ok = _solve_batch(A[chunk], b[chunk])
        x = x[ok]
        feasible = np.all(x @ A.T <= b + tol, axis=1)
        found.extend(x[feasible])
    kept: list[np.ndarray] = []
    for x in found:
        if not kept or np.abs(np.array(kept) - x).max(axis=1).min() > DEDUP_RADIUS:
            kept.append(x)
    verts = np.array(sorted(kept, key=lambda v: tuple(np.round(v, 9)))).reshape(-1, M)
    incidence = []
    for v in verts:
        tight = np.flatnonzero(np.abs(A @ v - b) <= tol)
        if len(tight) < M or np.linalg.matrix_rank(A[tight]) < M:
            raise ConsistencyError(f"vertex {v.tolist()} is not pinned by its tight constraints")
        incidence.append(frozenset(int(t) for t in tight))
    return VertexSet(verts, tuple(incidence))


def affine_rank(points: np.ndarray) -> int:
    if len(points) <= 1:
        return 0
    diffs = points[1:] - points[0]
    s = np.linalg.svd(diffs, compute_uv=False)
    return int(np.sum(s > RANK_TOL))


def build_face_lattice(vs: VertexSet, hrep: HRep, tol: float = FEASIBILITY_TOL, *,
                       cap: int = LATTICE_CAP) -> list[GeometricFace]:
    """Every nonempty face, found as an intersection of constraint-tight vertex sets.

    Closing the family of constraint vertex sets under intersection yields
    exactly the vertex sets obtained from all subsets of constraints,
    without visiting each subset.  Sorted by dimension, then vertex ids.
    """
    M = hrep.users
    if M > cap:
        raise CapacityError(f"face lattice capped at M={cap}, got M={M}")
    n_cons = len(hrep.constraints)
    everything = frozenset(range(len(vs)))
    per_constraint = [
        frozenset(v for v in everything if k in vs.incidence[v]) for k in range(n_cons)
    ]
    generators = {s for s in per_constraint if s}
    family = {everything} | generators
    frontier = set(generators)
    while frontier:
        new = set()
        for face in frontier:
            for g in generators:
                inter = face & g
                if inter and inter not in family:
                    new.add(inter)
        family |= new
        frontier = new
    faces = []
    for ids in family:
        facet_set = frozenset.intersection(*(vs.incidence[v] for v in ids))
        pts = vs.vertices[sorted(ids)]
        faces.append(GeometricFace(facet_set, ids, affine_rank(pts)))
    faces.sort(key=lambda f: (f.dim, sorted(f.vertex_ids)))
    return faces


def counts_by_dim(faces: list[GeometricFace], M: int) -> list[int]:
    out = [0] * (M + 1)
    for f in faces:
        out[f.dim] += 1
    return out


@dataclass
class ValidationReport:
    users: int
    oracle_counts: list[int]
    formula_counts: list[int]
    matches: list[dict] = field(default_factory=list)
    mismatches: list[str] = field(default_factory=list)
    pairs_checked: int = 0

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def to_dict(self) -> dict:
        return {
            "users": self.users,
            "ok": self.ok,
            "oracle_counts": self.oracle_counts,
            "formula_counts": self.formula_counts,
            "pairs_checked": self.pairs_checked,
            "matches": self.matches,
            "mismatches": self.mismatches,
        }


def label_vertex_ids(label, hrep: HRep, vs: VertexSet) -> frozenset:
    """Oracle vertices satisfying the label's equalities and zero rates."""
    needed = {hrep.front_index(s) for s in label.chain}
    needed |= {hrep.back_index(i) for i in label.zeros}
    return frozenset(v for v, inc in enumerate(vs.incidence) if needed <= inc)


def cross_validate(region, *, check_pairs: bool = True) -> ValidationReport:
    """Compare labels, dimensions, intersections and counts with the oracle."""
    hrep = region if isinstance(region, HRep) else build_hrep(region)
    hrep.require_nondegenerate()
    M = hrep.users
    vs = enumerate_vertices(hrep)
    faces = build_face_lattice(vs, hrep)
    by_vertices = {f.vertex_ids: f for f in faces}
    report = ValidationReport(
        M, counts_by_dim(faces, M), [count_total(M, d) for d in range(M + 1)]
    )
    if report.oracle_counts != report.formula_counts:
        report.mismatches.append(
            f"face counts: oracle {report.oracle_counts} != formula {report.formula_counts}"
        )
    labels = enumerate_faces(M)
    label_ids = {}
    hit: dict[frozenset, list] = {}
    for lab in labels:
        ids = label_vertex_ids(lab, hrep, vs)
        label_ids[lab] = ids
        face = by_vertices.get(ids)
        row = {"label": str(lab), "dim": face_dim(lab), "vertex_ids": sorted(ids)}
        if face is None:
            row["oracle_dim"] = None
            report.mismatches.append(f"{lab}: no geometric face with vertices {sorted(ids)}")
        else:
            row["oracle_dim"] = face.dim
            hit.setdefault(ids, []).append(lab)
            if face.dim != face_dim(lab):
                report.mismatches.append(
                    f"{lab}: label dimension {face_dim(lab)} != oracle dimension {face.dim}"
                )
            if face.dim == 0:
                (v,) = ids
                expect = vertex_coordinates(hrep, lab)
                if np.abs(vs.vertices[v] - expect).max() > DEDUP_RADIUS:
                    report.mismatches.append(
                        f"{lab}: decoding-order coordinates {expect.tolist()} != "
                        f"oracle vertex {vs.vertices[v].tolist()}"
                    )
        report.matches.append(row)
    for ids, labs in hit.items():
        if len(labs) > 1:
            report.mismatches.append(
                f"labels {', '.join(map(str, labs))} share the face {sorted(ids)}"
            )
    for f in faces:
        if f.vertex_ids not in hit:
            report.mismatches.append(
                f"oracle face of dim {f.dim} with vertices {sorted(f.vertex_ids)} has no label"
            )
    if check_pairs:
        for a, b in combinations(labels, 2):
            report.pairs_checked += 1
            merged = merge_labels(a, b)
            inter = label_ids[a] & label_ids[b]
            if merged is None:
                if inter:
                    report.mismatches.append(f"{a} and {b}: merge empty but faces meet")
            elif not inter:
                report.mismatches.append(f"{a} and {b}: merge {merged} but faces are disjoint")
            elif label_ids.get(merged, label_vertex_ids(merged, hrep, vs)) != inter:
                report.mismatches.append(f"{a} and {b}: merge {merged} is not the intersection")
    return report

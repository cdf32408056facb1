"""
Checking labels against brute force
===================================

Solve every square subsystem of the inequalities, keep the feasible points and
close their tight sets under intersection. The resulting face lattice should
match the labels one for one.
"""

import time

from macfaces import build_hrep, cross_validate, load_fixture
from macfaces.oracle import build_face_lattice, counts_by_dim, enumerate_vertices

region = build_hrep(load_fixture("adder3_biased"))
vs = enumerate_vertices(region)
print(len(vs), "vertices")
print(vs.vertices.round(3))

faces = build_face_lattice(vs, region)
print(counts_by_dim(faces, 3))

###############################################################################
# Full comparison, four users included.

for name in ["adder2", "adder3_biased", "adder4_biased"]:
    t = time.perf_counter()
    report = cross_validate(load_fixture(name))
    print(name, report.oracle_counts, report.ok, report.pairs_checked,
          f"{time.perf_counter() - t:.2f}s")

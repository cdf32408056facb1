"""
Face labels and decoding orders
===============================

Every face of a non-degenerate region is tagged by a nested chain of user sets
plus a set of silent users. Reading the chain from the outside in gives the
order in which a successive decoder peels users off.
"""

from itertools import permutations

from macfaces import (
    build_hrep,
    decoding_order,
    dominant_vertex,
    enumerate_faces,
    face_dim,
    load_fixture,
    locate_minimal_face,
    merge_labels,
    parse_label,
)

for lab in enumerate_faces(2):
    print(lab, face_dim(lab), decoding_order(lab))

###############################################################################
# Merging two labels is the label of the intersection, or None.

a = parse_label("F({1,2,3}|)", 3)
b = parse_label("F({1,3}|)", 3)
print(merge_labels(a, b))
print(merge_labels(parse_label("F({1}|)", 3), parse_label("F({2}|)", 3)))

###############################################################################
# Corner points on the sum-rate facet: one per permutation.

region = build_hrep(load_fixture("adder3_biased"))
for order in permutations([1, 2, 3]):
    r = dominant_vertex(region, order)
    lab = locate_minimal_face(region, r)
    print(order, r.round(4), lab, decoding_order(lab))

###############################################################################
# A point in the middle of an edge needs a joint decode of two users.

r = 0.5 * dominant_vertex(region, (1, 2, 3)) + 0.5 * dominant_vertex(region, (2, 1, 3))
lab = locate_minimal_face(region, r)
print(lab, face_dim(lab), decoding_order(lab))

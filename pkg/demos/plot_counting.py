"""
Counting faces without building them
====================================

Face counts depend only on the number of users. Vertices grow like e times M!
and the sum-rate facet alone is a permutohedron.
"""

import math

from macfaces import count_dominant, count_total, count_vertices, face_counts

for M in range(1, 7):
    print(M, face_counts(M))

# the sum-rate facet of four users
print([count_dominant(4, d) for d in range(4)])

###############################################################################
# Ratio of vertices to M! approaches e quickly.

for M in (5, 10, 15, 20):
    print(M, count_vertices(M) / math.factorial(M))
print(math.e)

###############################################################################
# Python integers keep the big rows exact.

print(count_total(24, 12))

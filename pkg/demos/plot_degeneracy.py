"""
Spotting degenerate regions
===========================

A region only has the full set of faces when every group of users carries
information on its own and conditioning strictly helps. The mod-2 adder and
two parallel links both break this.
"""

from macfaces import check_degeneracy, load_fixture

for name in ["xor2", "parallel2", "adder2", "adder3_biased"]:
    report = check_degeneracy(load_fixture(name))
    print(name, "ok" if report.nondegenerate else "degenerate")
    for v in report.violations[:3]:
        print("   ", v.message)

###############################################################################
# With XOR, one input alone says nothing about the output, so the region is
# a square with a corner cut at exactly the point where two vertices merge.

xor = load_fixture("xor2").mi
print(xor.value({1}), xor.value({1}, {2}), xor.value({1, 2}))

###############################################################################
# A larger margin makes the test stricter.

report = check_degeneracy(load_fixture("adder2"), margin=0.75)
print(report.nondegenerate, len(report.violations))

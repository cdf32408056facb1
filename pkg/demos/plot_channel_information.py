"""
Information quantities of a two-user adder
==========================================

Two binary users send into a channel whose output is the integer sum of the
inputs. We build the channel, print the conditional mutual informations that
bound the rate region and look at the joint law behind them.
"""

import numpy as np

from macfaces import integer_adder, joint_distribution

spec = integer_adder(2)
print(spec.transition)

# joint law over (x1, x2, y)
p = joint_distribution(spec)
print(p.shape, p.sum())

# the three bounds of the region
mi = spec.mi
print("I(X1;Y|X2) =", mi.value({1}, {2}))
print("I(X2;Y|X1) =", mi.value({2}, {1}))
print("I(X1,X2;Y) =", mi.value({1, 2}))

# the sum bound is tighter than the two singles added up
print(mi.value({1}, {2}) + mi.value({2}, {1}) - mi.value({1, 2}))

###############################################################################
# Biasing the inputs changes every bound but keeps the same shape.

biased = integer_adder(2, [0.2, 0.4])
for S, A in [({1}, ()), ({2}, ()), ({1}, {2}), ({2}, {1}), ({1, 2}, ())]:
    print(sorted(S), sorted(A), round(biased.mi.value(S, A), 4))

###############################################################################
# Round trip through JSON.

from macfaces import ChannelSpec

again = ChannelSpec.from_dict(biased.to_dict())
print(np.allclose(again.transition, biased.transition))

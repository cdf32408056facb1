"""Slow, obviously-correct reference computations used only by the tests."""

from __future__ import annotations

import math
from collections import defaultdict
from fractions import Fraction
from itertools import product


def joint_cells(spec):
    """Yield ``(x_tuple, y, probability)`` by explicit enumeration."""
    pmfs = [list(map(float, p)) for p in spec.input_pmfs]
    W = spec.transition.tolist()
    for row, x in enumerate(product(*(range(n) for n in spec.input_sizes))):
        px = math.prod(pmfs[i][xi] for i, xi in enumerate(x))
        for y, w in enumerate(W[row]):
            yield x, y, px * w


def mutual_info(spec, S, A=()):
    """``I(X_S; Y | X_A)`` as a direct log-ratio sum over the joint pmf."""
    S = sorted(S)
    A = sorted(A)
    p_sa_y = defaultdict(float)
    p_a_y = defaultdict(float)
    p_sa = defaultdict(float)
    p_a = defaultdict(float)
    for x, y, p in joint_cells(spec):
        xs = tuple(x[u - 1] for u in S)
        xa = tuple(x[u - 1] for u in A)
        p_sa_y[xs, xa, y] += p
        p_a_y[xa, y] += p
        p_sa[xs, xa] += p
        p_a[xa] += p
    total = 0.0
    for (xs, xa, y), p in p_sa_y.items():
        if p > 0:
            total += p * math.log2(p * p_a[xa] / (p_sa[xs, xa] * p_a_y[xa, y]))
    return total


def set_partitions(items):
    """All partitions of a list into nonempty blocks."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        for k in range(len(part)):
            yield part[:k] + [[first] + part[k]] + part[k + 1:]
        yield [[first]] + part


def stirling2(n, k):
    return sum(1 for p in set_partitions(list(range(n))) if len(p) == k)


def ordered_partitions(n, k):
    """Ordered partitions of an n-set into k blocks, by enumerating block assignments."""
    return sum(1 for f in product(range(k), repeat=n) if len(set(f)) == k)


def e_truncated(terms):
    """Lower bound on e: the Taylor partial sum with ``terms`` terms, exact."""
    total = Fraction(0)
    fact = 1
    for i in range(terms):
        if i:
            fact *= i
        total += Fraction(1, fact)
    return total


E_50_DIGITS = "2.71828182845904523536028747135266249775724709369995"


def floor_e_times_factorial(M):
    """``floor(e * M!)`` from 50 decimal digits of e, checked against a Taylor bracket."""
    e_dec = Fraction(E_50_DIGITS)
    lower = e_truncated(M + 60)
    assert abs(e_dec - lower) < Fraction(1, 10**49)
    f = math.factorial(M)
    value = math.floor(e_dec * f)
    # e lies in [e_dec, e_dec + 1e-50); the floor must not straddle an integer
    assert math.floor((e_dec + Fraction(1, 10**50)) * f) == value
    return value

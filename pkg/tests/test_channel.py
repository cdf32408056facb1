import math
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import brute
from macfaces.channel import (
    ChannelSpec,
    all_subsets,
    integer_adder,
    joint_distribution,
    mod2_adder,
    mutual_info,
    parallel_channels,
)
from macfaces.errors import ChannelValidationError, PreconditionError


def identity_channel():
    return ChannelSpec((2,), 2, np.eye(2), ([0.5, 0.5],))


@st.composite
def channels(draw, max_users=3, max_alphabet=3):
    M = draw(st.integers(1, max_users))
    sizes = tuple(draw(st.integers(1, max_alphabet)) for _ in range(M))
    n_y = draw(st.integers(1, max_alphabet))
    weights = st.integers(0, 6)
    rows = []
    for _ in range(math.prod(sizes)):
        w = [draw(weights) for _ in range(n_y)]
        if sum(w) == 0:
            w[draw(st.integers(0, n_y - 1))] = 1
        rows.append([x / sum(w) for x in w])
    pmfs = []
    for n in sizes:
        w = [draw(st.integers(1, 6)) for _ in range(n)]
        pmfs.append([x / sum(w) for x in w])
    return ChannelSpec(sizes, n_y, np.array(rows), tuple(pmfs))


def disjoint_triples(M):
    """All (S, T, A) with pairwise disjoint members, via a 4-colouring of users."""
    for colours in product(range(4), repeat=M):
        S = {u + 1 for u, c in enumerate(colours) if c == 1}
        T = {u + 1 for u, c in enumerate(colours) if c == 2}
        A = {u + 1 for u, c in enumerate(colours) if c == 3}
        yield S, T, A


# -- joint distribution ---------------------------------------------------


def test_joint_identity_channel():
    joint = joint_distribution(identity_channel())
    np.testing.assert_allclose(joint, [[0.5, 0.0], [0.0, 0.5]])


def test_joint_mod2_adder():
    joint = joint_distribution(mod2_adder(2))
    for x1, x2, y in product(range(2), repeat=3):
        assert joint[x1, x2, y] == (0.25 if y == x1 ^ x2 else 0.0)


def test_joint_integer_adder_middle_output():
    joint = joint_distribution(integer_adder(2))
    # inputs (0,1) and (1,0) each carry 1/4
    assert joint[..., 1].sum() == pytest.approx(0.5, abs=1e-15)


def test_row_major_input_order():
    # x_1 slowest: row 1 is (x1=0, x2=1)
    W = np.array([[1, 0], [0, 1], [1, 0], [1, 0]], dtype=float)
    spec = ChannelSpec((2, 2), 2, W, ([0.5, 0.5], [0.5, 0.5]))
    assert spec.transition_tensor[0, 1, 1] == 1.0
    assert spec.transition_tensor[1, 0, 1] == 0.0


@given(channels())
@settings(max_examples=40, deadline=None)
def test_joint_is_normalised(spec):
    joint = joint_distribution(spec)
    assert joint.min() >= 0
    assert abs(joint.sum() - 1) <= 1e-12


# -- validation ------------------------------------------------------------


@pytest.mark.parametrize(
    "kwargs, field",
    [
        (dict(transition=np.ones((3, 2)) / 2), "transition"),
        (dict(transition=np.array([[0.5, 0.6]] * 4)), "transition"),
        (dict(transition=np.array([[1.5, -0.5]] * 4)), "transition"),
        (dict(input_pmfs=([0.5, 0.5], [0.4, 0.5])), "input_pmfs"),
        (dict(input_pmfs=([0.5, 0.5],)), "input_pmfs"),
        (dict(input_pmfs=([0.5, 0.5], [1.0])), "input_pmfs"),
        (dict(output_size=3), "transition"),
    ],
)
def test_malformed_spec_names_field(kwargs, field):
    base = dict(
        input_sizes=(2, 2),
        output_size=2,
        transition=np.array([[1, 0], [0, 1], [0, 1], [1, 0]], dtype=float),
        input_pmfs=([0.5, 0.5], [0.5, 0.5]),
    )
    base.update(kwargs)
    with pytest.raises(ChannelValidationError) as info:
        ChannelSpec(**base)
    assert info.value.field == field


def test_json_roundtrip(tmp_path):
    spec = integer_adder(3, [0.1, 0.2, 0.3])
    path = tmp_path / "c.json"
    spec.dump(path)
    again = ChannelSpec.load(path)
    assert again.input_sizes == spec.input_sizes
    np.testing.assert_array_equal(again.transition, spec.transition)
    for a, b in zip(again.input_pmfs, spec.input_pmfs):
        np.testing.assert_array_equal(a, b)


def test_from_dict_user_count_mismatch():
    d = integer_adder(2).to_dict()
    d["users"] = 3
    with pytest.raises(ChannelValidationError) as info:
        ChannelSpec.from_dict(d)
    assert info.value.field == "users"


def test_invalid_json(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{nope")
    with pytest.raises(ChannelValidationError):
        ChannelSpec.load(path)


# -- mutual information ----------------------------------------------------


def test_mod2_adder_single_user_information_is_zero():
    spec = mod2_adder(2)
    assert mutual_info(spec, {1}) == 0.0
    assert mutual_info(spec, {2}) == 0.0


def test_parallel_channels():
    spec = parallel_channels(2)
    assert mutual_info(spec, {1}, {2}) == pytest.approx(1.0, abs=1e-12)
    assert mutual_info(spec, {1}) == pytest.approx(1.0, abs=1e-12)


def test_integer_adder_single_user():
    # H(Y) = 1.5 for pmf (1/4, 1/2, 1/4), H(Y|X_1) = 1
    spec = integer_adder(2)
    assert mutual_info(spec, {1}) == pytest.approx(0.5, abs=1e-12)
    assert brute.mutual_info(spec, {1}) == pytest.approx(0.5, abs=1e-12)


def test_three_user_adder_sum_rate():
    # entropy of Binomial(3, 1/2)
    expected = 0.75 + 0.75 * math.log2(8 / 3)
    assert mutual_info(integer_adder(3), {1, 2, 3}) == pytest.approx(expected, abs=1e-12)


def test_overlapping_sets_rejected():
    with pytest.raises(PreconditionError):
        mutual_info(integer_adder(2), {1}, {1})


def test_users_out_of_range_rejected():
    with pytest.raises(PreconditionError):
        mutual_info(integer_adder(2), {3})


def test_empty_set_carries_nothing():
    spec = integer_adder(3, [0.1, 0.2, 0.3])
    for A in all_subsets(3):
        assert mutual_info(spec, (), A) == 0.0


def test_cache_table_size():
    table = integer_adder(3).mi.items()
    assert len(table) == 3**3


@given(channels())
@settings(max_examples=40, deadline=None)
def test_matches_direct_log_ratio_sum(spec):
    M = spec.users
    for S, _, A in disjoint_triples(M):
        assert mutual_info(spec, S, A) == pytest.approx(brute.mutual_info(spec, S, A), abs=1e-10)


@given(channels())
@settings(max_examples=40, deadline=None)
def test_chain_rule(spec):
    mi = spec.mi
    for S, T, A in disjoint_triples(spec.users):
        lhs = mi.value(S | T, A)
        rhs = mi.value(S, A) + mi.value(T, A | S)
        assert abs(lhs - rhs) <= 1e-9


@given(channels())
@settings(max_examples=40, deadline=None)
def test_conditioning_on_independent_inputs_never_hurts(spec):
    mi = spec.mi
    for S, T, A in disjoint_triples(spec.users):
        B = A | T
        assert mi.value(S, A) <= mi.value(S, B) + 1e-9
        assert mi.value(S, ()) <= mi.value(S, A) + 1e-9

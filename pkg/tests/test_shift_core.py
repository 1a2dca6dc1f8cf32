"""
约束规格、可行性剪枝与 γ 递推的测试
"""

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fibtree.core import (
    BadMatrix,
    EmptyShift,
    count_colorings_dp,
    derive_degree1,
    enumerate_colorings_naive,
    full_binary_viable,
    gamma_sequence,
    gamma_two_step,
    iter_gamma,
    raw_spec,
    recurrence_coefficients,
    spec_from_triples,
    spec_from_vertex_matrices,
    viability_prune,
)
from fibtree.schemas import RootType

from tests.utils import get_current_test_logger

log = get_current_test_logger()

ALL_2x2 = [np.array(bits).reshape(2, 2) for bits in itertools.product((0, 1), repeat=4)]


def _vertex_spec_or_none(A1, A2):
    try:
        return spec_from_vertex_matrices(["1", "2"], A1, A2)
    except EmptyShift:
        return None


# ==========================================
# 构造与剪枝
# ==========================================


def test_golden_mean_triples_and_pairs(golden):
    assert golden.sorted_triples() == [(0, 0, 0), (0, 0, 1), (0, 1, 0), (0, 1, 1), (1, 0, 0)]
    assert golden.sorted_pairs() == [(0, 0), (0, 1), (1, 0)]
    assert golden.provenance.kind == "vertex"
    assert golden.removed == ()


def test_identity_triples_and_pairs(identity2):
    assert identity2.sorted_triples() == [(0, 0, 0), (1, 1, 1)]
    assert identity2.sorted_pairs() == [(0, 0), (1, 1)]


def test_zero_row_symbol_is_pruned():
    spec = spec_from_vertex_matrices(["1", "2"], [[1, 1], [0, 0]], [[1, 1], [1, 1]])
    assert spec.alphabet == ("1",)
    assert spec.removed == ("2",)
    assert spec.sorted_triples() == [(0, 0, 0)]


@pytest.mark.parametrize(
    ("A1", "reason"),
    [([[1, 1, 0], [1, 0, 0]], "shape"), ([[1, 2], [1, 0]], "0 or 1")],
)
def test_bad_matrix(A1, reason):
    with pytest.raises(BadMatrix, match=reason):
        spec_from_vertex_matrices(["1", "2"], A1, [[1, 1], [1, 0]])


def test_full_binary_viable_and_degree1():
    triples = {(0, 0, 1)}
    assert full_binary_viable(triples, 2) == set()
    assert derive_degree1(triples, set()) == frozenset()

    full = set(itertools.product(range(2), repeat=3))
    assert derive_degree1(full, full_binary_viable(full, 2)) == frozenset(
        itertools.product(range(2), repeat=2)
    )


def test_single_triple_prunes_to_empty():
    with pytest.raises(EmptyShift) as exc:
        spec_from_triples(["1", "2"], [["1", "1", "2"]])
    assert set(exc.value.removed) == {"1", "2"}


def test_prune_is_idempotent_and_keeps_golden(golden, full2):
    for spec in (golden, full2):
        again, report = viability_prune(spec)
        assert not report.changed
        assert again.same_shift(spec)


def test_prune_remaps_indices():
    # b 只能作为方向 1 的孩子出现，但它自己没有任何三元组
    spec = spec_from_triples(["a", "b", "c"], [["a", "a", "c"], ["c", "c", "c"], ["a", "b", "b"]])
    assert spec.alphabet == ("a", "c")
    assert spec.removed == ("b",)
    assert spec.labelled_triples() == [("a", "a", "c"), ("c", "c", "c")]


def test_unknown_triple_label():
    with pytest.raises(BadMatrix, match="'x'"):
        spec_from_triples(["a"], [["a", "a", "x"]])


# ==========================================
# γ 递推
# ==========================================


def test_golden_mean_gamma(golden):
    table = gamma_sequence(golden, 4)
    assert table.column(1) == (1, 1)
    assert table.column(2) == (4, 1)
    assert table.column(3) == (15, 8)
    assert table.column(4) == (207, 75)
    assert table.column(2, RootType.TWO_ROOTED) == (2, 1)
    assert table.column(3, RootType.TWO_ROOTED) == (5, 4)


def test_identity_gamma_is_one(identity2):
    table = gamma_sequence(identity2, 12)
    assert all(v == 1 for row in table.eps + table.two for v in row)


def test_gamma_grows_doubly_exponentially(golden):
    table = gamma_sequence(golden, 20)
    # ln ln γ_n / n -> ln g；n = 20 时 γ 早已超出 64 位
    assert table.value(RootType.EPSILON, 0, 20) > 2**64


def test_gamma_two_initial_condition(golden, full2):
    # ε 型高度 2 的计数等于该父符号的三元组个数
    for spec in (golden, full2):
        table = gamma_sequence(spec, 2)
        for i in range(spec.k):
            assert table.value("eps", i, 2) == sum(1 for t in spec.triples if t[0] == i)


def test_saturated_iterator_tracks_exact_values(golden):
    exact = gamma_sequence(golden, 6)
    for n, (eps, _) in enumerate(iter_gamma(golden, saturate=2), start=1):
        assert eps == [min(v, 2) for v in exact.column(n)]
        if n == 6:
            break


def test_recurrence_coefficients(golden, identity2, full2):
    c = recurrence_coefficients(golden)
    assert c[0].tolist() == [[2, 1], [2, 1]]
    assert c[1].tolist() == [[1, 1], [0, 0]]

    c = recurrence_coefficients(identity2)
    expected = np.zeros((2, 2, 2), dtype=int)
    expected[0, 0, 0] = expected[1, 1, 1] = 1
    assert (c == expected).all()

    assert (recurrence_coefficients(full2) == 2).all()


def test_vertex_coefficients_match_matrix_product():
    A1 = np.array([[1, 1, 0], [0, 1, 1], [1, 0, 1]])
    A2 = np.array([[0, 1, 1], [1, 1, 0], [1, 1, 1]])
    spec = spec_from_vertex_matrices(["1", "2", "3"], A1, A2)
    assert spec.k == 3
    c = recurrence_coefficients(spec)
    expected = A1[:, :, None] * (A2 @ A1)[:, None, :]
    assert (c == expected).all()


def test_gamma_sequence_rejects_zero_height(golden):
    with pytest.raises(ValueError):
        gamma_sequence(golden, 0)


# ==========================================
# 性质
# ==========================================


@pytest.mark.slow
@pytest.mark.parametrize("A1", ALL_2x2, ids=lambda m: "".join(map(str, m.flatten())))
def test_oracle_equivalence_all_vertex_pairs(A1):
    """256 个顶点矩阵对：n <= 4 对照穷举，n <= 8 对照树上动态规划"""
    for A2 in ALL_2x2:
        spec = _vertex_spec_or_none(A1, A2)
        if spec is None:
            continue
        table = gamma_sequence(spec, 8)
        for root_type in RootType:
            for c in range(spec.k):
                for n in range(1, 5):
                    assert enumerate_colorings_naive(spec, root_type, n, c) == table.value(
                        root_type, c, n
                    )
                for n in range(1, 9):
                    assert count_colorings_dp(spec, root_type, n, c) == table.value(
                        root_type, c, n
                    )
    log.info(f"oracle equivalence holds for A1={A1.tolist()}")


@pytest.mark.parametrize("A1", ALL_2x2, ids=lambda m: "".join(map(str, m.flatten())))
def test_two_step_recursion_matches(A1):
    for A2 in ALL_2x2:
        spec = _vertex_spec_or_none(A1, A2)
        if spec is None:
            continue
        table = gamma_sequence(spec, 9)
        assert gamma_two_step(spec, 9) == [table.column(n) for n in range(1, 10)]


@given(
    triples=st.frozensets(
        st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2)), min_size=1
    )
)
@settings(max_examples=200, deadline=None)
def test_gamma_monotone_after_pruning(triples):
    try:
        spec, _ = viability_prune(raw_spec(["a", "b", "c"], triples))
    except EmptyShift:
        return
    table = gamma_sequence(spec, 7)
    for root_type in RootType:
        for i in range(spec.k):
            values = [table.value(root_type, i, n) for n in range(1, 8)]
            assert values[0] == 1
            assert all(a <= b for a, b in itertools.pairwise(values))


@given(
    triples=st.frozensets(
        st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2)), min_size=1
    )
)
@settings(max_examples=100, deadline=None)
def test_gamma_matches_dp_on_random_specs(triples):
    try:
        spec, _ = viability_prune(raw_spec(["a", "b", "c"], triples))
    except EmptyShift:
        return
    table = gamma_sequence(spec, 6)
    for root_type in RootType:
        for c in range(spec.k):
            assert count_colorings_dp(spec, root_type, 6, c) == table.value(root_type, c, 6)

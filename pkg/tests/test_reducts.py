import random
from itertools import product
from math import prod

import pytest
from hypothesis import given
from hypothesis import strategies as st

from crosscut.branches import ClassCounts
from crosscut.reducts import (
    BlockPartition,
    UnaryStructure,
    block_partition,
    cb_reduct,
    coarsen,
    delta_value,
    node_formula,
)
from crosscut.structures import check_cross_cutting, e_infinity, full_branch_structure


def delta_zero_oracle(bits, n):
    """Evaluate the full conjunction over every node at level n."""
    for eta in product((0, 1), repeat=n):
        if node_formula(eta)(bits) and not node_formula(eta + (0,))(bits):
            return False
    return True


class TestBlockPartition:
    def test_six_twos(self):
        bp = block_partition(ClassCounts((2,) * 6))
        assert bp.blocks == ((0, 1), (1, 3), (3, 6))
        assert bp.products == (2, 4, 8)
        assert bp.dropped is None

    def test_already_increasing(self):
        bp = block_partition(ClassCounts((2, 3, 4, 5)))
        assert bp.blocks == ((0, 1), (1, 2), (2, 3), (3, 4))
        assert bp.products == (2, 3, 4, 5)

    def test_greedy(self):
        bp = block_partition(ClassCounts((3, 2, 2)))
        assert bp.blocks == ((0, 1), (1, 3)) and bp.products == (3, 4)

    def test_dropped_remainder(self):
        bp = block_partition(ClassCounts((5, 2, 2)))
        assert bp.blocks == ((0, 1),) and bp.dropped == (1, 3)

    def test_rejects_one(self):
        with pytest.raises(ValueError):
            block_partition(ClassCounts((2, 1, 3)))

    @given(st.lists(st.integers(2, 9), min_size=1, max_size=20))
    def test_invariants(self, raw):
        counts = ClassCounts(tuple(raw))
        bp = block_partition(counts)
        assert all(a < b for a, b in zip(bp.products, bp.products[1:]))
        assert bp.blocks[0][0] == 0
        for (s, e), (s2, _) in zip(bp.blocks, bp.blocks[1:]):
            assert e == s2
        for (s, e), p in zip(bp.blocks, bp.products):
            assert s < e and p == prod(raw[s:e])
        end = bp.blocks[-1][1]
        assert (bp.dropped is None) == (end == len(raw))
        # minimality: dropping the last index of any block breaks the increase
        last = 1
        for (s, e), p in zip(bp.blocks, bp.products):
            assert prod(raw[s : e - 1]) <= last
            last = p


class TestCoarsen:
    def test_two_blocks(self):
        S = full_branch_structure(ClassCounts((2, 2, 2)))
        bp = BlockPartition(((0, 1), (1, 3)), (2, 4))
        T = coarsen(S, bp)
        assert [T.class_count(n) for n in range(2)] == [2, 4]

    def test_singletons_copy(self):
        S = full_branch_structure(ClassCounts((2, 3)))
        T = coarsen(S, BlockPartition(((0, 1), (1, 2)), (2, 3)))
        assert T.labels == S.labels

    def test_one_block(self):
        S = full_branch_structure(ClassCounts((2, 3)))
        T = coarsen(S, BlockPartition(((0, 2),), (6,)))
        assert T.labels == (e_infinity(S).labels,)

    def test_out_of_range(self):
        S = full_branch_structure(ClassCounts((2, 3)))
        with pytest.raises(IndexError):
            coarsen(S, BlockPartition(((0, 3),), (6,)))

    @pytest.mark.parametrize(
        "counts", [(2, 2, 2, 2, 2, 2), (3, 2, 2), (2, 3, 2, 2), (2, 2, 3, 2, 2), (4, 2, 2, 3)]
    )
    def test_coarsened_full_structure_cross_cuts(self, counts):
        cc = ClassCounts(counts)
        bp = block_partition(cc)
        T = coarsen(full_branch_structure(cc), bp)
        assert check_cross_cutting(T, ClassCounts(bp.products)) == (True, None)

    def test_reducts_of_reducts(self):
        cc = ClassCounts((2,) * 10)
        S = full_branch_structure(cc)
        inner = block_partition(cc)
        outer = block_partition(ClassCounts(inner.products))
        twice = coarsen(coarsen(S, inner), outer)
        once = coarsen(S, inner.compose(outer))
        assert twice.labels == once.labels


class TestDelta:
    U = UnaryStructure(3, 3, ((1, 0, 1), (0, 0, 0), (1, 1, 1)))

    def test_examples(self):
        assert delta_value(self.U, 1, 0) == 0
        assert all(delta_value(self.U, n, 1) == 0 for n in range(3))
        assert delta_value(self.U, 2, 2) == 1

    def test_out_of_range(self):
        with pytest.raises(IndexError):
            delta_value(self.U, 3, 0)

    @given(st.integers(1, 7).flatmap(lambda m: st.lists(st.integers(0, 1), min_size=m, max_size=m)))
    def test_matches_full_conjunction(self, bits):
        bits = tuple(bits)
        U = UnaryStructure(1, len(bits), (bits,))
        for n in range(len(bits)):
            assert (delta_value(U, n, 0) == 0) == delta_zero_oracle(bits, n)
            assert delta_value(U, n, 0) == bits[n]


class TestCbReduct:
    def test_all_patterns(self):
        S = cb_reduct(UnaryStructure.all_patterns(3))
        assert [S.class_count(n) for n in range(3)] == [2, 2, 2]
        assert e_infinity(S).count == 8
        assert check_cross_cutting(S, ClassCounts((2, 2, 2))) == (True, None)

    @pytest.mark.parametrize("m", [1, 2, 4, 5])
    def test_all_patterns_cross_cut(self, m):
        S = cb_reduct(UnaryStructure.all_patterns(m))
        assert check_cross_cutting(S, ClassCounts((2,) * m)) == (True, None)

    def test_single_element(self):
        S = cb_reduct(UnaryStructure(1, 3, ((0, 1, 0),)))
        assert all(S.class_count(n) == 1 for n in range(3))

    def test_identical_bits(self):
        S = cb_reduct(UnaryStructure(2, 2, ((1, 0), (1, 0))))
        assert all(S.class_count(n) == 1 for n in range(2))
        assert e_infinity(S).class_sizes() == {2: 1}

    def test_at_most_two_classes(self):
        rng = random.Random(5)
        for _ in range(100):
            m = rng.randint(1, 6)
            rows = tuple(tuple(rng.randint(0, 1) for _ in range(m)) for _ in range(rng.randint(1, 12)))
            S = cb_reduct(UnaryStructure(len(rows), m, rows))
            for n in range(m):
                assert S.class_count(n) == len({r[n] for r in rows}) <= 2

    def test_json(self):
        U = UnaryStructure.from_json({"size": 2, "predicates": 2, "bits": [[0, 1], [1, 1]]})
        assert UnaryStructure.from_json(U.to_json()) == U
        with pytest.raises(ValueError):
            UnaryStructure.from_json({"size": 1, "predicates": 2, "bits": [[0, 2]]})

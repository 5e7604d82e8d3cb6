from itertools import permutations, product

import pytest

from crosscut.branches import ClassCounts, build_family, interleave, tail_equal
from crosscut.group_action import (
    ClosureError,
    GroupElement,
    act,
    induced_automorphism,
    joint_thresholds,
    respecting_element,
)
from crosscut.reduction import Graph, encode, graph_isomorphisms, make_params
from crosscut.structures import build_ambient, full_branch_structure

C2345 = ClassCounts((2, 3, 4, 5))


def all_elements(counts):
    for perms in product(*(permutations(range(1, c + 1)) for c in counts)):
        yield GroupElement(tuple(perms))


def test_swap_everywhere():
    g = GroupElement(tuple((2, 1) + tuple(range(3, c + 1)) for c in C2345))
    assert act(g, (1, 1, 1, 1)) == (2, 2, 2, 2)


def test_identity():
    e = GroupElement.identity(C2345)
    assert act(e, (1, 3, 3, 3)) == (1, 3, 3, 3)


def test_first_coordinate_only():
    g = GroupElement(((2, 1), (1, 2, 3), (1, 2, 3, 4), (1, 2, 3, 4, 5)))
    assert act(g, (1, 3, 3, 3)) == (2, 3, 3, 3)


def test_rejects_non_permutation():
    with pytest.raises(ValueError):
        GroupElement(((1, 1),))


def test_act_length_mismatch():
    with pytest.raises(ValueError):
        act(GroupElement.identity(C2345), (1, 1))


def test_group_action_laws_exhaustive():
    counts = ClassCounts((2, 3))
    elems = list(all_elements(counts))
    branches = list(product(range(1, 3), range(1, 4)))
    e = GroupElement.identity(counts)
    for g in elems:
        for f in branches:
            assert act(e, f) == f
            assert act(g.inverse(), act(g, f)) == f
        for h in elems:
            gh = g * h
            for f in branches:
                assert act(gh, f) == act(g, act(h, f))


def test_tail_classes_preserved_exhaustive():
    counts = ClassCounts((2, 3))
    branches = list(product(range(1, 3), range(1, 4)))
    for g in all_elements(counts):
        for f in branches:
            for f2 in branches:
                for c in range(3):
                    assert tail_equal(f, f2, c) == tail_equal(act(g, f), act(g, f2), c)


def test_serialization_roundtrip():
    g = respecting_element(build_family(C2345, 4, 4), (1, 0, 3, 2))
    text = g.serialize()
    assert len(text.splitlines()) == 4
    assert GroupElement.parse(text) == g


class TestRespectingElement:
    def test_transposition_k2(self):
        fam = build_family(C2345, 2, 4)
        g = respecting_element(fam, (1, 0))
        for n in range(4):
            assert g.perms[n][fam[0][n] - 1] == fam[1][n]
            assert g.perms[n][fam[1][n] - 1] == fam[0][n]
        assert act(g, fam[0]) == (2, 2, 2, 2) == fam[1]

    def test_identity_sigma(self):
        fam = build_family(C2345, 4, 4)
        g = respecting_element(fam, (0, 1, 2, 3))
        for i in range(4):
            assert tail_equal(act(g, fam[i]), fam[i], fam.thresholds[i])

    def test_double_transposition(self):
        fam = build_family(C2345, 4, 4)
        g = respecting_element(fam, (1, 0, 3, 2))
        assert joint_thresholds(fam, (1, 0, 3, 2))[2] == 2
        assert tail_equal(act(g, fam[2]), fam[3], 2)

    def test_double_transposition_infeasible_at_family_threshold(self):
        # at coordinate 1, f_0 -> f_1 and f_1 -> f_0 force 1 <-> 2, leaving 3 -> 3,
        # so no element sends f_2(1) = 3 to f_3(1) = 1
        fam = build_family(C2345, 4, 4)
        assert [f[1] for f in fam.members] == [1, 2, 3, 1]
        for perm in permutations((1, 2, 3)):
            if perm[0] == 2 and perm[1] == 1:
                assert perm[2] != 1

    def test_rejects_bad_sigma(self):
        with pytest.raises(ValueError):
            respecting_element(build_family(C2345, 4, 4), (0, 0, 1, 2))

    @pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
    def test_moves_vertices_and_pairs(self, k):
        P = make_params(k)
        fam, ns = P.family, P.thresholds
        for sigma in permutations(range(k)):
            g = respecting_element(fam, sigma)
            jt = joint_thresholds(fam, sigma)
            for i in range(k):
                assert tail_equal(act(g, fam[i]), fam[sigma[i]], jt[i])
                for j in range(k):
                    if i != j:
                        cut = max(ns[i], ns[j], ns[sigma[i]], ns[sigma[j]])
                        assert tail_equal(
                            act(g, interleave(fam, i, j)), interleave(fam, sigma[i], sigma[j]), cut
                        )

    def test_family_thresholds_alone_are_not_enough(self):
        # f_0, f_2, f_3 share the value 1 at coordinate 0 while only two values
        # exist there, so sending f_0 -> f_3 and f_1 -> f_2 exactly from
        # coordinate 0 on would need 1 -> 1 and 2 -> 1.
        fam = build_family(C2345, 4, 4)
        assert [f[0] for f in fam.members] == [1, 2, 1, 1]
        g = respecting_element(fam, (3, 2, 1, 0))
        assert not (
            tail_equal(act(g, fam[0]), fam[3], 0) and tail_equal(act(g, fam[1]), fam[2], 0)
        )


class TestInducedAutomorphism:
    def test_full_branch_set_is_closed(self):
        counts = ClassCounts((2, 3))
        S = full_branch_structure(counts)
        for g in all_elements(counts):
            induced_automorphism(g, S)

    def test_graph_automorphism(self):
        P = make_params(3)
        G = Graph(3, frozenset({(0, 1), (1, 2), (2, 0)}))
        S, _ = encode(G, P)
        for sigma in graph_isomorphisms(G, G):
            g = respecting_element(P.family, sigma)
            mapping = induced_automorphism(g, S)
            assert sorted(mapping) == list(range(S.size))

    def test_closure_failure_names_witness(self):
        S = build_ambient(C2345, [((1, 1, 1, 1), "A")])
        g = GroupElement(((2, 1), (1, 2, 3), (1, 2, 3, 4), (1, 2, 3, 4, 5)))
        with pytest.raises(ClosureError) as info:
            induced_automorphism(g, S)
        assert info.value.witness == (1, 1, 1, 1)

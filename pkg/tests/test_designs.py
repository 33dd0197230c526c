from itertools import combinations, permutations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from meanking.designs import (
    DesignError,
    NotAffineError,
    NotResolvableError,
    affine_plane,
    affine_resolvable_check,
    affine_space_parameters,
    find_resolution,
    hadamard_design,
    parallel_block_through,
    plane_point_label,
    sylvester_hadamard,
    verify_design,
)

FANO = [[0, 1, 2], [0, 3, 4], [0, 5, 6], [1, 3, 5], [1, 4, 6], [2, 3, 6], [2, 4, 5]]

H8_BLOCKS = [
    {1, 3, 5, 7}, {2, 4, 6, 8},
    {1, 2, 5, 6}, {3, 4, 7, 8},
    {1, 4, 5, 8}, {2, 3, 6, 7},
    {1, 2, 3, 4}, {5, 6, 7, 8},
    {1, 3, 6, 8}, {2, 4, 5, 7},
    {1, 2, 7, 8}, {3, 4, 5, 6},
    {1, 4, 6, 7}, {2, 3, 5, 8},
]

H8_SIGNS = """
++++++++
+-+-+-+-
++--++--
+--++--+
++++----
+-+--+-+
++----++
+--+-++-
"""


def all_designs():
    out = [(f"plane{q}", *affine_plane(q)) for q in (2, 3, 4, 5, 7, 8, 9)]
    out += [(f"had{2**k}", *hadamard_design(sylvester_hadamard(k))) for k in (2, 3, 4)]
    return out


def test_example_plane_of_order_two():
    # 1-indexed (x, y) points of the worked order-2 example
    lab = {(1, 1): 0, (1, 2): 1, (2, 1): 2, (2, 2): 3}
    blocks = [[lab[a], lab[b]] for a, b in [((1, 1), (1, 2)), ((2, 1), (2, 2)), ((1, 1), (2, 1)),
                                            ((1, 2), (2, 2)), ((1, 1), (2, 2)), ((1, 2), (2, 1))]]
    d = verify_design(4, blocks)
    assert d.params.as_tuple() == (4, 6, 3, 2, 1)
    res = find_resolution(d)
    assert res.classes == ((0, 1), (2, 3), (4, 5))


def test_degenerate_single_block():
    assert verify_design(2, [[0, 1]]).params.as_tuple() == (2, 1, 1, 2, 1)


def test_verify_design_reports_failures():
    with pytest.raises(DesignError, match="block size"):
        verify_design(4, [[0, 1], [2]])
    with pytest.raises(DesignError, match="replication"):
        verify_design(4, [[0, 1], [0, 2]])
    with pytest.raises(DesignError, match="pair coverage"):
        verify_design(4, [[0, 1], [2, 3]])
    with pytest.raises(DesignError, match="outside"):
        verify_design(3, [[0, 5]])


def test_affine_plane_order_two_matches_example():
    d, res = affine_plane(2)
    assert d.params.as_tuple() == (4, 6, 3, 2, 1)
    l0 = [{plane_point_label(p, 2) for p in d.blocks[i]} for i in res.classes[0]]
    assert l0 == [{(1, 1), (1, 2)}, {(2, 1), (2, 2)}]
    l1 = [{plane_point_label(p, 2) for p in d.blocks[i]} for i in res.classes[1]]
    assert l1 == [{(1, 1), (2, 1)}, {(1, 2), (2, 2)}]
    l2 = [{plane_point_label(p, 2) for p in d.blocks[i]} for i in res.classes[2]]
    assert l2 == [{(1, 1), (2, 2)}, {(1, 2), (2, 1)}]


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_affine_plane_lines_meet_once(q):
    d, res = affine_plane(q)
    assert d.params.as_tuple() == (q * q, q * q + q, q + 1, q, 1)
    for i, j in combinations(range(d.b), 2):
        meet = len(set(d.blocks[i]) & set(d.blocks[j]))
        assert meet == (0 if res.parallel(i, j) else 1)


def test_affine_plane_rejects_non_prime_power():
    with pytest.raises(ValueError):
        affine_plane(6)


def test_sylvester_h8_sign_pattern():
    signs = np.array([[1 if c == "+" else -1 for c in row] for row in H8_SIGNS.split()])
    assert np.array_equal(sylvester_hadamard(3), signs)
    assert np.array_equal(sylvester_hadamard(1), [[1, 1], [1, -1]])
    for k in range(1, 7):
        h = sylvester_hadamard(k)
        assert np.array_equal(h @ h.T, 2**k * np.eye(2**k))


def test_hadamard8_design_blocks():
    d, res = hadamard_design(sylvester_hadamard(3))
    assert [{p + 1 for p in b} for b in d.blocks] == H8_BLOCKS
    assert d.params.as_tuple() == (8, 14, 7, 4, 3)
    assert res.classes == tuple((2 * i, 2 * i + 1) for i in range(7))
    for i, j in combinations(range(14), 2):
        if not res.parallel(i, j):
            assert len(set(d.blocks[i]) & set(d.blocks[j])) == 2


def test_hadamard_design_normalizes_and_rejects():
    h = sylvester_hadamard(2) * np.array([1, -1, 1, -1])  # first row no longer all ones
    d, _ = hadamard_design(h)
    assert d.params.as_tuple() == (4, 6, 3, 2, 1)
    with pytest.raises(DesignError):
        hadamard_design(np.ones((4, 4), dtype=int))


def test_h4_design_isomorphic_to_plane_of_order_two():
    d4, _ = hadamard_design(sylvester_hadamard(2))
    plane, _ = affine_plane(2)
    target = {frozenset(b) for b in plane.blocks}
    assert any({frozenset(perm[p] for p in b) for b in d4.blocks} == target for perm in permutations(range(4)))


def test_fano_not_resolvable():
    d = verify_design(7, FANO)
    assert d.params.as_tuple() == (7, 7, 3, 3, 1)
    with pytest.raises(NotResolvableError):
        find_resolution(d)


def test_complement_closed_triple_system_on_six_points_does_not_exist():
    # the 2-(6,3,2) design is unique up to isomorphism and its complement is the other ten triples
    triples = [t for t in combinations(range(6), 3) if 0 in t]
    found = 0
    for pick in combinations(triples, 5):
        blocks = [b for t in pick for b in (t, tuple(sorted(set(range(6)) - set(t))))]
        try:
            verify_design(6, blocks)
            found += 1
        except DesignError:
            pass
    assert found == 0


def test_resolvable_but_not_affine():
    # all pairs of six points: the classes are the five perfect matchings of a 1-factorization
    d = verify_design(6, list(combinations(range(6), 2)))
    assert d.params.as_tuple() == (6, 15, 5, 2, 1)
    res = find_resolution(d)
    assert len(res.classes) == 5
    with pytest.raises(NotAffineError):
        affine_resolvable_check(d, res)


def test_find_resolution_needs_backtracking():
    # blocks ordered so the greedy first choice for the opening class is wrong
    d = verify_design(4, [[0, 1], [0, 2], [1, 3], [2, 3], [0, 3], [1, 2]])
    res = find_resolution(d)
    for cls in res.classes:
        assert sorted(p for i in cls for p in d.blocks[i]) == [0, 1, 2, 3]


@pytest.mark.parametrize("name,design,res", all_designs())
def test_constructed_designs_are_affine(name, design, res):
    v, b, r, k, lam = design.params.as_tuple()
    assert b * k == v * r and lam * (v - 1) == r * (k - 1)
    rep = affine_resolvable_check(design, res)
    assert rep.ok
    assert rep.m * v == k * k
    found = find_resolution(design)
    for cls in found.classes:
        assert sorted(p for i in cls for p in design.blocks[i]) == list(range(v))


@pytest.mark.parametrize("k", [2, 3, 4])
def test_hadamard_intersection_number(k):
    d, res = hadamard_design(sylvester_hadamard(k))
    assert affine_resolvable_check(d, res).m == 2**k // 4


def test_affine_plane_report_order_three():
    d, res = affine_plane(3)
    rep = affine_resolvable_check(d, res)
    assert rep.m == 1 and rep.ok


def test_parallel_block_through_examples():
    d, res = hadamard_design(sylvester_hadamard(3))
    b4p = [i for i, b in enumerate(d.blocks) if {p + 1 for p in b} == {1, 2, 3, 4}][0]
    c = parallel_block_through(d, res, b4p, 4)  # point 5, 0-indexed 4
    assert {p + 1 for p in d.blocks[c]} == {5, 6, 7, 8}
    plane, pres = affine_plane(2)
    # block {(1,1),(1,2)} and point (2,1) -> {(2,1),(2,2)}
    c = parallel_block_through(plane, pres, 0, 2)
    assert [plane_point_label(p, 2) for p in plane.blocks[c]] == [(2, 1), (2, 2)]
    with pytest.raises(DesignError):
        parallel_block_through(plane, pres, 0, 0)


@pytest.mark.parametrize("name,design,res", all_designs()[:5] + all_designs()[-3:])
def test_parallel_block_through_is_unique(name, design, res):
    for bi, block in enumerate(design.blocks):
        for p in range(design.v):
            if p in block:
                continue
            brute = [c for c, other in enumerate(design.blocks) if p in other and not set(other) & set(block)]
            assert brute == [parallel_block_through(design, res, bi, p)]


def test_affine_space_parameters():
    for q in (2, 3, 4, 5):
        assert affine_space_parameters(2, 1, q).as_tuple() == (q * q, q * q + q, q + 1, q, 1)
    assert affine_space_parameters(3, 1, 2).as_tuple() == (8, 28, 7, 2, 1)
    assert affine_space_parameters(3, 2, 2).as_tuple() == (8, 14, 7, 4, 3)
    with pytest.raises(ValueError):
        affine_space_parameters(2, 2, 2)


@settings(max_examples=40)
@given(st.integers(2, 5), st.integers(1, 4), st.sampled_from([2, 3, 4, 5, 7, 8, 9]))
def test_affine_space_parameters_satisfy_affine_relations(m, d, q):
    if d >= m:
        return
    v, b, r, k, lam = affine_space_parameters(m, d, q).as_tuple()
    assert b * k == v * r
    assert lam * (v - 1) == r * (k - 1)
    assert b == v + r - 1 or d != m - 1  # hyperplanes are the affine-resolvable case

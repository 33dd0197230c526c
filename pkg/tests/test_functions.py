from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from meanking.designs import DesignError, affine_plane, find_resolution, verify_design
from meanking.functions import CollisionFunction, all_functions, collision_set, functions_from_plane


def test_order_two_functions_match_example():
    fs = functions_from_plane(*affine_plane(2))
    assert [f.values for f in fs] == [(1, 1, 1), (1, 2, 2), (2, 1, 2), (2, 2, 1)]
    assert [f.label[0] for f in fs] == [1, 1, 2, 2]


@pytest.mark.parametrize("n", [2, 3, 4, 5, 7, 8, 9])
def test_plane_functions_collide_exactly_once(n):
    fs = functions_from_plane(*affine_plane(n))
    assert len(fs) == n * n
    assert len({f.values for f in fs}) == n * n
    for f, g in combinations(fs, 2):
        assert len(collision_set(f, g)) == 1


def test_function_validation():
    with pytest.raises(ValueError):
        CollisionFunction((0, 1, 1))
    with pytest.raises(ValueError):
        CollisionFunction((3, 1, 1))
    with pytest.raises(ValueError):
        CollisionFunction((1,))


def test_collision_set_domain_mismatch():
    with pytest.raises(ValueError, match="domain mismatch"):
        collision_set(CollisionFunction((1, 1, 1)), CollisionFunction((1, 1, 1, 1)))


def test_collision_set_example():
    f, g = CollisionFunction((1, 2, 2)), CollisionFunction((2, 2, 1))
    assert collision_set(f, g) == {1}
    assert f(2) == 2


def test_all_functions_counts():
    assert len(all_functions(2)) == 8
    assert len(all_functions(3)) == 81
    assert all_functions(2)[0].values == (1, 1, 1)


def test_plane_needs_vertical_class_first():
    d, res = affine_plane(2)
    rotated = find_resolution(verify_design(4, [d.blocks[i] for i in (2, 3, 0, 1, 4, 5)]))
    d2 = verify_design(4, [d.blocks[i] for i in (2, 3, 0, 1, 4, 5)])
    with pytest.raises(DesignError, match="vertical"):
        functions_from_plane(d2, rotated)


@given(st.lists(st.integers(1, 4), min_size=5, max_size=5), st.lists(st.integers(1, 4), min_size=5, max_size=5))
def test_collision_set_symmetric(a, b):
    f, g = CollisionFunction(tuple(a)), CollisionFunction(tuple(b))
    assert collision_set(f, g) == collision_set(g, f)
    assert collision_set(f, f) == set(range(5))

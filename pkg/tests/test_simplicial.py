from math import comb

import numpy as np
import pytest

from hochschild.simplicial import (Simplex, SimplicialError, circle, point, product, sphere,
                                   surjection_from_word, wedge)


def test_level_sizes_of_spheres():
    for k in (1, 2, 3):
        S = sphere(k, 6)
        for n in range(7):
            assert S.level_size(n) == len(S.level(n)) == 1 + (comb(n, k) if n >= k else 0)


def test_product_of_circles_level_sizes():
    T = product(circle(5), circle(5))
    for n in range(6):
        assert T.level_size(n) == (n + 1) ** 2 == len(T.level(n))


def test_wedge_shares_the_basepoint():
    W = wedge([circle(4), circle(4), sphere(2, 4)])
    assert W.level_size(0) == 1
    assert W.level_size(2) == 1 + 2 + 2 + 1


@pytest.mark.parametrize("X", [point(6), circle(6), sphere(2, 6), sphere(3, 6),
                               product(circle(6), circle(6)),
                               product(circle(6), sphere(2, 6)),
                               wedge([circle(6), sphere(2, 6)])])
def test_simplicial_identities(X):
    assert X.check_identities(6) == []


def test_faces_of_the_circle_generator():
    S = circle(3)
    g = next(g for g in S.generators if g.dim == 1)
    x = Simplex(g.id, (0, 1))
    base = S.base_simplex(0)
    assert S.face(x, 0) == base and S.face(x, 1) == base


def test_face_and_degeneracy_maps_are_index_arrays():
    S = sphere(2, 4)
    d = S.face_map(3, 1)
    s = S.degeneracy_map(2, 0)
    assert d.shape == (S.level_size(3),) and s.shape == (S.level_size(2),)
    # d_1 s_0 = id
    assert np.array_equal(S.face_map(3, 1)[s], np.arange(S.level_size(2)))


def test_degeneracy_word_roundtrip():
    s = surjection_from_word(4, (3, 1))
    x = Simplex(1, s)
    assert x.level == 4 and x.dim == 2 and x.degeneracy_word == (3, 1)


def test_levels_outside_truncation_are_rejected():
    with pytest.raises(SimplicialError):
        circle(3).level(4)

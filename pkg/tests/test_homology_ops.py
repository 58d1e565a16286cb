import random
from fractions import Fraction
from functools import lru_cache

import pytest

from instances import CIRCLE, S2, TORUS, WEDGE, family

from hochschild import LodayFamily, dual_numbers
from hochschild.homology import HomologyError
from hochschild.homology_ops import (bockstein, bockstein_homology, bockstein_rank_into,
                                     collapse_to_sphere, eilenberg_zilber, in_kernel_of_f,
                                     induced_map, is_t_multiple, map_j, reduce_f,
                                     shuffle_product, shuffles, t_action)
from hochschild.linalg import FieldStrategy
from hochschild.named import class_names, named_class
from hochschild.spaces import parse_space, realize


def test_shuffles():
    sh = list(shuffles(2, 1))
    assert len(sh) == 3
    assert sorted(s for _, _, s in sh) == [-1, 1, 1]
    assert len(list(shuffles(2, 2))) == 6


def cls(fam, name):
    return named_class(fam, name)


# -- named classes ---------------------------------------------------------------

@pytest.mark.parametrize("text", [CIRCLE, S2, TORUS, WEDGE])
def test_named_classes_are_nonzero(text):
    fam = family(text, 4, 6)
    # t times the sphere class bounds unless the sphere sits in a product
    zero = set() if text == TORUS else {"tsx1"}
    for name in class_names(fam.space):
        assert fam.is_zero(cls(fam, name)) == (name in zero), name


def test_unknown_class_lists_names():
    with pytest.raises(HomologyError, match="available: .*y1"):
        cls(family(CIRCLE, 4, 6), "nope")


# -- products ------------------------------------------------------------------------

def test_circle_ring_structure():
    fam = family(CIRCLE, 4, 6)
    y1, y2 = cls(fam, "y1"), cls(fam, "y2")
    assert fam.is_zero(shuffle_product(fam, y1, y1))
    assert not fam.is_zero(shuffle_product(fam, y1, y2))
    assert not fam.is_zero(shuffle_product(fam, y2, y2))
    x0 = cls(fam, "x0")
    assert shuffle_product(fam, x0, x0).representative == {}


def _derivation_pairs(fam, names):
    classes = [cls(fam, n) for n in names]
    for a in classes:
        for b in classes:
            if a.weight + b.weight <= fam.W and a.degree + b.degree <= fam.N:
                yield a, b


@pytest.mark.parametrize("text,names", [(CIRCLE, ["y1", "y2"]),
                                        (TORUS, ["y1h", "y1v", "y2h", "y2v", "sy1"]),
                                        (WEDGE, ["y1h", "y1v", "y2h", "sy1"])])
def test_bockstein_is_a_derivation(text, names):
    fam = family(text, 4, 6)
    for a, b in _derivation_pairs(fam, names):
        lhs = bockstein(fam, shuffle_product(fam, a, b))
        da, db = bockstein(fam, a), bockstein(fam, b)
        t1 = shuffle_product(fam, da, b)
        t2 = shuffle_product(fam, a, db)
        sign = (-1) ** a.degree
        rhs = [x + sign * y for x, y in zip(fam.coordinates(t1), fam.coordinates(t2))]
        assert fam.coordinates(lhs) == rhs


def test_chain_level_leibniz_on_torus():
    fam = family(TORUS, 4, 6)
    rng = random.Random(1)
    cplx = fam.quotient
    for (n1, w1), (n2, w2) in [((1, 1), (1, 1)), ((2, 2), (1, 1)), ((1, 2), (2, 2))]:
        a = _random_chain(fam, cplx, n1, w1, rng)
        b = _random_chain(fam, cplx, n2, w2, rng)
        ab = shuffle_product(fam, a, b, check=False)
        d = lambda c: cplx.differential(c.degree, c.weight).apply(c.representative)  # noqa: E731
        da = fam.make_class(cplx, n1 - 1, w1, d(a))
        db = fam.make_class(cplx, n2 - 1, w2, d(b))
        lhs = d(ab)
        left = shuffle_product(fam, da, b, check=False).representative
        right = shuffle_product(fam, a, db, check=False).representative
        rhs = dict(left)
        for k, v in right.items():
            rhs[k] = rhs.get(k, 0) + (-1) ** n1 * v
        assert {k: v for k, v in lhs.items() if v} == {k: v for k, v in rhs.items() if v}


def _random_chain(fam, cplx, n, w, rng):
    size = cplx.block(n, w).size
    vec = {k: rng.randint(-2, 2) for k in rng.sample(range(size), min(size, 4))}
    return fam.make_class(cplx, n, w, {k: v for k, v in vec.items() if v})


# -- Eilenberg-Zilber ------------------------------------------------------------------

@lru_cache(maxsize=None)
def _torus_pair():
    X = realize(parse_space("torus"), 6)
    strat = FieldStrategy("q")
    bfam = LodayFamily(X, dual_numbers(), 4, 5, strat, model="bisimplicial")
    dfam = LodayFamily(X, dual_numbers(), 4, 5, strat, model="diagonal")
    return bfam, dfam


@pytest.mark.parametrize("coeff", ["self", "modt"])
def test_eilenberg_zilber_is_a_chain_map(coeff):
    bfam, dfam = _torus_pair()
    src, dst = bfam.complex(coeff), dfam.complex(coeff)
    rng = random.Random(7)
    for n in range(1, 5):
        for w in range(0, 5):
            if not src.block(n, w).size:
                continue
            for _ in range(3):
                c = _random_chain(bfam, src, n, w, rng)
                ez = eilenberg_zilber(bfam, c, dst=dfam)
                dc = bfam.make_class(src, n - 1, w,
                                     src.differential(n, w).apply(c.representative))
                lhs = dst.differential(n, w).apply(ez.representative)
                rhs = eilenberg_zilber(bfam, dc, dst=dfam).representative
                assert {k: v for k, v in lhs.items() if v} == rhs


def test_eilenberg_zilber_preserves_homology_classes():
    bfam, dfam = _torus_pair()
    for name in ("y1h", "y1v", "sy1", "sx1", "x2h"):
        c = cls(bfam, name)
        ez = eilenberg_zilber(bfam, c, dst=dfam)
        assert not dfam.is_zero(ez)
        assert dfam.ratio(ez, cls(dfam, name)) == 1


# -- Bockstein sequence maps -----------------------------------------------------------

def test_circle_sequence_maps():
    fam = family(CIRCLE, 4, 6)
    assert fam.ratio(map_j(fam, cls(fam, "y2")), cls(fam, "x2")) == 1
    assert fam.ratio(reduce_f(fam, cls(fam, "x1")), cls(fam, "y1")) == 1
    assert fam.ratio(bockstein(fam, cls(fam, "y2")), cls(fam, "y1")) == 2


def test_torus_sequence_maps():
    fam = family(TORUS, 4, 6)
    assert fam.ratio(reduce_f(fam, cls(fam, "x1h")), cls(fam, "y1h")) == 1
    assert fam.ratio(reduce_f(fam, cls(fam, "x1v")), cls(fam, "y1v")) == 1
    assert fam.is_zero(reduce_f(fam, cls(fam, "x2h")))
    assert fam.ratio(reduce_f(fam, cls(fam, "sx1")), cls(fam, "sy1")) == 1
    assert fam.ratio(map_j(fam, cls(fam, "sy1")), cls(fam, "tsx1")) == 1
    assert fam.ratio(t_action(fam, cls(fam, "sx1")), cls(fam, "tsx1")) == 1


def test_torus_product_is_t_multiple():
    fam = family(TORUS, 4, 6)
    x = shuffle_product(fam, cls(fam, "x1h"), cls(fam, "x1v"))
    assert is_t_multiple(fam, x)
    assert fam.ratio(x, cls(fam, "tsx1")) == -1


def test_wedge_product_is_not_t_multiple():
    fam = family(WEDGE, 4, 6)
    x = shuffle_product(fam, cls(fam, "x1h"), cls(fam, "x1v"))
    assert not is_t_multiple(fam, x) and not in_kernel_of_f(fam, x)


def test_bockstein_ranks_on_torus():
    fam = family(TORUS, 4, 6)
    assert [bockstein_rank_into(fam, n) for n in range(4)] == [0, 2, 0, 5]


@pytest.mark.parametrize("text", [CIRCLE, S2, "s(3)", WEDGE])
def test_bockstein_homology_is_rational_in_degree_0(text):
    fam = family(text, 4, 6)
    assert [bockstein_homology(fam, n) for n in range(4)] == [1, 0, 0, 0]


def test_bockstein_homology_of_torus_is_larger():
    fam = family(TORUS, 4, 6)
    assert bockstein_homology(fam, 1) + bockstein_homology(fam, 2) > 0


def test_bockstein_needs_mod_t_input():
    fam = family(CIRCLE, 4, 6)
    with pytest.raises(HomologyError):
        bockstein(fam, cls(fam, "x1"))


# -- maps of spaces ------------------------------------------------------------------

def test_collapse_torus_to_sphere():
    strat = FieldStrategy("q")
    T = realize(parse_space("torus"), 6)
    S = realize(parse_space("s(2)"), 6)
    tfam = LodayFamily(T, dual_numbers(), 4, 6, strat, model="diagonal")
    sfam = LodayFamily(S, dual_numbers(), 4, 6, strat)
    f = collapse_to_sphere(T, S)
    for name in ("sx1", "sy1"):
        img = induced_map(tfam, sfam, f, cls(tfam, name))
        assert sfam.ratio(img, cls(sfam, name)) == Fraction(1)
    assert sfam.is_zero(induced_map(tfam, sfam, f, cls(tfam, "tsx1")))
    assert sfam.is_zero(induced_map(tfam, sfam, f, cls(tfam, "x1h")))

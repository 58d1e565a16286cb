"""Cached spaces and families shared by the tests."""
from functools import lru_cache

from hochschild import LodayFamily, dual_numbers
from hochschild.algebras import augmentation_module, self_module
from hochschild.homology import homology_table
from hochschild.linalg import FieldStrategy
from hochschild.loday import build
from hochschild.spaces import max_sphere_dim, parse_space, realize

CIRCLE = "s(1)"
S2 = "s(2)"
S3 = "s(3)"
TORUS = "torus"
WEDGE = "wedge(s(1), s(1), s(2))"


@lru_cache(maxsize=None)
def space(text, N=4):
    e = parse_space(text)
    return realize(e, max(N + 2, max_sphere_dim(e)))


@lru_cache(maxsize=None)
def family(text, N=4, W=None, model="auto"):
    return LodayFamily(space(text, N), dual_numbers(), N, W, FieldStrategy("q"), model=model)


@lru_cache(maxsize=None)
def totals(text, coeff, N, W=None, model="auto"):
    A = dual_numbers()
    M = self_module(A) if coeff == "self" else augmentation_module(A)
    cplx = build(space(text, N), A, M, N, W, model=model)
    return homology_table(cplx, FieldStrategy()).totals


@lru_cache(maxsize=None)
def table(text, coeff, N, W=None, model="auto"):
    A = dual_numbers()
    M = self_module(A) if coeff == "self" else augmentation_module(A)
    cplx = build(space(text, N), A, M, N, W, model=model)
    return homology_table(cplx, FieldStrategy())

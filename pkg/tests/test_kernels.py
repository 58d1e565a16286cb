"""Numba and numpy kernels must agree; the env flag must select the fallback."""
import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hochschild import _accel, kernels
from hochschild.algebras import dual_numbers, self_module, truncated_polynomial
from hochschild.loday import _monomial_tables

needs_numba = pytest.mark.skipif(not _accel.HAVE_NUMBA, reason="numba not available")


@st.composite
def push_inputs(draw):
    a = draw(st.sampled_from([2, 3]))
    A = dual_numbers() if a == 2 else truncated_polynomial(3)
    tables = _monomial_tables(A, self_module(A))
    P = draw(st.integers(1, 6))
    Q = draw(st.integers(1, P))
    E = draw(st.integers(1, 20))
    rows = np.array(draw(st.lists(st.integers(0, a - 1), min_size=E * P, max_size=E * P)),
                    dtype=np.int64).reshape(E, P)
    posmap = np.array(draw(st.lists(st.integers(0, Q - 1), min_size=P, max_size=P)),
                      dtype=np.int64)
    base_src = draw(st.integers(0, P - 1))
    return rows, posmap, base_src, int(posmap[base_src]), Q, A.unit_index, tables


@needs_numba
@settings(max_examples=200, deadline=None)
@given(push_inputs())
def test_push_forward_parity(args):
    rows, posmap, bs, bt, Q, unit, tables = args
    o1, c1 = kernels._push_forward_numpy(rows, posmap, bs, bt, Q, unit, *tables)
    o2, c2 = kernels._push_forward_jit(rows, posmap, bs, bt, Q, unit, *tables)
    assert np.array_equal(c1, c2)
    live = c1 != 0
    assert np.array_equal(o1[live], o2[live])


@st.composite
def csc_mod_p(draw):
    r = draw(st.integers(1, 12))
    c = draw(st.integers(1, 12))
    a = np.array(draw(st.lists(st.integers(-2, 2), min_size=r * c, max_size=r * c)),
                 dtype=np.int64).reshape(r, c)
    p = draw(st.sampled_from([2, 3, 7, 1_000_003]))
    cols, rows = np.nonzero(a.T)  # column-major order
    indptr = np.r_[0, np.cumsum(np.count_nonzero(a, axis=0))]
    return indptr, rows, a[rows, cols] % p, r, p


@settings(max_examples=200, deadline=None)
@given(csc_mod_p())
def test_rank_parity(args):
    indptr, indices, data, nrows, p = args
    dense = kernels._rank_dense_numpy(indptr, indices, data, nrows, p)
    sparse = kernels._rank_sparse_mod_p(indptr, indices, data, nrows, p)
    assert dense == sparse


def test_numpy_fallback_selected_by_env():
    code = ("from hochschild import _accel, kernels; "
            "from hochschild.spaces import parse_space, realize; "
            "from hochschild.loday import build; "
            "from hochschild.homology import homology_table; "
            "print(_accel.HAVE_NUMBA, homology_table(build(realize(parse_space('torus'), 5), "
            "N=3, W=5)).totals)")
    env = dict(os.environ, HOCHSCHILD_NUMBA="0")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True,
                         text=True, check=True).stdout.split(None, 1)
    assert out[0] == "False"
    assert out[1].strip() == "{0: 2, 1: 2, 2: 4, 3: 7}"

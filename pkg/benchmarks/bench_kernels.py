"""Time the numba kernels against their numpy fallbacks on real blocks.

    python benchmarks/bench_kernels.py [--repeat 3]

Push-forward inputs are the face maps of unnormalized torus blocks; rank
inputs are differentials of the normalized wedge and torus complexes.
"""
import argparse
import time

import numpy as np

from hochschild import _accel, kernels
from hochschild.algebras import augmentation_module, dual_numbers, self_module
from hochschild.loday import build
from hochschild.spaces import parse_space, realize

P = 1_000_003


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - t0)
    return min(times), result


def push_cases():
    A = dual_numbers()
    X = realize(parse_space("torus"), 6)
    for n, w in [(3, 3), (4, 3), (4, 4)]:
        c = build(X, A, augmentation_module(A), 4, 6, normalized=False, model="diagonal")
        blk = c.block(n, w)
        rows = blk.bases[0].rows
        cell = c.model.cell((n,))
        _, tidx, posmap = cell.faces[1]
        tcell = c.model.cell(tidx)
        args = (np.ascontiguousarray(rows), np.asarray(posmap, dtype=np.int64), cell.base,
                tcell.base, tcell.npos, c.unit, *c._tables)
        yield f"push torus C_{n},{w} ({len(rows)} rows)", args


def rank_cases():
    A = dual_numbers()
    for text, coeff, n, w in [("wedge(s(1),s(1),s(2))", "self", 4, 4),
                              ("wedge(s(1),s(1),s(2))", "self", 5, 5),
                              ("torus", "modt", 4, 4)]:
        X = realize(parse_space(text), 6)
        M = self_module(A) if coeff == "self" else augmentation_module(A)
        m = build(X, A, M, 4, 6, model="diagonal").differential(n, w)
        data = np.asarray(m.data, dtype=np.int64) % P
        yield (f"rank {text} {coeff} d_{n},{w} ({m.rows}x{m.cols})",
               (m.indptr, m.indices, data, m.rows, P))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if not _accel.HAVE_NUMBA:
        raise SystemExit("numba is disabled (HOCHSCHILD_NUMBA=0); nothing to compare")
    rows = []
    for label, a in push_cases():
        kernels._push_forward_jit(*a)  # compile outside the timing
        tn, (o1, c1) = best_of(lambda: kernels._push_forward_numpy(*a), args.repeat)
        tj, (o2, c2) = best_of(lambda: kernels._push_forward_jit(*a), args.repeat)
        live = c1 != 0
        assert np.array_equal(c1, c2) and np.array_equal(o1[live], o2[live])
        rows.append((label, tn, tj))
    for label, a in rank_cases():
        kernels._rank_sparse_mod_p(*a)
        tn, r1 = best_of(lambda: kernels._rank_dense_numpy(*a), args.repeat)
        tj, r2 = best_of(lambda: kernels._rank_sparse_mod_p(*a), args.repeat)
        assert r1 == r2
        rows.append((label + f" rank {r1}", tn, tj))
    width = max(len(r[0]) for r in rows)
    print(f"{'case':<{width}}  {'numpy s':>9}  {'numba s':>9}  {'speedup':>8}")
    for label, tn, tj in rows:
        print(f"{label:<{width}}  {tn:9.4f}  {tj:9.4f}  {tn / max(tj, 1e-9):7.1f}x")


if __name__ == "__main__":
    main()

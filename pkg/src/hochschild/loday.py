"""Chain complexes of the Loday construction ``M (x)_A (x)_X A``.

A level of ``(x)_X A`` is the tensor power of A indexed by the simplices of
that level, with the coefficient module sitting at the basepoint.  A basis
element is therefore a row of indices, one per position: an algebra basis
index everywhere except the basepoint column, which holds a module basis
index.  Face maps push rows forward along the face map of X, multiplying
entries that collide.

Two position models are supported.  The diagonal model uses the levels of X
itself.  For a product X x Y the bisimplicial model uses the positions
``X_s x Y_t`` in bidegree (s, t) and takes the total complex; by the
Eilenberg-Zilber theorem it has the same homology as the diagonal and is far
smaller.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations, product as iproduct
from math import comb

import numpy as np

from .algebras import (CoefficientModule, GradedAlgebra, augmentation_module,
                       dual_numbers, kernel_module, self_module)
from .kernels import push_forward
from .linalg import SparseMatrix
from .simplicial import SimplicialSet


class LodayError(ValueError):
    pass


class ResourceLimitError(LodayError):
    """A block would exceed the configured basis-size bound."""


# -- position models ----------------------------------------------------------

@dataclass
class Cell:
    index: tuple
    npos: int
    base: int
    faces: list  # (sign, target index, posmap)
    degenerate_masks: list  # bitmask of positions in the image of each degeneracy

    @cached_property
    def nonbase(self) -> list:
        return [p for p in range(self.npos) if p != self.base]


class DiagonalModel:
    """Positions are the simplices of X in each level."""

    kind = "diagonal"
    directions = 1

    def __init__(self, X: SimplicialSet):
        self.X = X
        self._cells: dict = {}

    @property
    def max_degree(self) -> int:
        return self.X.truncation

    def cells(self, n: int) -> list:
        return [(n,)] if n >= 0 else []

    def positions(self, index) -> list:
        return self.X.level(index[0])

    def position_of(self, index, simplex) -> int:
        return self.X.index_of(simplex)

    def cell(self, index) -> Cell:
        if index not in self._cells:
            (n,) = index
            X = self.X
            size = len(X.level(n))
            faces = []
            if n > 0:
                faces = [((-1) ** i, (n - 1,), X.face_map(n, i)) for i in range(n + 1)]
            masks = []
            for i in range(n):
                img = X.degeneracy_map(n - 1, i)
                masks.append(_mask(img))
            self._cells[index] = Cell(index, size, X.basepoint_index(n), faces, masks)
        return self._cells[index]

    def degeneracy(self, index, direction: int, i: int) -> tuple:
        (n,) = index
        return (n + 1,), self.X.degeneracy_map(n, i)


class BisimplicialModel:
    """Positions X_s x Y_t in bidegree (s, t) of a product, totalised.

    The total differential is ``d_h + (-1)^s d_v``.
    """

    kind = "bisimplicial"
    directions = 2

    def __init__(self, P: SimplicialSet):
        if not P.factors:
            raise LodayError("bisimplicial model needs a product space")
        self.P = P
        self.X, self.Y = P.factors
        self._cells: dict = {}

    @property
    def max_degree(self) -> int:
        return min(self.X.truncation, self.Y.truncation)

    def cells(self, n: int) -> list:
        return [(s, n - s) for s in range(n, -1, -1)] if n >= 0 else []

    def positions(self, index) -> list:
        s, t = index
        return [(x, y) for x in self.X.level(s) for y in self.Y.level(t)]

    def position_of(self, index, pair) -> int:
        s, t = index
        x, y = pair
        return self.X.index_of(x) * len(self.Y.level(t)) + self.Y.index_of(y)

    def cell(self, index) -> Cell:
        if index not in self._cells:
            s, t = index
            X, Y = self.X, self.Y
            nx, ny = len(X.level(s)), len(Y.level(t))
            ix = np.repeat(np.arange(nx), ny)
            iy = np.tile(np.arange(ny), nx)
            faces = []
            if s > 0:
                nyt = ny
                for i in range(s + 1):
                    faces.append(((-1) ** i, (s - 1, t), X.face_map(s, i)[ix] * nyt + iy))
            if t > 0:
                ny1 = len(Y.level(t - 1))
                for j in range(t + 1):
                    faces.append(((-1) ** (s + j), (s, t - 1), ix * ny1 + Y.face_map(t, j)[iy]))
            masks = []
            if s > 0:
                ny_ = ny
                for i in range(s):
                    img = X.degeneracy_map(s - 1, i)
                    masks.append(_mask((img[:, None] * ny_ + np.arange(ny_)[None, :]).ravel()))
            if t > 0:
                for j in range(t):
                    img = Y.degeneracy_map(t - 1, j)
                    masks.append(_mask((np.arange(nx)[:, None] * ny + img[None, :]).ravel()))
            base = X.basepoint_index(s) * ny + Y.basepoint_index(t)
            self._cells[index] = Cell(index, nx * ny, base, faces, masks)
        return self._cells[index]

    def degeneracy(self, index, direction: int, i: int) -> tuple:
        s, t = index
        nx, ny = len(self.X.level(s)), len(self.Y.level(t))
        ix = np.repeat(np.arange(nx), ny)
        iy = np.tile(np.arange(ny), nx)
        if direction == 0:
            ny2 = ny
            return (s + 1, t), self.X.degeneracy_map(s, i)[ix] * ny2 + iy
        ny2 = len(self.Y.level(t + 1))
        return (s, t + 1), ix * ny2 + self.Y.degeneracy_map(t, i)[iy]


def _mask(positions) -> int:
    m = 0
    for p in positions:
        m |= 1 << int(p)
    return m


def make_model(X: SimplicialSet, kind: str = "auto", normalized: bool = True):
    if kind == "auto":
        kind = "bisimplicial" if (X.factors and normalized) else "diagonal"
    if kind == "diagonal":
        return DiagonalModel(X)
    if kind in ("bisimplicial", "bicomplex"):
        return BisimplicialModel(X)
    raise LodayError(f"unknown model {kind!r}")


# -- basis blocks ---------------------------------------------------------------

def _row_masks(rows: np.ndarray, unit: int, base: int) -> list:
    """Support bitmask (non-unit, non-base entries) of each row."""
    out = []
    for r in rows:
        m = 0
        for p in np.flatnonzero(r != unit):
            if p != base:
                m |= 1 << int(p)
        out.append(m)
    return out


class CellBasis:
    """Basis rows of one cell in one weight, with a key index for lookup."""

    def __init__(self, rows: np.ndarray, bits: int):
        self.rows = rows
        self.bits = bits
        n, P = rows.shape
        self._int_keys = bits * P <= 62
        if self._int_keys:
            keys = self._encode(rows)
            self._order = np.argsort(keys, kind="stable")
            self._sorted = keys[self._order]
        else:
            self._dict = {r.tobytes(): k for k, r in enumerate(rows)}

    def __len__(self):
        return len(self.rows)

    def _encode(self, rows):
        shifts = (np.arange(rows.shape[1], dtype=np.int64) * self.bits)
        return (rows.astype(np.int64) << shifts).sum(axis=1) if len(rows) else np.zeros(0, np.int64)

    def lookup(self, rows: np.ndarray) -> np.ndarray:
        if len(rows) == 0:
            return np.zeros(0, dtype=np.int64)
        if self._int_keys:
            keys = self._encode(rows)
            pos = np.searchsorted(self._sorted, keys)
            pos = np.minimum(pos, max(len(self._sorted) - 1, 0))
            found = len(self._sorted) > 0
            hit = (self._sorted[pos] == keys) if found else np.zeros(len(keys), bool)
            return np.where(hit, self._order[pos] if found else -1, -1)
        rows = np.ascontiguousarray(rows, dtype=np.int64)
        return np.array([self._dict.get(r.tobytes(), -1) for r in rows], dtype=np.int64)


@dataclass
class Block:
    """Basis of C_{n,w}: the concatenation of the cell bases of degree n."""
    degree: int
    weight: int
    cells: list  # cell indices
    bases: list  # CellBasis per cell
    offsets: list

    @property
    def size(self) -> int:
        return self.offsets[-1] if self.offsets else 0

    def locate(self, k: int):
        """(cell index, row) of the k-th basis element."""
        for c, (a, b) in enumerate(zip(self.offsets, self.offsets[1:])):
            if a <= k < b:
                return self.cells[c], self.bases[c].rows[k - a]
        raise IndexError(k)

    def index_of(self, cell, row) -> int:
        c = self.cells.index(tuple(cell))
        k = int(self.bases[c].lookup(np.asarray([row], dtype=np.int64))[0])
        return -1 if k < 0 else self.offsets[c] + k


# -- the complex ------------------------------------------------------------------

def _monomial_tables(A: GradedAlgebra, M: CoefficientModule):
    a, m = A.dim, M.dim
    for terms in list(A.structure_constants.values()) + list(M.action.values()):
        for _, c in terms:
            if Fraction(c).denominator != 1:
                return None
    if not (A.is_monomial() and M.is_monomial()):
        return None
    mult_idx = np.full((a, a), -1, dtype=np.int64)
    mult_coef = np.zeros((a, a), dtype=np.int64)
    for (i, j), terms in A.structure_constants.items():
        (k, c), = terms
        mult_idx[i, j], mult_coef[i, j] = k, int(c)
    act_idx = np.full((a, m), -1, dtype=np.int64)
    act_coef = np.zeros((a, m), dtype=np.int64)
    for (i, mm), terms in M.action.items():
        (k, c), = terms
        act_idx[i, mm], act_coef[i, mm] = k, int(c)
    return mult_idx, mult_coef, act_idx, act_coef


class LodayComplex:
    """Weight-graded (normalized) Moore complex of ``M (x)_A (x)_X A``.

    Blocks are built on demand per (degree, weight) and cached.  Degrees run
    0..max_degree+1 so that homology is available in degrees 0..max_degree.
    """

    def __init__(self, space: SimplicialSet, algebra: GradedAlgebra,
                 module: CoefficientModule, max_degree: int, max_weight: int,
                 normalized: bool = True, model: str = "auto", size_limit: int | None = None):
        if max_degree < 0 or max_weight < 0:
            raise LodayError("caps must be non-negative")
        self.space = space
        self.algebra = algebra
        self.module = module
        self.max_degree = max_degree
        self.max_weight = max_weight
        self.normalized = normalized
        self.model = make_model(space, model, normalized)
        if self.model.max_degree < max_degree + 1:
            raise LodayError(f"{space.name} is truncated at {self.model.max_degree}; "
                             f"degree cap {max_degree} needs {max_degree + 1}")
        self.size_limit = size_limit
        self.unit = algebra.unit_index
        self.bits = max(algebra.dim, module.dim, 2).bit_length()
        self._tables = _monomial_tables(algebra, module)
        self._blocks: dict = {}
        self._diffs: dict = {}
        self._cell_bases: dict = {}

    def __repr__(self):
        return (f"LodayComplex({self.space.name}, {self.algebra.name}, {self.module.name}, "
                f"N={self.max_degree}, W={self.max_weight}, {self.model.kind}, "
                f"normalized={self.normalized})")

    @property
    def weights(self) -> range:
        return range(self.max_weight + 1)

    @property
    def top_level(self) -> int:
        return self.max_degree + 1

    # -- enumeration ------------------------------------------------------------

    def _estimate(self, cell: Cell, w: int) -> int:
        A, M = self.algebra, self.module
        total = 0
        wmin = min((A.weights[i] for i in A.nonunit_indices), default=0)
        for m in range(M.dim):
            rem = w - M.weights[m]
            if rem < 0:
                continue
            kmax = len(cell.nonbase) if wmin == 0 else min(len(cell.nonbase), rem // wmin)
            per = max(len(A.nonunit_indices), 1)
            total += sum(comb(len(cell.nonbase), k) * per ** k for k in range(kmax + 1))
        return total

    def cell_basis(self, index, w: int) -> CellBasis:
        key = (tuple(index), w)
        if key in self._cell_bases:
            return self._cell_bases[key]
        cell = self.model.cell(tuple(index))
        if self.size_limit is not None:
            est = self._estimate(cell, w)
            if est > self.size_limit:
                raise ResourceLimitError(
                    f"cell {index} weight {w}: up to {est} basis elements exceeds "
                    f"the bound {self.size_limit}")
        A, M = self.algebra, self.module
        nonunit = A.nonunit_indices
        wts = A.weights
        rows = []
        nb = cell.nonbase
        masks = cell.degenerate_masks
        for m in range(M.dim):
            rem = w - M.weights[m]
            if rem < 0:
                continue
            for k in range(0, len(nb) + 1):
                if wts and nonunit and k * min(wts[i] for i in nonunit) > rem:
                    break
                if not nonunit and k > 0:
                    break
                for support in combinations(nb, k):
                    if self.normalized:
                        sm = 0
                        for p in support:
                            sm |= 1 << p
                        if any(sm & ~img == 0 for img in masks):
                            continue
                    for assign in iproduct(nonunit, repeat=k):
                        if sum(wts[a] for a in assign) != rem:
                            continue
                        row = [self.unit] * cell.npos
                        row[cell.base] = m
                        for p, a in zip(support, assign):
                            row[p] = a
                        rows.append(row)
        arr = np.array(rows, dtype=np.int64).reshape(len(rows), cell.npos)
        cb = CellBasis(arr, self.bits)
        self._cell_bases[key] = cb
        return cb

    def block(self, n: int, w: int) -> Block:
        if not 0 <= n <= self.top_level:
            raise LodayError(f"degree {n} outside 0..{self.top_level}")
        if not 0 <= w <= self.max_weight:
            raise LodayError(f"weight {w} outside 0..{self.max_weight}")
        key = (n, w)
        if key not in self._blocks:
            cells = self.model.cells(n)
            bases = [self.cell_basis(c, w) for c in cells]
            offsets = [0]
            for b in bases:
                offsets.append(offsets[-1] + len(b))
            self._blocks[key] = Block(n, w, cells, bases, offsets)
        return self._blocks[key]

    def dim(self, n: int, w: int | None = None) -> int:
        if w is None:
            return sum(self.block(n, v).size for v in self.weights)
        return self.block(n, w).size

    # -- differential -------------------------------------------------------------

    def is_degenerate_row(self, cell_index, row) -> bool:
        cell = self.model.cell(tuple(cell_index))
        m = _row_masks(np.asarray([row]), self.unit, cell.base)[0]
        return any(m & ~img == 0 for img in cell.degenerate_masks)

    def push(self, rows, src_cell: Cell, posmap, tgt_cell: Cell):
        """Image rows and coefficients of *rows* under a position map."""
        if self._tables is not None:
            out, coef = push_forward(rows, posmap, src_cell.base, tgt_cell.base, tgt_cell.npos,
                                     self.unit, *self._tables)
            return out, [int(c) for c in coef], None
        return self._push_generic(rows, src_cell, posmap, tgt_cell)

    def _push_generic(self, rows, src_cell, posmap, tgt_cell):
        A, M = self.algebra, self.module
        out_rows, out_coef, owner = [], [], []
        for e, row in enumerate(rows):
            vecs = [{self.unit: Fraction(1)} for _ in range(tgt_cell.npos)]
            base_vec = {int(row[src_cell.base]): Fraction(1)}
            for p in range(src_cell.npos):
                if p == src_cell.base or row[p] == self.unit:
                    continue
                q = int(posmap[p])
                if q == tgt_cell.base:
                    nv: dict = {}
                    for mm, c in base_vec.items():
                        for m2, c2 in M.action.get((int(row[p]), mm), ()):
                            nv[m2] = nv.get(m2, 0) + c * c2
                    base_vec = {k: v for k, v in nv.items() if v}
                else:
                    vecs[q] = A.mult_vectors(vecs[q], {int(row[p]): Fraction(1)})
            vecs[tgt_cell.base] = base_vec
            items = [list(v.items()) for v in vecs]
            for combo in iproduct(*items):
                c = Fraction(1)
                r = []
                for idx, x in combo:
                    c *= x
                    r.append(idx)
                if c:
                    out_rows.append(r)
                    out_coef.append(c)
                    owner.append(e)
        arr = np.array(out_rows, dtype=np.int64).reshape(len(out_rows), tgt_cell.npos)
        return arr, out_coef, owner

    def differential(self, n: int, w: int) -> SparseMatrix:
        """d_n restricted to weight w, as a matrix C_{n,w} -> C_{n-1,w}."""
        key = (n, w)
        if key in self._diffs:
            return self._diffs[key]
        src = self.block(n, w)
        if n == 0:
            m = SparseMatrix.zeros(0, src.size)
            self._diffs[key] = m
            return m
        tgt = self.block(n - 1, w)
        R, C, V = [], [], []
        for ci, cidx in enumerate(src.cells):
            rows = src.bases[ci].rows
            if len(rows) == 0:
                continue
            cell = self.model.cell(cidx)
            for sign, tidx, posmap in cell.faces:
                tcell = self.model.cell(tidx)
                tpos = tgt.cells.index(tidx)
                out, coef, owner = self.push(rows, cell, posmap, tcell)
                cols = np.arange(len(rows)) if owner is None else np.asarray(owner, dtype=np.int64)
                idx = tgt.bases[tpos].lookup(out)
                for k in range(len(out)):
                    c = coef[k]
                    if c == 0:
                        continue
                    if idx[k] < 0:
                        if self.normalized and self.is_degenerate_row(tidx, out[k]):
                            continue
                        raise LodayError(f"face image missing from the basis of {tidx}")
                    R.append(tgt.offsets[tpos] + int(idx[k]))
                    C.append(src.offsets[ci] + int(cols[k]))
                    V.append(sign * c)
        m = SparseMatrix.from_triplets(tgt.size, src.size, R, C, V)
        self._diffs[key] = m
        return m

    def check_d_squared(self) -> list:
        """Blocks (n, w) where d_{n-1} d_n fails to vanish."""
        bad = []
        for n in range(2, self.top_level + 1):
            for w in self.weights:
                if not self.differential(n - 1, w).matmul(self.differential(n, w)).is_zero():
                    bad.append((n, w))
        return bad

    # -- chains ------------------------------------------------------------------

    def chain_from_terms(self, n: int, w: int, terms) -> dict:
        """Vector in C_{n,w} from (cell index, row, coefficient) terms."""
        blk = self.block(n, w)
        vec: dict = {}
        for cell, row, c in terms:
            k = blk.index_of(cell, row)
            if k < 0:
                if self.normalized and self.is_degenerate_row(cell, row):
                    continue
                raise LodayError("row is not a basis element of this block")
            vec[k] = vec.get(k, 0) + c
        return {k: v for k, v in vec.items() if v}

    def terms_of(self, n: int, w: int, vec: dict) -> list:
        blk = self.block(n, w)
        out = []
        for k, c in sorted(vec.items()):
            cell, row = blk.locate(k)
            out.append((cell, tuple(int(x) for x in row), c))
        return out

    def element(self, cell_index, assignment: dict, module_entry: int = 0):
        """Row for a basis element given {position: algebra index}."""
        cell = self.model.cell(tuple(cell_index))
        row = [self.unit] * cell.npos
        row[cell.base] = module_entry
        for p, a in assignment.items():
            if p == cell.base:
                raise LodayError("assignment may not touch the basepoint")
            row[p] = a
        return tuple(row)

    def row_weight(self, row, cell_index) -> int:
        cell = self.model.cell(tuple(cell_index))
        w = self.module.weights[row[cell.base]]
        for p, a in enumerate(row):
            if p != cell.base:
                w += self.algebra.weights[a]
        return w


def build(X: SimplicialSet, A: GradedAlgebra | None = None, M: CoefficientModule | None = None,
          N: int = 3, W: int | None = None, normalized: bool = True, model: str = "auto",
          size_limit: int | None = None) -> LodayComplex:
    A = A or dual_numbers()
    M = M or self_module(A)
    W = N + 2 if W is None else W
    return LodayComplex(X, A, M, N, W, normalized=normalized, model=model, size_limit=size_limit)


# -- the short exact sequence of coefficients ----------------------------------------

def square_zero_generator(A: GradedAlgebra) -> int:
    """Index of t when the augmentation ideal is spanned by one t with t^2 = 0."""
    nonunit = A.nonunit_indices
    if len(nonunit) != 1:
        raise LodayError("need an augmentation ideal of rank one")
    t = nonunit[0]
    if A.mult(t, t) or A.eps(t) != 0:
        raise LodayError("augmentation ideal must be square zero")
    return t


@dataclass
class ModuleChainMap:
    """Chain map induced by a map on the basepoint entry only.

    ``table[m]`` lists (target module index, coefficient); the weight of a
    basis element moves by ``weight_shift``.
    """
    source: LodayComplex
    target: LodayComplex
    table: dict
    weight_shift: int = 0

    def apply(self, n: int, w: int, vec: dict) -> dict:
        """Image of a chain in C_{n,w} of the source; lands in weight w + shift."""
        tw = w + self.weight_shift
        if not 0 <= tw <= self.target.max_weight:
            return {}
        out_terms = []
        src_blk = self.source.block(n, w)
        for k, c in vec.items():
            cell, row = src_blk.locate(k)
            base = self.source.model.cell(cell).base
            for m2, c2 in self.table.get(int(row[base]), ()):
                r = list(int(x) for x in row)
                r[base] = m2
                out_terms.append((cell, r, c * c2))
        return self.target.chain_from_terms(n, tw, out_terms)

    def matrix(self, n: int, w: int) -> SparseMatrix:
        src = self.source.block(n, w)
        tw = w + self.weight_shift
        if not 0 <= tw <= self.target.max_weight:
            return SparseMatrix.zeros(0, src.size)
        cols = [self.apply(n, w, {k: 1}) for k in range(src.size)]
        return SparseMatrix.from_columns(self.target.block(n, tw).size, cols)


@dataclass
class ShortExactSequence:
    """0 -> kernel -> total -> quotient -> 0 for A = Q[t]/t^2-like algebras."""
    kernel: LodayComplex
    total: LodayComplex
    quotient: LodayComplex
    inclusion: ModuleChainMap
    projection: ModuleChainMap
    section: ModuleChainMap  # quotient -> total, basepoint 1 -> 1 (not a chain map)
    kernel_to_quotient: ModuleChainMap  # weight w -> w - 1 isomorphism
    quotient_to_kernel: ModuleChainMap
    t_index: int


def ses_complexes(X: SimplicialSet, A: GradedAlgebra | None = None, N: int = 3,
                  W: int | None = None, normalized: bool = True, model: str = "auto",
                  size_limit: int | None = None) -> ShortExactSequence:
    A = A or dual_numbers()
    t = square_zero_generator(A)
    W = N + 2 if W is None else W
    kw = dict(normalized=normalized, model=model, size_limit=size_limit)
    total = LodayComplex(X, A, self_module(A), N, W, **kw)
    quot = LodayComplex(X, A, augmentation_module(A), N, W, **kw)
    kern = LodayComplex(X, A, kernel_module(A), N, W, **kw)
    u = A.unit_index
    inc = ModuleChainMap(kern, total, {0: ((t, 1),)})
    proj = ModuleChainMap(total, quot, {u: ((0, 1),)})
    sec = ModuleChainMap(quot, total, {0: ((u, 1),)})
    k2q = ModuleChainMap(kern, quot, {0: ((0, 1),)}, weight_shift=-A.weights[t])
    q2k = ModuleChainMap(quot, kern, {0: ((0, 1),)}, weight_shift=A.weights[t])
    return ShortExactSequence(kern, total, quot, inc, proj, sec, k2q, q2k, t)

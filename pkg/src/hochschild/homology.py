"""Homology of Loday complexes: dimensions, tables and explicit classes.

Dimensions come from ranks under a :class:`FieldStrategy`.  Explicit work
(cycle representatives, coordinates of a class) is done with an
:class:`Echelon` over the strategy's field, which is exact.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .algebras import dual_numbers, self_module
from .linalg import Echelon, FieldSpec, FieldStrategy, LinalgError, nullspace
from .loday import LodayComplex, LodayError, build


class HomologyError(ValueError):
    pass


def _check_degree(cplx: LodayComplex, n: int):
    if not 0 <= n <= cplx.max_degree:
        raise HomologyError(f"degree {n} outside the computed range 0..{cplx.max_degree}")


def _weight_dim(cplx: LodayComplex, n: int, w: int, strategy: FieldStrategy) -> int:
    size = cplx.block(n, w).size
    if size == 0:
        return 0
    r_out = strategy.rank(cplx.differential(n, w)) if n > 0 else 0
    r_in = strategy.rank(cplx.differential(n + 1, w))
    if r_out + r_in > size:
        raise LinalgError(f"ranks {r_out} + {r_in} exceed dim C_{n},{w} = {size}")
    return size - r_out - r_in


def homology_dims(cplx: LodayComplex, n: int, strategy: FieldStrategy | None = None,
                  jobs: int = 1) -> dict:
    """dim H_{n,w} for every weight w up to the cap, zeros omitted."""
    _check_degree(cplx, n)
    strategy = strategy or FieldStrategy()
    ws = list(cplx.weights)
    if jobs > 1:
        # blocks are built up front so worker threads only do rank work
        for w in ws:
            cplx.differential(n + 1, w)
            if n > 0:
                cplx.differential(n, w)
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            dims = list(pool.map(lambda w: _weight_dim(cplx, n, w, strategy), ws))
    else:
        dims = [_weight_dim(cplx, n, w, strategy) for w in ws]
    return {w: d for w, d in zip(ws, dims) if d}


@dataclass
class HomologyTable:
    """Per-degree homology dimensions split by weight."""
    weights: dict  # degree -> {weight: dim}
    max_degree: int
    max_weight: int
    field: str
    normalized: bool
    model: str = "diagonal"

    @property
    def totals(self) -> dict:
        return {n: sum(ws.values()) for n, ws in sorted(self.weights.items())}

    def total(self, n: int) -> int:
        return sum(self.weights[n].values())

    def top_weight_hits(self) -> list:
        """Degrees with classes in the top weight, where the cap might be binding."""
        return [n for n, ws in sorted(self.weights.items()) if ws.get(self.max_weight)]


def homology_table(cplx: LodayComplex, strategy: FieldStrategy | None = None,
                   degrees=None, jobs: int = 1) -> HomologyTable:
    strategy = strategy or FieldStrategy()
    degrees = range(cplx.max_degree + 1) if degrees is None else degrees
    table = {n: homology_dims(cplx, n, strategy, jobs) for n in degrees}
    return HomologyTable(table, cplx.max_degree, cplx.max_weight, strategy.describe(),
                         cplx.normalized, cplx.model.kind)


# -- explicit homology ------------------------------------------------------------

class HomologyBlock:
    """H_{n,w} with chosen cycle representatives.

    Boundaries enter the echelon untagged and representatives are tagged by
    their index, so reducing a cycle yields its coordinates directly.
    """

    def __init__(self, cplx: LodayComplex, n: int, w: int, field: FieldSpec):
        _check_degree(cplx, n)
        self.complex = cplx
        self.degree = n
        self.weight = w
        self.field = field
        self.echelon = Echelon(field)
        d_in = cplx.differential(n + 1, w)
        for j in range(d_in.cols):
            self.echelon.add(d_in.column(j))
        self.boundary_rank = self.echelon.rank
        if n > 0:
            cycles = nullspace(cplx.differential(n, w), field)
        else:
            cycles = [{k: 1} for k in range(cplx.block(0, w).size)]
        self.cycle_dim = len(cycles)
        self.representatives = []
        for z in cycles:
            if self.echelon.add(z, tag=len(self.representatives)):
                self.representatives.append(z)

    @property
    def dim(self) -> int:
        return len(self.representatives)

    def is_cycle(self, vec: dict) -> bool:
        if self.degree == 0:
            return True
        d = self.complex.differential(self.degree, self.weight).apply(vec)
        return not any(self.field.norm(x) for x in d.values())

    def coordinates(self, vec: dict) -> list:
        """Coordinates of a cycle on the representatives (zero vector for boundaries)."""
        if not self.is_cycle(vec):
            raise HomologyError(f"chain is not a cycle in degree {self.degree}")
        combo = self.echelon.coordinates(vec)
        if combo is None:
            raise HomologyError("cycle is not in the span of boundaries and representatives")
        return [self.field.norm(combo.get(k, 0)) for k in range(self.dim)]

    def vector(self, coords) -> dict:
        out: dict = {}
        for c, z in zip(coords, self.representatives):
            if c:
                for i, x in z.items():
                    out[i] = self.field.norm(out.get(i, 0) + c * x)
        return {i: x for i, x in out.items() if x}


@dataclass
class HomologyClass:
    """A homology class carried by an explicit cycle in C_{degree, weight}."""
    complex: LodayComplex
    degree: int
    weight: int
    representative: dict
    name: str | None = None
    field: FieldSpec = field(default_factory=FieldSpec)

    def terms(self) -> list:
        return self.complex.terms_of(self.degree, self.weight, self.representative)

    def __repr__(self):
        label = self.name or "class"
        return (f"HomologyClass({label}, degree={self.degree}, weight={self.weight}, "
                f"terms={len(self.representative)})")


def homology_basis(cplx: LodayComplex, n: int, field: FieldSpec | None = None) -> list:
    """Cycle representatives of a basis of H_n, weight by weight."""
    field = field or FieldSpec()
    out = []
    for w in cplx.weights:
        blk = HomologyBlock(cplx, n, w, field)
        for z in blk.representatives:
            out.append(HomologyClass(cplx, n, w, z, field=field))
    return out


def membership(vec: dict, span, field: FieldSpec | None = None):
    """Coordinates of *vec* on a list of vectors (or matrix columns), or None."""
    field = field or FieldSpec()
    ech = Echelon(field)
    cols = span.columns() if hasattr(span, "columns") else span
    for k, v in enumerate(cols):
        ech.add(v, tag=k)
    return ech.coordinates(vec)


NORMALIZE_CHECK_BOUND = 200_000


def normalize_check(X, A=None, M=None, N: int = 3, W: int | None = None,
                    bound: int = NORMALIZE_CHECK_BOUND,
                    strategy: FieldStrategy | None = None) -> bool:
    """Compare homology of the normalized and the full Moore complex.

    The full complex is built on the diagonal model; ``bound`` caps the
    total number of basis elements it may have.
    """
    A = A or dual_numbers()
    M = M or self_module(A)
    strategy = strategy or FieldStrategy("q")
    full = build(X, A, M, N=N, W=W, normalized=False, model="diagonal")
    total = sum(full.dim(n) for n in range(full.top_level + 1))
    if total > bound:
        raise LodayError(f"unnormalized complex has {total} basis elements, above {bound}")
    norm = build(X, A, M, N=N, W=W, normalized=True)
    return all(homology_dims(full, n, strategy) == homology_dims(norm, n, strategy)
               for n in range(N + 1))

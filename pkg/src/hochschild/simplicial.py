"""Finite pointed simplicial sets, truncated at a dimension cap.

Simplices are kept in Eilenberg-Zilber normal form: a nondegenerate
generator together with the surjection ``[n] -> [dim g]`` describing the
degeneracy applied to it.  The surjection is stored as its non-decreasing
value tuple, which is equivalent to (and cheaper than) the strictly
decreasing word ``s_{i_k} ... s_{i_1}``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from math import comb

import numpy as np

DEFAULT_TRUNCATION = 8


class SimplicialError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Simplex:
    generator: int
    surjection: tuple

    @property
    def level(self) -> int:
        return len(self.surjection) - 1

    @property
    def dim(self) -> int:
        """Dimension of the underlying nondegenerate generator."""
        return self.surjection[-1]

    @property
    def degeneracy_word(self) -> tuple:
        s = self.surjection
        return tuple(j for j in range(len(s) - 2, -1, -1) if s[j] == s[j + 1])

    @property
    def is_degenerate(self) -> bool:
        return self.level > self.dim

    def sort_key(self):
        return (self.generator, self.degeneracy_word)


def identity_surjection(n: int) -> tuple:
    return tuple(range(n + 1))


def surjection_from_word(n: int, word) -> tuple:
    """Surjection of ``[n]`` collapsing ``j, j+1`` for each ``j`` in *word*."""
    js = set(word)
    out, v = [], 0
    for k in range(n + 1):
        if k > 0 and (k - 1) not in js:
            v += 1
        out.append(v)
    return tuple(out)


@dataclass(frozen=True)
class Generator:
    id: int
    dim: int
    faces: tuple  # d_0 g, ..., d_dim g as Simplexes one level down
    summand: int | None = None
    label: str = ""


class SimplicialSet:
    """A finite pointed simplicial set given by its nondegenerate simplices.

    Level sets are generated lazily and cached; all index maps are numpy
    integer arrays into the deterministic level ordering.
    """

    def __init__(self, generators, base: int = 0, truncation: int = DEFAULT_TRUNCATION,
                 name: str = "X", factors=None, summands=None):
        if truncation < 0:
            raise SimplicialError("truncation must be non-negative")
        self.generators = tuple(sorted(generators, key=lambda g: g.id))
        self._by_id = {g.id: g for g in self.generators}
        if base not in self._by_id or self._by_id[base].dim != 0:
            raise SimplicialError("base vertex must be a 0-dimensional generator")
        self.base = base
        self.truncation = truncation
        self.name = name
        self.factors = factors
        self.summands = summands
        self._levels: dict[int, list[Simplex]] = {}
        self._index: dict[int, dict[Simplex, int]] = {}
        self._faces: dict[tuple, np.ndarray] = {}
        self._degens: dict[tuple, np.ndarray] = {}

    def __repr__(self):
        return f"SimplicialSet({self.name!r}, D={self.truncation})"

    @cached_property
    def max_dim(self) -> int:
        return max(g.dim for g in self.generators)

    def generator(self, gid: int) -> Generator:
        return self._by_id[gid]

    def generators_of_dim(self, k: int):
        return [g for g in self.generators if g.dim == k]

    # -- simplicial operators on normal forms ------------------------------

    def face(self, x: Simplex, i: int) -> Simplex:
        s = x.surjection
        n = len(s) - 1
        if not 0 <= i <= n or n == 0:
            raise SimplicialError(f"face index {i} out of range at level {n}")
        rest = s[:i] + s[i + 1:]
        v = s[i]
        if (i > 0 and s[i - 1] == v) or (i < n and s[i + 1] == v):
            return Simplex(x.generator, rest)
        # the value v lost its only preimage: factor through d_v of the generator
        g = self._by_id[x.generator]
        y = g.faces[v]
        eps = tuple(e - 1 if e > v else e for e in rest)
        return Simplex(y.generator, tuple(y.surjection[e] for e in eps))

    def degeneracy(self, x: Simplex, i: int) -> Simplex:
        s = x.surjection
        if not 0 <= i < len(s):
            raise SimplicialError(f"degeneracy index {i} out of range at level {len(s) - 1}")
        return Simplex(x.generator, s[:i + 1] + s[i:])

    def base_simplex(self, n: int) -> Simplex:
        return Simplex(self.base, (0,) * (n + 1))

    # -- level sets and index maps -------------------------------------------

    def _check_level(self, n: int):
        if not 0 <= n <= self.truncation:
            raise SimplicialError(f"level {n} outside 0..{self.truncation} for {self.name}")

    def level(self, n: int) -> list[Simplex]:
        self._check_level(n)
        if n not in self._levels:
            out = []
            for g in self.generators:
                m = g.dim
                if m > n:
                    continue
                for word in combinations(range(n), n - m):
                    out.append(Simplex(g.id, surjection_from_word(n, word)))
            out.sort(key=Simplex.sort_key)
            self._levels[n] = out
            self._index[n] = {x: k for k, x in enumerate(out)}
        return self._levels[n]

    def level_size(self, n: int) -> int:
        self._check_level(n)
        return sum(comb(n, n - g.dim) for g in self.generators if g.dim <= n)

    def index_of(self, x: Simplex) -> int:
        self.level(x.level)
        return self._index[x.level][x]

    def basepoint_index(self, n: int) -> int:
        return self.index_of(self.base_simplex(n))

    def face_map(self, n: int, i: int) -> np.ndarray:
        """Index map level n -> level n-1 induced by d_i."""
        if n < 1 or not 0 <= i <= n:
            raise SimplicialError(f"no face d_{i} at level {n}")
        key = (n, i)
        if key not in self._faces:
            self.level(n - 1)
            idx = self._index[n - 1]
            self._faces[key] = np.array([idx[self.face(x, i)] for x in self.level(n)],
                                        dtype=np.int64)
        return self._faces[key]

    def degeneracy_map(self, n: int, i: int) -> np.ndarray:
        """Index map level n -> level n+1 induced by s_i."""
        if not 0 <= i <= n:
            raise SimplicialError(f"no degeneracy s_{i} at level {n}")
        key = (n, i)
        if key not in self._degens:
            self.level(n + 1)
            idx = self._index[n + 1]
            self._degens[key] = np.array([idx[self.degeneracy(x, i)] for x in self.level(n)],
                                         dtype=np.int64)
        return self._degens[key]

    def summand_of(self, x: Simplex):
        return self._by_id[x.generator].summand

    # -- checks ----------------------------------------------------------------

    def check_identities(self, max_level: int | None = None) -> list[str]:
        """Exhaustively test the simplicial identities as index maps.

        Every identity whose source level is at most *max_level* and whose
        maps stay within the truncation is checked.
        """
        D = self.truncation
        top = D if max_level is None else min(max_level, D)
        bad = []
        for n in range(top + 1):
            ident = np.arange(len(self.level(n)))
            # d_i d_j = d_{j-1} d_i  (i < j), source level n
            if n >= 2:
                for j in range(n + 1):
                    for i in range(j):
                        a = self.face_map(n - 1, i)[self.face_map(n, j)]
                        b = self.face_map(n - 1, j - 1)[self.face_map(n, i)]
                        if not np.array_equal(a, b):
                            bad.append(f"d{i}d{j} at level {n}")
            if n + 1 > D:
                continue
            for j in range(n + 1):
                sj = self.degeneracy_map(n, j)
                for i in range(n + 2):
                    lhs = self.face_map(n + 1, i)[sj]
                    if i == j or i == j + 1:
                        rhs = ident
                    elif i < j:
                        rhs = self.degeneracy_map(n - 1, j - 1)[self.face_map(n, i)]
                    else:
                        rhs = self.degeneracy_map(n - 1, j)[self.face_map(n, i - 1)]
                    if not np.array_equal(lhs, rhs):
                        bad.append(f"d{i}s{j} at level {n}")
                if n + 2 > D:
                    continue
                for i in range(j + 1):
                    lhs = self.degeneracy_map(n + 1, i)[sj]
                    rhs = self.degeneracy_map(n + 1, j + 1)[self.degeneracy_map(n, i)]
                    if not np.array_equal(lhs, rhs):
                        bad.append(f"s{i}s{j} at level {n}")
        return bad


# -- constructors -------------------------------------------------------------

def point(truncation: int = DEFAULT_TRUNCATION) -> SimplicialSet:
    return SimplicialSet([Generator(0, 0, (), label="*")], truncation=truncation, name="pt")


def sphere(n: int, truncation: int = DEFAULT_TRUNCATION) -> SimplicialSet:
    """Minimal model of the n-sphere: one vertex and one n-simplex."""
    if n < 1:
        raise SimplicialError("sphere dimension must be at least 1")
    if n > truncation:
        raise SimplicialError(f"sphere dimension {n} exceeds truncation {truncation}")
    base_face = Simplex(0, (0,) * n)
    gens = [Generator(0, 0, (), label="*"),
            Generator(1, n, (base_face,) * (n + 1), label=f"i{n}")]
    return SimplicialSet(gens, truncation=truncation, name=f"s({n})")


def circle(truncation: int = DEFAULT_TRUNCATION) -> SimplicialSet:
    X = sphere(1, truncation)
    X.name = "circle"
    return X


def wedge(parts, name: str | None = None) -> SimplicialSet:
    parts = list(parts)
    if len(parts) < 2:
        raise SimplicialError("wedge needs at least two parts")
    D = parts[0].truncation
    if any(p.truncation != D for p in parts):
        raise SimplicialError("wedge parts must share the truncation")
    gens = [Generator(0, 0, (), label="*")]
    next_id = 1
    for k, part in enumerate(parts):
        renum = {part.base: 0}
        for g in part.generators:
            if g.id != part.base:
                renum[g.id] = next_id
                next_id += 1
        for g in part.generators:
            if g.id == part.base:
                continue
            faces = tuple(Simplex(renum[y.generator], y.surjection) for y in g.faces)
            gens.append(Generator(renum[g.id], g.dim, faces, summand=k, label=g.label))
    label = name or "wedge(" + ", ".join(p.name for p in parts) + ")"
    return SimplicialSet(gens, truncation=D, name=label, summands=tuple(parts))


def _normalize_pair(x: Simplex, y: Simplex):
    """Split a level-n pair into (common surjection, nondegenerate pair)."""
    n = x.level
    sx, sy = x.surjection, y.surjection
    common = [j for j in range(n) if sx[j] == sx[j + 1] and sy[j] == sy[j + 1]]
    rho = surjection_from_word(n, common)
    keep = [k for k in range(n + 1) if k == 0 or rho[k] != rho[k - 1]]
    xr = Simplex(x.generator, tuple(sx[k] for k in keep))
    yr = Simplex(y.generator, tuple(sy[k] for k in keep))
    return rho, xr, yr


def product(X: SimplicialSet, Y: SimplicialSet, name: str | None = None) -> SimplicialSet:
    """Levelwise cartesian product; faces and degeneracies act diagonally."""
    if X.truncation != Y.truncation:
        raise SimplicialError("product factors must share the truncation")
    D = X.truncation
    top = min(D, X.max_dim + Y.max_dim)
    ids: dict[tuple, int] = {}
    gens = []
    pairs = {}
    for k in range(top + 1):
        for x in X.level(k):
            for y in Y.level(k):
                if set(x.degeneracy_word) & set(y.degeneracy_word):
                    continue
                gid = len(ids)
                ids[(x, y)] = gid
                pairs[gid] = (x, y)
                faces = []
                if k > 0:
                    for i in range(k + 1):
                        rho, xr, yr = _normalize_pair(X.face(x, i), Y.face(y, i))
                        faces.append(Simplex(ids[(xr, yr)], rho))
                gens.append(Generator(gid, k, tuple(faces), label=f"({x},{y})"))
    base = ids[(X.base_simplex(0), Y.base_simplex(0))]
    label = name or f"prod({X.name}, {Y.name})"
    P = SimplicialSet(gens, base=base, truncation=D, name=label, factors=(X, Y))
    P._pairs = pairs
    return P


def split_product_simplex(P: SimplicialSet, z: Simplex):
    """The (x, y) components of a simplex of a product."""
    x0, y0 = P._pairs[z.generator]
    X, Y = P.factors
    x = Simplex(x0.generator, tuple(x0.surjection[v] for v in z.surjection))
    y = Simplex(y0.generator, tuple(y0.surjection[v] for v in z.surjection))
    return x, y


def pair_simplex(P: SimplicialSet, x: Simplex, y: Simplex) -> Simplex:
    rho, xr, yr = _normalize_pair(x, y)
    for gid, pr in P._pairs.items():
        if pr == (xr, yr):
            return Simplex(gid, rho)
    raise SimplicialError("pair not found among product generators")

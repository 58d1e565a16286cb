"""Sparse exact linear algebra over Q and prime fields."""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

import numpy as np

from .kernels import SMALL_PRIME_BOUND, rank_mod_p_arrays

RATIONAL_THRESHOLD = 20_000
PRIME_RANGE = (1 << 30, 1 << 31)


class LinalgError(ValueError):
    pass


@dataclass(frozen=True)
class FieldSpec:
    """Q when ``p`` is None, else the prime field F_p."""
    p: int | None = None

    def __post_init__(self):
        if self.p is not None:
            from sympy import isprime

            if not (2 <= self.p < (1 << 62)) or not isprime(self.p):
                raise LinalgError(f"{self.p} is not a prime below 2**62")

    @property
    def is_rational(self) -> bool:
        return self.p is None

    def coerce(self, x):
        if self.p is None:
            return Fraction(x)
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def inv(self, x):
        if self.p is None:
            return 1 / x
        return pow(x, -1, self.p)

    def norm(self, x):
        return x if self.p is None else x % self.p

    def __str__(self):
        return "Q" if self.p is None else f"F_{self.p}"


Rationals = FieldSpec()


def PrimeField(p: int) -> FieldSpec:
    return FieldSpec(p)


class SparseMatrix:
    """Column-compressed sparse matrix with exact entries.

    Integer matrices keep an int64 ``data`` array; anything else is stored as
    an object array of Fractions.
    """

    def __init__(self, nrows, ncols, indptr, indices, data):
        self.rows = int(nrows)
        self.cols = int(ncols)
        self.indptr = np.asarray(indptr, dtype=np.int64)
        self.indices = np.asarray(indices, dtype=np.int64)
        self.data = data

    @classmethod
    def from_triplets(cls, nrows, ncols, r, c, v):
        r = np.asarray(r, dtype=np.int64)
        c = np.asarray(c, dtype=np.int64)
        if isinstance(v, np.ndarray) and v.dtype != object:
            vals = v.astype(np.int64)
        else:
            v = list(v)
            if all((isinstance(x, (int, np.integer)) or
                    (isinstance(x, Fraction) and x.denominator == 1)) and abs(int(x)) < (1 << 62)
                   for x in v):
                vals = np.array([int(x) for x in v], dtype=np.int64)
            else:
                vals = np.array([Fraction(x) for x in v], dtype=object)
        if len(r) and (r.min() < 0 or r.max() >= nrows or c.min() < 0 or c.max() >= ncols):
            raise LinalgError("triplet index out of range")
        order = np.lexsort((r, c))
        r, c, vals = r[order], c[order], vals[order]
        if len(r):
            key = c * max(nrows, 1) + r
            start = np.flatnonzero(np.r_[True, key[1:] != key[:-1]])
            if vals.dtype == object:
                summed = np.array([sum(vals[a:b], Fraction(0)) for a, b in
                                   zip(start, list(start[1:]) + [len(vals)])], dtype=object)
            else:
                summed = np.add.reduceat(vals, start)
            r, c = r[start], c[start]
            keep = summed != 0
            r, c, vals = r[keep], c[keep], summed[keep]
        indptr = np.zeros(ncols + 1, dtype=np.int64)
        np.add.at(indptr, c + 1, 1)
        indptr = np.cumsum(indptr)
        return cls(nrows, ncols, indptr, r, vals)

    @classmethod
    def from_columns(cls, nrows, columns):
        r, c, v = [], [], []
        for j, col in enumerate(columns):
            for i, x in col.items():
                r.append(i)
                c.append(j)
                v.append(x)
        return cls.from_triplets(nrows, len(columns), r, c, v)

    @classmethod
    def zeros(cls, nrows, ncols):
        return cls(nrows, ncols, np.zeros(ncols + 1, dtype=np.int64),
                   np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64))

    @classmethod
    def identity(cls, n):
        return cls(n, n, np.arange(n + 1), np.arange(n), np.ones(n, dtype=np.int64))

    @property
    def nnz(self) -> int:
        return len(self.indices)

    @property
    def integral(self) -> bool:
        return self.data.dtype != object

    @property
    def shape(self):
        return (self.rows, self.cols)

    def column(self, j) -> dict:
        a, b = self.indptr[j], self.indptr[j + 1]
        return {int(i): (int(x) if self.integral else x)
                for i, x in zip(self.indices[a:b], self.data[a:b])}

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    def to_dense(self):
        out = np.zeros((self.rows, self.cols), dtype=object)
        for j in range(self.cols):
            for i, x in self.column(j).items():
                out[i, j] = x
        return out

    def matmul(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.cols != other.rows:
            raise LinalgError("dimension mismatch")
        cols = []
        mine = self.columns()
        for j in range(other.cols):
            acc: dict = {}
            for k, x in other.column(j).items():
                for i, y in mine[k].items():
                    acc[i] = acc.get(i, 0) + x * y
            cols.append({i: x for i, x in acc.items() if x})
        return SparseMatrix.from_columns(self.rows, cols)

    def apply(self, vec: dict) -> dict:
        """Multiply by a sparse column vector given as {index: value}."""
        acc: dict = {}
        for k, x in vec.items():
            a, b = self.indptr[k], self.indptr[k + 1]
            for i, y in zip(self.indices[a:b], self.data[a:b]):
                i = int(i)
                acc[i] = acc.get(i, 0) + x * (int(y) if self.integral else y)
        return {i: x for i, x in acc.items() if x}

    def is_zero(self) -> bool:
        return self.nnz == 0 or not np.any(self.data != 0)

    def hstack(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.rows != other.rows:
            raise LinalgError("row mismatch")
        return SparseMatrix.from_columns(self.rows, self.columns() + other.columns())


# -- elimination in Python ----------------------------------------------------

def _scale_to_integers(col: dict) -> dict:
    den = 1
    for x in col.values():
        if isinstance(x, Fraction):
            den = lcm(den, x.denominator)
    return {i: int(x * den) for i, x in col.items()}


def _primitive(col: dict) -> dict:
    g = 0
    for x in col.values():
        g = gcd(g, x)
        if g == 1:
            return col
    if g > 1:
        return {i: x // g for i, x in col.items()}
    return col


def rank_rational(m: SparseMatrix) -> int:
    """Fraction-free column reduction over Z, which gives the rank over Q."""
    pivots: dict = {}
    for j in range(m.cols):
        col = _scale_to_integers(m.column(j))
        while col:
            r = max(col)
            piv = pivots.get(r)
            if piv is None:
                pivots[r] = _primitive(col)
                break
            a, b = piv[r], col[r]
            new = {i: a * x for i, x in col.items()}
            for i, y in piv.items():
                v = new.get(i, 0) - b * y
                if v:
                    new[i] = v
                else:
                    new.pop(i, None)
            col = _primitive(new)
    return len(pivots)


def rank_mod_p_python(m: SparseMatrix, p: int) -> int:
    F = FieldSpec(p)
    ech = Echelon(F)
    for j in range(m.cols):
        ech.add(m.column(j))
    return ech.rank


def rank(m: SparseMatrix, field: FieldSpec = Rationals) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    if field.is_rational:
        return rank_rational(m)
    if m.integral and field.p < SMALL_PRIME_BOUND:
        return rank_mod_p_arrays(m.indptr, m.indices, m.data, m.rows, field.p)
    return rank_mod_p_python(m, field.p)


class Echelon:
    """Incremental echelon form of sparse vectors over a field.

    Each stored pivot remembers how it was combined from tagged inputs, so a
    reduction can report coordinates in terms of those tags.
    """

    def __init__(self, field: FieldSpec = Rationals):
        self.field = field
        self.pivots: dict = {}  # lead row -> (vector with lead 1, combo)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def _coerce(self, vec: dict) -> dict:
        F = self.field
        out = {}
        for i, x in vec.items():
            y = F.coerce(x)
            if y:
                out[i] = y
        return out

    def reduce(self, vec: dict):
        """Return (remainder, combo) with vec = remainder + sum combo[tag] * input[tag]."""
        F = self.field
        v = self._coerce(vec)
        combo: dict = {}
        while v:
            r = max(v)
            piv = self.pivots.get(r)
            if piv is None:
                break
            pv, pc = piv
            c = v[r]
            for i, y in pv.items():
                z = F.norm(v.get(i, 0) - c * y)
                if z:
                    v[i] = z
                else:
                    v.pop(i, None)
            for t, y in pc.items():
                z = F.norm(combo.get(t, 0) + c * y)
                if z:
                    combo[t] = z
                else:
                    combo.pop(t, None)
        return v, combo

    def add(self, vec: dict, tag=None) -> bool:
        """Insert a vector; returns True if it was independent."""
        F = self.field
        v, combo = self.reduce(vec)
        if not v:
            return False
        # pivot = vec - sum combo*inputs, so its own combo is tag - combo
        new_combo = {t: F.norm(-y) for t, y in combo.items()}
        if tag is not None:
            new_combo[tag] = F.norm(new_combo.get(tag, 0) + 1)
        r = max(v)
        inv = F.inv(v[r])
        v = {i: F.norm(x * inv) for i, x in v.items()}
        new_combo = {t: F.norm(y * inv) for t, y in new_combo.items() if y}
        self.pivots[r] = (v, new_combo)
        return True

    def contains(self, vec: dict) -> bool:
        rest, _ = self.reduce(vec)
        return not rest

    def coordinates(self, vec: dict):
        """Combo over tags if vec lies in the span, else None."""
        rest, combo = self.reduce(vec)
        if rest:
            return None
        return {t: y for t, y in combo.items() if t is not None and y}


def nullspace(m: SparseMatrix, field: FieldSpec = Rationals) -> list[dict]:
    """Basis of the kernel, one sparse vector per non-pivot column."""
    ech = Echelon(field)
    basis = []
    F = field
    for j in range(m.cols):
        v, combo = ech.reduce(m.column(j))
        if not v:
            vec = {t: F.norm(-y) for t, y in combo.items()}
            vec[j] = F.norm(vec.get(j, 0) + 1)
            basis.append({i: x for i, x in vec.items() if x})
        else:
            new_combo = {t: F.norm(-y) for t, y in combo.items()}
            new_combo[j] = 1
            r = max(v)
            inv = F.inv(v[r])
            ech.pivots[r] = ({i: F.norm(x * inv) for i, x in v.items()},
                             {t: F.norm(y * inv) for t, y in new_combo.items() if y})
    return basis


def column_space(m: SparseMatrix, field: FieldSpec = Rationals) -> Echelon:
    ech = Echelon(field)
    for j in range(m.cols):
        ech.add(m.column(j))
    return ech


# -- rank strategies ------------------------------------------------------------

def random_primes(count: int = 2, seed: int = 0, lo: int = PRIME_RANGE[0],
                  hi: int = PRIME_RANGE[1]) -> list[int]:
    from sympy import nextprime

    rng = random.Random(seed)
    out: list[int] = []
    while len(out) < count:
        q = nextprime(rng.randrange(lo, hi - 1000))
        if q < hi and q not in out:
            out.append(q)
    return out


class RankDisagreement(LinalgError):
    pass


@dataclass
class FieldStrategy:
    """How ranks are certified: exactly over Q, over one prime, or two primes.

    With two primes, a disagreement pulls in a third prime and, for blocks
    below ``rational_threshold`` columns, an exact rational recomputation.
    """
    kind: str = "2primes"  # "q" | "p" | "2primes"
    prime: int | None = None
    seed: int = 0
    rational_threshold: int = RATIONAL_THRESHOLD

    def __post_init__(self):
        if self.kind not in ("q", "p", "2primes"):
            raise LinalgError(f"unknown field strategy {self.kind!r}")
        if self.kind == "p":
            FieldSpec(self.prime)
        self._primes = random_primes(3, self.seed) if self.kind == "2primes" else []

    @classmethod
    def parse(cls, text: str) -> "FieldStrategy":
        t = text.strip().lower()
        if t in ("q", "rational", "rationals"):
            return cls("q")
        if t == "2primes":
            return cls("2primes")
        if t.startswith("p:"):
            try:
                p = int(t[2:])
            except ValueError as exc:
                raise LinalgError(f"bad prime in {text!r}") from exc
            return cls("p", prime=p)
        raise LinalgError(f"unknown field {text!r}; use q, p:<prime> or 2primes")

    @property
    def primes(self) -> list[int]:
        return list(self._primes[:2])

    @property
    def characteristic_zero(self) -> bool:
        return self.kind != "p"

    @property
    def field(self) -> FieldSpec:
        """Field used for explicit cycle and boundary work."""
        if self.kind == "p":
            return FieldSpec(self.prime)
        return Rationals

    def describe(self) -> str:
        if self.kind == "q":
            return "q"
        if self.kind == "p":
            return f"p:{self.prime}"
        return "2primes:" + ",".join(str(p) for p in self.primes)

    def rank(self, m: SparseMatrix) -> int:
        if m.rows == 0 or m.cols == 0:
            return 0
        if self.kind == "q":
            return rank(m, Rationals)
        if self.kind == "p":
            return rank(m, FieldSpec(self.prime))
        p1, p2, p3 = self._primes
        r1 = rank(m, FieldSpec(p1))
        r2 = rank(m, FieldSpec(p2))
        if r1 == r2:
            return r1
        if m.cols <= self.rational_threshold:
            return rank(m, Rationals)
        r3 = rank(m, FieldSpec(p3))
        # reduction mod p can only lower the rank
        best = max(r1, r2, r3)
        if [r1, r2, r3].count(best) >= 2:
            return best
        raise RankDisagreement(f"ranks {r1}, {r2}, {r3} disagree on a {m.rows}x{m.cols} block")

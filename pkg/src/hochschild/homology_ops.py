"""Ring and module structure on homology, computed on explicit cycles.

A :class:`LodayFamily` bundles the three complexes of the coefficient
sequence ``0 -> Q{t} -> A -> Q -> 0`` over one space, together with the
explicit homology blocks computed so far.  Everything here works over the
family's exact field.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product as iproduct

import numpy as np

from .algebras import GradedAlgebra, dual_numbers
from .homology import HomologyBlock, HomologyClass, HomologyError
from .linalg import Echelon, FieldStrategy
from .loday import LodayComplex, ses_complexes
from .simplicial import Simplex, SimplicialSet, pair_simplex


# -- shuffles -----------------------------------------------------------------------

def shuffles(p: int, q: int):
    """(p, q)-shuffles as (mu, nu, sign); mu has p entries, nu has q."""
    for mu in combinations(range(p + q), p):
        nu = tuple(k for k in range(p + q) if k not in mu)
        inversions = sum(m - k for k, m in enumerate(mu))
        yield mu, nu, (-1) ** inversions


def _add(acc: dict, key, c):
    v = acc.get(key, 0) + c
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


class LodayFamily:
    """The total, quotient and kernel complexes over one space, plus homology caches.

    ``total`` has coefficients in A itself, ``quotient`` in Q = A/t and
    ``kernel`` in Q{t}.  Homology over the quotient is written L(X; Q).
    """

    def __init__(self, X: SimplicialSet, A: GradedAlgebra | None = None, N: int = 3,
                 W: int | None = None, strategy: FieldStrategy | None = None,
                 normalized: bool = True, model: str = "auto", size_limit: int | None = None):
        self.space = X
        self.algebra = A or dual_numbers()
        self.N = N
        self.W = N + 2 if W is None else W
        self.strategy = strategy or FieldStrategy("q")
        self.field = self.strategy.field
        self.normalized = normalized
        self.model_kind = model
        self.size_limit = size_limit
        self.ses = ses_complexes(X, self.algebra, N, self.W, normalized=normalized,
                                 model=model, size_limit=size_limit)
        self.total = self.ses.total
        self.quotient = self.ses.quotient
        self.kernel = self.ses.kernel
        self.t = self.ses.t_index
        self._blocks: dict = {}
        self._degen: dict = {}
        self._twin = None

    def complex(self, coeff: str) -> LodayComplex:
        try:
            return {"self": self.total, "modt": self.quotient, "kernel": self.kernel}[coeff]
        except KeyError:
            raise HomologyError(f"unknown coefficients {coeff!r}") from None

    def coeff_of(self, cplx: LodayComplex) -> str:
        for name in ("self", "modt", "kernel"):
            if self.complex(name) is cplx:
                return name
        raise HomologyError("complex does not belong to this family")

    def hblock(self, cplx: LodayComplex, n: int, w: int) -> HomologyBlock:
        key = (self.coeff_of(cplx), n, w)
        if key not in self._blocks:
            self._blocks[key] = HomologyBlock(cplx, n, w, self.field)
        return self._blocks[key]

    # -- classes ---------------------------------------------------------------

    def make_class(self, cplx, n, w, vec, name=None) -> HomologyClass:
        vec = {k: self.field.norm(c) for k, c in vec.items() if self.field.norm(c)}
        return HomologyClass(cplx, n, w, vec, name=name, field=self.field)

    def zero_class(self, cplx, n, w) -> HomologyClass:
        return self.make_class(cplx, n, w, {})

    def basis(self, coeff: str, n: int) -> list:
        cplx = self.complex(coeff)
        out = []
        for w in cplx.weights:
            for z in self.hblock(cplx, n, w).representatives:
                out.append(self.make_class(cplx, n, w, z))
        return out

    def coordinates(self, c: HomologyClass) -> list:
        if not 0 <= c.weight <= c.complex.max_weight:
            raise HomologyError(f"weight {c.weight} is beyond the cap {c.complex.max_weight}")
        return self.hblock(c.complex, c.degree, c.weight).coordinates(c.representative)

    def is_zero(self, c: HomologyClass) -> bool:
        if not c.representative:
            return True
        return not any(self.coordinates(c))

    def ratio(self, a: HomologyClass, b: HomologyClass):
        """lambda with [a] = lambda [b], or None if the classes are not proportional."""
        if (a.complex is not b.complex or a.degree != b.degree or a.weight != b.weight):
            return Fraction(0) if self.is_zero(a) else None
        ca, cb = self.coordinates(a), self.coordinates(b)
        if not any(cb):
            return Fraction(0) if not any(ca) else None
        k = next(i for i, x in enumerate(cb) if x)
        lam = Fraction(ca[k]) / Fraction(cb[k]) if self.field.is_rational else \
            ca[k] * self.field.inv(cb[k]) % self.field.p
        if all(self.field.norm(x - lam * y) == 0 for x, y in zip(ca, cb)):
            return lam
        return None

    # -- degeneracies -----------------------------------------------------------

    def degeneracy_chain(self, cplx: LodayComplex, index, direction: int, word):
        """Apply s_{word[0]} first, then s_{word[1]}, ...: (new cell, posmap)."""
        key = (id(cplx.model), tuple(index), direction, tuple(word))
        if key not in self._degen:
            idx = tuple(index)
            pm = np.arange(cplx.model.cell(idx).npos)
            for i in word:
                idx, m = cplx.model.degeneracy(idx, direction, i)
                pm = np.asarray(m)[pm]
            self._degen[key] = (tuple(idx), pm)
        return self._degen[key]

    def diagonal_twin(self) -> "LodayFamily":
        """The same family on the diagonal model (identity if already diagonal)."""
        if self.total.model.kind == "diagonal":
            return self
        if self._twin is None:
            self._twin = LodayFamily(self.space, self.algebra, self.N, self.W, self.strategy,
                                     normalized=self.normalized, model="diagonal",
                                     size_limit=self.size_limit)
        return self._twin


def _relocate(row, posmap, npos, unit, base_src, base_tgt):
    out = [unit] * npos
    for p, a in enumerate(row):
        out[int(posmap[p])] = int(a)
    out[base_tgt] = int(row[base_src])
    return out


# -- products -------------------------------------------------------------------------

def _base_product(fam: LodayFamily, ca: str, cb: str):
    """Target coefficients and the product of basepoint entries."""
    A = fam.algebra
    if ca == "self" and cb == "self":
        return "self", lambda x, y: A.mult(x, y)
    if {ca, cb} <= {"self", "modt"}:
        def act(x, y):
            a = x if ca == "self" else y
            e = A.eps(a)
            return {0: e} if e else {}
        if ca == "modt" and cb == "modt":
            return "modt", lambda x, y: {0: Fraction(1)}
        return "modt", act
    raise HomologyError(f"no product for coefficients {ca} x {cb}")


def _row_product(A: GradedAlgebra, ra, rb, base: int, base_mult):
    """Position-wise product of two rows: list of (row, coefficient)."""
    factors = []
    for p, (x, y) in enumerate(zip(ra, rb)):
        prod = base_mult(int(x), int(y)) if p == base else A.mult(int(x), int(y))
        if not prod:
            return []
        factors.append(list(prod.items()))
    out = []
    for combo in iproduct(*factors):
        c = Fraction(1)
        row = []
        for k, v in combo:
            c *= v
            row.append(k)
        if c:
            out.append((tuple(row), c))
    return out


def shuffle_product(fam: LodayFamily, a: HomologyClass, b: HomologyClass,
                    check: bool = True) -> HomologyClass:
    """Shuffle (Eilenberg-Zilber) product of two chains, direction by direction.

    In the bisimplicial model the two directions are shuffled separately and
    the Koszul sign (-1)^(vertical degree of a * horizontal degree of b)
    accounts for moving b's horizontal part past a's vertical part.
    """
    ca, cb = fam.coeff_of(a.complex), fam.coeff_of(b.complex)
    tgt_name, base_mult = _base_product(fam, ca, cb)
    tgt = fam.complex(tgt_name)
    n, w = a.degree + b.degree, a.weight + b.weight
    if w > tgt.max_weight:
        raise HomologyError(f"product weight {w} exceeds the cap {tgt.max_weight}")
    if n > tgt.top_level:
        raise HomologyError(f"product degree {n} exceeds the computed range")
    model = tgt.model
    dirs = model.directions
    unit = fam.algebra.unit_index
    acc: dict = {}
    for cell_a, row_a, xa in a.terms():
        for cell_b, row_b, xb in b.terms():
            koszul = 1
            if dirs == 2 and (cell_a[1] * cell_b[0]) % 2:
                koszul = -1
            per_dir = [list(shuffles(cell_a[k], cell_b[k])) for k in range(dirs)]
            for choice in iproduct(*per_dir):
                ia, ib = tuple(cell_a), tuple(cell_b)
                ra, rb = list(row_a), list(row_b)
                sign = koszul
                for k, (mu, nu, sg) in enumerate(choice):
                    sign *= sg
                    src_a = model.cell(ia)
                    ia2, pa = fam.degeneracy_chain(tgt, ia, k, nu)
                    ra = _relocate(ra, pa, model.cell(ia2).npos, unit, src_a.base,
                                   model.cell(ia2).base)
                    ia = ia2
                    src_b = model.cell(ib)
                    ib2, pb = fam.degeneracy_chain(tgt, ib, k, mu)
                    rb = _relocate(rb, pb, model.cell(ib2).npos, unit, src_b.base,
                                   model.cell(ib2).base)
                    ib = ib2
                assert ia == ib
                base = model.cell(ia).base
                for row, c in _row_product(fam.algebra, ra, rb, base, base_mult):
                    _add(acc, (ia, row), sign * c * xa * xb)
    terms = [(cell, row, c) for (cell, row), c in acc.items()]
    vec = tgt.chain_from_terms(n, w, terms)
    out = fam.make_class(tgt, n, w, vec, name=_join(a.name, b.name))
    if check and not fam.hblock(tgt, n, w).is_cycle(out.representative):
        raise HomologyError("product of cycles is not a cycle")
    return out


def _join(x, y):
    return f"{x}*{y}" if x and y else None


def chain_product(fam: LodayFamily, a: HomologyClass, b: HomologyClass) -> HomologyClass:
    """Shuffle product of arbitrary chains (no cycle check)."""
    return shuffle_product(fam, a, b, check=False)


# -- Eilenberg-Zilber map from the bicomplex to the diagonal ----------------------------

def eilenberg_zilber(src: LodayFamily, c: HomologyClass,
                     dst: LodayFamily | None = None) -> HomologyClass:
    """Send a chain of the bisimplicial model to the diagonal model of the same product."""
    if c.complex.model.kind != "bisimplicial":
        raise HomologyError("the Eilenberg-Zilber map starts from the bisimplicial model")
    dst = dst or src.diagonal_twin()
    coeff = src.coeff_of(c.complex)
    tgt = dst.complex(coeff)
    P = src.space
    bim = c.complex.model
    unit = src.algebra.unit_index
    acc: dict = {}
    for (s, t), row, x in c.terms():
        n = s + t
        tcell = tgt.model.cell((n,))
        for mu, nu, sg in shuffles(s, t):
            pm = _ez_posmap(src, bim, P, s, t, mu, nu)
            r = _relocate(row, pm, tcell.npos, unit, bim.cell((s, t)).base, tcell.base)
            _add(acc, ((n,), tuple(r)), sg * x)
    vec = tgt.chain_from_terms(c.degree, c.weight, [(k, r, v) for (k, r), v in acc.items()])
    return dst.make_class(tgt, c.degree, c.weight, vec, name=c.name)


def _ez_posmap(fam, bim, P, s, t, mu, nu):
    key = ("ez", s, t, mu)
    if key not in fam._degen:
        X, Y = bim.X, bim.Y
        pm = []
        for x, y in bim.positions((s, t)):
            for i in nu:
                x = X.degeneracy(x, i)
            for i in mu:
                y = Y.degeneracy(y, i)
            pm.append(P.index_of(pair_simplex(P, x, y)))
        fam._degen[key] = np.asarray(pm, dtype=np.int64)
    return fam._degen[key]


# -- the Bockstein sequence ---------------------------------------------------------------

def reduce_f(fam: LodayFamily, c: HomologyClass) -> HomologyClass:
    """L_n(X) -> L_n(X; Q): kill t at the basepoint."""
    if c.complex is not fam.total:
        raise HomologyError("f starts from self coefficients")
    vec = fam.ses.projection.apply(c.degree, c.weight, c.representative)
    return fam.make_class(fam.quotient, c.degree, c.weight, vec,
                          name=f"f({c.name})" if c.name else None)


def map_j(fam: LodayFamily, c: HomologyClass) -> HomologyClass:
    """L_n(X; Q) = H_n(kernel) -> L_n(X); raises weight by the weight of t."""
    if c.complex is not fam.quotient:
        raise HomologyError("j starts from mod-t coefficients")
    shift = fam.algebra.weights[fam.t]
    w = c.weight + shift
    if w > fam.W:
        raise HomologyError(f"j lands in weight {w}, beyond the cap {fam.W}")
    kvec = fam.ses.quotient_to_kernel.apply(c.degree, c.weight, c.representative)
    vec = fam.ses.inclusion.apply(c.degree, w, kvec)
    return fam.make_class(fam.total, c.degree, w, vec,
                          name=f"j({c.name})" if c.name else None)


def bockstein(fam: LodayFamily, c: HomologyClass) -> HomologyClass:
    """Connecting map L_{n+1}(X; Q) -> L_n(X; Q) of the coefficient sequence.

    Lift along the section (basepoint entry 1), take the boundary in the
    total complex, read it in the kernel and identify the kernel with the
    quotient one weight lower.
    """
    if c.complex is not fam.quotient:
        raise HomologyError("the Bockstein starts from mod-t coefficients")
    n, w = c.degree, c.weight
    shift = fam.algebra.weights[fam.t]
    if n == 0:
        raise HomologyError("the Bockstein lowers degree; degree 0 has no target")
    lift = fam.ses.section.apply(n, w, c.representative)
    d = fam.total.differential(n, w).apply(lift)
    kterms = []
    for cell, row, x in fam.total.terms_of(n - 1, w, d):
        base = fam.total.model.cell(cell).base
        if row[base] != fam.t:
            raise HomologyError("boundary of the lift does not lie in the kernel")
        r = list(row)
        r[base] = 0
        kterms.append((cell, r, x))
    kvec = fam.kernel.chain_from_terms(n - 1, w, kterms)
    if w - shift < 0:
        return fam.zero_class(fam.quotient, n - 1, 0)
    qvec = fam.ses.kernel_to_quotient.apply(n - 1, w, kvec)
    return fam.make_class(fam.quotient, n - 1, w - shift, qvec,
                          name=f"d({c.name})" if c.name else None)


def t_action(fam: LodayFamily, c: HomologyClass) -> HomologyClass:
    """Multiply by t in the basepoint entry."""
    if c.complex is not fam.total:
        raise HomologyError("t acts on self coefficients")
    A, t = fam.algebra, fam.t
    w = c.weight + A.weights[t]
    if w > fam.W:
        raise HomologyError(f"t * class lands in weight {w}, beyond the cap {fam.W}")
    terms = []
    for cell, row, x in c.terms():
        base = fam.total.model.cell(cell).base
        for k, y in A.mult(t, row[base]).items():
            r = list(row)
            r[base] = k
            terms.append((cell, r, x * y))
    vec = fam.total.chain_from_terms(c.degree, w, terms)
    return fam.make_class(fam.total, c.degree, w, vec, name=f"t{c.name}" if c.name else None)


def is_t_multiple(fam: LodayFamily, c: HomologyClass) -> bool:
    """Whether [c] = t [x] for some class x of the same degree."""
    shift = fam.algebra.weights[fam.t]
    coords = fam.coordinates(c)
    if not any(coords):
        return True
    w0 = c.weight - shift
    if w0 < 0:
        return False
    ech = Echelon(fam.field)
    for z in fam.hblock(fam.total, c.degree, w0).representatives:
        tz = t_action(fam, fam.make_class(fam.total, c.degree, w0, z))
        ech.add(dict(enumerate(fam.coordinates(tz))))
    return ech.contains(dict(enumerate(coords)))


def in_kernel_of_f(fam: LodayFamily, c: HomologyClass) -> bool:
    return fam.is_zero(reduce_f(fam, c))


# -- induced maps and the long exact sequence -------------------------------------------------

def map_rank(fam: LodayFamily, fn, src: LodayComplex, n: int, w: int) -> int:
    """Rank of the map on homology induced by a chain-level function on H_{n,w}(src)."""
    reps = fam.hblock(src, n, w).representatives
    if not reps:
        return 0
    ech = Echelon(fam.field)
    for z in reps:
        img = fn(fam, fam.make_class(src, n, w, z))
        ech.add(dict(enumerate(fam.coordinates(img))))
    return ech.rank


def exactness_report(fam: LodayFamily, N: int | None = None) -> dict:
    """Rank bookkeeping of the Bockstein long exact sequence in degrees 0..N.

    Weights near the cap are skipped where a map would leave the computed range.
    Each degree records the ranks of f_n, j_n and the Bockstein out of degree
    n+1, and the three exactness identities that were checked.
    """
    N = fam.N - 1 if N is None else N
    if N + 1 > fam.N:
        raise HomologyError(f"exactness to degree {N} needs the family built to {N + 1}")
    s = fam.algebra.weights[fam.t]
    W = fam.W
    tot, quo = fam.total, fam.quotient
    hdim = lambda cplx, n, w: fam.hblock(cplx, n, w).dim  # noqa: E731
    report = {"degrees": {}, "violations": []}
    for n in range(N + 1):
        rf = {w: map_rank(fam, reduce_f, tot, n, w) for w in range(W + 1)}
        rj = {w: map_rank(fam, map_j, quo, n, w) for w in range(W + 1 - s)}
        rd = {w: map_rank(fam, bockstein, quo, n + 1, w) for w in range(W + 1)}
        rf1 = {w: map_rank(fam, reduce_f, tot, n + 1, w) for w in range(W + 1)}
        checks = []
        for w in range(W + 1):
            # at L_n(X), weight w: image of j from weight w - s equals ker f
            if w - s >= 0:
                checks.append(("L", w, rf[w] + rj[w - s], hdim(tot, n, w)))
            # at L_n(X;Q), weight w: image of the Bockstein from w + s equals ker j
            if w + s <= W:
                checks.append(("LQ", w, rj[w] + rd[w + s], hdim(quo, n, w)))
            # at L_{n+1}(X;Q), weight w: image of f equals ker of the Bockstein
            checks.append(("LQ+1", w, rd[w] + rf1[w], hdim(quo, n + 1, w)))
        for where, w, lhs, rhs in checks:
            if lhs != rhs:
                report["violations"].append({"degree": n, "at": where, "weight": w,
                                             "ranks": lhs, "dim": rhs})
        report["degrees"][n] = {
            "rank_f": sum(rf.values()), "rank_j": sum(rj.values()),
            "rank_bockstein_from_next": sum(rd.values()),
            "dim_L": sum(hdim(tot, n, w) for w in range(W + 1)),
            "dim_LQ": sum(hdim(quo, n, w) for w in range(W + 1)),
            "checked": len(checks)}
    return report


def bockstein_rank_into(fam: LodayFamily, n: int) -> int:
    """Rank of the Bockstein L_{n+1}(X; Q) -> L_n(X; Q), summed over weights."""
    return sum(map_rank(fam, bockstein, fam.quotient, n + 1, w) for w in range(fam.W + 1))


def bockstein_homology(fam: LodayFamily, n: int) -> int:
    """dim of the homology of (L_*(X; Q), Bockstein) in degree n."""
    dim = sum(fam.hblock(fam.quotient, n, w).dim for w in range(fam.W + 1))
    out_rank = bockstein_rank_into(fam, n - 1) if n > 0 else 0
    return dim - out_rank - bockstein_rank_into(fam, n)


# -- simplicial maps ---------------------------------------------------------------

def simplicial_map(X: SimplicialSet, Y: SimplicialSet, images: dict):
    """Level maps of the simplicial map sending generator g to ``images[g]``.

    ``images[g]`` is a simplex of Y at level dim g whose faces must match.
    Returns ``level -> index array``.
    """
    def on(n):
        out = []
        for z in X.level(n):
            img = images[z.generator]
            out.append(Y.index_of(Simplex(img.generator,
                                          tuple(img.surjection[v] for v in z.surjection))))
        return np.asarray(out, dtype=np.int64)
    return on


def collapse_to_sphere(T: SimplicialSet, S: SimplicialSet, top_pair: int = 1):
    """Collapse the 1-skeleton of a product of two circles onto the 2-sphere.

    One of the two nondegenerate 2-simplices goes to the sphere's generator
    (the default choice preserves the orientation of the named classes),
    everything else to the basepoint; this is the degree-one collapse map up
    to homotopy.
    """
    top = [g for g in T.generators if g.dim == 2]
    if len(top) != 2 or S.max_dim != 2:
        raise HomologyError("collapse expects a product of two circles and the 2-sphere")
    sgen = next(g for g in S.generators if g.dim == 2)
    images = {}
    for g in T.generators:
        if g is top[top_pair]:
            images[g.id] = Simplex(sgen.id, (0, 1, 2))
        else:
            images[g.id] = S.base_simplex(g.dim)
    return simplicial_map(T, S, images)


def induced_map(src: LodayFamily, dst: LodayFamily, level_map, c: HomologyClass) -> HomologyClass:
    """Push a chain of a diagonal-model complex along a simplicial map."""
    if c.complex.model.kind != "diagonal":
        raise HomologyError("induced maps are implemented on the diagonal model")
    coeff = src.coeff_of(c.complex)
    tgt = dst.complex(coeff)
    n = c.degree
    scell = c.complex.model.cell((n,))
    tcell = tgt.model.cell((n,))
    rows = np.array([row for _, row, _ in c.terms()], dtype=np.int64).reshape(-1, scell.npos)
    coefs = [x for _, _, x in c.terms()]
    out, oc, owner = tgt.push(rows, scell, level_map(n), tcell)
    terms = []
    for k in range(len(out)):
        e = k if owner is None else owner[k]
        if oc[k]:
            terms.append(((n,), out[k], coefs[e] * oc[k]))
    vec = tgt.chain_from_terms(n, c.weight, terms)
    return dst.make_class(tgt, n, c.weight, vec, name=c.name)

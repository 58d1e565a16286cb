"""Explicit cycles for the classes that have names.

Circle classes: x0 = t at the basepoint; x1 = 1 (x) t and x2 = t (x) t (x) t
with self coefficients; y1 = 1 (x) t and y2 = 1 (x) t (x) t mod t.  Spheres
S^k, k >= 2: sx1 / sy1 put a single t on the top simplex.  The torus uses
cells of the bisimplicial model: horizontal classes live in bidegree (k, 0),
vertical ones in (0, k), and sx1 is t on (tau, tau) in bidegree (1, 1).  On a
wedge the first two circle summands give the h and v classes and the first
higher sphere gives sx1 / sy1.
"""
from __future__ import annotations

from .homology import HomologyClass, HomologyError
from .homology_ops import LodayFamily, eilenberg_zilber
from .simplicial import Simplex, SimplicialSet


def sphere_dim(X: SimplicialSet):
    """k if X is the minimal model of S^k, else None."""
    gens = [g for g in X.generators if g.id != X.base]
    if X.factors or X.summands or len(gens) != 1:
        return None
    g = gens[0]
    base = Simplex(X.base, (0,) * g.dim)
    if g.dim >= 1 and all(f == base for f in g.faces):
        return g.dim
    return None


def _top(X: SimplicialSet, k: int):
    return next(g for g in X.generators if g.dim == k and g.id != X.base)


def _diag_spec(X: SimplicialSet, level: int, gids, coeff, base_t, name):
    """Cycle with t on every level-`level` position over the generators `gids`."""
    def build(fam: LodayFamily):
        pos = [k for k, z in enumerate(X.level(level)) if z.generator in gids]
        return _make(fam, coeff, (level,), pos, base_t, name)
    return coeff, build


def _make(fam, coeff, cell, positions, base_t, name) -> HomologyClass:
    cplx = fam.complex(coeff)
    A = fam.algebra
    assign = {p: fam.t for p in positions}
    module_entry = 0
    if coeff == "self":
        module_entry = fam.t if base_t else A.unit_index
    row = cplx.element(cell, assign, module_entry)
    n = sum(cell)
    w = cplx.row_weight(row, cell)
    if w > cplx.max_weight or n > cplx.top_level:
        raise HomologyError(f"class {name} needs degree {n} and weight {w}, beyond the caps")
    vec = cplx.chain_from_terms(n, w, [(cell, row, 1)])
    c = fam.make_class(cplx, n, w, vec, name=name)
    if not vec or not fam.hblock(cplx, n, w).is_cycle(vec):
        raise HomologyError(f"representative of {name} is not a nonzero cycle")
    return c


def _circle_specs(X, gid, suffix):
    specs = {}
    for coeff, letter in (("self", "x"), ("modt", "y")):
        specs[f"{letter}1{suffix}"] = _diag_spec(X, 1, {gid}, coeff, False, f"{letter}1{suffix}")
        specs[f"{letter}2{suffix}"] = _diag_spec(X, 2, {gid}, coeff, coeff == "self",
                                                 f"{letter}2{suffix}")
    return specs


def _sphere_specs(X, gid, k):
    return {"sx1": _diag_spec(X, k, {gid}, "self", False, "sx1"),
            "sy1": _diag_spec(X, k, {gid}, "modt", False, "sy1"),
            "tsx1": _diag_spec(X, k, {gid}, "self", True, "tsx1")}


def _torus_specs(P: SimplicialSet):
    X, Y = P.factors
    tx, ty = _top(X, 1), _top(Y, 1)

    def bi(cell, pick, coeff, base_t, name):
        def build(fam: LodayFamily):
            model = fam.complex(coeff).model
            if model.kind == "bisimplicial":
                pos = [k for k, (x, y) in enumerate(model.positions(cell)) if pick(x, y)]
                return _make(fam, coeff, cell, pos, base_t, name)
            # diagonal model of the same product: transport along Eilenberg-Zilber
            bfam = LodayFamily(P, fam.algebra, fam.N, fam.W, fam.strategy,
                               normalized=True, model="bisimplicial")
            return eilenberg_zilber(bfam, build(bfam), dst=fam)
        return coeff, build

    on_x = lambda x, y: x.generator == tx.id  # noqa: E731
    on_y = lambda x, y: y.generator == ty.id  # noqa: E731
    on_xy = lambda x, y: x.generator == tx.id and y.generator == ty.id  # noqa: E731
    specs = {}
    for coeff, letter in (("self", "x"), ("modt", "y")):
        specs[f"{letter}1h"] = bi((1, 0), on_x, coeff, False, f"{letter}1h")
        specs[f"{letter}1v"] = bi((0, 1), on_y, coeff, False, f"{letter}1v")
        specs[f"{letter}2h"] = bi((2, 0), on_x, coeff, coeff == "self", f"{letter}2h")
        specs[f"{letter}2v"] = bi((0, 2), on_y, coeff, coeff == "self", f"{letter}2v")
    specs["sx1"] = bi((1, 1), on_xy, "self", False, "sx1")
    specs["sy1"] = bi((1, 1), on_xy, "modt", False, "sy1")
    specs["tsx1"] = bi((1, 1), on_xy, "self", True, "tsx1")
    return specs


def _is_circle_product(X: SimplicialSet) -> bool:
    return bool(X.factors) and all(sphere_dim(F) == 1 for F in X.factors)


def class_specs(X: SimplicialSet) -> dict:
    """name -> (coefficients, builder) for the named classes of X."""
    specs = {}
    specs["x0"] = ("self", lambda fam: _make(fam, "self", _zero_cell(fam), [], True, "x0"))
    k = sphere_dim(X)
    if k == 1:
        specs.update(_circle_specs(X, _top(X, 1).id, ""))
    elif k:
        specs.update(_sphere_specs(X, _top(X, k).id, k))
    elif _is_circle_product(X):
        specs.update(_torus_specs(X))
    elif X.summands:
        circles = [i for i, S in enumerate(X.summands) if sphere_dim(S) == 1]
        highers = [i for i, S in enumerate(X.summands) if (sphere_dim(S) or 0) >= 2]
        for i, suffix in zip(circles, ("h", "v")):
            g = next(g for g in X.generators if g.summand == i and g.dim == 1)
            specs.update(_circle_specs(X, g.id, suffix))
        if highers:
            i = highers[0]
            kk = sphere_dim(X.summands[i])
            g = next(g for g in X.generators if g.summand == i and g.dim == kk)
            specs.update(_sphere_specs(X, g.id, kk))
    return specs


def _zero_cell(fam: LodayFamily):
    return fam.total.model.cells(0)[0]


def class_names(X: SimplicialSet) -> list:
    return sorted(class_specs(X))


def named_class(fam: LodayFamily, name: str) -> HomologyClass:
    specs = class_specs(fam.space)
    if name not in specs:
        raise HomologyError(f"unknown class {name!r} on {fam.space.name}; "
                            f"available: {', '.join(sorted(specs))}")
    return specs[name][1](fam)

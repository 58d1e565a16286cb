"""Finite-dimensional weight-graded commutative Q-algebras and their modules.

Everything here is exact: coefficients are :class:`fractions.Fraction`.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct
from pathlib import Path


class AlgebraFormatError(ValueError):
    pass


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise AlgebraFormatError(f"bad coefficient {x!r}") from exc
    raise AlgebraFormatError(f"coefficients must be 'p/q' strings, got {x!r}")


def _add_terms(acc: dict, k: int, c: Fraction):
    v = acc.get(k, 0) + c
    if v:
        acc[k] = v
    else:
        acc.pop(k, None)


@dataclass(frozen=True)
class GradedAlgebra:
    basis_names: tuple
    unit_index: int
    structure_constants: dict  # (i, j) -> tuple of (k, Fraction); absent means 0
    weights: tuple
    augmentation: tuple
    name: str = "A"

    @property
    def dim(self) -> int:
        return len(self.basis_names)

    def mult(self, i: int, j: int) -> dict:
        return dict(self.structure_constants.get((i, j), ()))

    def mult_vectors(self, u: dict, v: dict) -> dict:
        out: dict = {}
        for i, a in u.items():
            for j, b in v.items():
                for k, c in self.structure_constants.get((i, j), ()):
                    _add_terms(out, k, a * b * c)
        return out

    def basis_vector(self, i: int) -> dict:
        return {i: Fraction(1)}

    def eps(self, i: int) -> Fraction:
        return self.augmentation[i]

    @property
    def nonunit_indices(self) -> list:
        return [i for i in range(self.dim) if i != self.unit_index]

    def is_monomial(self) -> bool:
        """Every product of basis elements is zero or one basis element."""
        return all(len(t) <= 1 for t in self.structure_constants.values())

    def index(self, name: str) -> int:
        return self.basis_names.index(name)


@dataclass(frozen=True)
class CoefficientModule:
    basis_names: tuple
    action: dict  # (algebra i, module m) -> tuple of (module m', Fraction)
    weights: tuple
    name: str = "M"

    @property
    def dim(self) -> int:
        return len(self.basis_names)

    def act(self, i: int, m: int) -> dict:
        return dict(self.action.get((i, m), ()))

    def is_monomial(self) -> bool:
        return all(len(t) <= 1 for t in self.action.values())


def make_algebra(basis, unit, weights, mult, augmentation, name="A") -> GradedAlgebra:
    """Build an algebra from a partial table; missing (i, j) entries are symmetrized."""
    sc = {}
    for (i, j), terms in mult.items():
        terms = tuple((k, _frac(c)) for k, c in terms if _frac(c) != 0)
        if not terms:
            continue
        sc[(i, j)] = terms
        sc.setdefault((j, i), terms)
    return GradedAlgebra(tuple(basis), unit, sc, tuple(weights),
                         tuple(_frac(a) for a in augmentation), name)


def truncated_polynomial(n: int) -> GradedAlgebra:
    """Q[t]/t^n with t in weight 1."""
    if n < 1:
        raise ValueError("need n >= 1")
    basis = ["1"] + [("t" if k == 1 else f"t^{k}") for k in range(1, n)]
    mult = {}
    for a in range(n):
        for b in range(a, n):
            if a + b < n:
                mult[(a, b)] = [(a + b, 1)]
    aug = [1] + [0] * (n - 1)
    return make_algebra(basis, 0, list(range(n)), mult, aug, name=f"Q[t]/t^{n}")


def dual_numbers() -> GradedAlgebra:
    A = truncated_polynomial(2)
    return GradedAlgebra(A.basis_names, A.unit_index, A.structure_constants, A.weights,
                         A.augmentation, name="Q[t]/t^2")


# -- modules -------------------------------------------------------------------

def self_module(A: GradedAlgebra) -> CoefficientModule:
    return CoefficientModule(A.basis_names, dict(A.structure_constants), A.weights, name="self")


def augmentation_module(A: GradedAlgebra) -> CoefficientModule:
    action = {(i, 0): ((0, A.eps(i)),) for i in range(A.dim) if A.eps(i) != 0}
    return CoefficientModule(("1",), action, (0,), name="modt")


def kernel_module(A: GradedAlgebra) -> CoefficientModule:
    """The augmentation ideal, with basis e_i - eps(e_i) for the non-unit e_i.

    The basis keeps the weights of the algebra, so a kernel chain sits in
    the same weight as its image in the self complex.
    """
    idx = A.nonunit_indices
    pos = {i: k for k, i in enumerate(idx)}

    def ideal_coords(vec: dict) -> dict:
        # vec lies in the ideal; read off coordinates on e_i - eps(e_i)
        return {pos[i]: c for i, c in vec.items() if i != A.unit_index}

    action = {}
    for a in range(A.dim):
        for k, i in enumerate(idx):
            v = {i: Fraction(1)}
            if A.eps(i):
                v[A.unit_index] = -A.eps(i)
            prod = A.mult_vectors({a: Fraction(1)}, v)
            coords = ideal_coords(prod)
            if coords:
                action[(a, k)] = tuple(sorted(coords.items()))
    return CoefficientModule(tuple(A.basis_names[i] for i in idx), action,
                             tuple(A.weights[i] for i in idx), name="kernel")


def standard_modules(A: GradedAlgebra) -> dict:
    return {"self_module": self_module(A),
            "augmentation_module": augmentation_module(A),
            "kernel_module": kernel_module(A)}


# -- validation ------------------------------------------------------------------

def validate(A: GradedAlgebra) -> list[str]:
    """Return the violated axioms; empty means A is a valid algebra."""
    errs = []
    n = A.dim
    if len(A.weights) != n or len(A.augmentation) != n:
        return ["weights/augmentation length does not match basis"]
    if not 0 <= A.unit_index < n:
        return ["unit index out of range"]
    if A.weights[A.unit_index] != 0:
        errs.append("unit must have weight 0")
    if any(w < 0 for w in A.weights):
        errs.append("weights must be natural numbers")
    for (i, j), terms in A.structure_constants.items():
        if not (0 <= i < n and 0 <= j < n) or any(not 0 <= k < n for k, _ in terms):
            errs.append(f"index out of range in mult({i},{j})")
            return errs
    u = A.unit_index
    for i, j in iproduct(range(n), repeat=2):
        if A.mult(i, j) != A.mult(j, i):
            errs.append(f"commutativity fails at ({i},{j})")
        for k in A.mult(i, j):
            if A.weights[k] != A.weights[i] + A.weights[j]:
                errs.append(f"weight additivity fails at ({i},{j}) -> {k}")
        eij = sum((c * A.eps(k) for k, c in A.mult(i, j).items()), Fraction(0))
        if eij != A.eps(i) * A.eps(j):
            errs.append(f"augmentation not multiplicative at ({i},{j})")
    for j in range(n):
        if A.mult(u, j) != {j: 1}:
            errs.append(f"unitality fails at {j}")
    if A.eps(u) != 1:
        errs.append("augmentation of unit must be 1")
    for i, j, k in iproduct(range(n), repeat=3):
        left = A.mult_vectors(A.mult(i, j), {k: Fraction(1)})
        right = A.mult_vectors({i: Fraction(1)}, A.mult(j, k))
        if left != right:
            errs.append(f"associativity fails at ({i},{j},{k})")
    return errs


def validate_module(A: GradedAlgebra, M: CoefficientModule) -> list[str]:
    errs = []

    def act_vec(i, vec):
        out: dict = {}
        for m, c in vec.items():
            for m2, c2 in M.action.get((i, m), ()):
                _add_terms(out, m2, c * c2)
        return out

    for m in range(M.dim):
        if act_vec(A.unit_index, {m: Fraction(1)}) != {m: 1}:
            errs.append(f"unit does not act as identity on {m}")
        for i in range(A.dim):
            for m2 in M.act(i, m):
                if M.weights[m2] != A.weights[i] + M.weights[m]:
                    errs.append(f"weight additivity fails at ({i},{m})")
            for j in range(A.dim):
                lhs = act_vec(i, act_vec(j, {m: Fraction(1)}))
                rhs: dict = {}
                for k, c in A.mult(i, j).items():
                    for m2, c2 in act_vec(k, {m: Fraction(1)}).items():
                        _add_terms(rhs, m2, c * c2)
                if lhs != rhs:
                    errs.append(f"module associativity fails at ({i},{j},{m})")
    return errs


# -- file format -------------------------------------------------------------------

def algebra_from_dict(doc: dict) -> GradedAlgebra:
    try:
        basis = list(doc["basis"])
        unit = int(doc["unit"])
        weights = [int(w) for w in doc["weights"]]
        aug = [_frac(a) for a in doc["augmentation"]]
        records = doc.get("mult", [])
    except (KeyError, TypeError, ValueError) as exc:
        raise AlgebraFormatError(f"malformed algebra description: {exc}") from exc
    mult = {}
    for rec in records:
        try:
            i, j = int(rec["i"]), int(rec["j"])
            terms = [(int(t["k"]), _frac(t["coeff"])) for t in rec["terms"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise AlgebraFormatError(f"malformed mult record {rec!r}") from exc
        if i > j:
            raise AlgebraFormatError(f"mult records need i <= j, got ({i},{j})")
        if (i, j) in mult:
            raise AlgebraFormatError(f"duplicate mult record ({i},{j})")
        mult[(i, j)] = terms
    # the unit row may be omitted
    for j in range(len(basis)):
        key = (min(unit, j), max(unit, j))
        mult.setdefault(key, [(j, Fraction(1))])
    return make_algebra(basis, unit, weights, mult, aug, name=doc.get("name", "A"))


def algebra_to_dict(A: GradedAlgebra) -> dict:
    recs = []
    for i in range(A.dim):
        for j in range(i, A.dim):
            terms = A.structure_constants.get((i, j))
            if terms:
                recs.append({"i": i, "j": j,
                             "terms": [{"k": k, "coeff": str(c)} for k, c in terms]})
    return {"name": A.name, "basis": list(A.basis_names), "unit": A.unit_index,
            "weights": list(A.weights), "mult": recs,
            "augmentation": [str(a) for a in A.augmentation]}


def load_algebra(source) -> GradedAlgebra:
    """Load an algebra from a JSON path, JSON text, or an already parsed dict."""
    if isinstance(source, dict):
        return algebra_from_dict(source)
    text = str(source)
    if not text.lstrip().startswith("{"):
        text = Path(text).read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise AlgebraFormatError(f"invalid JSON: {exc}") from exc
    return algebra_from_dict(doc)

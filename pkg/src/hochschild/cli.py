"""Command line front end: ``hochschild compute|compare|product|bockstein|validate``.

Exit codes: 0 ok / equal, 2 usage or input error, 3 compare found a
difference, 4 a block exceeded the size guard (rerun with ``--heavy``).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from fractions import Fraction

from .algebras import (AlgebraFormatError, augmentation_module, dual_numbers, load_algebra,
                       self_module, validate, validate_module)
from .homology import HomologyError, homology_table
from .homology_ops import (LodayFamily, bockstein, in_kernel_of_f, is_t_multiple,
                           shuffle_product)
from .linalg import FieldStrategy, LinalgError
from .loday import LodayComplex, LodayError, ResourceLimitError
from .named import class_names, class_specs, named_class
from .simplicial import SimplicialError
from .spaces import SpaceSyntaxError, max_sphere_dim, parse_space, print_space, realize

SCHEMA_VERSION = 1
DEFAULT_SIZE_LIMIT = 5_000_000

EXIT_OK, EXIT_USAGE, EXIT_DIFFERS, EXIT_RESOURCE = 0, 2, 3, 4


class UsageError(ValueError):
    pass


def _num(x):
    """JSON-safe exact number: int when integral, else a "p/q" string."""
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else str(x)


def _space(text: str, max_degree: int):
    e = parse_space(text)
    D = max(max_degree + 2, max_sphere_dim(e))
    return e, realize(e, D)


def _algebra(spec: str):
    if spec == "dual":
        return dual_numbers()
    A = load_algebra(spec)
    errs = validate(A)
    if errs:
        raise UsageError("invalid algebra: " + "; ".join(errs))
    return A


def _module(A, coeff: str):
    if coeff == "self":
        return self_module(A)
    if coeff == "modt":
        return augmentation_module(A)
    raise UsageError(f"unknown coefficients {coeff!r}")


def _caps(args):
    if args.max_degree < 0:
        raise UsageError("--max-degree must be non-negative")
    W = args.max_degree + 2 if args.max_weight is None else args.max_weight
    if W < 0:
        raise UsageError("--max-weight must be non-negative")
    return args.max_degree, W


def _strategy(args) -> FieldStrategy:
    return FieldStrategy.parse(args.field)


def _size_limit(args):
    return None if args.heavy else args.size_limit


# -- compute -----------------------------------------------------------------------------

def compute_document(space_text: str, args) -> dict:
    N, W = _caps(args)
    e, X = _space(space_text, N)
    A = _algebra(args.algebra)
    M = _module(A, args.coeff)
    strategy = _strategy(args)
    t0 = time.perf_counter()
    cplx = LodayComplex(X, A, M, N, W, normalized=args.normalized, model=args.model,
                        size_limit=_size_limit(args))
    table = homology_table(cplx, strategy, jobs=args.jobs)
    elapsed = time.perf_counter() - t0
    warnings = []
    hits = table.top_weight_hits()
    if hits:
        warnings.append(f"classes found in the top weight {W} in degrees {hits}; "
                        f"the weight cap may be cutting off classes, raise --max-weight")
    doc = {
        "schema_version": SCHEMA_VERSION,
        "command": "compute",
        "input": {"space": print_space(e), "algebra": A.name, "coefficients": args.coeff,
                  "max_degree": N, "max_weight": W, "field": strategy.describe(),
                  "normalized": args.normalized, "model": cplx.model.kind,
                  "jobs": args.jobs},
        "assumptions": [f"weights above {W} are not computed"],
        "homology": [{"degree": n, "total": table.total(n),
                      "weights": [{"weight": w, "dim": d} for w, d in sorted(ws.items())]}
                     for n, ws in sorted(table.weights.items())],
        "warnings": warnings,
    }
    if args.timing:
        doc["timing_seconds"] = round(elapsed, 3)
    return doc


def _csv_rows(doc: dict, label: str | None = None):
    for h in doc["homology"]:
        for item in h["weights"]:
            row = [h["degree"], item["weight"], item["dim"]]
            yield ([label] + row) if label is not None else row


def _emit(doc: dict, fmt: str, out):
    if fmt == "json":
        out.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
        return
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if doc["command"] == "compute":
        w.writerow(["degree", "weight", "dimension"])
        w.writerows(_csv_rows(doc))
    elif doc["command"] == "compare":
        w.writerow(["space", "degree", "weight", "dimension"])
        for sub in doc["results"]:
            w.writerows(_csv_rows(sub, sub["input"]["space"]))
    else:
        raise UsageError("csv output is available for compute and compare only")
    out.write(buf.getvalue())


def cmd_compute(args, out) -> int:
    _emit(compute_document(args.space, args), args.format, out)
    return EXIT_OK


def cmd_compare(args, out) -> int:
    docs = [compute_document(s, args) for s in (args.space_a, args.space_b)]
    ta = {h["degree"]: h["total"] for h in docs[0]["homology"]}
    tb = {h["degree"]: h["total"] for h in docs[1]["homology"]}
    first = next((n for n in sorted(ta) if ta[n] != tb[n]), None)
    verdict = {"equal": first is None,
               "first_difference": None if first is None else
               {"degree": first, "totals": [ta[first], tb[first]]}}
    doc = {"schema_version": SCHEMA_VERSION, "command": "compare", "results": docs,
           "verdict": verdict}
    _emit(doc, args.format, out)
    return EXIT_OK if first is None else EXIT_DIFFERS


# -- class commands ------------------------------------------------------------------------

def _family(args) -> tuple:
    N, W = _caps(args)
    e, X = _space(args.space, N)
    A = _algebra(args.algebra)
    fam = LodayFamily(X, A, N, W, _strategy(args), normalized=True, model=args.model,
                      size_limit=_size_limit(args))
    return e, fam


def _lookup(fam, name):
    if name not in class_specs(fam.space):
        raise UsageError(f"unknown class {name!r} on {fam.space.name}; available: "
                         + ", ".join(class_names(fam.space)))
    return named_class(fam, name)


def _matches(fam, c) -> list:
    """Named classes proportional to c, with the scalar."""
    out = []
    if fam.is_zero(c):
        return out
    for name in class_names(fam.space):
        try:
            other = named_class(fam, name)
        except HomologyError:
            continue
        if other.complex is not c.complex or other.degree != c.degree \
                or other.weight != c.weight or fam.is_zero(other):
            continue
        lam = fam.ratio(c, other)
        if lam is not None:
            out.append({"name": name, "scalar": _num(lam)})
    return out


def _class_doc(fam, c) -> dict:
    return {"degree": c.degree, "weight": c.weight,
            "coefficients": fam.coeff_of(c.complex),
            "coordinates": [_num(x) for x in fam.coordinates(c)],
            "is_zero": fam.is_zero(c),
            "named_multiples": _matches(fam, c)}


def cmd_product(args, out) -> int:
    e, fam = _family(args)
    a, b = _lookup(fam, args.a), _lookup(fam, args.b)
    p = shuffle_product(fam, a, b)
    doc = {"schema_version": SCHEMA_VERSION, "command": "product",
           "input": {"space": print_space(e), "a": args.a, "b": args.b,
                     "max_degree": fam.N, "max_weight": fam.W,
                     "field": fam.strategy.describe()},
           "product": _class_doc(fam, p),
           "in_kernel_of_f": in_kernel_of_f(fam, p) if p.complex is fam.total else None,
           "is_t_multiple": is_t_multiple(fam, p) if p.complex is fam.total else None}
    _emit(doc, "json", out)
    return EXIT_OK


def cmd_bockstein(args, out) -> int:
    e, fam = _family(args)
    c = _lookup(fam, args.name)
    if c.complex is not fam.quotient:
        raise UsageError(f"{args.name} has self coefficients; the Bockstein starts mod t")
    img = bockstein(fam, c)
    doc = {"schema_version": SCHEMA_VERSION, "command": "bockstein",
           "input": {"space": print_space(e), "class": args.name,
                     "max_degree": fam.N, "max_weight": fam.W,
                     "field": fam.strategy.describe()},
           "image": _class_doc(fam, img)}
    _emit(doc, "json", out)
    return EXIT_OK


def cmd_validate(args, out) -> int:
    A = load_algebra(args.file)
    errs = validate(A)
    if not errs:
        for M in (self_module(A), augmentation_module(A)):
            errs += [f"{M.name}: {m}" for m in validate_module(A, M)]
    doc = {"schema_version": SCHEMA_VERSION, "command": "validate", "algebra": A.name,
           "dimension": A.dim, "valid": not errs, "violations": errs}
    _emit(doc, "json", out)
    return EXIT_OK if not errs else EXIT_USAGE


# -- argument parsing --------------------------------------------------------------------------

def _common(p, space=True):
    if space:
        p.add_argument("--space", required=True, help="space expression, e.g. 'torus'")
    p.add_argument("--algebra", default="dual", help="'dual' or a JSON algebra file")
    p.add_argument("--max-degree", type=int, default=4)
    p.add_argument("--max-weight", type=int, default=None,
                   help="weight cap (default max-degree + 2)")
    p.add_argument("--field", default="2primes", help="q, p:<prime> or 2primes")
    p.add_argument("--model", default="auto", choices=["auto", "diagonal", "bisimplicial"],
                   help="position model; auto uses the bicomplex for products")
    p.add_argument("--jobs", type=int, default=1, help="parallel rank jobs")
    p.add_argument("--heavy", action="store_true", help="lift the block size guard")
    p.add_argument("--size-limit", type=int, default=DEFAULT_SIZE_LIMIT,
                   help="largest block (basis elements) allowed without --heavy")


def _table_opts(p):
    p.add_argument("--coeff", default="self", choices=["self", "modt"])
    p.add_argument("--normalized", dest="normalized", action="store_true", default=True)
    p.add_argument("--unnormalized", dest="normalized", action="store_false")
    p.add_argument("--format", default="json", choices=["json", "csv"])
    p.add_argument("--timing", action="store_true",
                   help="add wall-clock timing (output is then not reproducible)")


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hochschild",
                                 description="Higher Hochschild homology of finite algebras.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="homology table of one space")
    _common(p)
    _table_opts(p)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("compare", help="compare homology totals of two spaces")
    p.add_argument("space_a")
    p.add_argument("space_b")
    _common(p, space=False)
    _table_opts(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("product", help="shuffle product of two named classes")
    _common(p)
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_product)

    p = sub.add_parser("bockstein", help="Bockstein image of a named mod-t class")
    _common(p)
    p.add_argument("name")
    p.set_defaults(func=cmd_bockstein)

    p = sub.add_parser("validate", help="check an algebra file")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)
    return ap


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    ap = make_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "jobs", 1) < 1:
        print("error: --jobs must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args, out)
    except ResourceLimitError as exc:
        print(f"error: {exc}; rerun with --heavy to lift the guard", file=sys.stderr)
        return EXIT_RESOURCE
    except (UsageError, SpaceSyntaxError, AlgebraFormatError, SimplicialError, LodayError,
            HomologyError, LinalgError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main_entry():
    sys.exit(main())


if __name__ == "__main__":
    main_entry()

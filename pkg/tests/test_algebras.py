import json
from fractions import Fraction

import pytest

from hochschild.algebras import (AlgebraFormatError, algebra_to_dict, augmentation_module,
                                 dual_numbers, kernel_module, load_algebra, self_module,
                                 truncated_polynomial, validate, validate_module)


def test_dual_numbers():
    A = dual_numbers()
    t = A.index("t")
    assert A.dim == 2 and A.weights[t] == 1
    assert A.mult(t, t) == {}
    assert A.mult(A.unit_index, t) == {t: 1}
    assert validate(A) == []


@pytest.mark.parametrize("n", [2, 3, 4])
def test_truncated_polynomials_are_valid(n):
    A = truncated_polynomial(n)
    assert validate(A) == []
    for M in (self_module(A), augmentation_module(A)):
        assert validate_module(A, M) == []


def test_kernel_module_of_dual_numbers():
    A = dual_numbers()
    K = kernel_module(A)
    assert K.dim == 1 and tuple(K.weights) == (1,)
    assert validate_module(A, K) == []


def test_json_roundtrip(tmp_path):
    A = truncated_polynomial(3)
    path = tmp_path / "a.json"
    path.write_text(json.dumps(algebra_to_dict(A)))
    B = load_algebra(str(path))
    assert algebra_to_dict(B) == algebra_to_dict(A)
    assert load_algebra(algebra_to_dict(A)).dim == 3


def _doc(**changes):
    doc = algebra_to_dict(dual_numbers())
    doc.update(changes)
    return doc


def test_validate_reports_broken_axioms():
    # t * t = 1 breaks weight additivity and the augmentation
    bad = _doc(mult=[{"i": 1, "j": 1, "terms": [{"k": 0, "coeff": "1"}]}])
    errs = validate(load_algebra(bad))
    assert any("weight" in e for e in errs)
    assert any("augmentation" in e for e in errs)


def test_unit_weight_must_vanish():
    assert "unit must have weight 0" in validate(load_algebra(_doc(weights=[1, 1])))


def test_malformed_documents():
    with pytest.raises(AlgebraFormatError):
        load_algebra('{"basis": ["1"]}')
    with pytest.raises(AlgebraFormatError):
        load_algebra("{not json")
    with pytest.raises(AlgebraFormatError):
        load_algebra(_doc(mult=[{"i": 1, "j": 0, "terms": []}]))


def test_fraction_coefficients():
    doc = _doc(augmentation=["1", "0"])
    assert load_algebra(doc).augmentation[0] == Fraction(1)

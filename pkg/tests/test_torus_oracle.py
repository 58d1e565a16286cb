"""The torus in degrees 3 and 4 against an independent brute-force computation.

These values disagree with the closed-form predictions 6 (mod t) and 7
(self) in degree 4; the brute force shares no code with the package.
"""
import pytest

from bruteforce_torus import homology_dim
from instances import TORUS, table, totals


@pytest.mark.parametrize("n,w,coeff", [(2, 2, "modt"), (3, 3, "modt"), (4, 2, "modt"),
                                       (4, 3, "modt"), (2, 2, "self"), (4, 2, "self")])
def test_blocks_match_brute_force(n, w, coeff):
    ours = table(TORUS, coeff, 4, 6).weights[n].get(w, 0)
    assert ours == homology_dim(n, w, coeff)


def test_torus_regression_values():
    assert table(TORUS, "modt", 4, 6).weights[4] == {2: 1, 3: 4, 4: 3}
    assert totals(TORUS, "modt", 4, 6)[4] == 8
    assert totals(TORUS, "self", 4, 6)[4] == 11


@pytest.mark.slow
def test_models_agree_in_degree_4():
    for coeff in ("modt", "self"):
        assert totals(TORUS, coeff, 4, 6, "diagonal") == totals(TORUS, coeff, 4, 6)


def test_mod_t_series_to_degree_6():
    # (1 + 2x + 2x^4 + x^5) / (1 - x^2)^3
    assert list(totals(TORUS, "modt", 6, 8).values()) == [1, 2, 3, 6, 8, 13, 16]


@pytest.mark.slow
def test_self_totals_match_wedge_closed_form():
    # (n^2 + n + 2) / 2
    assert list(totals(TORUS, "self", 6, 8).values()) == [(n * n + n + 2) // 2 + (n == 0)
                                                           for n in range(7)]

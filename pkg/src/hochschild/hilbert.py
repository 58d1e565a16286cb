"""Hilbert (Poincare) series as ratios of integer polynomials."""
from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class HilbertSeries:
    numerator: tuple
    denominator: tuple = (1,)

    def __post_init__(self):
        if not self.denominator or self.denominator[0] == 0:
            raise ValueError("denominator needs a nonzero constant term")

    def expand(self, n: int) -> list[int]:
        return series_expand(self, n)

    def __mul__(self, other: "HilbertSeries") -> "HilbertSeries":
        return HilbertSeries(poly_mul(self.numerator, other.numerator),
                             poly_mul(self.denominator, other.denominator))


def poly_mul(a, b) -> tuple:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return tuple(out)


def poly_pow(a, k: int) -> tuple:
    out = (1,)
    for _ in range(k):
        out = poly_mul(out, a)
    return out


def series_expand(h: HilbertSeries, n: int) -> list[int]:
    """Coefficients of x^0 .. x^n of numerator / denominator."""
    num, den = list(h.numerator), list(h.denominator)
    c0 = den[0]
    out = []
    for k in range(n + 1):
        acc = num[k] if k < len(num) else 0
        for j in range(1, min(k, len(den) - 1) + 1):
            acc -= den[j] * out[k - j]
        if acc % c0:
            raise ValueError("series has non-integral coefficients")
        out.append(acc // c0)
    return out


def free_graded_hilbert(generators) -> HilbertSeries:
    """Series of the free graded-commutative algebra on (degree, parity) generators.

    Even generators contribute 1/(1 - x^d), odd ones (1 + x^d).
    """
    num, den = (1,), (1,)
    for d, parity in generators:
        if d < 1:
            raise ValueError("generator degrees must be positive")
        mono = (0,) * d + (1,)
        if parity in ("odd", 1):
            num = poly_mul(num, (1,) + mono[1:])
        elif parity in ("even", 0):
            den = poly_mul(den, (1,) + tuple(-c for c in mono[1:]))
        else:
            raise ValueError(f"parity must be 'even' or 'odd', got {parity!r}")
    return HilbertSeries(num, den)

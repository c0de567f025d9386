"""Closed-form bounds, evaluated exactly.

Exponents that are not integers are rounded up before exponentiation, so
every integer bound reported here is at least the real value of its formula.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence, Tuple


@dataclass(frozen=True)
class BoundReport:
    formula_name: str
    exact_exponent: Fraction
    integer_upper_bound: int


def _check_positive(**kwargs):
    for name, v in kwargs.items():
        if not isinstance(v, int) or v < 1:
            raise ValueError(f"{name} must be a positive integer, got {v!r}")


def jensen_exponent(n: int, k: int, t: int = 1) -> Fraction:
    """t (k-1)^3 n^4 / (2 k^3)."""
    return Fraction(t * (k - 1) ** 3 * n ** 4, 2 * k ** 3)


def bound_M(n: int, k: int, t: int) -> BoundReport:
    """Number of blocks that forces an SDR of size n for k groups of curves
    whose cross-group pairs meet at most t times:
    C(n+k-1, k-1) * n * k^ceil(t (k-1)^3 n^4 / (2 k^3))."""
    _check_positive(n=n, k=k, t=t)
    e = jensen_exponent(n, k, t)
    value = math.comb(n + k - 1, k - 1) * n * k ** math.ceil(e)
    return BoundReport("M(n,k,t)", e, value)


def bound_N(n: int, k: int) -> BoundReport:
    """Line segments in k directions: the curve bound with t = 1."""
    _check_positive(n=n, k=k)
    rep = bound_M(n, k, 1)
    return BoundReport("N(n,k)", rep.exact_exponent, rep.integer_upper_bound)


def few_lines_threshold(n: int, m: int) -> int:
    """Lines needed for n+m-1 blocks of m horizontal segments to force an SDR of size n."""
    if not (isinstance(m, int) and isinstance(n, int) and 1 <= m < n):
        raise ValueError(f"need 1 <= m < n, got n={n}, m={m}")
    return m * (n - m) + 1


def intersection_count_bound(composition: Sequence[int], t: int) -> Tuple[int, Fraction]:
    """(t * sum_{i<j} n_i(n-n_i) n_j(n-n_j), t (k-1)^3 n^4 / (2 k^3)).

    The first term bounds the crossings among at most n_i(n-n_i) curves per
    group; the second is its convexity bound. The first never exceeds the second.
    """
    comp = list(composition)
    if not comp or any((not isinstance(c, int)) or c < 0 for c in comp):
        raise ValueError(f"composition entries must be non-negative integers: {comp}")
    if not isinstance(t, int) or t < 1:
        raise ValueError(f"t must be a positive integer, got {t!r}")
    n, k = sum(comp), len(comp)
    w = [c * (n - c) for c in comp]
    exact = t * sum(a * b for a, b in combinations(w, 2))
    return exact, jensen_exponent(n, k, t)

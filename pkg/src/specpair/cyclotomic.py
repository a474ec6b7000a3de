"""Exact vanishing decisions for finite sums of roots of unity.

A sum  sum_k c_k e^{i 2 pi q_k}  with rational c_k, q_k lives in the
cyclotomic field of conductor n = lcm of the reduced denominators of the
phases q_k.  It is zero exactly when the polynomial  sum_k c_k x^{p_k}
(p_k = q_k n mod n) is divisible by the n-th cyclotomic polynomial.

Phases are reduced mod 1 before the conductor is computed, which keeps n
tiny for the structural zeros this package needs (digit-mask zeros reduce
to half-integer phases, box-transform zeros to small roots of unity).
Sums whose conductor exceeds the limit are left undecided -- callers fall
back to numerics and never claim an exact zero for them.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

DEFAULT_CONDUCTOR_LIMIT = 4096


def _divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _poly_div_exact(num: list[int], den: tuple[int, ...]) -> list[int]:
    # den is monic, division is exact by construction
    out = [0] * (len(num) - len(den) + 1)
    rem = list(num)
    for i in range(len(out) - 1, -1, -1):
        coeff = rem[i + len(den) - 1]
        out[i] = coeff
        if coeff:
            for j, dj in enumerate(den):
                rem[i + j] -= coeff * dj
    if any(rem):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial, ascending degree."""
    if n < 1:
        raise ValueError("conductor must be positive")
    if n == 1:
        return (-1, 1)
    poly = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in _divisors(n)[:-1]:
        poly = _poly_div_exact(poly, cyclotomic_polynomial(d))
    return tuple(poly)


def exp_sum_is_zero(
    terms: Iterable[tuple[Fraction, Fraction]],
    conductor_limit: int = DEFAULT_CONDUCTOR_LIMIT,
) -> bool | None:
    """Decide whether sum of coeff * e^{i 2 pi phase} vanishes exactly.

    ``terms`` yields (coefficient, phase) pairs, both rational.  Returns
    True/False when decided, or None when the conductor after phase
    reduction exceeds ``conductor_limit`` (caller must treat the value as
    nonzero-unless-proven and fall back to numerics).
    """
    combined: dict[Fraction, Fraction] = {}
    for coeff, phase in terms:
        if not coeff:
            continue
        q = phase - math.floor(phase)
        combined[q] = combined.get(q, Fraction(0)) + coeff
    combined = {q: c for q, c in combined.items() if c}
    if not combined:
        return True
    if len(combined) == 1:
        return False
    if len(combined) == 2:
        # c0 z^q0 + c1 z^q1 = 0 forces z^{q1-q0} = -c0/c1, a *rational*
        # root of unity, hence -1: the phases differ by exactly 1/2 and
        # the coefficients agree.
        (q0, c0), (q1, c1) = sorted(combined.items())
        return q1 - q0 == Fraction(1, 2) and c0 == c1
    n = math.lcm(*(q.denominator for q in combined))
    if n > conductor_limit:
        return None
    coeffs = [Fraction(0)] * n
    for q, coeff in combined.items():
        coeffs[int(q * n) % n] += coeff
    phi = cyclotomic_polynomial(n)
    deg = len(phi) - 1
    rem = coeffs
    for i in range(n - 1, deg - 1, -1):
        c = rem[i]
        if c:
            base = i - deg
            for j in range(deg + 1):
                rem[base + j] -= c * phi[j]
    return not any(rem[:deg])

"""Slow, independent reference computations.

Nothing here shares code paths with the closed forms it is used to check:
zeta values come from generalized Bernoulli numbers, group orders from
counting matrices over the residue ring itself, splitting from counting
roots, and lambda from exhaustive search.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Sequence

import numpy as np


def _chi(D: int, a: int) -> int:
    """Character of Q(sqrt D) at a >= 1, built from root counts of x^2 - D mod odd primes."""
    value = 1
    n = a
    ell = 2
    while n > 1:
        if ell * ell > n:
            ell = n
        while n % ell == 0:
            n //= ell
            if D % ell == 0:
                return 0
            if ell == 2:
                value *= 1 if D % 8 == 1 else -1
            else:
                value *= sum(1 for x in range(ell) if (x * x - D) % ell == 0) - 1
        ell += 1
    return value


def zeta_minus_one_bernoulli(D: int) -> Fraction:
    """zeta_F(-1) = zeta(-1) L(-1, chi_D) = B_{2,chi} / 24."""
    b2 = Fraction(0)
    for a in range(1, D + 1):
        c = _chi(D, a)
        if c:
            x = Fraction(a, D)
            b2 += c * (x * x - x + Fraction(1, 6))
    return D * b2 / 24


def split_by_roots(D: int, p: int) -> str:
    """Splitting of p read off from the number of roots of the minimal polynomial of the ring generator."""
    if D % 4 == 1:
        coeffs = (-(D - 1) // 4, -1)  # x^2 - x - (D-1)/4
    else:
        coeffs = (-(D // 4), 0)  # x^2 - D/4
    disc_zero = D % p == 0
    roots = sum(1 for x in range(p) if (x * x + coeffs[1] * x + coeffs[0]) % p == 0)
    if disc_zero:
        return "ramified"
    return {2: "split", 0: "inert"}[roots]


def _ring_tables(D: int, n: int) -> np.ndarray:
    """Multiplication table of O_F / n with elements a + b*w encoded as a*n + b."""
    if D % 4 == 1:
        c0, c1 = (D - 1) // 4, 1  # w^2 = c0 + c1 w
    else:
        c0, c1 = D // 4, 0
    a = np.repeat(np.arange(n), n)
    b = np.tile(np.arange(n), n)
    A1, A2 = a[:, None], a[None, :]
    B1, B2 = b[:, None], b[None, :]
    bb = B1 * B2
    real = (A1 * A2 + bb * c0) % n
    omega = (A1 * B2 + B1 * A2 + bb * c1) % n
    return real * n + omega


def sl2_order_bruteforce(D: int, n: int) -> int:
    """#{(a, b, c, d) : ad - bc = 1} over O_F / n, by convolving product counts."""
    if n == 1:
        return 1
    mul = _ring_tables(D, n)
    size = n * n
    counts = np.bincount(mul.ravel(), minlength=size)
    total = 0
    for y in range(size):
        # ad = y and bc = y - 1; subtracting 1 only touches the rational part
        ya, yb = divmod(y, n)
        total += int(counts[y]) * int(counts[((ya - 1) % n) * n + yb])
    return total


def lambda_bruteforce(bits: Sequence[int]) -> int:
    """max |b| over generic b <= bits coordinatewise."""
    g = len(bits)
    support = [i for i, x in enumerate(bits) if x]
    for r in range(len(support), 0, -1):
        for chosen in itertools.combinations(support, r):
            s = set(chosen)
            if all(not ((i in s) and ((i + 1) % g in s)) for i in range(g)):
                return r
    return 0

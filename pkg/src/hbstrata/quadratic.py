"""Exact arithmetic of real quadratic fields Q(sqrt D).

Covers the value zeta_F(-1), splitting of rational primes, orders of SL_2 over
residue rings of O_F, and the class factor assembled from them.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Optional

from .alpha import RamificationProfile
from .errors import RamifiedPrime


class NonIntegralClassFactorWarning(UserWarning):
    pass


def factorize(n: int) -> dict[int, int]:
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n) == {n: 1}


def sigma1(n: int) -> int:
    total = 1
    for p, e in factorize(n).items():
        total *= (p ** (e + 1) - 1) // (p - 1)
    return total


def _squarefree(n: int) -> bool:
    return all(e == 1 for e in factorize(n).values())


def is_fundamental_discriminant(D: int) -> bool:
    if D <= 1:
        return False
    if D % 4 == 1:
        return _squarefree(D)
    if D % 4 == 0:
        d = D // 4
        return d % 4 in (2, 3) and _squarefree(d)
    return False


def check_discriminant(D: int) -> int:
    D = int(D)
    if not is_fundamental_discriminant(D):
        raise ValueError(f"{D} is not the discriminant of a real quadratic field")
    return D


def zeta_minus_one(D: int) -> Fraction:
    """zeta_F(-1) = (1/60) * sum of sigma_1((D - b^2)/4) over b^2 < D, b = D mod 2."""
    D = check_discriminant(D)
    r = isqrt(D)  # D is never a square, so b^2 < D iff |b| <= r
    total = sum(sigma1((D - b * b) // 4) for b in range(-r, r + 1) if (b - D) % 2 == 0)
    return Fraction(total, 60)


def kronecker(D: int, n: int) -> int:
    """Kronecker symbol (D/n) for n >= 1."""
    if n < 1:
        raise ValueError("n must be positive")
    result = 1
    for p, e in factorize(n).items() if n > 1 else ():
        if p == 2:
            if D % 2 == 0:
                s = 0
            else:
                s = 1 if D % 8 in (1, 7) else -1
        else:
            s = pow(D % p, (p - 1) // 2, p)
            s = -1 if s == p - 1 else s
        result *= s ** e
    return result


def split_type(D: int, p: int) -> str:
    """'split', 'inert' or 'ramified' for the prime p in Q(sqrt D)."""
    D = check_discriminant(D)
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if D % p == 0:
        return "ramified"
    return "split" if kronecker(D, p) == 1 else "inert"


def profile_of(D: int, p: int) -> RamificationProfile:
    kind = split_type(D, p)
    if kind == "ramified":
        raise RamifiedPrime(f"p={p} ramifies in Q(sqrt {D}); the prime must be unramified")
    return RamificationProfile((1, 1)) if kind == "split" else RamificationProfile((2,))


def sl2_order_residue_ring(D: int, n: int) -> int:
    """|SL_2(O_F / n O_F)| as a product over prime-ideal powers q^e of N(q)^(3e) (1 - N(q)^-2)."""
    D = check_discriminant(D)
    if n < 1:
        raise ValueError("n must be positive")
    order = 1
    for ell, e in (factorize(n).items() if n > 1 else ()):
        kind = "ramified" if D % ell == 0 else ("split" if kronecker(D, ell) == 1 else "inert")
        if kind == "split":
            local = [(ell, e), (ell, e)]
        elif kind == "inert":
            local = [(ell ** 2, e)]
        else:
            local = [(ell, 2 * e)]
        for norm, k in local:
            order *= norm ** (3 * k - 2) * (norm ** 2 - 1)
    return order


@dataclass(frozen=True)
class ClassFactor:
    """The multiplier counting supersingular components.

    ``source`` is "computed" (from D and n) or "override" (user supplied).
    """

    value: Fraction
    source: str = "override"
    D: Optional[int] = None
    n: Optional[int] = None
    index: Optional[int] = None
    zeta: Optional[Fraction] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", Fraction(self.value))
        if self.value <= 0:
            raise ValueError(f"class factor must be positive, got {self.value}")

    @property
    def is_integral(self) -> bool:
        return self.value.denominator == 1


def class_factor(D: Optional[int] = None, n: Optional[int] = None,
                 override=None) -> ClassFactor:
    """index * (1/2)^2 * zeta_F(-1), or the override when one is given.

    The index [G(Z) : Gamma(n)] is taken to be |SL_2(O_F / n)|.
    """
    if override is not None:
        return ClassFactor(Fraction(override), "override", D, n)
    if D is None or n is None:
        raise ValueError("need either an override or both D and n")
    index = sl2_order_residue_ring(D, n)
    zeta = zeta_minus_one(D)
    value = index * Fraction(1, 4) * zeta
    if value.denominator != 1:
        warnings.warn(f"class factor {value} for D={D}, n={n} is not an integer",
                      NonIntegralClassFactorWarning, stacklevel=2)
    return ClassFactor(value, "computed", D, n, index, zeta)

"""Explicit finite fields F_{p^m} with table-driven arithmetic.

Elements are encoded as integers in [0, p**m): the base-p digits of the code
are the coefficients c_0, c_1, ... of the residue polynomial modulo the
defining polynomial.  All operations go through precomputed tables, which keeps
the Dieudonne oracle fast for the field sizes used here (q <= a few thousand).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

MAX_ORDER = 2048


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n ** 0.5) + 1))


def _poly_mod(a: list[int], mod: tuple[int, ...], p: int) -> list[int]:
    """Reduce ``a`` (low-degree first) modulo the monic polynomial ``mod``."""
    a = [c % p for c in a]
    m = len(mod) - 1
    for k in range(len(a) - 1, m - 1, -1):
        c = a[k]
        if c:
            for i in range(m + 1):
                a[k - m + i] = (a[k - m + i] - c * mod[i]) % p
    return (a + [0] * m)[:m]


def _poly_mul(a: list[int], b: list[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def _has_factor_of_degree(mod: tuple[int, ...], d: int, p: int) -> bool:
    for tail in itertools.product(range(p), repeat=d):
        divisor = tail + (1,)
        if not any(_poly_mod(list(mod), divisor, p)):
            return True
    return False


def is_irreducible(mod: tuple[int, ...], p: int) -> bool:
    """Trial division by every monic polynomial of degree at most deg/2."""
    m = len(mod) - 1
    if m < 1 or mod[-1] != 1:
        raise ValueError("expected a monic polynomial of positive degree")
    return not any(_has_factor_of_degree(mod, d, p) for d in range(1, m // 2 + 1))


def find_modulus(p: int, m: int) -> tuple[int, ...]:
    """First monic irreducible of degree m, scanning tails (c_{m-1}, ..., c_0) lexicographically.

    Returned low-degree first, leading coefficient included.
    """
    for tail in itertools.product(range(p), repeat=m):
        mod = tuple(reversed(tail)) + (1,)
        if is_irreducible(mod, p):
            return mod
    raise AssertionError(f"no irreducible polynomial of degree {m} over F_{p}")


class FiniteField:
    """The field F_q, q = p**m, built on the lexicographically first irreducible modulus."""

    def __init__(self, p: int, m: int = 1) -> None:
        if not _is_prime(p):
            raise ValueError(f"characteristic must be prime, got {p}")
        if m < 1:
            raise ValueError(f"extension degree must be positive, got {m}")
        if p ** m > MAX_ORDER:
            raise ValueError(f"F_{p}^{m} is larger than the supported order {MAX_ORDER}")
        self.p = p
        self.m = m
        self.q = q = p ** m
        self.modulus = find_modulus(p, m)

        digits = np.array([[(x // p ** i) % p for i in range(m)] for x in range(q)], dtype=np.int64)
        weights = p ** np.arange(m, dtype=np.int64)
        add = np.zeros((q, q), dtype=np.int64)
        for i in range(m):
            add += ((digits[:, None, i] + digits[None, :, i]) % p) * weights[i]
        self.add_table = add
        self.neg_table = ((-digits) % p) @ weights

        exp, log = self._exp_log_tables()
        self.generator = int(exp[1]) if q > 2 else 1
        mul = np.zeros((q, q), dtype=np.int64)
        nz = np.arange(1, q)
        mul[1:, 1:] = exp[(log[nz][:, None] + log[nz][None, :]) % (q - 1)]
        self.mul_table = mul
        self.inv_table = np.zeros(q, dtype=np.int64)
        self.inv_table[nz] = exp[(-log[nz]) % (q - 1)]
        # x -> x^(p^k) for k = 0..m-1
        frob = np.zeros((m, q), dtype=np.int64)
        for k in range(m):
            frob[k, nz] = exp[(log[nz] * p ** k) % (q - 1)]
        self.frob_tables = frob

        # plain lists index faster than numpy arrays in scalar code
        self._add = self.add_table.tolist()
        self._mul = mul.tolist()
        self._neg = self.neg_table.tolist()
        self._inv = self.inv_table.tolist()
        self._frob = frob.tolist()

    def _exp_log_tables(self) -> tuple[np.ndarray, np.ndarray]:
        p, m, q = self.p, self.m, self.q
        exp = np.zeros(q, dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        for cand in range(1, q):
            powers = [1]
            x = [1] + [0] * (m - 1)
            base = self.coefficients(cand)
            while True:
                x = _poly_mod(_poly_mul(x, list(base), p), self.modulus, p)
                code = self.element(x)
                if code == 1:
                    break
                powers.append(code)
            if len(powers) == q - 1:
                exp[: q - 1] = powers
                exp[q - 1] = 1
                log[np.array(powers)] = np.arange(q - 1)
                return exp, log
        raise AssertionError("no primitive element found")

    def __repr__(self) -> str:
        return f"FiniteField(p={self.p}, m={self.m})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FiniteField) and (self.p, self.m) == (other.p, other.m)

    def __hash__(self) -> int:
        return hash((self.p, self.m))

    def element(self, coefficients) -> int:
        coefficients = list(coefficients)
        if len(coefficients) > self.m:
            coefficients = _poly_mod(coefficients, self.modulus, self.p)
        return sum((c % self.p) * self.p ** i for i, c in enumerate(coefficients))

    def coefficients(self, x: int) -> tuple[int, ...]:
        return tuple((x // self.p ** i) % self.p for i in range(self.m))

    def add(self, a: int, b: int) -> int:
        return self._add[a][b]

    def sub(self, a: int, b: int) -> int:
        return self._add[a][self._neg[b]]

    def neg(self, a: int) -> int:
        return self._neg[a]

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self._inv[a]

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            a, n = self.inv(a), -n
        result = 1
        while n:
            if n & 1:
                result = self._mul[result][a]
            a = self._mul[a][a]
            n >>= 1
        return result

    def frobenius(self, x: int, power: int = 1) -> int:
        """x^(p^power); negative powers apply the inverse automorphism."""
        return self._frob[power % self.m][x]

    def from_int(self, n: int) -> int:
        """Image of the integer n in the prime field."""
        return n % self.p

    def elements(self) -> range:
        return range(self.q)

    def __call__(self, x) -> FieldElement:
        if isinstance(x, int):
            return FieldElement(self, x)
        return FieldElement(self, self.element(x))


@lru_cache(maxsize=None)
def get_field(p: int, m: int = 1) -> FiniteField:
    return FiniteField(p, m)


@dataclass(frozen=True)
class FieldElement:
    """Convenience wrapper around an element code with arithmetic operators."""

    field: FiniteField
    value: int

    def __post_init__(self) -> None:
        if not 0 <= self.value < self.field.q:
            raise ValueError(f"{self.value} is not an element code of {self.field}")

    @property
    def coefficients(self) -> tuple[int, ...]:
        return self.field.coefficients(self.value)

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("elements of different fields")
            return other.value
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return FieldElement(self.field, self.field.sub(self._other(other), self.value))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.mul(self.value, self.field.inv(self._other(other))))

    def __pow__(self, n: int):
        return FieldElement(self.field, self.field.pow(self.value, n))

    def frobenius(self, power: int = 1) -> FieldElement:
        return FieldElement(self.field, self.field.frobenius(self.value, power))

    def __bool__(self) -> bool:
        return self.value != 0

    def __repr__(self) -> str:
        return f"F{self.field.q}{list(self.coefficients)}"

"""Irreducible components of the fiber variety X_tau inside (P^1)^g.

X_tau is cut out by one monomial equation per cyclic index i:
``t_{i-1} s_i = 0`` when i is outside tau and ``t_{i-1} t_i = 0`` when i is in
tau.  Since every equation is a product of coordinates, the components are
products of cells: the point [1:0] (t = 0), the point [0:1] (s = 0) or the
whole line.

The supersingular part is handled through Frobenius-twist equations
``x_{j-1}^(p^2) = x_{j+1}`` on the even-indexed coordinates and counted over
finite fields.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

import numpy as np

from . import alpha
from .errors import BoundExceeded, FieldTooLarge
from .finite_field import get_field

DEFAULT_MAX_G = 12
DEFAULT_POINT_LIMIT = 2_000_000


class Cell(enum.IntEnum):
    PT10 = 0  # the point [1:0], t = 0
    PT01 = 1  # the point [0:1], s = 0
    LINE = 2  # all of P^1

    def __str__(self) -> str:
        return CELL_LABELS[self]

    def contains(self, other: Cell) -> bool:
        return self is other or self is Cell.LINE


CELL_LABELS = {Cell.PT10: "[1:0]", Cell.PT01: "[0:1]", Cell.LINE: "P1"}
_LABEL_TO_CELL = {v: k for k, v in CELL_LABELS.items()}


class Equation(enum.Enum):
    TS = "ts"  # t_{i-1} s_i = 0
    TT = "tt"  # t_{i-1} t_i = 0


@dataclass(frozen=True)
class CellProduct:
    cells: tuple[Cell, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "cells", tuple(Cell(c) for c in self.cells))

    @classmethod
    def parse(cls, text: str) -> CellProduct:
        """Parse ``"[1:0] x P1 x [0:1]"``."""
        return cls(tuple(_LABEL_TO_CELL[part.strip()] for part in text.split("x")))

    @property
    def dimension(self) -> int:
        return sum(c is Cell.LINE for c in self.cells)

    def contains(self, other: CellProduct) -> bool:
        return len(self.cells) == len(other.cells) and all(
            a.contains(b) for a, b in zip(self.cells, other.cells))

    def __str__(self) -> str:
        return " x ".join(str(c) for c in self.cells)


@dataclass(frozen=True)
class MonomialEquationSet:
    tags: tuple[Equation, ...]

    @property
    def g(self) -> int:
        return len(self.tags)

    def describe(self) -> list[str]:
        g = self.g
        return [f"t{(i - 1) % g}{'s' if tag is Equation.TS else 't'}{i}"
                for i, tag in enumerate(self.tags)]


def _tau_set(g: int, tau: Iterable[int]) -> frozenset[int]:
    tau = frozenset(int(i) for i in tau)
    if any(not 0 <= i < g for i in tau):
        raise ValueError(f"tau {sorted(tau)} has positions outside [0, {g})")
    return tau


def equations_for(g: int, tau: Iterable[int]) -> MonomialEquationSet:
    if g < 1:
        raise ValueError("g must be positive")
    tau = _tau_set(g, tau)
    return MonomialEquationSet(tuple(Equation.TT if i in tau else Equation.TS for i in range(g)))


def _equation_vanishes(tag: Equation, prev: Cell, cur: Cell) -> bool:
    if prev is Cell.PT10:
        return True
    if tag is Equation.TS:
        return cur is Cell.PT01
    return cur is Cell.PT10


def satisfies_identically(x: CellProduct, eqs: MonomialEquationSet) -> bool:
    """Whether every equation vanishes on the whole cell product."""
    g = eqs.g
    if len(x.cells) != g:
        raise ValueError(f"cell product of length {len(x.cells)} against {g} equations")
    return all(_equation_vanishes(tag, x.cells[i - 1], x.cells[i]) for i, tag in enumerate(eqs.tags))


@lru_cache(maxsize=16)
def _candidate_digits(g: int) -> np.ndarray:
    """Cell codes of all 3**g candidates; row i holds the code at position i."""
    idx = np.arange(3 ** g, dtype=np.int64)
    return np.stack([(idx // 3 ** i) % 3 for i in range(g)]).astype(np.int8)


def _check_bound(g: int, max_g: int) -> None:
    if g < 1:
        raise ValueError("g must be positive")
    if g > max_g:
        raise BoundExceeded(f"g={g} exceeds the component enumeration bound {max_g}")


def satisfying_mask(g: int, tau: Iterable[int], max_g: int = DEFAULT_MAX_G) -> np.ndarray:
    """Boolean mask over the 3**g candidates (base-3 index, position i has weight 3**i)."""
    _check_bound(g, max_g)
    eqs = equations_for(g, tau)
    digits = _candidate_digits(g)
    ok = np.ones(3 ** g, dtype=bool)
    for i, tag in enumerate(eqs.tags):
        prev, cur = digits[i - 1], digits[i]
        target = Cell.PT01 if tag is Equation.TS else Cell.PT10
        ok &= (prev == Cell.PT10) | (cur == target)
    return ok


def enumerate_components(g: int, tau: Iterable[int], max_g: int = DEFAULT_MAX_G) -> list[CellProduct]:
    """Irreducible components of X_tau by exhaustive search over all 3**g cell products.

    The satisfying set is closed under shrinking a line to a point, so a
    satisfying product is maximal exactly when no single point cell can be
    widened to a line.
    """
    ok = satisfying_mask(g, tau, max_g)
    digits = _candidate_digits(g)
    idx = np.arange(3 ** g, dtype=np.int64)
    maximal = ok.copy()
    for i in range(g):
        is_point = digits[i] != Cell.LINE
        widened = idx + (Cell.LINE - digits[i].astype(np.int64)) * 3 ** i
        maximal &= ~(is_point & ok[widened])
    found = digits[:, maximal].T
    return [CellProduct(tuple(Cell(int(c)) for c in row)) for row in sorted(map(tuple, found.tolist()))]


def max_dimension(g: int, tau: Iterable[int], max_g: int = DEFAULT_MAX_G) -> int:
    return max(x.dimension for x in enumerate_components(g, tau, max_g))


def top_dim_count(g: int, tau: Iterable[int], max_g: int = DEFAULT_MAX_G) -> int:
    """Number of components of dimension |a|; only meaningful for generic a."""
    tau = _tau_set(g, tau)
    bits = [int(i in tau) for i in range(g)]
    if not alpha.is_generic(bits):
        raise ValueError(f"alpha type {''.join(map(str, bits))} is not generic")
    return sum(x.dimension == len(tau) for x in enumerate_components(g, tau, max_g))


# --- supersingular locus -------------------------------------------------


@dataclass(frozen=True)
class FrobeniusLocus:
    """Equations ``x_src^(p^2) = x_dst`` on the coordinates x_0, x_2, ..., x_{g-2}.

    ``rotation`` r means the equations refer to the rotated type a'_i = a_{i+r},
    which contains the pattern (1,0,...,1,0).
    """

    g: int
    rotation: int
    bits: tuple[int, ...]
    equations: tuple[tuple[int, int], ...]

    @property
    def coordinates(self) -> tuple[int, ...]:
        return tuple(range(0, self.g, 2))

    def expected_free_dimension(self) -> int:
        return self.g - sum(self.bits)


def ss_frobenius_equations(a: alpha.AlphaType | Sequence[int]) -> FrobeniusLocus:
    bits = alpha._bits(a)
    g = len(bits)
    if g % 2:
        raise ValueError(f"the Frobenius-twist description needs even g, got {g}")
    if all(bits[0::2]):
        rotation = 0
    elif all(bits[1::2]):
        rotation = 1
    else:
        raise ValueError(f"{''.join(map(str, bits))} contains neither alternating pattern")
    rotated = tuple(bits[(i + rotation) % g] for i in range(g))
    equations = tuple(((j - 1) % g, (j + 1) % g) for j in range(1, g, 2) if rotated[j])
    return FrobeniusLocus(g, rotation, rotated, equations)


def count_points_ss_locus(a: alpha.AlphaType | Sequence[int], p: int, m: int,
                          limit: int = DEFAULT_POINT_LIMIT) -> int:
    """Count F_q-points (q = p**m) of the Frobenius-twist locus in (P^1)^(g/2).

    Every tuple of points of P^1(F_q), affine chart plus the point at infinity,
    is tested directly.  Infinity is encoded as q and is fixed by Frobenius.
    """
    locus = ss_frobenius_equations(a)
    field = get_field(p, m)
    q = field.q
    d = locus.g // 2
    if (q + 1) ** d > limit:
        raise FieldTooLarge(f"{(q + 1) ** d} tuples over F_{q} exceeds the limit {limit}")
    frob2 = [field.frobenius(x, 2) for x in range(q)] + [q]
    position = {c: k for k, c in enumerate(locus.coordinates)}
    eqs = [(position[s], position[t]) for s, t in locus.equations]
    return sum(
        all(frob2[pt[s]] == pt[t] for s, t in eqs)
        for pt in itertools.product(range(q + 1), repeat=d)
    )


def expected_ss_locus_count(a: alpha.AlphaType | Sequence[int], p: int, m: int) -> int:
    """Closed form of the point count: (q+1)^(g-|a|), or p^gcd(g,m)+1 when |a| = g."""
    bits = alpha._bits(a)
    g = len(bits)
    q = p ** m
    if sum(bits) < g:
        return (q + 1) ** (g - sum(bits))
    return p ** gcd(g, m) + 1


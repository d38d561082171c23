"""Alpha types and their combinatorics.

An alpha type is a tuple of bit blocks, one block per prime above p, where the
block for a prime of residue degree f has length f and is indexed cyclically
by Z/fZ.  The inert case is a single block of length g.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import prod
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import BoundExceeded, ProfileMismatch

DEFAULT_MAX_G = 24

FILTERS = ("all", "generic", "generic_supersingular")


@dataclass(frozen=True)
class RamificationProfile:
    """Ordered residue degrees (f_v) of the primes above p; g is their sum."""

    degrees: tuple[int, ...]

    def __post_init__(self) -> None:
        degrees = tuple(int(f) for f in self.degrees)
        if not degrees:
            raise ValueError("a ramification profile needs at least one block")
        if any(f < 1 for f in degrees):
            raise ValueError(f"residue degrees must be positive: {degrees}")
        object.__setattr__(self, "degrees", degrees)

    @classmethod
    def inert(cls, g: int) -> RamificationProfile:
        return cls((g,))

    @classmethod
    def parse(cls, text: str) -> RamificationProfile:
        """Parse ``"4"`` or ``"2,2"``."""
        parts = [s.strip() for s in str(text).split(",") if s.strip()]
        if not parts:
            raise ValueError(f"empty profile: {text!r}")
        try:
            return cls(tuple(int(s) for s in parts))
        except ValueError as exc:
            raise ValueError(f"bad profile {text!r}: {exc}") from None

    @property
    def g(self) -> int:
        return sum(self.degrees)

    @property
    def is_inert(self) -> bool:
        return len(self.degrees) == 1

    def __str__(self) -> str:
        return ",".join(str(f) for f in self.degrees)


@dataclass(frozen=True)
class AlphaType:
    """An element of the product of the per-block cubes {0,1}^(Z/f_v Z)."""

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        blocks = tuple(tuple(int(b) for b in block) for block in self.blocks)
        if not blocks or any(len(block) == 0 for block in blocks):
            raise ValueError("alpha type blocks must be nonempty")
        if any(b not in (0, 1) for block in blocks for b in block):
            raise ValueError(f"alpha type entries must be 0 or 1: {blocks}")
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def single(cls, bits: Iterable[int]) -> AlphaType:
        return cls((tuple(bits),))

    @classmethod
    def parse(cls, text: str) -> AlphaType:
        """Parse ``"10100"`` or ``"10|01"`` (blocks separated by ``|``)."""
        return cls(tuple(tuple(int(c) for c in chunk.strip()) for chunk in text.split("|")))

    @classmethod
    def from_tau(cls, profile: RamificationProfile, tau: Sequence[Iterable[int]]) -> AlphaType:
        """Build an alpha type from per-block support sets."""
        if len(tau) != len(profile.degrees):
            raise ProfileMismatch(f"{len(tau)} support sets for profile {profile}")
        blocks = []
        for f, positions in zip(profile.degrees, tau):
            block = [0] * f
            for i in positions:
                if not 0 <= i < f:
                    raise ValueError(f"position {i} outside [0, {f})")
                block[i] = 1
            blocks.append(tuple(block))
        return cls(tuple(blocks))

    @property
    def profile(self) -> RamificationProfile:
        return RamificationProfile(tuple(len(block) for block in self.blocks))

    @property
    def g(self) -> int:
        return sum(len(block) for block in self.blocks)

    def tau(self) -> tuple[tuple[int, ...], ...]:
        """Per-block sorted positions carrying a 1 (the alpha index)."""
        return tuple(tuple(i for i, b in enumerate(block) if b) for block in self.blocks)

    def only_block(self) -> tuple[int, ...]:
        if len(self.blocks) != 1:
            raise ValueError(f"expected a single-block alpha type, got profile {self.profile}")
        return self.blocks[0]

    def __str__(self) -> str:
        return "|".join("".join(str(b) for b in block) for block in self.blocks)


@dataclass(frozen=True)
class SlopeSequence:
    """The symmetric Newton slope data s(j, f).

    ``j`` is a non-negative integer at most f/2, or exactly f/2; the slopes are
    j/f and (f-j)/f, each with multiplicity f.
    """

    j: Fraction
    f: int

    def __post_init__(self) -> None:
        j = Fraction(self.j)
        if self.f < 1:
            raise ValueError(f"block length must be positive, got {self.f}")
        if not 0 <= j <= Fraction(self.f, 2):
            raise ValueError(f"slope parameter {j} outside [0, {self.f}/2]")
        if j.denominator != 1 and j != Fraction(self.f, 2):
            raise ValueError(f"slope parameter {j} is neither an integer nor f/2")
        object.__setattr__(self, "j", j)

    @property
    def is_supersingular(self) -> bool:
        return self.j == Fraction(self.f, 2)

    def slopes(self) -> tuple[Fraction, ...]:
        low = self.j / self.f
        return (low,) * self.f + (1 - low,) * self.f


def _bits(a: AlphaType | Sequence[int]) -> tuple[int, ...]:
    if isinstance(a, AlphaType):
        return a.only_block()
    bits = tuple(int(b) for b in a)
    if not bits or any(b not in (0, 1) for b in bits):
        raise ValueError(f"not a bit vector: {a!r}")
    return bits


def _as_alpha(a: AlphaType | Sequence[int]) -> AlphaType:
    return a if isinstance(a, AlphaType) else AlphaType.single(a)


def size(a: AlphaType | Sequence[int]) -> int:
    a = _as_alpha(a)
    return sum(sum(block) for block in a.blocks)


def preceq(a1: AlphaType, a2: AlphaType) -> bool:
    """``a1 <= a2`` in the stratification order, i.e. a1 dominates a2 entrywise.

    Larger alpha types sit lower in the closure order, so the comparison is
    reversed relative to the bitwise one.
    """
    a1, a2 = _as_alpha(a1), _as_alpha(a2)
    if a1.profile != a2.profile:
        raise ProfileMismatch(f"profiles differ: {a1.profile} vs {a2.profile}")
    return all(x >= y for b1, b2 in zip(a1.blocks, a2.blocks) for x, y in zip(b1, b2))


def _block_is_generic(bits: Sequence[int]) -> bool:
    f = len(bits)
    return all(not (bits[i] and bits[(i + 1) % f]) for i in range(f))


def is_generic(a: AlphaType | Sequence[int]) -> bool:
    return all(_block_is_generic(block) for block in _as_alpha(a).blocks)


def weight_w(a: AlphaType | Sequence[int]) -> int:
    """Cyclic gap product of a single block.

    2 for the empty support; otherwise the product over consecutive support
    positions n_j < n_{j+1} (cyclically, n_{a+1} = g + n_1) of n_{j+1} - n_j - 1.
    """
    bits = _bits(a)
    g = len(bits)
    support = [i for i, b in enumerate(bits) if b]
    if not support:
        return 2
    nxt = support[1:] + [support[0] + g]
    return prod(n1 - n0 - 1 for n0, n1 in zip(support, nxt))


def weights_for_all_subsets(g: int) -> np.ndarray:
    """Array ``w`` of length 2**g with ``w[mask]`` the gap product of that support.

    Bit i of ``mask`` is the entry a_i.  Evaluated with one vectorized sweep
    from the top position down, tracking the next support position.
    """
    if g < 1:
        raise ValueError("g must be positive")
    masks = np.arange(1 << g, dtype=np.int64)
    lowest = masks & -masks
    # index of the lowest set bit, wrapped past g; unused for the empty mask
    first = np.zeros_like(masks)
    nonzero = lowest > 0
    first[nonzero] = np.log2(lowest[nonzero]).astype(np.int64)
    nxt = first + g
    weights = np.ones_like(masks)
    for i in range(g - 1, -1, -1):
        on = ((masks >> i) & 1).astype(bool)
        weights = np.where(on, weights * (nxt - i - 1), weights)
        nxt = np.where(on, i, nxt)
    weights[0] = 2
    return weights


def weight_w_prime(a: AlphaType, class_factor) -> Fraction:
    """The class factor for generic supersingular types, else the product of block weights."""
    a = _as_alpha(a)
    if is_generic(a) and is_supersingular(a):
        return Fraction(getattr(class_factor, "value", class_factor))
    return Fraction(prod(weight_w(block) for block in a.blocks))


def _max_independent_on_cycle(allowed: Sequence[bool]) -> int:
    """Largest set of allowed positions on the cycle with no two cyclically adjacent."""
    g = len(allowed)
    if g == 1:
        # position 0 is adjacent to itself
        return 0

    def path_best(cells: Sequence[bool]) -> int:
        take, skip = float("-inf"), 0
        for ok in cells:
            take, skip = (skip + 1 if ok else float("-inf")), max(take, skip)
        return int(max(take, skip))

    # either position 0 is unused, or it is used and both neighbours are not
    best = path_best(allowed[1:])
    if allowed[0]:
        best = max(best, 1 + path_best(allowed[2:g - 1]))
    return best


def lambda_max(a: AlphaType | Sequence[int]) -> int:
    """max |b| over generic b with a <= b, i.e. b supported inside the support of a."""
    bits = _bits(a)
    return _max_independent_on_cycle([bool(b) for b in bits])


def is_superspecial_exception(a: AlphaType | Sequence[int]) -> bool:
    bits = _bits(a)
    return len(bits) % 2 == 1 and sum(bits) == len(bits)


def _block_is_supersingular(bits: Sequence[int]) -> bool:
    f = len(bits)
    if f % 2:
        return all(bits)
    return all(bits[0::2]) or all(bits[1::2])


def is_supersingular(a: AlphaType | Sequence[int]) -> bool:
    return all(_block_is_supersingular(block) for block in _as_alpha(a).blocks)


def slope_of_stratum(a: AlphaType | Sequence[int]) -> SlopeSequence:
    bits = _bits(a)
    g = len(bits)
    if is_superspecial_exception(bits):
        return SlopeSequence(Fraction(g, 2), g)
    return SlopeSequence(Fraction(lambda_max(bits)), g)


@lru_cache(maxsize=None)
def generic_blocks(f: int) -> tuple[tuple[int, ...], ...]:
    """All generic bit blocks of length f, in lexicographic order."""
    out: list[tuple[int, ...]] = []

    def extend(prefix: list[int]) -> None:
        if len(prefix) == f:
            if not (prefix[-1] and prefix[0]):
                out.append(tuple(prefix))
            return
        prefix.append(0)
        extend(prefix)
        prefix.pop()
        if not prefix or not prefix[-1]:
            prefix.append(1)
            extend(prefix)
            prefix.pop()

    extend([])
    return tuple(out)


def alternating_blocks(f: int) -> tuple[tuple[int, ...], ...]:
    """The two alternating patterns of an even block; none for odd f."""
    if f % 2:
        return ()
    return (tuple(1 - i % 2 for i in range(f)), tuple(i % 2 for i in range(f)))


def _check_bound(profile: RamificationProfile, max_g: int) -> None:
    if profile.g > max_g:
        raise BoundExceeded(f"g={profile.g} exceeds the enumeration bound {max_g}")


def iter_types(profile: RamificationProfile, filter: str = "all",
               max_g: int = DEFAULT_MAX_G) -> Iterator[AlphaType]:
    """Lazily enumerate alpha types of ``profile`` in lexicographic order."""
    _check_bound(profile, max_g)
    if filter == "all":
        per_block = [tuple(itertools.product((0, 1), repeat=f)) for f in profile.degrees]
    elif filter == "generic":
        per_block = [generic_blocks(f) for f in profile.degrees]
    elif filter == "generic_supersingular":
        per_block = [tuple(sorted(alternating_blocks(f))) for f in profile.degrees]
    else:
        raise ValueError(f"unknown filter {filter!r}; expected one of {FILTERS}")
    for blocks in itertools.product(*per_block):
        yield AlphaType(blocks)


def enumerate_types(profile: RamificationProfile, filter: str = "all",
                    max_g: int = DEFAULT_MAX_G) -> list[AlphaType]:
    return list(iter_types(profile, filter, max_g))

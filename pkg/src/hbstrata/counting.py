"""Global counts of irreducible components, in every equivalent form.

All counts are exact.  A count is assembled from the ramification profile and
the class factor H; independent evaluations of the same quantity are compared
and any disagreement raises :class:`InconsistentCounts`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, prod
from typing import Optional

from . import alpha
from .alpha import AlphaType, RamificationProfile
from .errors import InconsistentCounts, NonIntegralCount
from .quadratic import ClassFactor


def _rational(H) -> Fraction:
    if type(H) is Fraction and H.numerator > 0:
        return H
    if isinstance(H, ClassFactor):
        return H.value
    value = Fraction(H)
    if value <= 0:
        raise ValueError(f"class factor must be positive, got {value}")
    return value


@lru_cache(maxsize=None)
def _block_summary(f: int) -> tuple[int, int, int]:
    """Over the generic blocks of length f: (sum of w, sum of w over supersingular ones, count of those)."""
    blocks = alpha.generic_blocks(f)
    ss = [b for b in blocks if alpha.is_supersingular(b)]
    return sum(alpha.weight_w(b) for b in blocks), sum(alpha.weight_w(b) for b in ss), len(ss)


@lru_cache(maxsize=None)
def _generic_summary(profile: RamificationProfile) -> tuple[int, int]:
    """(sum of block-weight products over non-supersingular generic types, number of
    generic supersingular types).

    The generic set is the product of the per-block generic sets, so the sum of
    products of block weights factors blockwise.
    """
    stats = [_block_summary(f) for f in profile.degrees]
    total = prod(s[0] for s in stats)
    ss_weight = prod(s[1] for s in stats)
    return total - ss_weight, prod(s[2] for s in stats)


def _generic_summary_enumerated(profile: RamificationProfile) -> tuple[int, int]:
    """Same as :func:`_generic_summary`, by walking every generic type."""
    non_ss = 0
    n_ss = 0
    for a in alpha.iter_types(profile, "generic", max_g=profile.g):
        if alpha.is_supersingular(a):
            n_ss += 1
        else:
            non_ss += prod(alpha.weight_w(block) for block in a.blocks)
    return non_ss, n_ss


@lru_cache(maxsize=None)
def _ss_generic_count(profile: RamificationProfile) -> int:
    """Size of the generic supersingular set, built directly from alternating blocks."""
    return len(list(itertools.product(*(alpha.alternating_blocks(f) for f in profile.degrees))))


def count_by_generic_sum(profile: RamificationProfile, H) -> Fraction:
    """Sum of w'(a) over all generic alpha types.

    w'(a) is H for generic supersingular a and the product of block weights
    otherwise; the H-independent terms are summed once per profile.
    """
    non_ss, n_ss = _generic_summary(profile)
    H = _rational(H)
    den = H.denominator
    return Fraction(non_ss * den + n_ss * H.numerator, den)


def count_by_closed_form(profile: RamificationProfile, H) -> Fraction:
    """2^g plus (w'(a) - 1) for each generic supersingular a."""
    H = _rational(H)
    num, den = H.numerator, H.denominator
    return Fraction((1 << profile.g) * den + _ss_generic_count(profile) * (num - den), den)


def count_by_inert_case_split(g: int, H) -> Fraction:
    """Inert case: sum of w over non-supersingular generic types, plus 2H when g is even."""
    total = sum(alpha.weight_w(a) for a in alpha.iter_types(RamificationProfile.inert(g), "generic", max_g=g)
                if not (g % 2 == 0 and alpha.is_supersingular(a)))
    if g % 2 == 0:
        total += 2 * _rational(H)
    return Fraction(total)


def count_by_inert_closed_form(g: int, H) -> Fraction:
    """Inert case: 2^g, plus 2(H - 1) when g is even."""
    n_ss = 2 if g % 2 == 0 else 0
    return 2 ** g + n_ss * (_rational(H) - 1)


@dataclass(frozen=True)
class ComponentTotal:
    value: int
    variants: dict[str, Fraction]


def total_components(profile: RamificationProfile, H) -> ComponentTotal:
    """Number of irreducible components; no dependence on p by construction."""
    variants = {
        "generic_weight_sum": count_by_generic_sum(profile, H),
        "closed_form": count_by_closed_form(profile, H),
    }
    if profile.is_inert:
        variants["inert_case_split"] = count_by_inert_case_split(profile.g, H)
        variants["inert_closed_form"] = count_by_inert_closed_form(profile.g, H)
    values = set(variants.values())
    if len(values) != 1:
        raise InconsistentCounts(f"component count variants disagree for {profile}: {variants}")
    value = values.pop()
    if value.denominator != 1:
        raise NonIntegralCount(f"component count {value} for profile {profile} is not an integer")
    return ComponentTotal(int(value), variants)


@dataclass(frozen=True)
class SlopeRow:
    """Components whose generic point has slope parameters j_v on the blocks of size f_v."""

    j: tuple[int, ...]
    f: tuple[int, ...]
    count: int

    @property
    def slopes(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(j, f) for j, f in zip(self.j, self.f))


def slope_parameter_tuples(profile: RamificationProfile) -> list[tuple[int, ...]]:
    """All tuples (j_v) with 0 <= j_v <= f_v/2 that are not entirely supersingular."""
    ranges = [range(f // 2 + 1) for f in profile.degrees]
    out = []
    for js in itertools.product(*ranges):
        if all(f % 2 == 0 and 2 * j == f for j, f in zip(js, profile.degrees)):
            continue
        out.append(js)
    return out


def slope_component_table(profile: RamificationProfile) -> list[SlopeRow]:
    """Per non-supersingular slope tuple, the product of 2 * C(f_v, 2 j_v)."""
    return [SlopeRow(js, profile.degrees, prod(2 * comb(f, 2 * j) for j, f in zip(js, profile.degrees)))
            for js in slope_parameter_tuples(profile)]


def supersingular_component_count(profile: RamificationProfile, H) -> Fraction:
    return _ss_generic_count(profile) * _rational(H)


def mass_factor_c(f: int, e1: int, e2: int, p: int) -> int:
    """Local mass factor for a block of degree f and superspecial type (e1, e2)."""
    if not 0 <= e1 <= e2 <= 1:
        raise ValueError(f"invalid superspecial type ({e1}, {e2})")
    if f % 2:
        if e1 + e2 != 1:
            raise ValueError(f"odd degree {f} requires e1 + e2 = 1, got ({e1}, {e2})")
        return p ** f - 1
    return 1 if e1 == e2 else p ** f + 1


def local_factor(f: int, block: tuple[int, ...], p: int) -> int:
    """c_v for one block of a supersingular type.

    Blocks with odd f or full support come from a superspecial module of type
    (0, 1); the remaining even blocks from one of type (0, 0).
    """
    if f % 2 == 0 and sum(block) < f:
        return mass_factor_c(f, 0, 0, p)
    return mass_factor_c(f, 0, 1, p)


def ss_stratum_component_count(a: AlphaType, p: int, H) -> Fraction:
    """Components of a supersingular stratum: H times the product of local factors."""
    a = a if isinstance(a, AlphaType) else AlphaType.single(a)
    if not alpha.is_supersingular(a):
        raise ValueError(f"alpha type {a} is not supersingular")
    return _rational(H) * prod(local_factor(len(b), b, p) for b in a.blocks)


def superspecial_point_count(g: int, p: int, H) -> Fraction:
    """Number of superspecial points in the inert case: H(p^g - 1) for odd g, H(p^g + 1) for even g."""
    if g < 1:
        raise ValueError("g must be positive")
    return _rational(H) * (p ** g - 1 if g % 2 else p ** g + 1)


def _integral(value: Fraction, what: str) -> int:
    if value.denominator != 1:
        raise NonIntegralCount(f"{what} {value} is not an integer")
    return int(value)


@dataclass(frozen=True)
class CountReport:
    """Every count for one profile.  ``class_factor`` is None when no count depends on it."""

    profile: RamificationProfile
    class_factor: Optional[ClassFactor]
    total_components: int
    slope_table: tuple[SlopeRow, ...]
    supersingular_component_count: int
    formula_variants: dict[str, Fraction]
    p: Optional[int] = None
    n: Optional[int] = None
    superspecial_point_count: Optional[int] = None
    notes: tuple[str, ...] = field(default=())


def needs_class_factor(profile: RamificationProfile) -> bool:
    """Whether the component counts of ``profile`` depend on H at all."""
    return _ss_generic_count(profile) > 0


def build_count_report(profile: RamificationProfile, H: Optional[ClassFactor],
                       p: Optional[int] = None, n: Optional[int] = None) -> CountReport:
    """Evaluate every count for ``profile`` and cross-check them against each other.

    H may be None when the profile has no generic supersingular types and no
    superspecial point count is requested.
    """
    if H is None:
        if needs_class_factor(profile) or (p is not None and profile.is_inert):
            raise ValueError(f"profile {profile} needs a class factor")
        # H multiplies only empty sums here, so any positive value gives the same counts
        effective = ClassFactor(1)
    else:
        effective = H
    total = total_components(profile, effective)
    table = tuple(slope_component_table(profile))
    ss = _integral(supersingular_component_count(profile, effective), "supersingular component count")
    if sum(row.count for row in table) + ss != total.value:
        raise InconsistentCounts(
            f"slope table sums to {sum(r.count for r in table)} + {ss}, total is {total.value}")
    superspecial = None
    notes = ["total_components counts irreducible components"]
    if p is not None and n is not None and n % p == 0:
        notes.append(f"level n={n} is not prime to p={p}; H is used as given")
    if p is not None and profile.is_inert:
        superspecial = _integral(superspecial_point_count(profile.g, p, effective), "superspecial point count")
        full = AlphaType.single((1,) * profile.g)
        if ss_stratum_component_count(full, p, effective) != superspecial:
            raise InconsistentCounts("superspecial point count disagrees with the stratum count")
        notes.append("superspecial_point_count counts points, not components")
    return CountReport(profile, H, total.value, table, ss, total.variants, p, n, superspecial, tuple(notes))

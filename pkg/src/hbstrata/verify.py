"""Verification suites: every closed form against an independent computation.

Each suite is deterministic given the seed.  Depth is controlled by
:class:`VerifyConfig`; each suite caps ``max_g`` further at the size where its
brute force stays cheap.
"""

from __future__ import annotations

import itertools
import random
import time
import zlib
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable, Iterator, Optional

import numpy as np

from . import alpha, counting, dieudonne, oracles, quadratic, strata
from .alpha import AlphaType, RamificationProfile
from .finite_field import get_field

MAX_FAILURE_EXAMPLES = 5


@dataclass(frozen=True)
class VerifyConfig:
    max_g: int = 10
    fields: tuple[tuple[int, int], ...] = ((2, 2), (3, 2), (5, 2), (2, 3))
    samples: int = 200
    h_samples: int = 20
    seed: int = 0
    engine: str = "batch"  # or "scalar"

    def __post_init__(self) -> None:
        if self.max_g < 1:
            raise ValueError("max_g must be positive")
        if self.samples < 1 or self.h_samples < 1:
            raise ValueError("sample counts must be positive")
        if self.engine not in ("batch", "scalar"):
            raise ValueError(f"unknown engine {self.engine!r}")
        if not self.fields:
            raise ValueError("at least one field is required")

    @property
    def characteristics(self) -> tuple[int, ...]:
        return tuple(sorted({p for p, _ in self.fields}))


@dataclass
class SuiteResult:
    name: str
    checks: int = 0
    failures: int = 0
    examples: list[str] = field(default_factory=list)
    seconds: float = field(default=0.0, compare=False)

    @property
    def passed(self) -> bool:
        return self.failures == 0 and self.checks > 0

    def check(self, ok: bool, message: Callable[[], str] | str = "") -> None:
        self.checks += 1
        if not ok:
            self.failures += 1
            if len(self.examples) < MAX_FAILURE_EXAMPLES:
                self.examples.append(message() if callable(message) else message)

    def tally(self, checks: int, failures: int, message: Callable[[], str] | str = "") -> None:
        """Record a batch of checks at once."""
        self.checks += checks
        self.failures += failures
        if failures and len(self.examples) < MAX_FAILURE_EXAMPLES:
            self.examples.append(message() if callable(message) else message)


@dataclass
class VerifyReport:
    config: VerifyConfig
    results: list[SuiteResult]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)


def _rng(config: VerifyConfig, name: str) -> random.Random:
    return random.Random(config.seed * 1_000_003 + zlib.crc32(name.encode()))


def _np_rng(config: VerifyConfig, name: str) -> np.random.Generator:
    return np.random.default_rng([config.seed, zlib.crc32(name.encode())])


def compositions(g: int) -> Iterator[RamificationProfile]:
    """All ordered profiles with sum g."""
    for cuts in itertools.product((False, True), repeat=g - 1):
        parts, run = [], 1
        for cut in cuts:
            if cut:
                parts.append(run)
                run = 1
            else:
                run += 1
        parts.append(run)
        yield RamificationProfile(tuple(parts))


def all_profiles(max_g: int) -> Iterator[RamificationProfile]:
    for g in range(1, max_g + 1):
        yield from compositions(g)


def random_class_factors(rng: random.Random, n: int) -> list[Fraction]:
    return [Fraction(rng.randint(1, 10 ** 6), rng.randint(1, 10 ** 6)) for _ in range(n)]


def _bit_vectors(g: int) -> Iterator[tuple[int, ...]]:
    return itertools.product((0, 1), repeat=g)


# --- alpha calculus -------------------------------------------------------


def suite_weight_total(config: VerifyConfig, res: SuiteResult) -> None:
    for g in range(1, min(config.max_g, 20) + 1):
        total = int(alpha.weights_for_all_subsets(g).sum())
        res.check(total == 2 ** g, lambda: f"g={g}: sum of w over subsets is {total}")
        if g <= 12:
            scalar = sum(alpha.weight_w(bits) for bits in _bit_vectors(g))
            res.check(scalar == 2 ** g, lambda: f"g={g}: scalar sum of w is {scalar}")


def suite_weight_by_size(config: VerifyConfig, res: SuiteResult) -> None:
    for g in range(1, min(config.max_g, 20) + 1):
        weights = alpha.weights_for_all_subsets(g)
        sizes = np.array([bin(x).count("1") for x in range(2 ** g)])
        for j in range(1, g // 2 + 1):
            got = int(weights[sizes == j].sum())
            res.check(got == 2 * comb(g, 2 * j), lambda: f"g={g}, j={j}: got {got}")
        if g <= 12:
            by_size = [0] * (g + 1)
            for bits in _bit_vectors(g):
                by_size[sum(bits)] += alpha.weight_w(bits)
            for j in range(1, g // 2 + 1):
                res.check(by_size[j] == 2 * comb(g, 2 * j),
                          lambda: f"g={g}, j={j}: scalar sum {by_size[j]}")


def suite_weight_positivity(config: VerifyConfig, res: SuiteResult) -> None:
    for g in range(1, min(config.max_g, 12) + 1):
        for bits in _bit_vectors(g):
            w = alpha.weight_w(bits)
            res.check((w > 0) == alpha.is_generic(bits), lambda: f"{bits}: w={w}")


def suite_partial_order(config: VerifyConfig, res: SuiteResult) -> None:
    for g in range(1, min(config.max_g, 6) + 1):
        types = [AlphaType.single(bits) for bits in _bit_vectors(g)]
        below = {a: [b for b in types if alpha.preceq(a, b)] for a in types}
        for a in types:
            res.check(alpha.preceq(a, a), lambda: f"{a} not reflexive")
            for b in below[a]:
                if b != a:
                    res.check(not alpha.preceq(b, a), lambda: f"{a} and {b} violate antisymmetry")
                for c in below[b]:
                    res.check(alpha.preceq(a, c), lambda: f"{a}, {b}, {c} violate transitivity")


def suite_lambda(config: VerifyConfig, res: SuiteResult) -> None:
    for g in range(1, min(config.max_g, 10) + 1):
        for bits in _bit_vectors(g):
            lam = alpha.lambda_max(bits)
            ref = oracles.lambda_bruteforce(bits)
            res.check(lam == ref, lambda: f"{bits}: lambda {lam}, brute force {ref}")
            if alpha.is_generic(bits):
                res.check(lam == sum(bits), lambda: f"generic {bits}: lambda {lam}")


def suite_generic_supersingular(config: VerifyConfig, res: SuiteResult) -> None:
    for profile in all_profiles(min(config.max_g, 8)):
        listed = set(alpha.enumerate_types(profile, "generic_supersingular"))
        filtered = {a for a in alpha.iter_types(profile, "all")
                    if alpha.is_generic(a) and alpha.is_supersingular(a)}
        res.check(listed == filtered, lambda: f"{profile}: listed {len(listed)}, filtered {len(filtered)}")
        expected = 2 ** len(profile.degrees) if all(f % 2 == 0 for f in profile.degrees) else 0
        res.check(len(listed) == expected, lambda: f"{profile}: {len(listed)} generic supersingular types")
        generic = alpha.enumerate_types(profile, "generic")
        res.check(set(generic) == {a for a in alpha.iter_types(profile, "all") if alpha.is_generic(a)},
                  lambda: f"{profile}: generic filter disagrees with the predicate")


# --- strata ----------------------------------------------------------------


def suite_component_dimensions(config: VerifyConfig, res: SuiteResult) -> None:
    for g in range(1, min(config.max_g, 10) + 1):
        for bits in _bit_vectors(g):
            tau = [i for i, b in enumerate(bits) if b]
            comps = strata.enumerate_components(g, tau, max_g=g)
            dim = max(x.dimension for x in comps)
            generic = alpha.is_generic(bits)
            res.check(dim <= len(tau), lambda: f"{bits}: dimension {dim} > |a|")
            res.check((dim == len(tau)) == generic, lambda: f"{bits}: dimension {dim}, generic={generic}")
            if generic:
                top = sum(x.dimension == len(tau) for x in comps)
                w = alpha.weight_w(bits)
                res.check(top == w, lambda: f"{bits}: {top} top-dimensional components, w={w}")


def suite_component_structure(config: VerifyConfig, res: SuiteResult) -> None:
    for g in range(1, min(config.max_g, 7) + 1):
        digits = strata._candidate_digits(g)
        for bits in _bit_vectors(g):
            tau = [i for i, b in enumerate(bits) if b]
            comps = strata.enumerate_components(g, tau, max_g=g)
            eqs = strata.equations_for(g, tau)
            for x in comps:
                res.check(strata.satisfies_identically(x, eqs), lambda: f"{bits}: {x} fails the equations")
            res.check(all(not x.contains(y) for x, y in itertools.permutations(comps, 2)),
                      lambda: f"{bits}: component list is not an antichain")
            ok = strata.satisfying_mask(g, tau, max_g=g)
            covered = np.zeros_like(ok)
            for x in comps:
                inside = np.ones_like(ok)
                for i, c in enumerate(x.cells):
                    if c is not strata.Cell.LINE:
                        inside &= digits[i] == c
                covered |= inside
            res.check(bool(np.all(covered == ok)), lambda: f"{bits}: components do not cover the solutions")
            if alpha.is_generic(bits) and tau:
                for x in comps:
                    if x.dimension != len(tau):
                        continue
                    lines = [i for i, c in enumerate(x.cells) if c is strata.Cell.LINE]
                    res.check(all(bits[i] == 0 for i in lines), lambda: f"{bits}: {x} has a line on the support")
                    for k, start in enumerate(tau):
                        end = tau[(k + 1) % len(tau)] + (g if k + 1 == len(tau) else 0)
                        inside = sum(1 for i in lines if start < i < end or start < i + g < end)
                        res.check(inside == 1, lambda: f"{bits}: {x} has {inside} lines after position {start}")


def suite_frobenius_locus(config: VerifyConfig, res: SuiteResult) -> None:
    for g in (2, 4, 6):
        if g > config.max_g:
            continue
        pattern = AlphaType.single(1 - i % 2 for i in range(g))
        types = [AlphaType.single(bits) for bits in _bit_vectors(g)
                 if alpha.preceq(AlphaType.single(bits), pattern)]
        for p in config.characteristics:
            for m in (2, 4):
                q = p ** m
                if (q + 1) ** (g // 2) > strata.DEFAULT_POINT_LIMIT // 4:
                    continue
                for a in types:
                    bits = a.only_block()
                    got = strata.count_points_ss_locus(bits, p, m)
                    expected = strata.expected_ss_locus_count(bits, p, m)
                    res.check(got == expected, lambda: f"{a} over F_{q}: {got} points, expected {expected}")
                    if sum(bits) < g:
                        res.check(got == (q + 1) ** (g - sum(bits)),
                                  lambda: f"{a} over F_{q}: {got} != (q+1)^(g-|a|)")


# --- finite field oracle ---------------------------------------------------


def suite_field_automorphism(config: VerifyConfig, res: SuiteResult) -> None:
    rng = _rng(config, "field_automorphism")
    for p, m in config.fields:
        k = get_field(p, m)
        gen = k.generator
        for power in range(1, m):
            res.check(k.frobenius(gen, power) != gen, lambda: f"F_{k.q}: sigma^{power} fixes a generator")
        res.check(k.frobenius(gen, m) == gen, lambda: f"F_{k.q}: sigma^m moves the generator")
        for _ in range(config.samples):
            x, y = rng.randrange(k.q), rng.randrange(k.q)
            fx = k.frobenius(x, 1)
            res.check(k.frobenius(fx, -1) == x, lambda: f"F_{k.q}: sigma^-1 sigma {x} != {x}")
            res.check(k.frobenius(k.mul(x, y), 1) == k.mul(fx, k.frobenius(y, 1)),
                      lambda: f"F_{k.q}: sigma not multiplicative at {x}, {y}")
            res.check(k.frobenius(k.add(x, y), 1) == k.add(fx, k.frobenius(y, 1)),
                      lambda: f"F_{k.q}: sigma not additive at {x}, {y}")
            res.check(k.frobenius(x, 1) == k.pow(x, p), lambda: f"F_{k.q}: sigma({x}) != {x}^p")


def suite_semilinearity(config: VerifyConfig, res: SuiteResult) -> None:
    rng = _rng(config, "semilinearity")
    for p, m in config.fields:
        k = get_field(p, m)
        for g in range(1, min(config.max_g, 6) + 1):
            tau = [i for i in range(g) if rng.random() < 0.5]
            mod = dieudonne.standard_module(g, tau, k)
            res.check(dieudonne.compose_zero(mod), lambda: f"g={g}, tau={tau}: FV or VF nonzero")
            for _ in range(max(1, config.samples // 10)):
                c = rng.randrange(k.q)
                v = (rng.randrange(k.q), rng.randrange(k.q))
                cv = (k.mul(c, v[0]), k.mul(c, v[1]))
                i = rng.randrange(g)
                fv, fcv = mod.apply_F(i, v), mod.apply_F(i, cv)
                cp = k.frobenius(c, 1)
                res.check(fcv == (k.mul(cp, fv[0]), k.mul(cp, fv[1])), "F is not sigma-semilinear")
                vv, vcv = mod.apply_V(i, v), mod.apply_V(i, cv)
                ci = k.frobenius(c, -1)
                res.check(vcv == (k.mul(ci, vv[0]), k.mul(ci, vv[1])), "V is not sigma^-1-semilinear")


def suite_alpha_type_oracle(config: VerifyConfig, res: SuiteResult) -> None:
    for p in config.characteristics:
        k = get_field(p, 1)
        for g in range(1, min(config.max_g, 8) + 1):
            for bits in _bit_vectors(g):
                tau = [i for i, b in enumerate(bits) if b]
                got = dieudonne.alpha_type_of(dieudonne.standard_module(g, tau, k))
                res.check(got == bits, lambda: f"p={p}, tau={tau}: alpha type {got}")
            if g % 2 == 0:
                n_mod = dieudonne.fv_image_module(g, k)
                got = dieudonne.alpha_type_of(n_mod)
                res.check(got == tuple(2 * (i % 2) for i in range(g)), lambda: f"p={p}, g={g}: (F,V)M type {got}")
                res.check(dieudonne.compose_zero(n_mod), lambda: f"p={p}, g={g}: (F,V)M has FV != 0")


def suite_submodule_equations(config: VerifyConfig, res: SuiteResult) -> None:
    if config.engine == "batch":
        gen = _np_rng(config, "submodule_equations")
    else:
        rng = _rng(config, "submodule_equations")
    for p, m in config.fields:
        k = get_field(p, m)
        for g in range(1, min(config.max_g, 6) + 1):
            for bits in _bit_vectors(g):
                tau = [i for i, b in enumerate(bits) if b]
                mod = dieudonne.standard_module(g, tau, k)
                if config.engine == "batch":
                    S, T = dieudonne.random_point_batch(k, g, config.samples, gen)
                    a = dieudonne.submodule_check_batch(mod, S, T)
                    b = dieudonne.equations_check_batch(g, tau, S, T)
                    bad = int(np.count_nonzero(a != b))
                    res.tally(config.samples, bad, lambda: f"F_{k.q}, tau={tau}: {bad} mismatches")
                else:
                    for _ in range(config.samples):
                        pt = dieudonne.random_point_tuple(k, g, rng)
                        a = dieudonne.submodule_check(mod, pt)
                        b = dieudonne.equations_check(g, tau, pt)
                        res.check(a == b, lambda: f"F_{k.q}, tau={tau}, {pt.coords}: submodule={a}, equations={b}")


# --- arithmetic ------------------------------------------------------------


def suite_zeta_values(config: VerifyConfig, res: SuiteResult) -> None:
    for D in range(2, 300):
        if not quadratic.is_fundamental_discriminant(D):
            continue
        z = quadratic.zeta_minus_one(D)
        ref = oracles.zeta_minus_one_bernoulli(D)
        res.check(z == ref, lambda: f"D={D}: divisor sum {z}, Bernoulli {ref}")
        res.check(z > 0, lambda: f"D={D}: zeta(-1) = {z} is not positive")


def suite_splitting(config: VerifyConfig, res: SuiteResult) -> None:
    for D in range(2, 200):
        if not quadratic.is_fundamental_discriminant(D):
            continue
        for p in range(2, 100):
            if quadratic.is_prime(p):
                got, ref = quadratic.split_type(D, p), oracles.split_by_roots(D, p)
                res.check(got == ref, lambda: f"D={D}, p={p}: {got} vs {ref}")


def suite_sl2_orders(config: VerifyConfig, res: SuiteResult) -> None:
    for D in (5, 8, 12, 13, 17):
        for n in range(1, 13):
            got = quadratic.sl2_order_residue_ring(D, n)
            ref = oracles.sl2_order_bruteforce(D, n)
            res.check(got == ref, lambda: f"D={D}, n={n}: {got}, brute force {ref}")
        for n1, n2 in ((2, 3), (3, 4), (3, 5), (4, 5)):
            res.check(quadratic.sl2_order_residue_ring(D, n1 * n2)
                      == quadratic.sl2_order_residue_ring(D, n1) * quadratic.sl2_order_residue_ring(D, n2),
                      lambda: f"D={D}: not multiplicative at {n1}*{n2}")


def suite_class_factor(config: VerifyConfig, res: SuiteResult) -> None:
    for D, n, expected in ((5, 3, 6), (8, 3, 15)):
        H = quadratic.class_factor(D, n)
        res.check(H.value == expected, lambda: f"D={D}, n={n}: H={H.value}, expected {expected}")
    H = quadratic.class_factor(5, 3)
    profile = quadratic.profile_of(5, 3)
    total = counting.total_components(profile, H).value
    res.check(total == 2 ** 2 + 2 * (6 - 1), lambda: f"D=5, p=3, n=3: total {total}")


# --- counting --------------------------------------------------------------


def suite_formula_equivalence(config: VerifyConfig, res: SuiteResult) -> None:
    rng = _rng(config, "formula_equivalence")
    Hs = random_class_factors(rng, config.h_samples)
    for profile in all_profiles(min(config.max_g, 14)):
        for H in Hs:
            a = counting.count_by_generic_sum(profile, H)
            b = counting.count_by_closed_form(profile, H)
            res.check(a == b, lambda: f"{profile}, H={H}: generic sum {a}, closed form {b}")
        if profile.g <= min(config.max_g, 8):
            fast = counting._generic_summary(profile)
            walked = counting._generic_summary_enumerated(profile)
            res.check(fast == walked, lambda: f"{profile}: blockwise {fast}, enumerated {walked}")
            H = Hs[0]
            direct = sum(alpha.weight_w_prime(a, H) for a in alpha.iter_types(profile, "generic"))
            res.check(direct == counting.count_by_generic_sum(profile, H),
                      lambda: f"{profile}: direct sum of w' is {direct}")


def suite_slope_decomposition(config: VerifyConfig, res: SuiteResult) -> None:
    rng = _rng(config, "slope_decomposition")
    for profile in all_profiles(min(config.max_g, 12)):
        H = Fraction(rng.randint(1, 50))
        table = counting.slope_component_table(profile)
        ss = counting.supersingular_component_count(profile, H)
        total = counting.total_components(profile, H).value
        got = sum(row.count for row in table) + ss
        res.check(got == total, lambda: f"{profile}, H={H}: slope table sums to {got}, total {total}")
    rows = {row.j: row.count for row in counting.slope_component_table(RamificationProfile.inert(3))}
    res.check(rows == {(0,): 2, (1,): 6}, lambda: f"profile 3: slope table {rows}")


def suite_inert_specialization(config: VerifyConfig, res: SuiteResult) -> None:
    rng = _rng(config, "inert_specialization")
    for g in range(1, min(config.max_g, 16) + 1):
        for H in random_class_factors(rng, 5):
            profile = RamificationProfile.inert(g)
            values = {counting.count_by_inert_case_split(g, H), counting.count_by_inert_closed_form(g, H),
                      counting.count_by_generic_sum(profile, H), counting.count_by_closed_form(profile, H)}
            res.check(len(values) == 1, lambda: f"g={g}, H={H}: {sorted(values)}")


def suite_p_independence(config: VerifyConfig, res: SuiteResult) -> None:
    import inspect

    params = inspect.signature(counting.total_components).parameters
    res.check("p" not in params, "total_components takes a p argument")
    rng = _rng(config, "p_independence")
    for profile in all_profiles(min(config.max_g, 8)):
        H = Fraction(rng.randint(1, 30))
        totals = {counting.build_count_report(profile, quadratic.ClassFactor(H), p=p).total_components
                  for p in (2, 3, 5, 7)}
        res.check(len(totals) == 1, lambda: f"{profile}: totals {totals} depend on p")
    for f in range(2, min(config.max_g, 8) + 1, 2):
        for bits in alpha.alternating_blocks(f):
            counts = {counting.ss_stratum_component_count(AlphaType.single(bits), p, 6) for p in (2, 3, 5, 7)}
            res.check(counts == {6}, lambda: f"{bits}: stratum counts {counts}")


def suite_order_invariance(config: VerifyConfig, res: SuiteResult) -> None:
    rng = _rng(config, "order_invariance")
    seen: dict[tuple[int, ...], int] = {}
    H = Fraction(rng.randint(1, 30))
    for profile in all_profiles(min(config.max_g, 10)):
        key = tuple(sorted(profile.degrees))
        total = counting.total_components(profile, H).value
        if key in seen:
            res.check(seen[key] == total, lambda: f"{profile}: total {total}, reordering gave {seen[key]}")
        else:
            seen[key] = total
            res.check(total > 0, lambda: f"{profile}: total {total}")


def suite_superspecial_consistency(config: VerifyConfig, res: SuiteResult) -> None:
    H = 6
    for p in config.characteristics:
        points = strata.count_points_ss_locus((1, 1), p, 2)
        expected = counting.superspecial_point_count(2, p, H)
        res.check(expected == H * points, lambda: f"p={p}: {expected} != {H} * {points}")
        for g in range(1, min(config.max_g, 8) + 1):
            full = AlphaType.single((1,) * g)
            a = counting.ss_stratum_component_count(full, p, H)
            b = counting.superspecial_point_count(g, p, H)
            res.check(a == b, lambda: f"p={p}, g={g}: stratum {a}, superspecial {b}")
    for f, e1, e2, p, expected in ((2, 0, 0, 3, 1), (2, 0, 1, 3, 10), (3, 0, 1, 2, 7), (4, 1, 1, 5, 1)):
        got = counting.mass_factor_c(f, e1, e2, p)
        res.check(got == expected, lambda: f"c({f}, {e1}, {e2}, {p}) = {got}")


SUITES: dict[str, Callable[[VerifyConfig, SuiteResult], None]] = {
    "weight_total": suite_weight_total,
    "weight_by_size": suite_weight_by_size,
    "weight_positivity": suite_weight_positivity,
    "partial_order": suite_partial_order,
    "lambda": suite_lambda,
    "generic_supersingular": suite_generic_supersingular,
    "component_dimensions": suite_component_dimensions,
    "component_structure": suite_component_structure,
    "frobenius_locus": suite_frobenius_locus,
    "field_automorphism": suite_field_automorphism,
    "semilinearity": suite_semilinearity,
    "alpha_type_oracle": suite_alpha_type_oracle,
    "submodule_equations": suite_submodule_equations,
    "zeta_values": suite_zeta_values,
    "splitting": suite_splitting,
    "sl2_orders": suite_sl2_orders,
    "class_factor": suite_class_factor,
    "formula_equivalence": suite_formula_equivalence,
    "slope_decomposition": suite_slope_decomposition,
    "inert_specialization": suite_inert_specialization,
    "p_independence": suite_p_independence,
    "order_invariance": suite_order_invariance,
    "superspecial_consistency": suite_superspecial_consistency,
}


def run_suite(name: str, config: VerifyConfig) -> SuiteResult:
    res = SuiteResult(name)
    start = time.perf_counter()
    try:
        SUITES[name](config, res)
    except Exception as exc:  # a crash counts as a failure, not an abort
        res.failures += 1
        res.examples.append(f"raised {type(exc).__name__}: {exc}")
    res.seconds = time.perf_counter() - start
    return res


def run_verification(config: Optional[VerifyConfig] = None,
                     suites: Optional[list[str]] = None) -> VerifyReport:
    config = config or VerifyConfig()
    names = list(SUITES) if suites is None else suites
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise ValueError(f"unknown suites: {', '.join(unknown)}")
    return VerifyReport(config, [run_suite(name, config) for name in names])

import itertools
from math import gcd

import numpy as np
import pytest

from hbstrata import alpha, strata
from hbstrata.errors import BoundExceeded, FieldTooLarge
from hbstrata.strata import Cell, CellProduct, Equation


def P(text):
    return CellProduct.parse(text)


class TestCells:
    def test_containment(self):
        assert Cell.LINE.contains(Cell.PT10) and Cell.LINE.contains(Cell.PT01)
        assert not Cell.PT10.contains(Cell.PT01) and not Cell.PT01.contains(Cell.LINE)

    def test_product_parse_and_dimension(self):
        x = P("[1:0] x P1 x [0:1]")
        assert x.cells == (Cell.PT10, Cell.LINE, Cell.PT01)
        assert x.dimension == 1
        assert str(x) == "[1:0] x P1 x [0:1]"

    def test_product_containment(self):
        assert P("P1 x P1").contains(P("[1:0] x [0:1]"))
        assert not P("[1:0] x P1").contains(P("[0:1] x P1"))
        assert not P("P1").contains(P("P1 x P1"))


class TestEquations:
    def test_empty_support(self):
        assert strata.equations_for(2, ()).tags == (Equation.TS, Equation.TS)

    def test_five_cycle(self):
        eqs = strata.equations_for(5, (0, 2))
        assert eqs.describe() == ["t4t0", "t0s1", "t1t2", "t2s3", "t3s4"]

    def test_six_cycle(self):
        eqs = strata.equations_for(6, (0, 2, 3, 4))
        assert eqs.describe() == ["t5t0", "t0s1", "t1t2", "t2t3", "t3t4", "t4s5"]

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            strata.equations_for(3, (3,))


class TestSatisfies:
    def test_examples(self):
        eqs = strata.equations_for(5, (0, 2))
        assert strata.satisfies_identically(P(" x ".join(["[1:0]"] * 5)), eqs)
        assert strata.satisfies_identically(P("[1:0] x P1 x [1:0] x P1 x [0:1]"), eqs)
        assert not strata.satisfies_identically(P("P1 x P1"), strata.equations_for(2, ()))

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            strata.satisfies_identically(P("P1"), strata.equations_for(2, ()))

    @pytest.mark.parametrize("g", [1, 2, 3, 4])
    def test_matches_pointwise_evaluation(self, g):
        # a cell product satisfies the equations iff every point in it does; over F_2 the
        # line has the points [1:0], [0:1], [1:1], enough to detect any nonvanishing monomial
        line_points = [(1, 0), (0, 1), (1, 1)]
        cell_points = {Cell.PT10: [(1, 0)], Cell.PT01: [(0, 1)], Cell.LINE: line_points}
        for bits in itertools.product((0, 1), repeat=g):
            tau = {i for i, b in enumerate(bits) if b}
            eqs = strata.equations_for(g, tau)
            for cells in itertools.product(list(Cell), repeat=g):
                everywhere = all(
                    all((pt[i - 1][1] * (pt[i][1] if i in tau else pt[i][0])) == 0 for i in range(g))
                    for pt in itertools.product(*(cell_points[c] for c in cells)))
                assert strata.satisfies_identically(CellProduct(cells), eqs) == everywhere


class TestEnumerateComponents:
    @pytest.mark.parametrize("g", [1, 2, 3, 7])
    def test_empty_support_has_two_points(self, g):
        comps = strata.enumerate_components(g, ())
        assert [str(x) for x in comps] == [" x ".join(["[1:0]"] * g), " x ".join(["[0:1]"] * g)]

    def test_canonical_order(self):
        comps = strata.enumerate_components(6, (0, 2, 3, 4))
        codes = [tuple(int(c) for c in x.cells) for x in comps]
        assert codes == sorted(codes)

    def test_bound(self):
        with pytest.raises(BoundExceeded):
            strata.enumerate_components(13, ())
        with pytest.raises(BoundExceeded):
            strata.enumerate_components(5, (), max_g=4)

    @pytest.mark.parametrize("g", range(1, 7))
    def test_maximal_and_covering(self, g):
        for bits in itertools.product((0, 1), repeat=g):
            tau = [i for i, b in enumerate(bits) if b]
            comps = strata.enumerate_components(g, tau)
            eqs = strata.equations_for(g, tau)
            sols = [CellProduct(c) for c in itertools.product(list(Cell), repeat=g)
                    if strata.satisfies_identically(CellProduct(c), eqs)]
            maximal = [x for x in sols if not any(y != x and y.contains(x) for y in sols)]
            assert set(comps) == set(maximal)

    def test_mask_agrees_with_scalar_check(self):
        g, tau = 5, (0, 2)
        mask = strata.satisfying_mask(g, tau)
        eqs = strata.equations_for(g, tau)
        digits = strata._candidate_digits(g)
        for idx in range(3 ** g):
            x = CellProduct(tuple(Cell(int(d)) for d in digits[:, idx]))
            assert bool(mask[idx]) == strata.satisfies_identically(x, eqs)


class TestDimensions:
    def test_examples(self):
        assert strata.max_dimension(5, (0, 2)) == 2
        assert strata.max_dimension(6, (0, 2, 3, 4)) == 3
        assert strata.max_dimension(4, ()) == 0

    def test_top_dim_count(self):
        assert strata.top_dim_count(5, (0, 2)) == 2
        assert strata.top_dim_count(3, ()) == 2
        assert strata.top_dim_count(4, (0, 2)) == 1

    def test_top_dim_count_rejects_non_generic(self):
        with pytest.raises(ValueError):
            strata.top_dim_count(3, (0, 1))

    @pytest.mark.parametrize("g", range(1, 9))
    def test_lines_sit_one_per_gap(self, g):
        for bits in alpha.generic_blocks(g):
            tau = [i for i, b in enumerate(bits) if b]
            if not tau:
                continue
            for x in strata.enumerate_components(g, tau):
                if x.dimension != len(tau):
                    continue
                lines = [i for i, c in enumerate(x.cells) if c is Cell.LINE]
                assert all(bits[i] == 0 for i in lines)
                for k, start in enumerate(tau):
                    end = tau[(k + 1) % len(tau)] + (g if k + 1 == len(tau) else 0)
                    assert sum(1 for i in lines if start < i < end or start < i + g < end) == 1


class TestFrobeniusLocus:
    def test_equations(self):
        assert strata.ss_frobenius_equations((1, 0)).equations == ()
        assert strata.ss_frobenius_equations((1, 1)).equations == ((0, 0),)
        loc = strata.ss_frobenius_equations((1, 1, 1, 0))
        assert loc.equations == ((0, 2),) and loc.rotation == 0

    def test_rotation(self):
        loc = strata.ss_frobenius_equations((0, 1, 0, 1))
        assert loc.rotation == 1 and loc.bits == (1, 0, 1, 0) and loc.equations == ()
        loc = strata.ss_frobenius_equations((0, 1, 1, 1))
        assert loc.rotation == 1 and loc.bits == (1, 1, 1, 0) and loc.equations == ((0, 2),)

    def test_preconditions(self):
        with pytest.raises(ValueError):
            strata.ss_frobenius_equations((1, 1, 1))
        with pytest.raises(ValueError):
            strata.ss_frobenius_equations((1, 1, 0, 0))

    def test_point_counts(self):
        assert strata.count_points_ss_locus((1, 0), 3, 2) == 10
        assert strata.count_points_ss_locus((1, 1), 3, 2) == 10
        assert strata.count_points_ss_locus((1, 0, 1, 0), 2, 2) == 25
        assert strata.count_points_ss_locus((1, 1, 1, 0), 2, 2) == 5

    @pytest.mark.parametrize("p, m", [(2, 2), (2, 4), (3, 2), (3, 4), (5, 2), (2, 3), (3, 3)])
    def test_full_support_counts_fixed_points(self, p, m):
        for g in (2, 4):
            if (p ** m + 1) ** (g // 2) > 200_000:
                continue
            got = strata.count_points_ss_locus((1,) * g, p, m)
            assert got == p ** gcd(g, m) + 1 == strata.expected_ss_locus_count((1,) * g, p, m)

    def test_field_too_large(self):
        with pytest.raises(FieldTooLarge):
            strata.count_points_ss_locus((1, 0) * 3, 5, 4, limit=1000)

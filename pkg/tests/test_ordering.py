from fractions import Fraction

import pytest

from mbl.capacity import QuadraticValue, compare, limit_point, width
from mbl.errors import VerificationError
from mbl.markov import MarkovTriple, enumerate_triples, fibonacci, pell
from mbl.ordering import (
    ChainValues,
    IrregularityRecord,
    alternating_order,
    check_nn_inequality,
    find_irregularities,
    ordered_prefix_complete_above,
    scan_window,
    spectrum_rows,
    verify_chain_inequalities,
    verify_swap_pattern,
    _context,
)

T = MarkovTriple

ORDER5 = [
    (5, 2, 1), (13, 5, 1), (29, 5, 2), (194, 13, 5),
    (433, 29, 5), (2897, 194, 5), (6466, 433, 5),
]


def rationalized(radicand: Fraction) -> QuadraticValue:
    """2/(3 + sqrt(radicand)) in q + s*sqrt(r) form."""
    den = 9 - radicand
    return QuadraticValue(Fraction(6) / den, Fraction(-2) / den, radicand)


class TestAlternatingOrder:
    def test_order5_triples(self):
        sequence = alternating_order(T(5, 2, 1), 3)
        assert [t.as_tuple() for t, _ in sequence] == ORDER5

    def test_order5_widths(self):
        sequence = alternating_order(T(5, 2, 1), 3)
        expected = [
            Fraction(2, 5), Fraction(5, 13), Fraction(10, 29),
            Fraction(65, 194), Fraction(145, 433),
            Fraction(970, 2897), Fraction(2165, 6466),
        ]
        assert [w for _, w in sequence] == expected
        # the tight step near the end, as a bare cross-multiplication
        assert 970 * 6466 > 2165 * 2897

    def test_fibonacci_chain_closed_form(self):
        # w((F_{2n+1}, F_{2n-1}, 1)) = 2/(3 + sqrt(5 - 4/F_{2n-1}^2))
        for t, w in alternating_order(T(1, 1, 1), 6)[1:]:
            f = t.b
            assert compare(w, rationalized(Fraction(5) - Fraction(4, f * f))) == 0

    def test_no_descent_violation_below_ten_thousand(self):
        for node in enumerate_triples(10 ** 4):
            alternating_order(node.triple, 8)


class TestChains:
    def test_chain_values(self):
        cv = ChainValues.build(T(5, 2, 1), 3)
        assert cv.g == (13, 194, 2897)
        assert cv.f == (29, 433, 6466)

    def test_chain_triples_are_solutions(self):
        for t in ChainValues.build(T(13, 5, 1), 6).triples():
            assert t.a > 13

    def test_interleaving(self):
        for node in enumerate_triples(10 ** 4):
            if node.triple.a < 5:
                continue
            cv = ChainValues.build(node.triple, 10)
            merged = [x for pair in zip(cv.g, cv.f) for x in pair]
            assert all(x < y for x, y in zip(merged, merged[1:]))

    def test_five_term_chain(self):
        assert verify_chain_inequalities(5, 2, 1, 2)
        assert verify_chain_inequalities(13, 5, 1, 2)

    def test_all_apexes_to_ten_thousand(self):
        for node in enumerate_triples(10 ** 4):
            if node.triple.a >= 5:
                t = node.triple
                assert verify_chain_inequalities(t.a, t.b, t.c, 8)

    def test_small_apex_rejected(self):
        with pytest.raises(ValueError):
            verify_chain_inequalities(2, 1, 1, 2)


class TestSpectrumRows:
    def test_row_anchors(self):
        rows = spectrum_rows(4)
        assert (rows[2].m, rows[2].b) == (5, 13)
        assert (rows[3].m, rows[3].b) == (13, 34)

    def test_rows_33_34(self):
        rows = spectrum_rows(34)
        assert rows[32].m == 195025 and rows[32].b == 1136689
        assert rows[33].m == 196418 and rows[33].b == 514229

    def test_right_number_identities(self):
        rows = spectrum_rows(34)
        assert rows[32].m == pell(15) and rows[32].b == pell(17)
        assert rows[33].m == fibonacci(27) and rows[33].b == fibonacci(29)

    def test_degenerate_convention(self):
        rows = spectrum_rows(2)
        assert rows[0].b == 2 and rows[0].degenerate
        assert rows[1].b == 5 and rows[1].degenerate

    def test_b_is_second_smallest_member(self):
        # 3ac - b coincides with the second-smallest Markov number appearing
        # in the essential subtree, including the degenerate rows
        from mbl.markov import essential_subtree

        for row in spectrum_rows(10):
            members = set()
            for t in essential_subtree(row.m, 4):
                members.update(t)
            assert sorted(members)[1] == row.b

    def test_capacities_above_limit_and_decreasing(self):
        for row in spectrum_rows(12, k=6):
            caps = row.first_capacities
            assert len(caps) == 6
            assert all(x > y for x, y in zip(caps, caps[1:]))
            assert all(compare(w, row.limit) > 0 for w in caps)
            assert compare(row.limit, Fraction(1, 3)) > 0

    def test_first_capacity_formula(self):
        # w_1(n) = 2/(3 + sqrt(9 - 4/m^2 - 4/b^2))
        for row in spectrum_rows(10)[2:]:
            rad = Fraction(9) - Fraction(4, row.m ** 2) - Fraction(4, row.b ** 2)
            assert compare(row.first_capacities[0], rationalized(rad)) == 0

    def test_essential_capacities_of_row_three(self):
        row = spectrum_rows(3, k=4)[2]
        assert row.first_capacities == (
            Fraction(65, 194), Fraction(145, 433),
            Fraction(970, 2897), Fraction(2165, 6466),
        )


class TestNNInequality:
    def test_three_four_exact(self):
        assert Fraction(1, 25) >= Fraction(1, 169) + Fraction(1, 1156)
        assert check_nn_inequality(3, 4)

    def test_first_violation(self):
        assert not check_nn_inequality(33, 34)

    def test_prefix_regular_through_32(self):
        numbers, _ = _context(48)
        for n in range(1, 33):
            for n_prime in scan_window(n, numbers):
                assert check_nn_inequality(n, n_prime)

    def test_argument_validation(self):
        with pytest.raises(ValueError):
            check_nn_inequality(4, 4)


class TestIrregularities:
    def test_empty_through_32(self):
        assert find_irregularities(32) == []

    def test_first_two_records(self):
        records = find_irregularities(40)
        assert [(rec.n, rec.span) for rec in records] == [(33, 1), (37, 1)]

    def test_record_33_swaps(self):
        rec = find_irregularities(33)[0]
        assert rec.n == 33 and rec.span == 1 and rec.n_prime == 34
        assert verify_swap_pattern(rec)

    def test_regular_pair_vacuous(self):
        rec = IrregularityRecord(3, 1, "manufactured for a regular pair")
        assert verify_swap_pattern(rec)

    def test_span_validation(self):
        with pytest.raises(ValueError):
            IrregularityRecord(10, 3, "impossible")


class TestCompleteness:
    def test_small_threshold_certifies_fast(self):
        report = ordered_prefix_complete_above(
            Fraction(1, 3) + Fraction(1, 100), 40
        )
        assert report.certified
        assert report.tail_exact == ()
        # only the Fibonacci sequence has its limit above 1/3 + 1/100
        assert report.active_sequences == 1

    def test_report_serializes(self):
        report = ordered_prefix_complete_above(Fraction(7, 20), 10)
        data = report.to_json()
        assert data["certified"] is True
        assert data["threshold"] == {"num": "7", "den": "20"}

    def test_threshold_at_one_third_rejected(self):
        with pytest.raises(ValueError):
            ordered_prefix_complete_above(Fraction(1, 3), 10)

    def test_threshold_below_one_third_rejected(self):
        with pytest.raises(ValueError):
            ordered_prefix_complete_above(Fraction(1, 4), 10)

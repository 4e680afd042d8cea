import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mbl.capacity import (
    QuadraticValue,
    capacity_from_json,
    capacity_to_json,
    compare,
    convergence_trace,
    lagrange_number,
    limit_point,
    surd_identity_check,
    width,
    width_as_surd,
)
from mbl.errors import VerificationError
from mbl.markov import MarkovTriple, SubtreeSpec, enumerate_triples, markov_numbers

from support import interval_compare, random_quadratic

T = MarkovTriple
QV = QuadraticValue


class TestWidth:
    @pytest.mark.parametrize(
        "triple,expected",
        [
            ((1, 1, 1), Fraction(1)),
            ((2, 1, 1), Fraction(1, 2)),
            ((5, 2, 1), Fraction(2, 5)),
            ((13, 5, 1), Fraction(5, 13)),
            ((29, 5, 2), Fraction(10, 29)),
            ((433, 29, 5), Fraction(145, 433)),
            ((194, 13, 5), Fraction(65, 194)),
        ],
    )
    def test_table(self, triple, expected):
        assert width(T(*triple)) == expected

    def test_bounds_below_one_million(self):
        # strictly between 1/3 and 1/2 except at the root
        for node in enumerate_triples(10 ** 6):
            w = width(node.triple)
            if node.triple == T(1, 1, 1):
                assert w == 1
            else:
                assert Fraction(1, 3) < w <= Fraction(1, 2)

    def test_json_roundtrip(self):
        w = width(T(433, 29, 5))
        assert capacity_from_json(capacity_to_json(w)) == w


class TestSurdIdentity:
    def test_two_one_one_integers(self):
        # (2a-3bc)^2 = 1 and 9-4-4 = 1
        assert surd_identity_check(T(2, 1, 1))

    def test_root_fails_sign_condition(self):
        assert not surd_identity_check(T(1, 1, 1))

    def test_exhaustive_to_ten_thousand(self):
        for node in enumerate_triples(10 ** 4):
            expected = node.triple != T(1, 1, 1)
            assert surd_identity_check(node.triple) == expected

    def test_width_as_surd_folds(self):
        assert width_as_surd(T(5, 2, 1)) == Fraction(2, 5)
        assert width_as_surd(T(29, 5, 2)) == Fraction(10, 29)

    def test_width_as_surd_rejects_root(self):
        with pytest.raises(ValueError):
            width_as_surd(T(1, 1, 1))


class TestSpectrumValues:
    def test_lagrange_one_is_sqrt5(self):
        assert compare(lagrange_number(1), QV.sqrt(5)) == 0

    def test_lagrange_two_is_sqrt8(self):
        assert compare(lagrange_number(2), QV.sqrt(8)) == 0

    def test_lagrange_five_fields(self):
        lam = lagrange_number(5)
        assert (lam.q, lam.s, lam.r) == (0, Fraction(1, 5), 221)

    def test_lagrange_rejects_non_markov(self):
        with pytest.raises(ValueError):
            lagrange_number(3)

    def test_limit_point_one(self):
        lp = limit_point(1)
        assert (lp.q, lp.s, lp.r) == (Fraction(3, 2), Fraction(-1, 2), 5)
        assert lp.decimal().startswith("0.38196601125")

    def test_limit_point_two(self):
        # 2/(3 + sqrt(8)) rationalizes to 6 - 4*sqrt(2)
        assert compare(limit_point(2), QV(6, -4, 2)) == 0

    def test_limits_decrease_to_one_third(self):
        previous = None
        for m in markov_numbers(20):
            lp = limit_point(m)
            assert compare(lp, Fraction(1, 3)) > 0
            assert compare(lp, Fraction(1, 2)) <= 0
            if previous is not None:
                assert compare(lp, previous) < 0
            previous = lp


class TestCompare:
    def test_limit_above_one_third(self):
        assert compare(limit_point(1), Fraction(1, 3)) == 1

    def test_width_above_limit(self):
        assert compare(width(T(194, 13, 5)), limit_point(5)) == 1

    def test_reflexive(self):
        x = limit_point(5)
        assert compare(x, x) == 0

    def test_scaled_radicands_equal(self):
        assert compare(QV(0, Fraction(1, 2), 32), QV(0, 1, 8)) == 0

    def test_mixed_rational(self):
        assert compare(Fraction(2, 5), QV.sqrt(2) - 1) < 0

    def test_against_interval_oracle(self):
        rng = random.Random(4099)
        for _ in range(200):
            x, y = random_quadratic(rng), random_quadratic(rng)
            expected = interval_compare(x, y)
            if expected is None:
                assert compare(x, y) == 0
            else:
                assert compare(x, y) == expected

    def test_total_order_on_samples(self):
        rng = random.Random(20991)
        values = [random_quadratic(rng) for _ in range(40)]
        for x in values:
            for y in values:
                assert compare(x, y) == -compare(y, x)
        ordered = sorted(values, key=_SortKey)
        for x, y, z in zip(ordered, ordered[1:], ordered[2:]):
            assert compare(x, y) <= 0 and compare(y, z) <= 0
            assert compare(x, z) <= 0


class _SortKey:
    def __init__(self, value):
        self.value = value

    def __lt__(self, other):
        return compare(self.value, other.value) < 0


class TestQuadraticValue:
    def test_perfect_square_folds(self):
        assert QV(0, 1, 9).is_rational
        assert QV(0, 1, 9).as_fraction() == 3
        assert QV(1, 2, Fraction(9, 4)).as_fraction() == 4

    def test_negative_radicand_rejected(self):
        with pytest.raises(ValueError):
            QV(0, 1, -5)

    def test_same_family_arithmetic(self):
        x = QV(1, 1, 8) + QV(0, Fraction(1, 2), 32)
        assert compare(x, QV(1, 2, 8)) == 0
        assert compare(QV(1, 2, 8) - QV(1, 1, 8), QV.sqrt(8)) == 0

    def test_incompatible_radicands(self):
        with pytest.raises(ValueError):
            QV.sqrt(2) + QV.sqrt(3)

    def test_scalar_operations(self):
        x = (QV.sqrt(5) * 2) / 4
        assert compare(x, QV(0, Fraction(1, 2), 5)) == 0
        assert compare(-x, QV(0, Fraction(-1, 2), 5)) == 0
        assert compare(3 - QV.sqrt(5), QV(3, -1, 5)) == 0

    def test_rich_comparisons(self):
        assert QV.sqrt(2) < QV.sqrt(3)
        assert QV.sqrt(8) == QV(0, 2, 2)
        assert QV.sqrt(5) > 2
        assert QV.sqrt(5) <= Fraction(9, 4)

    def test_decimal_of_rational(self):
        assert QV.from_rational(Fraction(1, 2)).decimal() == "0.5"

    def test_json_roundtrip(self):
        x = limit_point(5)
        assert compare(QV.from_json(x.to_json()), x) == 0

    def test_str_forms(self):
        assert str(QV.from_rational(Fraction(2, 5))) == "2/5"
        assert str(QV.sqrt(5)) == "sqrt(5)"
        assert str(limit_point(1)) == "3/2 - 1/2*sqrt(5)"

    @given(
        st.fractions(min_value=-20, max_value=20, max_denominator=12),
        st.fractions(min_value=-20, max_value=20, max_denominator=12),
        st.fractions(min_value=0, max_value=30, max_denominator=12),
    )
    def test_add_then_subtract_rational_is_identity(self, q, s, r):
        x = QV(q, s, r)
        d = Fraction(7, 3)
        assert compare((x + d) - d, x) == 0

    @settings(deadline=None)
    @given(
        st.fractions(min_value=-20, max_value=20, max_denominator=12),
        st.fractions(min_value=-20, max_value=20, max_denominator=12),
        st.fractions(min_value=0, max_value=30, max_denominator=12),
    )
    def test_sign_matches_interval(self, q, s, r):
        x = QV(q, s, r)
        oracle = interval_compare(x, QV.from_rational(0))
        if oracle is None:
            assert x.sign() == 0
        else:
            assert x.sign() == oracle


class TestConvergenceTrace:
    def test_fibonacci_gaps_decrease(self):
        spec = SubtreeSpec.rooted(1, T(2, 1, 1))
        trace = convergence_trace(spec, 3)
        assert len(trace) == 3
        gaps = [gap for _, _, gap in trace]
        assert all(gap.sign() > 0 for gap in gaps)
        assert compare(gaps[0], gaps[1]) > 0 and compare(gaps[1], gaps[2]) > 0

    def test_left_and_right_of_five(self):
        spec = SubtreeSpec.rooted(5, T(13, 5, 1))
        lp = limit_point(5)
        for side in ("left", "right"):
            for triple, w, _ in convergence_trace(spec, 5, side):
                assert compare(w, lp) > 0
        left = [t for t, _, _ in convergence_trace(spec, 2, "left")]
        assert [t.as_tuple() for t in left] == [(13, 5, 1), (194, 13, 5)]

    def test_single_entry(self):
        spec = SubtreeSpec.rooted(2, T(5, 2, 1))
        assert len(convergence_trace(spec, 1)) == 1

    def test_count_validation(self):
        spec = SubtreeSpec.rooted(1, T(1, 1, 1))
        with pytest.raises(ValueError):
            convergence_trace(spec, 0)
        with pytest.raises(ValueError):
            convergence_trace(spec, 2, side="down")

"""
Unit tests for khovanov module.
"""

import os
import random
import shutil
import tempfile
import unittest
from pathlib import Path

import sympy

from src.khovanov import (A, T, HomologyState, LaurentPoly2, RankTable,
                          RankTableError, apply_U, bar_natan_table,
                          expectation_sum, khovanov_table, load_table,
                          tangle_polynomial)

TABLES_DIR = Path(__file__).parent.parent / 'config' / 'tables'

BAR_NATAN = 'A^2 + A^4 + t^2*A^8 + t^2*A^12'
KHOVANOV = 'A^2 + A^4 + t*A^6 + t*A^8 + t^2*A^8 + 2*t^2*A^10 + t^2*A^12'


def _random_poly(rng: random.Random) -> LaurentPoly2:
    return LaurentPoly2({(rng.randint(-4, 4), rng.randint(-6, 6)): rng.randint(-3, 3)
                         for _ in range(rng.randint(0, 5))})


class TestLaurentPoly2(unittest.TestCase):
    """Test cases for LaurentPoly2."""

    def test_zero_terms_dropped(self):
        """Test that zero coefficients are not stored."""
        poly = LaurentPoly2({(0, 1): 0, (1, 1): 3})
        self.assertEqual(poly.terms, {(1, 1): 3})
        self.assertTrue(LaurentPoly2.zero().is_zero())

    def test_arithmetic(self):
        """Test addition, subtraction and multiplication."""
        p = LaurentPoly2.monomial(2, 1, -1)
        q = LaurentPoly2.monomial(1, 0, 3)
        self.assertEqual((p + q) - q, p)
        self.assertEqual(p * q, LaurentPoly2.monomial(2, 1, 2))
        self.assertTrue((p - p).is_zero())
        self.assertEqual(p * LaurentPoly2.one(), p)

    def test_negative_exponents(self):
        """Test printing negative exponents and coefficients."""
        poly = LaurentPoly2({(0, -2): -1, (1, 0): 3})
        self.assertEqual(str(poly), '-A^-2 + 3*t')
        self.assertEqual(str(LaurentPoly2.zero()), '0')
        self.assertEqual(str(LaurentPoly2.one()), '1')

    def test_non_integer_coefficient(self):
        """Test that fractional coefficients are rejected."""
        with self.assertRaises(ValueError):
            LaurentPoly2({(0, 0): 0.5})

    def test_sympy_round_trip(self):
        """Test conversion to and from sympy expressions."""
        poly = tangle_polynomial(khovanov_table())
        self.assertEqual(LaurentPoly2.from_sympy(poly.to_sympy()), poly)
        expr = sympy.expand((1 + T * A**2) ** 2)
        self.assertEqual(LaurentPoly2.from_sympy(expr).triples(),
                         [(0, 0, 1), (1, 2, 2), (2, 4, 1)])

    def test_from_sympy_rejects_other_symbols(self):
        """Test that unknown symbols are rejected."""
        with self.assertRaises(ValueError):
            LaurentPoly2.from_sympy(sympy.Symbol('q') * A)

    def test_from_sympy_rejects_fractional_exponent(self):
        """Test that a square root of t is not truncated to t^0."""
        with self.assertRaises(ValueError):
            LaurentPoly2.from_sympy(sympy.sqrt(T) * A)
        with self.assertRaises(ValueError):
            LaurentPoly2.from_sympy(A ** sympy.Rational(3, 2))

    def test_ring_laws(self):
        """Test commutativity, associativity, identities and distributivity on random polynomials."""
        rng = random.Random(5)
        zero, one = LaurentPoly2.zero(), LaurentPoly2.one()
        for _ in range(200):
            p, q, r = (_random_poly(rng) for _ in range(3))
            self.assertEqual(p + q, q + p)
            self.assertEqual(p * q, q * p)
            self.assertEqual((p + q) + r, p + (q + r))
            self.assertEqual((p * q) * r, p * (q * r))
            self.assertEqual(p + zero, p)
            self.assertEqual(p * one, p)
            self.assertTrue((p * zero).is_zero())
            self.assertEqual(p * (q + r), p * q + p * r)


class TestRankTable(unittest.TestCase):
    """Test cases for RankTable."""

    def setUp(self):
        """Set up test fixtures."""
        self.temp_dir = tempfile.mkdtemp()

    def tearDown(self):
        """Clean up test files."""
        shutil.rmtree(self.temp_dir)

    def test_duplicate_state(self):
        """Test that two states at the same (r, k) are rejected."""
        with self.assertRaises(RankTableError):
            RankTable('dup', [HomologyState(0, 2, 1), HomologyState(0, 2, 3)])

    def test_negative_rank(self):
        """Test that ranks are non-negative."""
        with self.assertRaises(RankTableError):
            HomologyState(0, 0, -1)

    def test_text_round_trip(self):
        """Test that to_text parses back to the same states."""
        table = khovanov_table()
        parsed = RankTable.from_text(table.to_text(), table.name)
        self.assertEqual(parsed.states, table.states)

    def test_bad_line(self):
        """Test that errors name the offending line."""
        with self.assertRaises(RankTableError) as ctx:
            RankTable.from_text("0 2 1\n0 x 1\n")
        self.assertIn('line 2', str(ctx.exception))
        with self.assertRaises(RankTableError):
            RankTable.from_text("0 2\n")

    def test_comments_and_blank_lines(self):
        """Test that comments and blank lines are skipped."""
        table = RankTable.from_text("# header\n\n0 2 1  # trailing\n")
        self.assertEqual(table.states, [HomologyState(0, 2, 1)])

    def test_load_table(self):
        """Test loading by name and by file."""
        self.assertEqual(load_table('bar-natan').states, bar_natan_table().states)
        filepath = os.path.join(self.temp_dir, 'small.txt')
        with open(filepath, 'w', encoding='utf-8') as f:
            f.write("1 3 2 gen\n")
        table = load_table(filepath)
        self.assertEqual(table.name, 'small')
        self.assertEqual(str(tangle_polynomial(table)), '2*t*A^3')
        with self.assertRaises(RankTableError):
            load_table('no-such-table')

    def test_config_tables_match_builtins(self):
        """Test that the shipped table files give the built-in polynomials."""
        for name, expected in (('bar-natan', BAR_NATAN), ('khovanov', KHOVANOV)):
            table = load_table(str(TABLES_DIR / f'{name}.txt'))
            self.assertEqual(str(tangle_polynomial(table)), expected)


class TestTanglePolynomial(unittest.TestCase):
    """Test cases for the diagonal actions and the polynomial."""

    def test_bar_natan(self):
        """Test the Bar-Natan polynomial."""
        self.assertEqual(str(tangle_polynomial(bar_natan_table())), BAR_NATAN)

    def test_khovanov(self):
        """Test the Khovanov polynomial."""
        poly = tangle_polynomial(khovanov_table())
        self.assertEqual(str(poly), KHOVANOV)
        self.assertIn((2, 10, 2), poly.triples())

    def test_apply_u_is_diagonal(self):
        """Test that U leaves the state unchanged."""
        state = HomologyState(2, 10, 2, 'label')
        poly, after = apply_U(state)
        self.assertEqual(after, state)
        self.assertEqual(poly, LaurentPoly2.monomial(2, 2, 10))

    def test_expectation_sum_matches(self):
        """Test that summing expectations gives the same polynomial."""
        for table in (bar_natan_table(), khovanov_table()):
            self.assertEqual(expectation_sum(table), tangle_polynomial(table))

    def test_expectation_sum_random_tables(self):
        """Test that both polynomial routes agree on random tables."""
        rng = random.Random(17)
        for _ in range(200):
            cells = set()
            states = []
            for _ in range(rng.randint(0, 20)):
                r, k = rng.randint(-50, 50), rng.randint(-50, 50)
                if (r, k) in cells:
                    continue
                cells.add((r, k))
                states.append(HomologyState(r, k, rng.randint(0, 5)))
            table = RankTable('random', states)
            poly = tangle_polynomial(table)
            self.assertEqual(expectation_sum(table), poly)
            expected = {(s.r, s.k): s.rank for s in states if s.rank}
            self.assertEqual(poly.terms, expected)

    def test_empty_table(self):
        """Test that an empty table gives zero."""
        self.assertTrue(tangle_polynomial(RankTable('empty')).is_zero())

    def test_zero_rank(self):
        """Test that rank-zero states contribute nothing."""
        table = RankTable('z', [HomologyState(0, 2, 0), HomologyState(1, 4, 1)])
        self.assertEqual(str(tangle_polynomial(table)), 't*A^4')


if __name__ == '__main__':
    unittest.main()

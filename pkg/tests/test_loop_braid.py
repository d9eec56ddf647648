"""
Unit tests for loop_braid module.
"""

import random
import unittest

from sympy.combinatorics import Permutation

from src.loop_braid import (GeneratorType, Letter, LoopBraidWord,
                            PermutationRep, StrandMismatch, WordSyntaxError,
                            check_relations, concat_reduce, cycle_notation,
                            format_word, free_reduce, parse_word, rho, sigma,
                            to_permutations)


def _random_word(rng: random.Random, n: int, max_length: int = 12) -> LoopBraidWord:
    letters = []
    for _ in range(rng.randint(0, max_length)):
        index = rng.randint(1, n - 1)
        if rng.random() < 0.5:
            letters.append(sigma(index, rng.choice((1, -1))))
        else:
            letters.append(rho(index))
    return LoopBraidWord(n, tuple(letters))


class TestLetter(unittest.TestCase):
    """Test cases for Letter."""

    def test_rho_is_involution(self):
        """Test that a rho inverse is stored as rho."""
        self.assertEqual(Letter(GeneratorType.RHO, 1, -1), rho(1))
        self.assertEqual(rho(2).inverse(), rho(2))

    def test_sigma_inverse(self):
        """Test sigma inverses and cancellation."""
        self.assertEqual(sigma(1).inverse(), sigma(1, -1))
        self.assertTrue(sigma(1).cancels(sigma(1, -1)))
        self.assertFalse(sigma(1).cancels(sigma(1)))

    def test_invalid_power(self):
        """Test that only powers 1 and -1 are allowed."""
        with self.assertRaises(ValueError):
            Letter(GeneratorType.SIGMA, 1, 2)

    def test_str(self):
        """Test letter text."""
        self.assertEqual(str(sigma(2, -1)), 's2^-1')
        self.assertEqual(str(rho(1)), 'r1')


class TestWords(unittest.TestCase):
    """Test cases for LoopBraidWord and reduction."""

    def test_parse_and_format(self):
        """Test parsing a word and printing it back."""
        word = parse_word('s1 s2^-1 r1')
        self.assertEqual(word.n, 3)
        self.assertEqual(word.letters, (sigma(1), sigma(2, -1), rho(1)))
        self.assertEqual(format_word(word), 's1 s2^-1 r1')

    def test_empty_word(self):
        """Test that empty text and `1` give the empty word."""
        for text in ('', '1', '   '):
            word = parse_word(text)
            self.assertEqual(len(word), 0)
            self.assertEqual(word.n, 1)
        self.assertEqual(format_word(LoopBraidWord(4)), '1')

    def test_explicit_strands(self):
        """Test that an explicit strand count is used and checked."""
        self.assertEqual(parse_word('s1', n=5).n, 5)
        with self.assertRaises(WordSyntaxError):
            parse_word('s3', n=3)

    def test_bad_tokens(self):
        """Test that malformed tokens are rejected."""
        for text in ('x1', 's', 's0', 's1^2', 's1 ^-1'):
            with self.assertRaises(WordSyntaxError, msg=text):
                parse_word(text)

    def test_reduce(self):
        """Test free reduction of inverse pairs."""
        word = parse_word('s1 s2 s2^-1 s1^-1 r1', n=3)
        self.assertEqual(format_word(word.reduced()), 'r1')
        self.assertEqual(len(parse_word('r1 r1^-1').reduced()), 0)

    def test_reduce_from_right(self):
        """Test that scanning direction gives the same free reduction."""
        letters = list(parse_word('s1 s1 s1^-1 s2', n=3).letters)
        self.assertEqual(free_reduce(letters), free_reduce(letters, from_right=True))

    def test_concat_reduce(self):
        """Test concatenation with cancellation at the seam."""
        w1, w2 = parse_word('s1 s2', n=3), parse_word('s2^-1 r2', n=3)
        self.assertEqual(format_word(concat_reduce(w1, w2)), 's1 r2')

    def test_strand_mismatch(self):
        """Test that words on different strand counts cannot combine."""
        with self.assertRaises(StrandMismatch):
            concat_reduce(parse_word('s1', n=2), parse_word('s1', n=3))

    def test_word_times_inverse_is_empty(self):
        """Test that w · w⁻¹ reduces to the empty word."""
        rng = random.Random(11)
        for _ in range(100):
            word = _random_word(rng, rng.randint(2, 6))
            self.assertEqual(len(concat_reduce(word, word.inverse())), 0, str(word))

    def test_concat_reduce_homomorphism(self):
        """Test that reduced concatenation respects reduction and the permutation image."""
        rng = random.Random(23)
        for _ in range(1000):
            n = rng.randint(2, 6)
            w1, w2 = _random_word(rng, n), _random_word(rng, n)
            combined = concat_reduce(w1, w2)
            self.assertEqual(combined, concat_reduce(w1.reduced(), w2.reduced()))
            self.assertEqual(combined, LoopBraidWord(n, w1.letters + w2.letters).reduced())
            self.assertEqual(to_permutations(combined),
                             to_permutations(w1) * to_permutations(w2))


class TestPermutations(unittest.TestCase):
    """Test cases for the permutation image."""

    def test_single_generator(self):
        """Test that s1 swaps the first two strands."""
        self.assertEqual(cycle_notation(to_permutations(parse_word('s1', n=3))), '(1 2)')

    def test_left_to_right(self):
        """Test that letters apply left to right."""
        self.assertEqual(cycle_notation(to_permutations(parse_word('s1 s2'))), '(1 3 2)')

    def test_identity(self):
        """Test the image of the empty word."""
        self.assertEqual(cycle_notation(to_permutations(LoopBraidWord(3))), '()')

    def test_inverse_maps_to_inverse(self):
        """Test that a word and its inverse have inverse images."""
        word = parse_word('s1 r2 s3^-1 s1')
        perm = to_permutations(word)
        self.assertEqual(perm * to_permutations(word.inverse()), Permutation(word.n - 1))

    def test_custom_images(self):
        """Test a representation with trivial rho images."""
        rep = PermutationRep(3)
        rep.images[(GeneratorType.RHO, 1)] = Permutation(2)
        self.assertEqual(cycle_notation(to_permutations(parse_word('r1 s2'), rep)), '(2 3)')


class TestCheckRelations(unittest.TestCase):
    """Test cases for check_relations."""

    def test_three_strands(self):
        """Test that every relation holds on three strands."""
        results = check_relations(3)
        self.assertTrue(all(check.holds for check in results))
        names = [check.name for check in results]
        self.assertIn('braid s1 s2', names)
        self.assertIn('mixed r1 r2 s1', names)

    def test_four_strands_commutation(self):
        """Test that far-apart generators commute."""
        names = {check.name for check in check_relations(4)}
        self.assertIn('commute s1 r3', names)

    def test_two_strands_skip(self):
        """Test that three-index relations are skipped on two strands."""
        results = check_relations(2)
        skipped = [check for check in results if check.holds is None]
        self.assertEqual(len(skipped), 1)
        self.assertIn('skipped', skipped[0].note)
        self.assertTrue(all(check.holds for check in results if check.holds is not None))

    def test_relator(self):
        """Test that a relator maps to the identity."""
        for check in check_relations(3):
            self.assertEqual(cycle_notation(to_permutations(check.relator)), '()')

    def test_invalid_strands(self):
        """Test that zero strands are rejected."""
        with self.assertRaises(ValueError):
            check_relations(0)


if __name__ == '__main__':
    unittest.main()

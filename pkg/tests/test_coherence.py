"""
Unit tests for coherence module.
"""

import unittest

from src.coherence import normalize_coherence, seq_factors
from src.presets import preset_equation
from src.syntax import parse_term
from src.terms import (CLOSED, OPEN, GeneratorKind, Id, Par, Seq, Tensor, gen,
                       then, typecheck)

A, C = OPEN, CLOSED
MU, DELTA = gen(GeneratorKind.MU, A), gen(GeneratorKind.DELTA, A)


class TestNormalizeCoherence(unittest.TestCase):
    """Test cases for normalize_coherence."""

    def test_structural_map_is_identity(self):
        """Test that an associator normalizes to a strict identity."""
        alpha = gen(GeneratorKind.ALPHA, A, A, A)
        self.assertEqual(normalize_coherence(alpha), Id(Tensor(A, Tensor(A, A))))

    def test_unitors_vanish(self):
        """Test that unitors around a box are dropped."""
        term = parse_term('rho~[A] ; id[A] * eta[A] ; mu[A]')
        expected = Seq(MU, Par(Id(A), gen(GeneratorKind.ETA, A)))
        self.assertEqual(normalize_coherence(term), expected)

    def test_layers_are_bottom_aligned(self):
        """Test that the shorter side of a tensor idles on its codomain."""
        term = Par(then(DELTA, MU), Id(A))
        self.assertEqual(normalize_coherence(term),
                         Seq(Par(MU, Id(A)), Par(DELTA, Id(A))))

    def test_coherence_laws_share_normal_form(self):
        """Test that pentagon and triangle sides normalize alike."""
        for name, args in (('pentagon', ['C', 'C', 'C', 'C']), ('triangle', ['A', 'C'])):
            eq = preset_equation(name, args)
            self.assertEqual(normalize_coherence(eq.lhs), normalize_coherence(eq.rhs), name)

    def test_associativity_sides_differ(self):
        """Test that the two sides of associativity stay distinct."""
        eq = preset_equation('assoc', ['A'])
        self.assertEqual(normalize_coherence(eq.lhs), Seq(MU, Par(MU, Id(A))))
        self.assertEqual(normalize_coherence(eq.rhs), Seq(MU, Par(Id(A), MU)))

    def test_idempotent(self):
        """Test that normalizing twice changes nothing."""
        for text in ('mu[A] * id[A] ; mu[A]',
                     'id[A] * delta[A] ; alpha~[A,A,A] ; mu[A] * id[A]',
                     'sigma[C,C] ; delta[C] * id[C]',
                     'alpha[A,A,A]'):
            once = normalize_coherence(parse_term(text))
            self.assertEqual(normalize_coherence(once), once, text)

    def test_strictly_typed(self):
        """Test that the normal form keeps the strict boundaries."""
        term = parse_term('alpha[A,A,A] ; id[A] * mu[A] ; mu[A]')
        self.assertEqual(typecheck(normalize_coherence(term), strict=True),
                         typecheck(term, strict=True))

    def test_braiding_is_kept(self):
        """Test that the braiding is a box, not a coherence map."""
        sigma = gen(GeneratorKind.SIGMA, C, C)
        self.assertEqual(normalize_coherence(sigma), sigma)


class TestSeqFactors(unittest.TestCase):
    """Test cases for seq_factors."""

    def test_sequence(self):
        """Test that factors come first-applied first."""
        self.assertEqual(seq_factors(then(DELTA, MU)), [DELTA, MU])

    def test_structural_factors_kept(self):
        """Test that associators stay as factors."""
        alpha = gen(GeneratorKind.ALPHA, A, A, A)
        factors = seq_factors(then(alpha, Par(Id(A), MU), MU))
        self.assertEqual(factors, [alpha, Par(Id(A), MU), MU])

    def test_tensor_interchange(self):
        """Test that a tensor of composites is split layer by layer."""
        factors = seq_factors(Par(then(DELTA, MU), Id(A)))
        self.assertEqual(factors, [Par(DELTA, Id(A)), Par(MU, Id(A))])


if __name__ == '__main__':
    unittest.main()

"""
Unit tests for semantics module.
"""

import json
import os
import random
import shutil
import tempfile
import unittest
from pathlib import Path

from sympy import Matrix, Rational

from src.presets import corpus, preset_equation
from src.semantics import (MODEL_REGISTRY, EvaluationError, FrobeniusAlgebra,
                           FrobeniusModel, InvalidModel, closed_surface_term,
                           closed_surface_value, evaluate, handle_operator,
                           khovanov_model, kron, lee_model, load_model, swap_matrix,
                           validate_model)
from src.syntax import parse_term
from src.terms import CLOSED, OPEN, MorphVar, Par, Seq, TypeMismatch, tensor_of
from tests.random_terms import random_atoms, random_term

MODELS_DIR = Path(__file__).parent.parent / 'config' / 'models'


class TestFrobeniusAlgebra(unittest.TestCase):
    """Test cases for FrobeniusAlgebra."""

    def setUp(self):
        """Set up test fixtures."""
        self.algebra = khovanov_model().algebra(OPEN)

    def test_matrices(self):
        """Test the shapes of the structure maps."""
        self.assertEqual(self.algebra.mult_matrix().shape, (2, 4))
        self.assertEqual(self.algebra.unit_matrix().shape, (2, 1))
        self.assertEqual(self.algebra.counit_matrix().shape, (1, 2))
        self.assertEqual(self.algebra.comult_matrix().shape, (4, 2))

    def test_comultiplication_of_unit(self):
        """Test that Δ(1) = 1⊗x + x⊗1."""
        self.assertEqual(self.algebra.comult_matrix()[:, 0], Matrix([0, 1, 1, 0]))

    def test_comultiplication_of_x(self):
        """Test that Δ(x) = x⊗x."""
        self.assertEqual(self.algebra.comult_matrix()[:, 1], Matrix([0, 0, 0, 1]))

    def test_pairing(self):
        """Test the pairing and its invertibility."""
        self.assertEqual(self.algebra.pairing_matrix(), Matrix([[0, 1], [1, 0]]))
        self.assertTrue(self.algebra.pairing_invertible())

    def test_fractions_from_json(self):
        """Test that string fractions are read exactly."""
        algebra = FrobeniusAlgebra.from_json({
            'basis': ['1'], 'mult': {'1*1': {'1': 1}}, 'unit': [1], 'counit': ['1/2'],
        })
        self.assertEqual(algebra.counit[0], Rational(1, 2))
        self.assertEqual(algebra.copairing_matrix(), Matrix([[2]]))

    def test_malformed_json(self):
        """Test that missing fields raise InvalidModel."""
        with self.assertRaises(InvalidModel):
            FrobeniusAlgebra.from_json({'basis': ['1'], 'unit': [1]})
        with self.assertRaises(InvalidModel):
            FrobeniusAlgebra.from_json({'basis': ['1', 'x'], 'unit': [1], 'counit': [0, 1]})


class TestEvaluate(unittest.TestCase):
    """Test cases for evaluate."""

    def setUp(self):
        """Set up test fixtures."""
        self.model = khovanov_model()

    def test_identity(self):
        """Test that identities evaluate to identity matrices."""
        value = evaluate(parse_term('id[A*C]'), self.model)
        self.assertEqual(value.matrix, Matrix.eye(4))

    def test_structural_maps_are_identities(self):
        """Test that associators and unitors evaluate to identities."""
        value = evaluate(parse_term('alpha[A,A,A]'), self.model)
        self.assertEqual(value.matrix, Matrix.eye(8))
        value = evaluate(parse_term('lambda[C]'), self.model)
        self.assertEqual(value.matrix, Matrix.eye(2))

    def test_braiding_is_swap(self):
        """Test that the braiding swaps tensor factors."""
        value = evaluate(parse_term('sigma[A,A]'), self.model)
        self.assertEqual(value.matrix, swap_matrix(2, 2))
        self.assertEqual(value.matrix * value.matrix, Matrix.eye(4))

    def test_composition_order(self):
        """Test that `f ; g` evaluates to g·f."""
        value = evaluate(parse_term('delta[A] ; mu[A]'), self.model)
        self.assertEqual(value.matrix, Matrix([[0, 0], [2, 0]]))

    def test_frobenius_relation_holds(self):
        """Test the Frobenius relation in both built-in models."""
        eq = preset_equation('frobenius', ['A'])
        for model in (khovanov_model(), lee_model()):
            self.assertEqual(evaluate(eq.lhs, model), evaluate(eq.rhs, model), model.name)

    def test_corpus_holds(self):
        """Test that every corpus equation holds on A and on C."""
        for model in (khovanov_model(), lee_model()):
            for atom in (OPEN, CLOSED):
                for eq in corpus(atom):
                    self.assertEqual(evaluate(eq.lhs, model), evaluate(eq.rhs, model),
                                     f"{eq.name} in {model.name}")

    def test_false_equation_differs(self):
        """Test that mu ; delta differs from the identity."""
        lhs = evaluate(parse_term('mu[A] ; delta[A]'), self.model)
        rhs = evaluate(parse_term('id[A*A]'), self.model)
        self.assertNotEqual(lhs, rhs)

    def test_morphism_variable(self):
        """Test that variables cannot be evaluated."""
        with self.assertRaises(EvaluationError):
            evaluate(MorphVar('f', OPEN, OPEN), self.model)

    def test_ill_typed(self):
        """Test that ill-typed terms raise TypeMismatch."""
        with self.assertRaises(TypeMismatch):
            evaluate(parse_term('mu[A] ; mu[A]'), self.model)

    def test_unassigned_atom(self):
        """Test that a model without C cannot evaluate terms on C."""
        model = FrobeniusModel('open-only', {'A': self.model.algebra(OPEN)})
        with self.assertRaises(EvaluationError):
            evaluate(parse_term('mu[C]'), model)


class TestEvaluateProperties(unittest.TestCase):
    """Property tests for evaluate on random well-typed terms."""

    def setUp(self):
        """Set up test fixtures."""
        self.rng = random.Random(11)
        self.models = [khovanov_model(), lee_model()]

    def test_composition_is_matrix_product(self):
        """Test that evaluating g∘f multiplies the matrices of g and f."""
        for _ in range(60):
            f, middle = random_term(self.rng, random_atoms(self.rng), self.rng.randint(1, 3))
            g, _ = random_term(self.rng, middle, self.rng.randint(1, 3))
            for model in self.models:
                self.assertEqual(evaluate(Seq(g, f), model).matrix,
                                 evaluate(g, model).matrix * evaluate(f, model).matrix)

    def test_tensor_is_kronecker_product(self):
        """Test that evaluating f⊗g gives the Kronecker product."""
        for _ in range(60):
            f, _ = random_term(self.rng, random_atoms(self.rng, 1), self.rng.randint(1, 2))
            g, _ = random_term(self.rng, random_atoms(self.rng, 1), self.rng.randint(1, 2))
            for model in self.models:
                self.assertEqual(evaluate(Par(f, g), model).matrix,
                                 kron(evaluate(f, model).matrix, evaluate(g, model).matrix))

    def test_shape_follows_boundaries(self):
        """Test that a map's shape is (dim cod, dim dom)."""
        for _ in range(60):
            atoms = random_atoms(self.rng)
            term, end = random_term(self.rng, atoms, self.rng.randint(1, 4))
            value = evaluate(term, khovanov_model())
            self.assertEqual(value.dom, tensor_of(atoms))
            self.assertEqual(value.cod, tensor_of(end))
            self.assertEqual(value.matrix.shape, (2 ** len(end), 2 ** len(atoms)))


class TestClosedSurfaces(unittest.TestCase):
    """Test cases for closed surface values."""

    def test_khovanov_values(self):
        """Test genus 0, 1 and 2 in the Khovanov model."""
        model = khovanov_model()
        values = [closed_surface_value(model, g) for g in range(3)]
        self.assertEqual(values, [0, 2, 0])

    def test_lee_values(self):
        """Test genus 1, 2 and 3 in the Lee model."""
        model = lee_model()
        values = [closed_surface_value(model, g) for g in (1, 2, 3)]
        self.assertEqual(values, [2, 0, 8])

    def test_negative_genus(self):
        """Test that a negative genus is rejected."""
        with self.assertRaises(ValueError):
            closed_surface_term(-1)

    def test_handle_element(self):
        """Test that one handle gives 2x."""
        self.assertEqual(khovanov_model().handle_element(), Matrix([0, 2]))
        self.assertEqual(lee_model().handle_element(), Matrix([0, 2]))

    def test_handle_operator_lee(self):
        """Test that the Lee handle operator is multiplication by 2x."""
        value = evaluate(handle_operator(CLOSED), lee_model())
        self.assertEqual(value.matrix, Matrix([[0, 2], [2, 0]]))


class TestValidateModel(unittest.TestCase):
    """Test cases for validate_model and loading."""

    def setUp(self):
        """Set up test fixtures."""
        self.temp_dir = tempfile.mkdtemp()

    def tearDown(self):
        """Clean up test files."""
        shutil.rmtree(self.temp_dir)

    def test_builtin_models_pass(self):
        """Test that the registry models satisfy every law."""
        for name in MODEL_REGISTRY:
            report = validate_model(load_model(name))
            self.assertTrue(report.passed, name)
            self.assertEqual(report.failures(), [])

    def test_naturality_laws(self):
        """Test that the swap is checked against μ and Δ on every atom."""
        report = validate_model(lee_model())
        laws = {(check.law, check.atom): check.passed for check in report.checks}
        for atom in ('A', 'C'):
            self.assertTrue(laws[('sigma-naturality', atom)])
            self.assertTrue(laws[('sigma-naturality-delta', atom)])
        mu = lee_model().algebra(OPEN).mult_matrix()
        # the unswapped wide side differs, so the check is not vacuous
        self.assertNotEqual(swap_matrix(2, 2) * kron(mu, Matrix.eye(2)),
                            kron(Matrix.eye(2), mu))

    def test_degenerate_counit(self):
        """Test that a singular pairing is reported and rejected."""
        data = {
            'name': 'degenerate',
            'algebra': {
                'basis': ['1', 'x'],
                'mult': {'1*1': {'1': 1}, '1*x': {'x': 1}, 'x*1': {'x': 1}},
                'unit': [1, 0],
                'counit': [1, 0],
            },
        }
        model = FrobeniusModel.from_json(data, validate=False)
        report = validate_model(model)
        self.assertFalse(report.passed)
        self.assertIn('pairing', [check.law for check in report.failures()])
        with self.assertRaises(InvalidModel) as ctx:
            FrobeniusModel.from_json(data)
        self.assertIsNotNone(ctx.exception.report)

    def test_unit_failure(self):
        """Test that a broken unit law gets a witness."""
        data = {
            'basis': ['1', 'x'],
            'mult': {'1*1': {'1': 1}, '1*x': {'1': 1}, 'x*1': {'x': 1}},
            'unit': [1, 0],
            'counit': [0, 1],
        }
        report = validate_model(FrobeniusModel.from_json({'algebra': data}, validate=False))
        failed = {check.law: check for check in report.failures()}
        self.assertIn('unit', failed)
        self.assertEqual(failed['unit'].witness, (1,))

    def test_report_to_dict(self):
        """Test the JSON form of a report."""
        data = validate_model(khovanov_model()).to_dict()
        self.assertEqual(data['model'], 'khovanov')
        self.assertTrue(data['passed'])
        self.assertGreater(len(data['checks']), 0)

    def test_load_model_file(self):
        """Test loading the mixed model from the config directory."""
        model = load_model(str(MODELS_DIR / 'mixed.json'))
        self.assertEqual(model.name, 'mixed')
        self.assertEqual(closed_surface_value(model, 3), 0)
        self.assertEqual(closed_surface_value(model, 3, OPEN), 8)

    def test_load_model_errors(self):
        """Test unknown names and unreadable files."""
        with self.assertRaises(InvalidModel):
            load_model('no-such-model')
        filepath = os.path.join(self.temp_dir, 'broken.json')
        with open(filepath, 'w') as f:
            f.write('{not json')
        with self.assertRaises(InvalidModel):
            load_model(filepath)

    def test_unknown_atom_in_model(self):
        """Test that only A and C can be assigned."""
        algebra = json.loads((MODELS_DIR / 'khovanov.json').read_text())
        spec = algebra.get('algebra', algebra)
        with self.assertRaises(InvalidModel):
            FrobeniusModel.from_json({'algebras': {'B': spec}})


if __name__ == '__main__':
    unittest.main()

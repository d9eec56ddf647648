"""
Exact evaluation of terms in finite-dimensional Frobenius algebras.

Classes:
    FrobeniusAlgebra: Multiplication, unit and counit over the rationals
    FrobeniusModel: Assignment of algebras to the atoms A and C
    LinearMap: A rational matrix with its boundary objects
    LawCheck, ValidationReport: Results of `validate_model`
    InvalidModel, EvaluationError: Raised for unusable models and terms

Functions:
    evaluate: Interpret a term as a linear map
    validate_model: Check the Frobenius laws of a model
    closed_surface_value: Value of a closed genus-g surface
    khovanov_model, lee_model: Built-in models
    load_model: Resolve a model by registry name or JSON file
"""

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple

from sympy import Matrix, Rational, eye, zeros
from sympy.matrices.expressions.kronecker import kronecker_product

from src.terms import (CLOSED, OPEN, Atom, Gen, GeneratorKind, Id, MorphVar,
                       MorphismTerm, ObjectExpr, Par, Seq, Tensor, gen, then,
                       typecheck)

logger = logging.getLogger(__name__)


class InvalidModel(ValueError):
    """Raised when a model fails validation or cannot be read."""

    def __init__(self, message: str, report: Optional['ValidationReport'] = None):
        self.report = report
        super().__init__(message)


class EvaluationError(ValueError):
    """Raised for terms that cannot be evaluated (variables, unassigned atoms)."""


def kron(a: Matrix, b: Matrix) -> Matrix:
    return Matrix(kronecker_product(a, b))


def swap_matrix(dim_x: int, dim_y: int) -> Matrix:
    """Matrix of the symmetry V_x ⊗ V_y -> V_y ⊗ V_x."""
    result = zeros(dim_x * dim_y, dim_x * dim_y)
    for i in range(dim_x):
        for j in range(dim_y):
            result[j * dim_x + i, i * dim_y + j] = 1
    return result


@dataclass(frozen=True)
class FrobeniusAlgebra:
    """
    A finite-dimensional algebra with a counit.

    Attributes:
        name: Display name
        basis: Basis labels e_0, ..., e_{d-1}
        mult: mult[i][j][k] is the coefficient of e_k in e_i·e_j
        unit: Coordinates of the unit
        counit: Values of the counit on the basis

    The comultiplication is not stored; it is derived from the inverse of
    the pairing g[i][j] = counit(e_i·e_j).
    """
    name: str
    basis: Tuple[str, ...]
    mult: Tuple[Tuple[Tuple[Rational, ...], ...], ...]
    unit: Tuple[Rational, ...]
    counit: Tuple[Rational, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def mult_matrix(self) -> Matrix:
        d = self.dim
        return Matrix(d, d * d, lambda k, c: self.mult[c // d][c % d][k])

    def unit_matrix(self) -> Matrix:
        return Matrix(self.dim, 1, list(self.unit))

    def counit_matrix(self) -> Matrix:
        return Matrix(1, self.dim, list(self.counit))

    def pairing_matrix(self) -> Matrix:
        d = self.dim
        return Matrix(d, d, lambda i, j: sum(
            self.mult[i][j][k] * self.counit[k] for k in range(d)))

    def pairing_invertible(self) -> bool:
        return self.pairing_matrix().det() != 0

    def copairing_matrix(self) -> Matrix:
        """The copairing as a d²×1 column, entry i*d+j = g⁻¹[i, j]."""
        d = self.dim
        inverse = self.pairing_matrix().inv()
        return Matrix(d * d, 1, lambda c, _: inverse[c // d, c % d])

    def comult_matrix(self) -> Matrix:
        # Δ = (id ⊗ μ) ∘ (copairing ⊗ id)
        d = self.dim
        return kron(eye(d), self.mult_matrix()) * kron(self.copairing_matrix(), eye(d))

    def multiply(self, i: int, j: int) -> Matrix:
        return Matrix(self.dim, 1, list(self.mult[i][j]))

    @staticmethod
    def from_json(data: Dict) -> 'FrobeniusAlgebra':
        """
        Build an algebra from a JSON-style dict.

        `mult` maps "a*b" to a sparse {basis label: fraction} dict; missing
        products are zero. Fractions are written as strings such as "1/2".
        """
        try:
            basis = tuple(str(b) for b in data['basis'])
            index = {label: i for i, label in enumerate(basis)}
            d = len(basis)
            table = [[[Rational(0)] * d for _ in range(d)] for _ in range(d)]
            for product, coords in data.get('mult', {}).items():
                left, right = (part.strip() for part in product.split('*'))
                for label, value in coords.items():
                    table[index[left]][index[right]][index[label]] = Rational(str(value))
            unit = tuple(Rational(str(v)) for v in data['unit'])
            counit = tuple(Rational(str(v)) for v in data['counit'])
        except (KeyError, ValueError, TypeError) as exc:
            raise InvalidModel(f"malformed algebra definition: {exc}")
        if len(unit) != d or len(counit) != d:
            raise InvalidModel("unit and counit must have one entry per basis element")
        return FrobeniusAlgebra(
            name=str(data.get('name', 'algebra')),
            basis=basis,
            mult=tuple(tuple(tuple(row) for row in plane) for plane in table),
            unit=unit,
            counit=counit,
        )


@dataclass(frozen=True)
class FrobeniusModel:
    """Interpretation of the atoms; I is always the one-dimensional ground field."""
    name: str
    algebras: Dict[str, FrobeniusAlgebra]

    def __hash__(self):
        return hash(self.name)

    @staticmethod
    def uniform(name: str, algebra: FrobeniusAlgebra) -> 'FrobeniusModel':
        return FrobeniusModel(name, {'A': algebra, 'C': algebra})

    def algebra(self, atom: Atom) -> FrobeniusAlgebra:
        try:
            return self.algebras[atom.name]
        except KeyError:
            raise EvaluationError(f"model {self.name} does not interpret {atom.name}")

    def dim(self, obj: ObjectExpr) -> int:
        if isinstance(obj, Tensor):
            return self.dim(obj.left) * self.dim(obj.right)
        if isinstance(obj, Atom):
            return 1 if obj.is_unit else self.algebra(obj).dim
        raise EvaluationError(f"cannot evaluate object variable {obj.name}")

    def handle_element(self, atom: Atom = CLOSED) -> Matrix:
        """μ∘Δ∘η as a column: the element one handle adds to a surface."""
        return evaluate(then(gen(GeneratorKind.ETA, atom), handle_operator(atom)), self).matrix

    @staticmethod
    def from_json(data: Dict, validate: bool = True) -> 'FrobeniusModel':
        """
        Build a model from a dict with either one `algebra` (used for A and
        C) or an `algebras` map keyed by atom name.

        Raises:
            InvalidModel: If the definition is malformed or fails validation
        """
        name = str(data.get('name', 'model'))
        if 'algebras' in data:
            algebras = {atom: FrobeniusAlgebra.from_json(spec)
                        for atom, spec in data['algebras'].items()}
        else:
            algebra = FrobeniusAlgebra.from_json(data.get('algebra', data))
            algebras = {'A': algebra, 'C': algebra}
        unknown = set(algebras) - {'A', 'C'}
        if unknown:
            raise InvalidModel(f"unknown atoms in model: {sorted(unknown)}")
        model = FrobeniusModel(name, algebras)
        if validate:
            report = validate_model(model)
            if not report.passed:
                failed = ', '.join(c.law for c in report.failures())
                raise InvalidModel(f"model {name} fails: {failed}", report)
        return model


@dataclass(frozen=True)
class LinearMap:
    matrix: Matrix
    dom: ObjectExpr
    cod: ObjectExpr

    @property
    def shape(self) -> Tuple[int, int]:
        return self.matrix.shape

    def __eq__(self, other):
        if not isinstance(other, LinearMap):
            return NotImplemented
        return self.matrix == other.matrix

    def __hash__(self):
        return hash(tuple(self.matrix))


def _evaluate(term: MorphismTerm, model: FrobeniusModel) -> Matrix:
    if isinstance(term, Seq):
        return _evaluate(term.after, model) * _evaluate(term.before, model)
    if isinstance(term, Par):
        return kron(_evaluate(term.left, model), _evaluate(term.right, model))
    if isinstance(term, Id):
        return eye(model.dim(term.obj))
    if isinstance(term, MorphVar):
        raise EvaluationError(f"cannot evaluate morphism variable {term.name}")
    generator = term.generator
    kind, params = generator.kind, generator.params
    if kind.is_structural:
        return eye(model.dim(generator.dom))
    if kind == GeneratorKind.SIGMA:
        return swap_matrix(model.dim(params[0]), model.dim(params[1]))
    if kind == GeneratorKind.SIGMA_INV:
        return swap_matrix(model.dim(params[1]), model.dim(params[0]))
    algebra = model.algebra(params[0])
    if kind == GeneratorKind.MU:
        return algebra.mult_matrix()
    if kind == GeneratorKind.ETA:
        return algebra.unit_matrix()
    if kind == GeneratorKind.DELTA:
        return algebra.comult_matrix()
    return algebra.counit_matrix()


def evaluate(term: MorphismTerm, model: FrobeniusModel) -> LinearMap:
    """
    Interpret a term as a rational matrix.

    Composition is matrix product, tensor is the Kronecker product, the
    braiding is a swap and associators and unitors are identities.

    Raises:
        TypeMismatch: If the term is ill typed
        EvaluationError: For variables or atoms the model does not assign
    """
    dom, cod = typecheck(term, strict=True)
    return LinearMap(_evaluate(term, model), dom, cod)


@dataclass(frozen=True)
class LawCheck:
    law: str
    atom: str
    passed: bool
    witness: Optional[Tuple[int, ...]] = None
    detail: str = ''


@dataclass
class ValidationReport:
    model: str
    checks: List[LawCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def failures(self) -> List[LawCheck]:
        return [check for check in self.checks if not check.passed]

    def to_dict(self) -> Dict:
        return {
            'model': self.model,
            'passed': self.passed,
            'checks': [
                {'law': c.law, 'atom': c.atom, 'passed': c.passed,
                 'witness': list(c.witness) if c.witness is not None else None,
                 'detail': c.detail}
                for c in self.checks
            ],
        }


def _first_column_difference(a: Matrix, b: Matrix) -> Optional[Tuple[int, ...]]:
    for column in range(a.cols):
        if a[:, column] != b[:, column]:
            return (column,)
    return None


def _matrix_law(name: str, atom: str, lhs: Callable[[], Matrix],
                rhs: Callable[[], Matrix]) -> LawCheck:
    witness = _first_column_difference(lhs(), rhs())
    return LawCheck(name, atom, witness is None, witness,
                    '' if witness is None else 'first differing basis input')


def _algebra_checks(atom: str, algebra: FrobeniusAlgebra) -> List[LawCheck]:
    d = algebra.dim
    checks: List[LawCheck] = []

    witness = None
    for i in range(d):
        for j in range(d):
            for k in range(d):
                left = sum((algebra.mult[i][j][m] * algebra.multiply(m, k)
                            for m in range(d)), zeros(d, 1))
                right = sum((algebra.mult[j][k][m] * algebra.multiply(i, m)
                             for m in range(d)), zeros(d, 1))
                if witness is None and left != right:
                    witness = (i, j, k)
    checks.append(LawCheck('associativity', atom, witness is None, witness))

    unit = algebra.unit_matrix()
    witness = None
    for i in range(d):
        basis_vector = eye(d)[:, i]
        left = sum((unit[m] * algebra.multiply(m, i) for m in range(d)), zeros(d, 1))
        right = sum((unit[m] * algebra.multiply(i, m) for m in range(d)), zeros(d, 1))
        if witness is None and (left != basis_vector or right != basis_vector):
            witness = (i,)
    checks.append(LawCheck('unit', atom, witness is None, witness))

    invertible = algebra.pairing_invertible()
    checks.append(LawCheck('pairing', atom, invertible, None,
                           '' if invertible else 'pairing is not invertible'))
    dependent = ('counit', 'coassociativity', 'frobenius', 'sigma-naturality',
                 'sigma-naturality-delta')
    if not invertible:
        checks.extend(LawCheck(law, atom, False, None, 'skipped: no comultiplication')
                      for law in dependent)
        return checks

    mu, delta = algebra.mult_matrix(), algebra.comult_matrix()
    epsilon, ident = algebra.counit_matrix(), eye(d)
    checks.append(_matrix_law(
        'counit', atom, lambda: kron(epsilon, ident) * delta, lambda: ident))
    checks.append(_matrix_law(
        'coassociativity', atom,
        lambda: kron(delta, ident) * delta, lambda: kron(ident, delta) * delta))
    checks.append(_matrix_law(
        'frobenius', atom,
        lambda: delta * mu, lambda: kron(mu, ident) * kron(ident, delta)))
    checks.append(_matrix_law(
        'frobenius-mirror', atom,
        lambda: delta * mu, lambda: kron(ident, mu) * kron(delta, ident)))
    swap = swap_matrix(d, d)
    wide_swap = swap_matrix(d * d, d)
    # σ_{A,A}∘(μ⊗id) = (id⊗μ)∘σ_{A⊗A,A}, and the same for Δ
    checks.append(_matrix_law(
        'sigma-naturality', atom,
        lambda: swap * kron(mu, ident), lambda: kron(ident, mu) * wide_swap))
    checks.append(_matrix_law(
        'sigma-naturality-delta', atom,
        lambda: wide_swap * kron(delta, ident), lambda: kron(ident, delta) * swap))
    checks.append(_matrix_law(
        'sigma-involution', atom, lambda: swap * swap, lambda: eye(d * d)))
    return checks


def validate_model(model: FrobeniusModel) -> ValidationReport:
    """
    Check every law the rewrite rules rely on, per assigned atom.

    Laws are associativity, unit, pairing invertibility, counit,
    coassociativity, the Frobenius relation and its mirror, naturality and
    involutivity of the symmetry. A failing law carries a witness basis
    index when one exists.
    """
    report = ValidationReport(model.name)
    for atom in sorted(model.algebras):
        report.checks.extend(_algebra_checks(atom, model.algebras[atom]))
    logger.debug("Validated model %s: %s", model.name,
                 'ok' if report.passed else [c.law for c in report.failures()])
    return report


def handle_operator(atom: Atom = CLOSED) -> MorphismTerm:
    """μ ∘ Δ on one atom: attaching a handle."""
    return then(gen(GeneratorKind.DELTA, atom), gen(GeneratorKind.MU, atom))


def closed_surface_term(genus: int, atom: Atom = CLOSED) -> MorphismTerm:
    """ε ∘ (μ∘Δ)^genus ∘ η: a closed surface of the given genus."""
    if genus < 0:
        raise ValueError("genus must be non-negative")
    factors = [gen(GeneratorKind.ETA, atom)]
    factors += [handle_operator(atom)] * genus
    factors.append(gen(GeneratorKind.EPSILON, atom))
    return then(*factors)


def closed_surface_value(model: FrobeniusModel, genus: int, atom: Atom = CLOSED) -> Rational:
    """
    Value of the closed genus-g surface in a model.

    Args:
        model: Model to evaluate in
        genus: Number of handles; genus 0 is the sphere ε∘η
        atom: Atom carrying the surface (closed boundary by default)

    Returns:
        Rational scalar
    """
    return Rational(evaluate(closed_surface_term(genus, atom), model).matrix[0, 0])


def _quotient_algebra(name: str, x_squared: Dict) -> FrobeniusAlgebra:
    return FrobeniusAlgebra.from_json({
        'name': name,
        'basis': ['1', 'x'],
        'mult': {'1*1': {'1': 1}, '1*x': {'x': 1}, 'x*1': {'x': 1}, 'x*x': x_squared},
        'unit': [1, 0],
        'counit': [0, 1],
    })


def khovanov_model() -> FrobeniusModel:
    """ℚ[x]/(x²) with ε(1)=0, ε(x)=1 on both atoms."""
    return FrobeniusModel.uniform('khovanov', _quotient_algebra('Q[x]/(x^2)', {}))


def lee_model() -> FrobeniusModel:
    """ℚ[x]/(x²−1) with ε(1)=0, ε(x)=1 on both atoms."""
    return FrobeniusModel.uniform('lee', _quotient_algebra('Q[x]/(x^2-1)', {'1': 1}))


MODEL_REGISTRY: Dict[str, Callable[[], FrobeniusModel]] = {
    'khovanov': khovanov_model,
    'lee': lee_model,
}


def load_model(name_or_path: str) -> FrobeniusModel:
    """
    Resolve a registry name or read a JSON model file.

    Raises:
        InvalidModel: If the name is unknown, the file unreadable or the
            model invalid
    """
    if name_or_path in MODEL_REGISTRY:
        return MODEL_REGISTRY[name_or_path]()
    path = Path(name_or_path)
    if not path.exists():
        raise InvalidModel(
            f"unknown model '{name_or_path}' (known: {', '.join(sorted(MODEL_REGISTRY))})")
    try:
        with open(path) as f:
            data = json.load(f)
    except json.JSONDecodeError as exc:
        raise InvalidModel(f"cannot read model file {path}: {exc}")
    logger.info("Loading model from %s", path)
    return FrobeniusModel.from_json(data)

"""
Rewrite rules for open-closed cobordisms.

Classes:
    Orientation: Which directions a rule may be applied in
    Direction: Forward (lhs to rhs) or backward (rhs to lhs)
    RewriteRule: A named, typed equation between term patterns
    Equation: A pair of terms with equal boundaries
    NoMatch: Raised when a rule does not apply at a position

Functions:
    standard_axioms: The built-in rule set
    rewrite_step: Apply one rule at one position
    match_term: Syntactic pattern matching with object and morphism variables
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Tuple

from src.coherence import normalize_coherence
from src.terms import (CLOSED, OPEN, UNIT, Atom, Gen, Generator, GeneratorKind,
                       Id, MorphVar, MorphismTerm, ObjVar, ObjectExpr, Par,
                       Path, Seq, Tensor, format_path, format_term, gen,
                       strictify, subterm_at, replace_at, then, typecheck,
                       TypeMismatch)

logger = logging.getLogger(__name__)

Binding = Dict[Tuple[str, str], object]


class Orientation(Enum):
    BOTH = 'both'
    LEFT_TO_RIGHT = 'left-to-right'
    RIGHT_TO_LEFT = 'right-to-left'


class Direction(Enum):
    FORWARD = 'forward'
    BACKWARD = 'backward'

    def reverse(self) -> 'Direction':
        return Direction.BACKWARD if self == Direction.FORWARD else Direction.FORWARD


class NoMatch(ValueError):
    """Raised when a rule's source pattern does not match the subterm."""


def object_variables(obj: ObjectExpr) -> set:
    if isinstance(obj, Tensor):
        return object_variables(obj.left) | object_variables(obj.right)
    if isinstance(obj, ObjVar):
        return {('obj', obj.name)}
    return set()


def term_variables(term: MorphismTerm) -> set:
    """Object and morphism variables of a pattern, keyed by ('obj'|'morph', name)."""
    if isinstance(term, (Seq, Par)):
        left, right = (term.after, term.before) if isinstance(term, Seq) else (term.left, term.right)
        return term_variables(left) | term_variables(right)
    if isinstance(term, Gen):
        found = set()
        for param in term.generator.params:
            found |= object_variables(param)
        return found
    if isinstance(term, Id):
        return object_variables(term.obj)
    if isinstance(term, MorphVar):
        return {('morph', term.name)} | object_variables(term.dom) | object_variables(term.cod)
    return set()


@dataclass(frozen=True)
class RewriteRule:
    """
    A named equation between two term patterns.

    Attributes:
        name: Unique dotted name, e.g. `frobenius.assoc.A`
        lhs: Left pattern
        rhs: Right pattern
        orientation: Directions the rule may be used in
        family: Name of the axiom family the rule belongs to
        normalize: Whether the rule is brought to coherence normal form
            before strict rewriting
        strict: Whether the patterns are typed up to coherence
    """
    name: str
    lhs: MorphismTerm
    rhs: MorphismTerm
    orientation: Orientation = Orientation.BOTH
    family: str = ''
    normalize: bool = True
    strict: bool = False

    def __post_init__(self):
        try:
            lhs_type = typecheck(self.lhs, self.strict)
            rhs_type = typecheck(self.rhs, self.strict)
        except TypeMismatch as exc:
            raise ValueError(f"rule {self.name} is ill typed: {exc}")
        if lhs_type != rhs_type:
            raise ValueError(f"rule {self.name} has sides of different types")

    def sides(self, direction: Direction) -> Tuple[MorphismTerm, MorphismTerm]:
        """Return (source, target) for a direction."""
        if direction == Direction.FORWARD:
            return self.lhs, self.rhs
        return self.rhs, self.lhs

    def usable(self, direction: Direction) -> bool:
        """A direction is usable when allowed and its target binds no new variables."""
        if direction == Direction.FORWARD and self.orientation == Orientation.RIGHT_TO_LEFT:
            return False
        if direction == Direction.BACKWARD and self.orientation == Orientation.LEFT_TO_RIGHT:
            return False
        source, target = self.sides(direction)
        return term_variables(target) <= term_variables(source)

    def strictified(self) -> 'RewriteRule':
        """The rule with both sides in coherence normal form, typed strictly."""
        if not self.normalize:
            return RewriteRule(self.name, self.lhs, self.rhs, self.orientation,
                               self.family, self.normalize, strict=True)
        return RewriteRule(self.name, normalize_coherence(self.lhs),
                           normalize_coherence(self.rhs), self.orientation,
                           self.family, self.normalize, strict=True)

    def instantiate(self, atom: Atom, keep_morphisms: bool = False) -> 'RewriteRule':
        """
        Bind every object variable to `atom`.

        Morphism variables are kept (with their types instantiated) when
        `keep_morphisms` is set, otherwise replaced by a sample morphism of
        the right type.
        """
        binding: Binding = {}
        for kind, name in sorted(term_variables(self.lhs) | term_variables(self.rhs)):
            if kind == 'obj':
                binding[(kind, name)] = atom
        if not keep_morphisms:
            for side in (self.lhs, self.rhs):
                for var in _morph_vars(side):
                    dom = substitute_object(var.dom, binding)
                    cod = substitute_object(var.cod, binding)
                    binding[('morph', var.name)] = _sample_morphism(dom, cod)
        return RewriteRule(
            f"{self.name}@{atom.name}",
            substitute_term(self.lhs, binding),
            substitute_term(self.rhs, binding),
            self.orientation, self.family, self.normalize, self.strict,
        )


def _morph_vars(term: MorphismTerm) -> List[MorphVar]:
    if isinstance(term, MorphVar):
        return [term]
    if isinstance(term, Seq):
        return _morph_vars(term.after) + _morph_vars(term.before)
    if isinstance(term, Par):
        return _morph_vars(term.left) + _morph_vars(term.right)
    return []


def _sample_morphism(dom: ObjectExpr, cod: ObjectExpr) -> MorphismTerm:
    # The handle operator mu . delta is a non-trivial endomorphism of A and C
    if dom == cod and isinstance(dom, Atom) and not dom.is_unit:
        return then(gen(GeneratorKind.DELTA, dom), gen(GeneratorKind.MU, dom))
    if dom == cod:
        return Id(dom)
    raise ValueError(f"no sample morphism from {dom} to {cod}")


@dataclass(frozen=True)
class Equation:
    """Two terms claimed equal; both sides must have the same type up to coherence."""
    lhs: MorphismTerm
    rhs: MorphismTerm
    name: Optional[str] = None

    def __post_init__(self):
        lhs_type = typecheck(self.lhs, strict=True)
        rhs_type = typecheck(self.rhs, strict=True)
        if lhs_type[0] != rhs_type[0]:
            raise TypeMismatch(lhs_type[0], rhs_type[0], ())
        if lhs_type[1] != rhs_type[1]:
            raise TypeMismatch(lhs_type[1], rhs_type[1], ())

    def __str__(self) -> str:
        return f"{format_term(self.lhs)} = {format_term(self.rhs)}"


def match_object(pattern: ObjectExpr, obj: ObjectExpr, binding: Binding) -> bool:
    if isinstance(pattern, ObjVar):
        key = ('obj', pattern.name)
        if key in binding:
            return binding[key] == obj
        binding[key] = obj
        return True
    if isinstance(pattern, Tensor):
        return (isinstance(obj, Tensor)
                and match_object(pattern.left, obj.left, binding)
                and match_object(pattern.right, obj.right, binding))
    return pattern == obj


def match_term(pattern: MorphismTerm, term: MorphismTerm, binding: Binding,
               strict: bool = False) -> bool:
    """
    Match a pattern against a term, extending `binding` in place.

    Object matching is syntactic: a variable binds a whole subtree, and a
    tensor in the pattern only matches a tensor. A morphism variable binds
    any subterm whose type matches its own.
    """
    if isinstance(pattern, MorphVar):
        key = ('morph', pattern.name)
        if key in binding:
            if binding[key] != term:
                return False
        try:
            dom, cod = typecheck(term, strict)
        except TypeMismatch:
            return False
        binding[key] = term
        return (match_object(pattern.dom, dom, binding)
                and match_object(pattern.cod, cod, binding))
    if type(pattern) is not type(term):
        return False
    if isinstance(pattern, Seq):
        return (match_term(pattern.after, term.after, binding, strict)
                and match_term(pattern.before, term.before, binding, strict))
    if isinstance(pattern, Par):
        return (match_term(pattern.left, term.left, binding, strict)
                and match_term(pattern.right, term.right, binding, strict))
    if isinstance(pattern, Id):
        return match_object(pattern.obj, term.obj, binding)
    if pattern.generator.kind != term.generator.kind:
        return False
    return all(match_object(p, o, binding)
               for p, o in zip(pattern.generator.params, term.generator.params))


def substitute_object(obj: ObjectExpr, binding: Binding) -> ObjectExpr:
    if isinstance(obj, ObjVar):
        return binding.get(('obj', obj.name), obj)
    if isinstance(obj, Tensor):
        return Tensor(substitute_object(obj.left, binding),
                      substitute_object(obj.right, binding))
    return obj


def substitute_term(term: MorphismTerm, binding: Binding,
                    strict: bool = False) -> MorphismTerm:
    """Instantiate a pattern; with `strict`, objects are strictified afterwards."""
    def obj(o: ObjectExpr) -> ObjectExpr:
        o = substitute_object(o, binding)
        return strictify(o) if strict else o

    if isinstance(term, MorphVar):
        bound = binding.get(('morph', term.name))
        if bound is not None:
            return bound
        return MorphVar(term.name, obj(term.dom), obj(term.cod))
    if isinstance(term, Seq):
        return Seq(substitute_term(term.after, binding, strict),
                   substitute_term(term.before, binding, strict))
    if isinstance(term, Par):
        return Par(substitute_term(term.left, binding, strict),
                   substitute_term(term.right, binding, strict))
    if isinstance(term, Id):
        return Id(obj(term.obj))
    generator = term.generator
    return Gen(Generator(generator.kind, tuple(obj(p) for p in generator.params)))


def rewrite_step(term: MorphismTerm, rule: RewriteRule, position: Path,
                 direction: Direction, strict: bool = False) -> MorphismTerm:
    """
    Rewrite the subterm at `position` using one direction of a rule.

    Args:
        term: Term to rewrite
        rule: Rule to apply
        position: Path of the subterm to rewrite
        direction: FORWARD rewrites lhs to rhs, BACKWARD rhs to lhs
        strict: Type and instantiate up to coherence

    Returns:
        The rewritten term, with the same boundaries as `term`

    Raises:
        BadPosition: If `position` does not address a subterm
        NoMatch: If the direction is unusable or the source does not match
    """
    if not rule.usable(direction):
        raise NoMatch(f"rule {rule.name} cannot be used {direction.value}")
    return apply_rule(term, rule, position, direction, strict)


def apply_rule(term: MorphismTerm, rule: RewriteRule, position: Path,
               direction: Direction, strict: bool = False) -> MorphismTerm:
    """Like `rewrite_step` but ignores the rule's orientation."""
    source, target = rule.sides(direction)
    if not term_variables(target) <= term_variables(source):
        raise NoMatch(f"rule {rule.name} leaves variables unbound {direction.value}")
    subterm = subterm_at(term, position)
    binding: Binding = {}
    if not match_term(source, subterm, binding, strict):
        raise NoMatch(f"rule {rule.name} does not match at {format_path(position)}")
    result = replace_at(term, position, substitute_term(target, binding, strict))
    before_type = typecheck(term, strict)
    after_type = typecheck(result, strict)
    if before_type != after_type:
        raise TypeMismatch(before_type[1], after_type[1], position)
    return result


# Pattern variables
_x, _y, _z, _w = ObjVar('x'), ObjVar('y'), ObjVar('z'), ObjVar('w')
_x2, _y2 = ObjVar("x'"), ObjVar("y'")


def _alpha(a, b, c):
    return gen(GeneratorKind.ALPHA, a, b, c)


def _alpha_inv(a, b, c):
    return gen(GeneratorKind.ALPHA_INV, a, b, c)


def _sigma(a, b):
    return gen(GeneratorKind.SIGMA, a, b)


def _monoidal_rules() -> List[RewriteRule]:
    rules = [
        RewriteRule(
            'monoidal.pentagon',
            then(_alpha(Tensor(_w, _x), _y, _z), _alpha(_w, _x, Tensor(_y, _z))),
            then(Par(_alpha(_w, _x, _y), Id(_z)),
                 _alpha(_w, Tensor(_x, _y), _z),
                 Par(Id(_w), _alpha(_x, _y, _z))),
            family='monoidal.pentagon',
        ),
        RewriteRule(
            'monoidal.triangle',
            Par(gen(GeneratorKind.RHO, _x), Id(_y)),
            then(_alpha(_x, UNIT, _y), Par(Id(_x), gen(GeneratorKind.LAMBDA, _y))),
            family='monoidal.triangle',
        ),
    ]
    inverse_pairs = [
        ('alpha', _alpha(_x, _y, _z), _alpha_inv(_x, _y, _z)),
        ('lambda', gen(GeneratorKind.LAMBDA, _x), gen(GeneratorKind.LAMBDA_INV, _x)),
        ('rho', gen(GeneratorKind.RHO, _x), gen(GeneratorKind.RHO_INV, _x)),
    ]
    for label, forth, back in inverse_pairs:
        for suffix, first, second in (('left', forth, back), ('right', back, forth)):
            rules.append(RewriteRule(
                f'monoidal.inverse.{label}.{suffix}',
                then(first, second),
                Id(typecheck(first)[0]),
                Orientation.LEFT_TO_RIGHT,
                family='monoidal.inverse',
            ))
    rules.append(RewriteRule(
        'monoidal.id_tensor',
        Par(Id(_x), Id(_y)),
        Id(Tensor(_x, _y)),
        family='monoidal.id_tensor',
        normalize=False,
    ))
    return rules


def _frobenius_rules(o: Atom) -> List[RewriteRule]:
    mu, eta = gen(GeneratorKind.MU, o), gen(GeneratorKind.ETA, o)
    delta, epsilon = gen(GeneratorKind.DELTA, o), gen(GeneratorKind.EPSILON, o)
    ident = Id(o)
    lam, lam_inv = gen(GeneratorKind.LAMBDA, o), gen(GeneratorKind.LAMBDA_INV, o)
    rho, rho_inv = gen(GeneratorKind.RHO, o), gen(GeneratorKind.RHO_INV, o)
    n = o.name
    specs = [
        ('assoc', 'frobenius.assoc',
         then(Par(mu, ident), mu),
         then(_alpha(o, o, o), Par(ident, mu), mu), Orientation.BOTH),
        ('coassoc', 'frobenius.coassoc',
         then(delta, Par(delta, ident), _alpha(o, o, o)),
         then(delta, Par(ident, delta)), Orientation.BOTH),
        ('unit.left', 'frobenius.unit',
         then(Par(eta, ident), mu), lam, Orientation.BOTH),
        ('unit.right', 'frobenius.unit',
         then(Par(ident, eta), mu), rho, Orientation.BOTH),
        ('counit.left', 'frobenius.counit',
         lam_inv, then(delta, Par(epsilon, ident)), Orientation.BOTH),
        ('counit.right', 'frobenius.counit',
         rho_inv, then(delta, Par(ident, epsilon)), Orientation.BOTH),
        ('unit.inverse.left', 'frobenius.unit.inverse',
         ident, then(lam_inv, Par(eta, ident), mu), Orientation.RIGHT_TO_LEFT),
        ('unit.inverse.right', 'frobenius.unit.inverse',
         ident, then(rho_inv, Par(ident, eta), mu), Orientation.RIGHT_TO_LEFT),
        ('counit.inverse.left', 'frobenius.counit.inverse',
         ident, then(delta, Par(epsilon, ident), lam), Orientation.RIGHT_TO_LEFT),
        ('counit.inverse.right', 'frobenius.counit.inverse',
         ident, then(delta, Par(ident, epsilon), rho), Orientation.RIGHT_TO_LEFT),
        ('relation', 'frobenius.relation',
         then(mu, delta),
         then(Par(ident, delta), _alpha_inv(o, o, o), Par(mu, ident)), Orientation.BOTH),
        ('relation.mirror', 'frobenius.relation.mirror',
         then(mu, delta),
         then(Par(delta, ident), _alpha(o, o, o), Par(ident, mu)), Orientation.BOTH),
    ]
    return [
        RewriteRule(f'frobenius.{label}.{n}', lhs, rhs, orientation, family=family)
        for label, family, lhs, rhs, orientation in specs
    ]


def _braid_rules() -> List[RewriteRule]:
    f = MorphVar('f', _x, _x2)
    g = MorphVar('g', _y, _y2)
    return [
        RewriteRule(
            'braid.naturality',
            then(_sigma(_x, _y), Par(g, f)),
            then(Par(f, g), _sigma(_x2, _y2)),
            family='braid.naturality',
        ),
        RewriteRule(
            'braid.inverse',
            then(_sigma(_x, _y), gen(GeneratorKind.SIGMA_INV, _x, _y)),
            Par(Id(_x), Id(_y)),
            family='braid.inverse',
        ),
        RewriteRule(
            'braid.inverse.right',
            then(gen(GeneratorKind.SIGMA_INV, _x, _y), _sigma(_x, _y)),
            Par(Id(_y), Id(_x)),
            family='braid.inverse',
        ),
        RewriteRule(
            'braid.hexagon.1',
            _sigma(_x, Tensor(_y, _z)),
            then(_alpha_inv(_x, _y, _z), Par(_sigma(_x, _y), Id(_z)),
                 _alpha(_y, _x, _z), Par(Id(_y), _sigma(_x, _z)),
                 _alpha_inv(_y, _z, _x)),
            family='braid.hexagon',
        ),
        RewriteRule(
            'braid.hexagon.2',
            _sigma(Tensor(_x, _y), _z),
            then(_alpha(_x, _y, _z), Par(Id(_x), _sigma(_y, _z)),
                 _alpha_inv(_x, _z, _y), Par(_sigma(_x, _z), Id(_y)),
                 _alpha(_z, _x, _y)),
            family='braid.hexagon',
        ),
    ]


def _category_rules() -> List[RewriteRule]:
    f = MorphVar('f', _x, _y)
    g = MorphVar('g', _y, _z)
    h = MorphVar('h', _z, _w)
    return [
        RewriteRule('category.assoc', Seq(Seq(h, g), f), Seq(h, Seq(g, f)),
                    family='category.assoc', normalize=False),
        RewriteRule('category.id_left', Seq(Id(_y), f), f, Orientation.LEFT_TO_RIGHT,
                    family='category.identity', normalize=False),
        RewriteRule('category.id_right', Seq(f, Id(_x)), f, Orientation.LEFT_TO_RIGHT,
                    family='category.identity', normalize=False),
    ]


def standard_axioms() -> List[RewriteRule]:
    """
    Build the standard rule set in registration order.

    Monoidal coherence comes first, then the Frobenius laws for A and for
    C, the braiding laws and plain category laws. Commutativity of the
    multiplications is not assumed.

    Axiom rules are stated with the rule's rhs first when written out as a
    formula, so that `rhs = lhs` reads in the conventional order.
    """
    rules = _monoidal_rules()
    rules += _frobenius_rules(OPEN)
    rules += _frobenius_rules(CLOSED)
    rules += _braid_rules()
    rules += _category_rules()
    names = [rule.name for rule in rules]
    if len(set(names)) != len(names):
        raise ValueError("duplicate rule names in standard axioms")
    logger.debug("Registered %d standard rules", len(rules))
    return rules


def rules_by_name(rules: List[RewriteRule]) -> Dict[str, RewriteRule]:
    return {rule.name: rule for rule in rules}


RULE_FAMILIES: Tuple[str, ...] = (
    'monoidal.pentagon', 'monoidal.triangle', 'monoidal.inverse', 'monoidal.id_tensor',
    'frobenius.assoc', 'frobenius.coassoc', 'frobenius.unit', 'frobenius.counit',
    'frobenius.unit.inverse', 'frobenius.counit.inverse', 'frobenius.relation',
    'frobenius.relation.mirror', 'braid.naturality', 'braid.inverse', 'braid.hexagon',
    'category.assoc', 'category.identity',
)

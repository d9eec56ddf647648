"""
TPTP THF problems: syntax tree, emitter, parser and equation encoder.

Only the fragment needed for equational problems is supported: type
declarations, universally quantified equalities, application `@` and
function types `>`.

Classes:
    TypeName, FunType: THF types
    Const, Var, App, Equality, Forall, TypeDecl: Formula syntax
    Role: type, axiom or conjecture
    AnnotatedFormula, ThfProblem: Problem structure
    EncodingStyle: How objects and morphisms are mapped to THF
    ParseError, Unencodable: Raised by `parse` and `encode_equation`

Functions:
    emit: Render a problem as `.p` text
    parse: Read the emitted fragment back
    encode_equation: Build a problem from an equation and axioms
    normalize_whitespace: Layout-insensitive form used to compare problems
"""

import logging
import re
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from pyparsing import (Forward, Literal, ParseBaseException, Regex, StringEnd,
                       Suppress, ZeroOrMore, one_of)

from src.axioms import Equation, RewriteRule, term_variables
from src.coherence import seq_factors
from src.terms import (CLOSED, OPEN, UNIT, Atom, Gen, Generator, GeneratorKind,
                       Id, MorphVar, MorphismTerm, ObjVar, ObjectExpr, Par, Seq,
                       Tensor, format_object, format_term, leaves, term_atoms,
                       typecheck)

logger = logging.getLogger(__name__)


# Syntax tree

@dataclass(frozen=True)
class TypeName:
    name: str


@dataclass(frozen=True)
class FunType:
    args: Tuple['ThfType', ...]
    result: 'ThfType'


ThfType = Union[TypeName, FunType]


@dataclass(frozen=True)
class Const:
    name: str


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class App:
    fn: 'ThfTerm'
    args: Tuple['ThfTerm', ...]


ThfTerm = Union[Const, Var, App]


@dataclass(frozen=True)
class Equality:
    lhs: ThfTerm
    rhs: ThfTerm


@dataclass(frozen=True)
class Forall:
    variables: Tuple[Tuple[str, ThfType], ...]
    body: Equality


@dataclass(frozen=True)
class TypeDecl:
    symbol: str
    type: ThfType


class Role(Enum):
    TYPE = 'type'
    AXIOM = 'axiom'
    CONJECTURE = 'conjecture'


@dataclass(frozen=True)
class AnnotatedFormula:
    name: str
    role: Role
    body: Union[TypeDecl, Forall, Equality]


TTYPE = TypeName('$tType')
_BUILTIN_TYPES = {'$tType', '$i', '$o'}


@dataclass(frozen=True)
class ThfProblem:
    formulas: Tuple[AnnotatedFormula, ...]
    header: Tuple[str, ...] = ()

    def formula(self, name: str) -> AnnotatedFormula:
        for f in self.formulas:
            if f.name == name:
                return f
        raise KeyError(name)

    def check(self) -> None:
        """
        Raise ValueError unless names are unique and every constant and
        non-builtin type is declared before it is used.
        """
        names = set()
        declared_types = set(_BUILTIN_TYPES)
        declared_constants = set()
        for f in self.formulas:
            if f.name in names:
                raise ValueError(f"duplicate formula name {f.name}")
            names.add(f.name)
            if isinstance(f.body, TypeDecl):
                _check_type(f.body.type, declared_types, f.name)
                if f.body.type == TTYPE:
                    declared_types.add(f.body.symbol)
                else:
                    declared_constants.add(f.body.symbol)
                continue
            body = f.body
            if isinstance(body, Forall):
                for _, typ in body.variables:
                    _check_type(typ, declared_types, f.name)
                body = body.body
            for name in _constants(body.lhs) | _constants(body.rhs):
                if name not in declared_constants:
                    raise ValueError(f"{f.name}: constant {name} used before declaration")


def _check_type(typ: ThfType, declared: set, where: str) -> None:
    if isinstance(typ, FunType):
        for part in typ.args + (typ.result,):
            _check_type(part, declared, where)
    elif not typ.name.startswith('$') and typ.name not in declared:
        raise ValueError(f"{where}: type {typ.name} used before declaration")


def _constants(term: ThfTerm) -> set:
    if isinstance(term, Const):
        return {term.name}
    if isinstance(term, App):
        found = _constants(term.fn)
        for arg in term.args:
            found |= _constants(arg)
        return found
    return set()


# Emitter

def format_type(typ: ThfType) -> str:
    if isinstance(typ, TypeName):
        return typ.name
    parts = []
    for part in typ.args + (typ.result,):
        text = format_type(part)
        parts.append(f"({text})" if isinstance(part, FunType) else text)
    return ' > '.join(parts)


def format_thf_term(term: ThfTerm) -> str:
    if isinstance(term, (Const, Var)):
        return term.name
    pieces = [format_thf_term(term.fn)] + [format_thf_term(a) for a in term.args]
    return '(' + ' @ '.join(pieces) + ')'


def _format_body(body) -> str:
    if isinstance(body, TypeDecl):
        return f"{body.symbol}: {format_type(body.type)}"
    if isinstance(body, Equality):
        return f"( {format_thf_term(body.lhs)} = {format_thf_term(body.rhs)} )"
    variables = ', '.join(f"{name}: {format_type(typ)}" for name, typ in body.variables)
    return f"! [{variables}] : {_format_body(body.body)}"


def emit(problem: ThfProblem) -> str:
    """
    Render a problem, one `thf(name,role,(body)).` record per line.

    Raises:
        ValueError: If the problem fails `ThfProblem.check`
    """
    problem.check()
    lines = [f"% {line}" for line in problem.header]
    for f in problem.formulas:
        lines.append(f"thf({f.name},{f.role.value},({_format_body(f.body)})).")
    return '\n'.join(lines) + '\n'


def normalize_whitespace(text: str) -> str:
    """Drop comment lines, collapse whitespace and strip it around punctuation."""
    body = ' '.join(line for line in text.splitlines()
                    if not line.lstrip().startswith('%'))
    body = re.sub(r'\s+', ' ', body)
    body = re.sub(r'\s*([()\[\],:.])\s*', r'\1', body)
    return body.strip()


# Parser

class ParseError(ValueError):
    """Raised for text outside the supported THF fragment."""

    def __init__(self, line: int, column: int, expected: Tuple[str, ...]):
        self.line = line
        self.column = column
        self.expected = expected
        super().__init__(
            f"THF parse error at line {line}, column {column}: {', '.join(expected)}")


def _fold_type(tokens) -> ThfType:
    if len(tokens) == 1:
        return tokens[0]
    return FunType(tuple(tokens[:-1]), tokens[-1])


def _fold_app(tokens) -> ThfTerm:
    if len(tokens) == 1:
        return tokens[0]
    return App(tokens[0], tuple(tokens[1:]))


def _build_parser():
    lpar, rpar, lbrack, rbrack = map(Suppress, '()[]')
    comma, colon = Suppress(','), Suppress(':')
    lower = Regex(r"[a-z][A-Za-z0-9_]*")
    upper = Regex(r"[A-Z][A-Za-z0-9_]*")
    dollar = Regex(r"\$[A-Za-z][A-Za-z0-9_]*")

    thf_type = Forward()
    type_name = (lower | dollar).copy().set_parse_action(lambda t: TypeName(t[0]))
    type_part = type_name | (lpar + thf_type + rpar)
    thf_type <<= (type_part + ZeroOrMore(Suppress('>') + type_part)).set_parse_action(_fold_type)

    term = Forward()
    term_atom = (upper.copy().set_parse_action(lambda t: Var(t[0]))
                 | lower.copy().set_parse_action(lambda t: Const(t[0]))
                 | (lpar + term + rpar))
    term <<= (term_atom + ZeroOrMore(Suppress('@') + term_atom)).set_parse_action(_fold_app)
    equality = (lpar + term + Suppress('=') + term + rpar).set_parse_action(
        lambda t: Equality(t[0], t[1]))

    var_decl = (upper + colon + thf_type).set_parse_action(lambda t: (t[0], t[1]))
    quantified = (Suppress('!') + lbrack + var_decl + ZeroOrMore(comma + var_decl)
                  + rbrack + colon + equality).set_parse_action(
        lambda t: Forall(tuple(t[:-1]), t[-1]))
    type_decl = ((lower | dollar) + colon + thf_type).set_parse_action(
        lambda t: TypeDecl(t[0], t[1]))
    body = type_decl | quantified | equality

    role = one_of('type axiom conjecture').set_parse_action(lambda t: Role(t[0]))
    annotated = (Suppress(Literal('thf')) - lpar - lower - comma - role - comma
                 - lpar - body - rpar - rpar - Suppress('.')).set_parse_action(
        lambda t: AnnotatedFormula(t[0], t[1], t[2]))
    problem = ZeroOrMore(annotated) + StringEnd()
    problem.ignore(Regex(r"%[^\n]*"))
    return problem


_PROBLEM = _build_parser()


def parse(text: str) -> ThfProblem:
    """
    Parse THF text in the emitted fragment.

    Leading `%` lines become the problem header; later comments are ignored.

    Raises:
        ParseError: With line, column and the expected token
    """
    lines = text.splitlines()
    header = []
    for index, line in enumerate(lines):
        if not line.startswith('%'):
            break
        content = line[1:]
        header.append(content[1:] if content.startswith(' ') else content)
        lines[index] = ''
    try:
        formulas = _PROBLEM.parse_string('\n'.join(lines), parse_all=True)
    except ParseBaseException as exc:
        raise ParseError(exc.lineno, exc.col, (exc.msg,))
    return ThfProblem(tuple(formulas), tuple(header))


# Encoder

class Unencodable(ValueError):
    """Raised when an object or factor has no name in the chosen encoding."""


class EncodingStyle(Enum):
    """
    FROBENIUS: one sort per object of A, morphisms as named constants
        applied to a single variable
    BRAIDED: sorts c, cc, ccxc, cxcc with typed tensor constructors
    MONOIDAL: a single sort c with `multo`, `multm` and unit `one`
    """
    FROBENIUS = 'frobenius'
    BRAIDED = 'braided'
    MONOIDAL = 'monoidal'


_A, _C = OPEN, CLOSED
FROBENIUS_TYPES: Dict[ObjectExpr, str] = {
    _A: 'a',
    Tensor(_A, _A): 'aa',
    Tensor(Tensor(_A, _A), _A): 'aaxa',
    Tensor(_A, Tensor(_A, _A)): 'axaa',
    UNIT: 'i',
    Tensor(UNIT, _A): 'ja',
    Tensor(_A, UNIT): 'ai',
}
BRAIDED_TYPES: Dict[ObjectExpr, str] = {
    _C: 'c',
    Tensor(_C, _C): 'cc',
    Tensor(Tensor(_C, _C), _C): 'ccxc',
    Tensor(_C, Tensor(_C, _C)): 'cxcc',
}

FROBENIUS_NAMES = {
    GeneratorKind.MU: 'mu', GeneratorKind.ETA: 'eta',
    GeneratorKind.DELTA: 'delta', GeneratorKind.EPSILON: 'epsilon',
    GeneratorKind.ALPHA: 'alpha', GeneratorKind.ALPHA_INV: 'invalpha',
    GeneratorKind.LAMBDA: 'lamb', GeneratorKind.LAMBDA_INV: 'invlamb',
    GeneratorKind.RHO: 'rho', GeneratorKind.RHO_INV: 'invrho',
    GeneratorKind.SIGMA: 'braid', GeneratorKind.SIGMA_INV: 'invbraid',
}
MONOIDAL_NAMES = dict(FROBENIUS_NAMES)
MONOIDAL_NAMES.update({
    GeneratorKind.LAMBDA: 'left', GeneratorKind.LAMBDA_INV: 'invleft',
    GeneratorKind.RHO: 'right', GeneratorKind.RHO_INV: 'invright',
})

_BRAID_SUFFIX = {('c', 'c'): '', ('c', 'cc'): '1', ('cc', 'c'): '2'}
_MULTO = {('c', 'c'): 'multo', ('cc', 'c'): 'multo1', ('c', 'cc'): 'multo2'}
_MULTM = {('c', 'c'): 'multm', ('cc', 'c'): 'multm1', ('c', 'cc'): 'multm2'}

CONSTANT_ORDER = {
    EncodingStyle.FROBENIUS: [
        'alpha', 'invalpha', 'mu', 'eta', 'muid', 'idmu', 'etaid', 'ideta',
        'lamb', 'rho', 'delta', 'deltaid', 'iddelta', 'epsilon', 'invlamb',
        'invrho', 'epsilonid', 'idepsilon', 'id', 'braid', 'invbraid'],
    EncodingStyle.BRAIDED: [
        'alpha', 'invalpha', 'braid', 'up', 'down', 'up1', 'down1', 'invbraid',
        'braid1', 'braid2', 'invbraid1', 'invbraid2', 'mu', 'delta', 'iden',
        'multo', 'multo1', 'multo2', 'multm', 'multm1', 'multm2'],
    EncodingStyle.MONOIDAL: [
        'one', 'alpha', 'invalpha', 'left', 'invleft', 'right', 'invright',
        'iden', 'multo', 'multm', 'braid', 'invbraid', 'mu', 'eta', 'delta',
        'epsilon'],
}
TYPE_ORDER = {
    EncodingStyle.FROBENIUS: ['a', 'aa', 'aaxa', 'axaa', 'ja', 'ai'],
    EncodingStyle.BRAIDED: ['c', 'cc', 'ccxc', 'cxcc'],
    EncodingStyle.MONOIDAL: ['c'],
}
_QUANTIFIER_ORDER = ['X', 'Y', 'Z', 'W']


def _as_closed(obj: ObjectExpr) -> ObjectExpr:
    """Read object variables as C, for naming generic formulas."""
    if isinstance(obj, Tensor):
        return Tensor(_as_closed(obj.left), _as_closed(obj.right))
    if isinstance(obj, ObjVar):
        return _C
    return obj


def _is_identity(term: MorphismTerm) -> bool:
    if isinstance(term, Id):
        return True
    if isinstance(term, Par):
        return _is_identity(term.left) and _is_identity(term.right)
    return False


def _is_structural(term: MorphismTerm) -> bool:
    """A factor built only from associators, unitors and identities, with at least one generator."""
    def generators(t):
        if isinstance(t, Par):
            return generators(t.left) + generators(t.right)
        if isinstance(t, Gen):
            return [t.generator]
        if isinstance(t, Id):
            return []
        return [None]
    found = generators(term)
    return bool(found) and all(g is not None and g.kind.is_structural for g in found)


def _leaf_names(count: int) -> List[str]:
    if count <= len(_QUANTIFIER_ORDER):
        return ['W', 'X', 'Y', 'Z'][len(_QUANTIFIER_ORDER) - count:]
    return [f"X{i}" for i in range(1, count + 1)]


def _quantifier_key(name: str):
    if name in _QUANTIFIER_ORDER:
        return (0, _QUANTIFIER_ORDER.index(name), name)
    return (1, 0, name)


class _Encoder:
    """Shared state while encoding one problem: declared constants and used types."""

    def __init__(self, style: EncodingStyle, strict_tptp: bool):
        self.style = style
        self.strict_tptp = strict_tptp
        self.constants: Dict[str, ThfType] = {}
        self.types: set = set()

    # types

    def sort(self, obj: ObjectExpr) -> TypeName:
        if self.style == EncodingStyle.MONOIDAL:
            name = 'c'
        elif self.style == EncodingStyle.BRAIDED:
            name = BRAIDED_TYPES.get(_as_closed(obj))
        else:
            name = FROBENIUS_TYPES.get(obj)
        if name is None:
            raise Unencodable(f"no {self.style.value} type name for object {format_object(obj)}")
        if self.style == EncodingStyle.FROBENIUS:
            if name == 'i':
                return TypeName('$i')
            if not self.strict_tptp:
                return TypeName('$' + name)
        self.types.add(name)
        return TypeName(name)

    def arrow(self, dom: ObjectExpr, cod: ObjectExpr) -> FunType:
        return FunType((self.sort(dom),), self.sort(cod))

    def constant(self, name: str, typ: ThfType) -> Const:
        known = self.constants.get(name)
        if known is not None and known != typ:
            raise Unencodable(f"constant {name} would need two types")
        self.constants[name] = typ
        return Const(name)

    # objects

    def encode_object(self, obj: ObjectExpr, names: Dict[int, str], counter: List[int]) -> ThfTerm:
        """Encode an object, naming non-unit leaves from `names` by position."""
        if isinstance(obj, Tensor):
            left = self.encode_object(obj.left, names, counter)
            right = self.encode_object(obj.right, names, counter)
            if self.style == EncodingStyle.MONOIDAL:
                c = self.sort(_C)
                ctor = self.constant('multo', FunType((c, c), c))
            else:
                key = (self.sort(obj.left).name, self.sort(obj.right).name)
                if key not in _MULTO:
                    raise Unencodable(f"no tensor constructor for {format_object(obj)}")
                ctor = self.constant(
                    _MULTO[key],
                    FunType((self.sort(obj.left), self.sort(obj.right)), self.sort(obj)))
            return App(ctor, (left, right))
        if isinstance(obj, Atom) and obj.is_unit:
            if self.style != EncodingStyle.MONOIDAL:
                raise Unencodable("the unit object has no braided encoding")
            return self.constant('one', self.sort(UNIT))
        self.sort(obj)
        name = names[counter[0]]
        counter[0] += 1
        return Var(name)

    # morphisms

    def frobenius_factor(self, factor: MorphismTerm, morph_vars: Dict[str, ThfType]) -> ThfTerm:
        dom, cod = typecheck(factor)
        if isinstance(factor, MorphVar):
            morph_vars.setdefault(factor.name, self.arrow(dom, cod))
            return Var(factor.name)
        if isinstance(factor, Id):
            return self.constant('id', self.arrow(dom, cod))
        if isinstance(factor, Gen):
            name = FROBENIUS_NAMES[factor.generator.kind]
        elif isinstance(factor, Par) and factor.left == Id(_A) and isinstance(factor.right, Gen):
            name = 'id' + FROBENIUS_NAMES[factor.right.generator.kind]
        elif isinstance(factor, Par) and factor.right == Id(_A) and isinstance(factor.left, Gen):
            name = FROBENIUS_NAMES[factor.left.generator.kind] + 'id'
        else:
            raise Unencodable(f"no constant for factor {format_term(factor)}")
        return self.constant(name, self.arrow(dom, cod))

    def morphism(self, term: MorphismTerm, morph_vars: Dict[str, ThfType]) -> ThfTerm:
        """Encode a sequential-composition-free term as a function."""
        dom, cod = typecheck(term)
        monoidal = self.style == EncodingStyle.MONOIDAL
        if isinstance(term, MorphVar):
            morph_vars.setdefault(term.name, self.arrow(dom, cod))
            return Var(term.name)
        if isinstance(term, Id):
            if isinstance(term.obj, Tensor) and not monoidal:
                return self.morphism(Par(Id(term.obj.left), Id(term.obj.right)), morph_vars)
            return self.constant('iden', self.arrow(dom, cod))
        if isinstance(term, Gen):
            generator = term.generator
            name = MONOIDAL_NAMES[generator.kind]
            if generator.kind.is_braiding and not monoidal:
                key = tuple(self.sort(p).name for p in generator.params)
                if key not in _BRAID_SUFFIX:
                    raise Unencodable(f"no braiding constant for {format_term(term)}")
                name += _BRAID_SUFFIX[key]
            return self.constant(name, self.arrow(dom, cod))
        if isinstance(term, Par):
            left = self.morphism(term.left, morph_vars)
            right = self.morphism(term.right, morph_vars)
            (l_dom, l_cod), (r_dom, r_cod) = typecheck(term.left), typecheck(term.right)
            l_fun, r_fun = self.arrow(l_dom, l_cod), self.arrow(r_dom, r_cod)
            if monoidal:
                name = 'multm'
            else:
                if l_fun.args[0] != l_fun.result or r_fun.args[0] != r_fun.result:
                    raise Unencodable(f"tensor of non-endomorphisms in {format_term(term)}")
                key = (l_fun.result.name, r_fun.result.name)
                if key not in _MULTM:
                    raise Unencodable(f"no tensor constant for {format_term(term)}")
                name = _MULTM[key]
            ctor = self.constant(name, FunType((l_fun, r_fun), self.arrow(dom, cod)))
            return App(ctor, (left, right))
        raise Unencodable(f"sequential composite inside a factor: {format_term(term)}")

    # formulas

    def side(self, term: MorphismTerm, start: ThfTerm, morph_vars: Dict[str, ThfType]) -> ThfTerm:
        factors = seq_factors(term)
        if self.style == EncodingStyle.FROBENIUS:
            kept = [f for f in factors if not _is_identity(f)]
            if not kept:
                if typecheck(term)[0] == _A:
                    kept = [Id(_A)]
                else:
                    return start
            result = start
            for factor in kept:
                result = App(self.frobenius_factor(factor, morph_vars), (result,))
            return result
        result = start
        for factor in factors:
            result = App(self.morphism(factor, morph_vars), (result,))
        return result

    def equation(self, lhs: MorphismTerm, rhs: MorphismTerm) -> Union[Forall, Equality]:
        dom, _ = typecheck(lhs)
        morph_vars: Dict[str, ThfType] = {}
        if self.style == EncodingStyle.FROBENIUS:
            variables = [('X', self.sort(dom))]
            start: ThfTerm = Var('X')
        else:
            names = _leaf_names(len(leaves(dom)))
            start = self.encode_object(dom, dict(enumerate(names)), [0])
            variables = [(name, self.sort(_C)) for name in sorted(names, key=_quantifier_key)]
        body = Equality(self.side(lhs, start, morph_vars), self.side(rhs, start, morph_vars))
        variables += list(morph_vars.items())
        if not variables:
            return body
        return Forall(tuple(variables), body)

    def action_axiom(self, factor: MorphismTerm) -> Forall:
        """`(f @ obj) = obj'` for a structural factor with fresh leaf variables."""
        fresh = iter(ObjVar(f"v{i}") for i in range(1000))

        def generic(t: MorphismTerm) -> MorphismTerm:
            if isinstance(t, Par):
                return Par(generic(t.left), generic(t.right))
            if isinstance(t, Id):
                return Id(next(fresh))
            g = t.generator
            return Gen(Generator(g.kind, tuple(next(fresh) for _ in g.params)))

        pattern = generic(factor)
        dom, cod = typecheck(pattern)
        dom_leaves = leaves(dom)
        names = _leaf_names(len(dom_leaves))
        by_leaf = {leaf: names[i] for i, leaf in enumerate(dom_leaves)}
        lhs = App(self.morphism(pattern, {}),
                  (self.encode_object(dom, dict(enumerate(names)), [0]),))
        cod_names = {i: by_leaf[leaf] for i, leaf in enumerate(leaves(cod))}
        rhs = self.encode_object(cod, cod_names, [0])
        variables = tuple((name, self.sort(_C)) for name in sorted(names, key=_quantifier_key))
        return Forall(variables, Equality(lhs, rhs))

    def identity_axiom(self) -> Forall:
        c = self.sort(_C)
        return Forall((('X', c),), Equality(App(Const('iden'), (Var('X'),)), Var('X')))

    def distribution_axiom(self, name: str) -> Forall:
        """`((multmK @ F @ G) @ (multoK @ x @ y)) = (multoK @ (F @ x) @ (G @ y))`."""
        c, cc = TypeName('c'), TypeName('cc')
        pair = App(Const('multo'), (Var('X'), Var('Y')))
        if name == 'multm':
            left, right, ctor = Var('X'), Var('Y'), 'multo'
            f_type, g_type, variables = FunType((c,), c), FunType((c,), c), ['X', 'Y']
        elif name == 'multm1':
            left, right, ctor = pair, Var('Z'), 'multo1'
            f_type, g_type, variables = FunType((cc,), cc), FunType((c,), c), ['X', 'Y', 'Z']
        else:
            pair = App(Const('multo'), (Var('Y'), Var('Z')))
            left, right, ctor = Var('X'), pair, 'multo2'
            f_type, g_type, variables = FunType((c,), c), FunType((cc,), cc), ['X', 'Y', 'Z']
        self.constant('multo', FunType((c, c), cc))
        self.types.update(('c', 'cc'))
        if ctor != 'multo':
            triple = 'ccxc' if ctor == 'multo1' else 'cxcc'
            outer = (cc, c) if ctor == 'multo1' else (c, cc)
            self.constant(ctor, FunType(outer, TypeName(triple)))
            self.types.add(triple)
        lhs = App(App(Const(name), (Var('F'), Var('G'))), (App(Const(ctor), (left, right)),))
        rhs = App(Const(ctor), (App(Var('F'), (left,)), App(Var('G'), (right,))))
        quantified = tuple((v, c) for v in variables) + (('F', f_type), ('G', g_type))
        return Forall(quantified, Equality(lhs, rhs))

    def braiding_axioms(self) -> List[Forall]:
        """
        Action of each braiding constant in use on the tensor constructors.

        A strand crossing over another is wrapped in `up`, one crossing
        under in `down`, once per crossing; `up1` and `down1` mark both
        strands of a pair. The markers are involutions and commute with
        every endomorphism of c.
        """
        used = [name for name in _BRAID_ACTIONS if name in self.constants]
        if not used:
            return []
        c = TypeName('c')
        x, y, z = Var('X'), Var('Y'), Var('Z')
        axioms = []
        for name in used:
            dom, image = _BRAID_ACTIONS[name](x, y, z)
            self._declare_markers(dom)
            self._declare_markers(image)
            variables = tuple((v, c) for v in ('X', 'Y', 'Z') if Var(v) in _subterms(dom))
            axioms.append(Forall(variables, Equality(_call(name, dom), image)))
        for name in ('up1', 'down1'):
            if name in self.constants:
                single = name[:-1]
                axioms.append(Forall((('X', c), ('Y', c)), Equality(
                    _call(name, _call('multo', x, y)),
                    _call('multo', _call(single, x), _call(single, y)))))
        self._declare_markers(_call('up', _call('down', x)))
        for name in ('up', 'down'):
            axioms.append(Forall((('X', c),), Equality(_marked(name, x, 2), x)))
        for name in ('up', 'down'):
            axioms.append(Forall((('X', c), ('F', FunType((c,), c))), Equality(
                App(Var('F'), (_call(name, x),)), _call(name, App(Var('F'), (x,))))))
        return axioms

    def _declare_markers(self, term: ThfTerm) -> None:
        for name in _constants(term):
            self.constant(name, _BRAID_SIGNATURES[name])


_SORT_C, _SORT_CC = TypeName('c'), TypeName('cc')
_BRAID_SIGNATURES: Dict[str, FunType] = {
    'up': FunType((_SORT_C,), _SORT_C), 'down': FunType((_SORT_C,), _SORT_C),
    'up1': FunType((_SORT_CC,), _SORT_CC), 'down1': FunType((_SORT_CC,), _SORT_CC),
    'multo': FunType((_SORT_C, _SORT_C), _SORT_CC),
    'multo1': FunType((_SORT_CC, _SORT_C), TypeName('ccxc')),
    'multo2': FunType((_SORT_C, _SORT_CC), TypeName('cxcc')),
}


def _call(name: str, *args: ThfTerm) -> App:
    return App(Const(name), args)


def _marked(name: str, term: ThfTerm, times: int = 1) -> ThfTerm:
    for _ in range(times):
        term = _call(name, term)
    return term


def _subterms(term: ThfTerm) -> List[ThfTerm]:
    found = [term]
    if isinstance(term, App):
        found += _subterms(term.fn)
        for arg in term.args:
            found += _subterms(arg)
    return found


# braiding -> (x, y, z) -> (argument, image)
_BRAID_ACTIONS = {
    'braid': lambda x, y, z: (
        _call('multo', x, y), _call('multo', _marked('up', y), _marked('down', x))),
    'invbraid': lambda x, y, z: (
        _call('multo', x, y), _call('multo', _marked('down', y), _marked('up', x))),
    'braid1': lambda x, y, z: (
        _call('multo2', x, _call('multo', y, z)),
        _call('multo1', _marked('up1', _call('multo', y, z)), _marked('down', x, 2))),
    'invbraid1': lambda x, y, z: (
        _call('multo1', _call('multo', x, y), z),
        _call('multo2', _marked('down', z, 2), _marked('up1', _call('multo', x, y)))),
    'braid2': lambda x, y, z: (
        _call('multo1', _call('multo', x, y), z),
        _call('multo2', _marked('up', z, 2), _marked('down1', _call('multo', x, y)))),
    'invbraid2': lambda x, y, z: (
        _call('multo2', x, _call('multo', y, z)),
        _call('multo1', _marked('down1', _call('multo', y, z)), _marked('up', x, 2))),
}


def _problem_atom(eq: Equation) -> Atom:
    atoms = term_atoms(eq.lhs) | term_atoms(eq.rhs)
    atoms.discard(UNIT)
    if len(atoms) > 1:
        raise Unencodable("equation mixes the open and closed boundary")
    return atoms.pop() if atoms else _C


def _has_object_variables(term: MorphismTerm) -> bool:
    return any(kind == 'obj' for kind, _ in term_variables(term))


def _formula_name(name: str) -> str:
    cleaned = re.sub(r'[^A-Za-z0-9_]', '_', name)
    return cleaned if cleaned[:1].islower() else 'ax_' + cleaned


def _styles_for(atom: Atom, style: Optional[EncodingStyle]) -> List[EncodingStyle]:
    if style is not None:
        return [style]
    if atom == _A:
        return [EncodingStyle.FROBENIUS]
    return [EncodingStyle.BRAIDED, EncodingStyle.MONOIDAL]


def encode_equation(eq: Equation, axioms: Sequence[RewriteRule] = (),
                    strict_tptp: bool = False, style: Optional[EncodingStyle] = None,
                    conjecture_name: str = 'conje',
                    header: Sequence[str] = ()) -> ThfProblem:
    """
    Encode an equation as a THF conjecture, with rules as axioms.

    Equations over A use the Frobenius style. Equations over C use the
    braided style when every object has a braided type name and fall back
    to the single-sorted monoidal style otherwise. Rule patterns are
    instantiated at the equation's atom; a rule `lhs -> rhs` is stated as
    the axiom `rhs = lhs`.

    Args:
        eq: Equation to state as the conjecture
        axioms: Rules to state as axioms
        strict_tptp: Drop the `$` prefix from Frobenius type names and
            declare them
        style: Force an encoding style
        conjecture_name: Formula name of the conjecture
        header: Comment lines for the top of the file

    Raises:
        Unencodable: If some object or factor has no name in the style
    """
    for side in (eq.lhs, eq.rhs):
        if _has_object_variables(side):
            raise Unencodable("object variables cannot be encoded")
    atom = _problem_atom(eq)
    instantiated = [(rule.name, rule.instantiate(atom, keep_morphisms=True)) for rule in axioms]
    failure: Optional[Unencodable] = None
    for candidate in _styles_for(atom, style):
        try:
            return _encode(eq, instantiated, candidate, strict_tptp, conjecture_name, header)
        except Unencodable as exc:
            failure = exc
            logger.debug("%s encoding failed: %s", candidate.value, exc)
    raise failure


def _encode(eq: Equation, axioms: List[Tuple[str, RewriteRule]], style: EncodingStyle,
            strict_tptp: bool, conjecture_name: str, header: Sequence[str]) -> ThfProblem:
    encoder = _Encoder(style, strict_tptp)
    conjecture = encoder.equation(eq.lhs, eq.rhs)
    rule_formulas = [
        AnnotatedFormula(_formula_name(name), Role.AXIOM, encoder.equation(rule.rhs, rule.lhs))
        for name, rule in axioms
    ]

    generated: List[Forall] = []
    if style != EncodingStyle.FROBENIUS:
        sides = [eq.lhs, eq.rhs]
        for _, rule in axioms:
            sides += [rule.rhs, rule.lhs]
        for side in sides:
            for factor in seq_factors(side):
                if _is_structural(factor):
                    axiom = encoder.action_axiom(factor)
                    if axiom not in generated:
                        generated.append(axiom)
        if 'iden' in encoder.constants:
            generated.append(encoder.identity_axiom())
        if style == EncodingStyle.BRAIDED:
            for name in ('multm', 'multm1', 'multm2'):
                if name in encoder.constants:
                    generated.append(encoder.distribution_axiom(name))
            generated.extend(encoder.braiding_axioms())

    formulas: List[AnnotatedFormula] = []
    for name in TYPE_ORDER[style]:
        if name in encoder.types:
            formulas.append(AnnotatedFormula(f"{name}_type", Role.TYPE, TypeDecl(name, TTYPE)))
    order = CONSTANT_ORDER[style]
    for name in sorted(encoder.constants, key=lambda n: (order.index(n) if n in order else len(order), n)):
        formulas.append(AnnotatedFormula(f"{name}_decl", Role.TYPE,
                                         TypeDecl(name, encoder.constants[name])))
    for index, axiom in enumerate(generated, start=1):
        formulas.append(AnnotatedFormula(f"axio{index}", Role.AXIOM, axiom))
    formulas.extend(rule_formulas)
    formulas.append(AnnotatedFormula(conjecture_name, Role.CONJECTURE, conjecture))
    problem = ThfProblem(tuple(formulas), tuple(header))
    problem.check()
    logger.info("Encoded %s problem with %d formulas", style.value, len(formulas))
    return problem


def encodable_axioms(eq: Equation, rules: Iterable[RewriteRule],
                     strict_tptp: bool = False) -> List[RewriteRule]:
    """Rules that can be stated as axioms alongside `eq`, in their given order."""
    kept = []
    for rule in rules:
        try:
            encode_equation(eq, [rule], strict_tptp)
        except Unencodable:
            continue
        kept.append(rule)
    return kept

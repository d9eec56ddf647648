"""
Text syntax for objects, terms and equations.

Grammar (whitespace insensitive):

    object   := factor ('*' factor)*             left associative
    factor   := 'I' | 'A' | 'C' | variable | '(' object ')'
    term     := layer (';' layer)*               diagram order
    layer    := atom ('*' atom)*                 left associative
    atom     := 'id' '[' object ']'
              | generator '~'? '[' object (',' object)* ']'
              | '?' name '[' object ',' object ']'
              | '(' term ')'
    equation := term '=' term

`f ; g` is g ∘ f and `*` binds tighter than `;`, so `f ; g ; h` reads as
h ∘ (g ∘ f). Lowercase names inside brackets are object variables.

Functions:
    parse_object: Parse an object expression
    parse_term: Parse a morphism term
    parse_equation: Parse `lhs = rhs` into a pair of terms
"""

from typing import List, Tuple

from pyparsing import (Forward, Literal, ParseBaseException, ParserElement,
                       Regex, StringEnd, Suppress, ZeroOrMore)

from src.terms import (Atom, Gen, Generator, GeneratorKind, Id, MorphVar,
                       MorphismTerm, ObjVar, ObjectExpr, Par, Seq, Tensor)


class TermSyntaxError(ValueError):
    """Raised for unparseable term text, with a 1-based line and column."""

    def __init__(self, line: int, column: int, expected: str):
        self.line = line
        self.column = column
        self.expected = expected
        super().__init__(f"syntax error at line {line}, column {column}: {expected}")


def _fold_tensor(tokens) -> ObjectExpr:
    result = tokens[0]
    for item in tokens[1:]:
        result = Tensor(result, item)
    return result


def _fold_par(tokens) -> MorphismTerm:
    result = tokens[0]
    for item in tokens[1:]:
        result = Par(result, item)
    return result


def _fold_seq(tokens) -> MorphismTerm:
    result = tokens[0]
    for item in tokens[1:]:
        result = Seq(item, result)
    return result


def _make_generator(tokens) -> Gen:
    name, params = tokens[0], list(tokens[1:])
    inverse = name.endswith('~')
    kind = GeneratorKind.from_spelling(name.rstrip('~'), inverse)
    return Gen(Generator(kind, tuple(params)))


def _build_grammar() -> Tuple[ParserElement, ParserElement, ParserElement]:
    lpar, rpar = Suppress('('), Suppress(')')
    lbrack, rbrack = Suppress('['), Suppress(']')
    comma = Suppress(',')
    star = Suppress('*')

    obj = Forward()
    atom = Regex(r"[IAC](?![A-Za-z0-9_'])").set_parse_action(lambda t: Atom(t[0]))
    variable = Regex(r"[a-z][a-z0-9_']*").set_parse_action(lambda t: ObjVar(t[0]))
    obj_factor = atom | variable | (lpar + obj + rpar)
    obj <<= (obj_factor + ZeroOrMore(star + obj_factor)).set_parse_action(_fold_tensor)

    term = Forward()
    identity = (Suppress(Literal('id') + '[') + obj + rbrack).set_parse_action(
        lambda t: Id(t[0]))
    generator = (
        Regex(r"(mu|eta|delta|epsilon|alpha|lambda|rho|sigma)~?(?=\[)")
        + lbrack + obj + ZeroOrMore(comma + obj) + rbrack
    ).set_parse_action(_make_generator)
    morph_var = (
        Suppress('?') + Regex(r"[A-Za-z][A-Za-z0-9_]*")
        + lbrack + obj + comma + obj + rbrack
    ).set_parse_action(lambda t: MorphVar(t[0], t[1], t[2]))
    term_atom = identity | generator | morph_var | (lpar + term + rpar)
    layer = (term_atom + ZeroOrMore(star + term_atom)).set_parse_action(_fold_par)
    term <<= (layer + ZeroOrMore(Suppress(';') + layer)).set_parse_action(_fold_seq)

    equation = term + Suppress('=') + term
    return obj + StringEnd(), term + StringEnd(), equation + StringEnd()


_OBJECT, _TERM, _EQUATION = _build_grammar()


def _parse(grammar: ParserElement, text: str) -> List:
    try:
        return list(grammar.parse_string(text, parse_all=True))
    except ParseBaseException as exc:
        raise TermSyntaxError(exc.lineno, exc.col, exc.msg)
    except ValueError as exc:
        # Raised by parse actions for malformed generators
        raise TermSyntaxError(1, 1, str(exc))


def parse_object(text: str) -> ObjectExpr:
    return _parse(_OBJECT, text)[0]


def parse_term(text: str) -> MorphismTerm:
    """
    Parse a morphism term.

    Args:
        text: Term text, e.g. `delta[A] ; mu[A]`

    Returns:
        The parsed term (not yet typechecked)

    Raises:
        TermSyntaxError: If the text does not match the grammar
    """
    return _parse(_TERM, text)[0]


def parse_equation(text: str) -> Tuple[MorphismTerm, MorphismTerm]:
    lhs, rhs = _parse(_EQUATION, text)
    return lhs, rhs

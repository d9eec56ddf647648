"""
Object expressions and morphism terms for open-closed cobordisms.

Objects are tensor products of the unit I, the open boundary A and the
closed boundary C. Morphisms are built from generators (Frobenius
structure maps, associator, unitors and the braiding) with sequential
composition and tensor product.

Classes:
    Atom, ObjVar, Tensor: Object expressions
    GeneratorKind: Enumeration of generator families
    Generator: A generator instance with its object parameters
    Gen, Id, Seq, Par, MorphVar: Morphism term nodes
    TypeMismatch: Raised when composition boundaries disagree
    BadPosition: Raised for a path that does not address a subterm

Functions:
    compose: Sequential composition g ∘ f
    tensor: Tensor product f ⊗ g
    typecheck: Compute (dom, cod) of a term
    strictify: Right-associate an object and drop units
    positions: Enumerate subterm paths in preorder
"""

from dataclasses import dataclass
from enum import Enum
from typing import Iterator, List, Tuple, Union


@dataclass(frozen=True)
class Atom:
    """A basic object: I (unit), A (open boundary) or C (closed boundary)."""
    name: str

    def __post_init__(self):
        if self.name not in ('I', 'A', 'C'):
            raise ValueError(f"Unknown atom: {self.name}")

    @property
    def is_unit(self) -> bool:
        return self.name == 'I'


@dataclass(frozen=True)
class ObjVar:
    """An object variable, only allowed inside rule patterns."""
    name: str


@dataclass(frozen=True)
class Tensor:
    left: 'ObjectExpr'
    right: 'ObjectExpr'


ObjectExpr = Union[Atom, ObjVar, Tensor]

UNIT = Atom('I')
OPEN = Atom('A')
CLOSED = Atom('C')


def leaves(obj: ObjectExpr) -> List[ObjectExpr]:
    """Return the non-unit leaves of an object, left to right."""
    if isinstance(obj, Tensor):
        return leaves(obj.left) + leaves(obj.right)
    if isinstance(obj, Atom) and obj.is_unit:
        return []
    return [obj]


def tensor_of(items: List[ObjectExpr]) -> ObjectExpr:
    """Right-nested tensor of a list of objects; I for the empty list."""
    if not items:
        return UNIT
    result = items[-1]
    for item in reversed(items[:-1]):
        result = Tensor(item, result)
    return result


def strictify(obj: ObjectExpr) -> ObjectExpr:
    """
    Normalize an object up to associativity and unit.

    The non-unit leaves are kept in order and right-associated; an object
    with no such leaves becomes I.
    """
    return tensor_of(leaves(obj))


def atoms_in(obj: ObjectExpr) -> set:
    if isinstance(obj, Tensor):
        return atoms_in(obj.left) | atoms_in(obj.right)
    if isinstance(obj, Atom):
        return {obj}
    return set()


class GeneratorKind(Enum):
    """Generator families, valued by their text spelling."""
    MU = 'mu'
    ETA = 'eta'
    DELTA = 'delta'
    EPSILON = 'epsilon'
    ALPHA = 'alpha'
    ALPHA_INV = 'alpha~'
    LAMBDA = 'lambda'
    LAMBDA_INV = 'lambda~'
    RHO = 'rho'
    RHO_INV = 'rho~'
    SIGMA = 'sigma'
    SIGMA_INV = 'sigma~'

    @property
    def arity(self) -> int:
        """Number of object parameters."""
        if self in (GeneratorKind.ALPHA, GeneratorKind.ALPHA_INV):
            return 3
        if self in (GeneratorKind.SIGMA, GeneratorKind.SIGMA_INV):
            return 2
        return 1

    @property
    def is_frobenius(self) -> bool:
        return self in (GeneratorKind.MU, GeneratorKind.ETA,
                        GeneratorKind.DELTA, GeneratorKind.EPSILON)

    @property
    def is_structural(self) -> bool:
        """Associator and unitors; these evaluate to identities."""
        return self in (GeneratorKind.ALPHA, GeneratorKind.ALPHA_INV,
                        GeneratorKind.LAMBDA, GeneratorKind.LAMBDA_INV,
                        GeneratorKind.RHO, GeneratorKind.RHO_INV)

    @property
    def is_braiding(self) -> bool:
        return self in (GeneratorKind.SIGMA, GeneratorKind.SIGMA_INV)

    @staticmethod
    def from_spelling(name: str, inverse: bool = False) -> 'GeneratorKind':
        spelling = name + ('~' if inverse else '')
        try:
            return GeneratorKind(spelling)
        except ValueError:
            raise ValueError(f"Unknown generator: {spelling}")


@dataclass(frozen=True)
class Generator:
    """
    A generator with its object parameters.

    Frobenius generators take a single atom (A or C). The associator takes
    three objects, the braiding two, the unitors one.
    """
    kind: GeneratorKind
    params: Tuple[ObjectExpr, ...]

    def __post_init__(self):
        if len(self.params) != self.kind.arity:
            raise ValueError(
                f"{self.kind.value} expects {self.kind.arity} parameter(s), "
                f"got {len(self.params)}"
            )
        if self.kind.is_frobenius:
            atom = self.params[0]
            if not (isinstance(atom, Atom) and atom.name in ('A', 'C')):
                raise ValueError(f"{self.kind.value} is indexed by A or C")

    @property
    def dom(self) -> ObjectExpr:
        return self._boundary()[0]

    @property
    def cod(self) -> ObjectExpr:
        return self._boundary()[1]

    def _boundary(self) -> Tuple[ObjectExpr, ObjectExpr]:
        k, p = self.kind, self.params
        if k == GeneratorKind.MU:
            return Tensor(p[0], p[0]), p[0]
        if k == GeneratorKind.ETA:
            return UNIT, p[0]
        if k == GeneratorKind.DELTA:
            return p[0], Tensor(p[0], p[0])
        if k == GeneratorKind.EPSILON:
            return p[0], UNIT
        if k == GeneratorKind.ALPHA:
            return Tensor(Tensor(p[0], p[1]), p[2]), Tensor(p[0], Tensor(p[1], p[2]))
        if k == GeneratorKind.ALPHA_INV:
            return Tensor(p[0], Tensor(p[1], p[2])), Tensor(Tensor(p[0], p[1]), p[2])
        if k == GeneratorKind.LAMBDA:
            return Tensor(UNIT, p[0]), p[0]
        if k == GeneratorKind.LAMBDA_INV:
            return p[0], Tensor(UNIT, p[0])
        if k == GeneratorKind.RHO:
            return Tensor(p[0], UNIT), p[0]
        if k == GeneratorKind.RHO_INV:
            return p[0], Tensor(p[0], UNIT)
        if k == GeneratorKind.SIGMA:
            return Tensor(p[0], p[1]), Tensor(p[1], p[0])
        # sigma~ undoes sigma with the same parameters
        return Tensor(p[1], p[0]), Tensor(p[0], p[1])


@dataclass(frozen=True)
class Gen:
    generator: Generator


@dataclass(frozen=True)
class Id:
    obj: ObjectExpr


@dataclass(frozen=True)
class Seq:
    """Sequential composition: `before` runs first, then `after`."""
    after: 'MorphismTerm'
    before: 'MorphismTerm'


@dataclass(frozen=True)
class Par:
    left: 'MorphismTerm'
    right: 'MorphismTerm'


@dataclass(frozen=True)
class MorphVar:
    """A morphism variable with a fixed type, for patterns and naturality."""
    name: str
    dom: ObjectExpr
    cod: ObjectExpr


MorphismTerm = Union[Gen, Id, Seq, Par, MorphVar]
Path = Tuple[int, ...]


class TypeMismatch(ValueError):
    """Raised when an object boundary does not match where it is plugged in."""

    def __init__(self, expected: ObjectExpr, actual: ObjectExpr, path: Path):
        self.expected = expected
        self.actual = actual
        self.path = path
        super().__init__(
            f"type mismatch at {format_path(path)}: expected "
            f"{format_object(expected)}, got {format_object(actual)}"
        )


class BadPosition(ValueError):
    """Raised when a path does not address a subterm."""

    def __init__(self, path: Path):
        self.path = path
        super().__init__(f"no subterm at position {format_path(path)}")


def gen(kind: GeneratorKind, *params: ObjectExpr) -> Gen:
    """Shorthand for a generator term."""
    return Gen(Generator(kind, tuple(params)))


def typecheck(term: MorphismTerm, strict: bool = False,
              path: Path = ()) -> Tuple[ObjectExpr, ObjectExpr]:
    """
    Compute the (dom, cod) pair of a term.

    Children are checked before their parent, the first child first, so the
    reported mismatch is the leftmost-innermost one.

    Args:
        term: Term to check
        strict: Compare objects up to associativity and unit, and return
            strictified boundaries
        path: Position of `term` inside an enclosing term

    Returns:
        Tuple of (domain, codomain)

    Raises:
        TypeMismatch: If a sequential composition has mismatched boundaries
    """
    if isinstance(term, Seq):
        a_dom, a_cod = typecheck(term.after, strict, path + (0,))
        b_dom, b_cod = typecheck(term.before, strict, path + (1,))
        if a_dom != b_cod:
            raise TypeMismatch(a_dom, b_cod, path)
        return b_dom, a_cod
    if isinstance(term, Par):
        l_dom, l_cod = typecheck(term.left, strict, path + (0,))
        r_dom, r_cod = typecheck(term.right, strict, path + (1,))
        dom, cod = Tensor(l_dom, r_dom), Tensor(l_cod, r_cod)
    elif isinstance(term, Gen):
        dom, cod = term.generator.dom, term.generator.cod
    elif isinstance(term, Id):
        dom = cod = term.obj
    elif isinstance(term, MorphVar):
        dom, cod = term.dom, term.cod
    else:
        raise TypeError(f"Not a morphism term: {term!r}")
    if strict:
        return strictify(dom), strictify(cod)
    return dom, cod


def compose(g: MorphismTerm, f: MorphismTerm, strict: bool = False) -> Seq:
    """Build g ∘ f, checking that cod(f) matches dom(g)."""
    g_dom, _ = typecheck(g, strict)
    _, f_cod = typecheck(f, strict)
    if g_dom != f_cod:
        raise TypeMismatch(g_dom, f_cod, ())
    return Seq(g, f)


def tensor(f: MorphismTerm, g: MorphismTerm) -> Par:
    """Build f ⊗ g; always well typed when both factors are."""
    typecheck(f)
    typecheck(g)
    return Par(f, g)


def then(*terms: MorphismTerm) -> MorphismTerm:
    """Compose in diagram order: the first term runs first."""
    result = terms[0]
    for term in terms[1:]:
        result = compose(term, result)
    return result


def children(term: MorphismTerm) -> Tuple[MorphismTerm, ...]:
    if isinstance(term, Seq):
        return (term.after, term.before)
    if isinstance(term, Par):
        return (term.left, term.right)
    return ()


def with_children(term: MorphismTerm, kids: Tuple[MorphismTerm, ...]) -> MorphismTerm:
    if isinstance(term, Seq):
        return Seq(kids[0], kids[1])
    if isinstance(term, Par):
        return Par(kids[0], kids[1])
    return term


def positions(term: MorphismTerm, path: Path = ()) -> Iterator[Path]:
    """Yield every subterm path, leftmost-outermost first."""
    yield path
    for index, child in enumerate(children(term)):
        yield from positions(child, path + (index,))


def subterm_at(term: MorphismTerm, path: Path) -> MorphismTerm:
    current = term
    for index in path:
        kids = children(current)
        if index >= len(kids):
            raise BadPosition(path)
        current = kids[index]
    return current


def replace_at(term: MorphismTerm, path: Path, replacement: MorphismTerm) -> MorphismTerm:
    """Return a copy of `term` with the subterm at `path` replaced."""
    if not path:
        return replacement
    kids = list(children(term))
    if path[0] >= len(kids):
        raise BadPosition(path)
    kids[path[0]] = replace_at(kids[path[0]], path[1:], replacement)
    return with_children(term, tuple(kids))


def term_size(term: MorphismTerm) -> int:
    """Number of nodes in the term tree."""
    return 1 + sum(term_size(child) for child in children(term))


def term_atoms(term: MorphismTerm) -> set:
    """All atoms mentioned by a term, including unit."""
    if isinstance(term, (Seq, Par)):
        return term_atoms(children(term)[0]) | term_atoms(children(term)[1])
    if isinstance(term, Gen):
        found = set()
        for param in term.generator.params:
            found |= atoms_in(param)
        return found
    if isinstance(term, Id):
        return atoms_in(term.obj)
    if isinstance(term, MorphVar):
        return atoms_in(term.dom) | atoms_in(term.cod)
    return set()


def format_path(path: Path) -> str:
    """Render a path as `root` or dotted child indices."""
    if not path:
        return 'root'
    return '.'.join(str(i) for i in path)


def parse_path(text: str) -> Path:
    text = text.strip()
    if text == 'root':
        return ()
    try:
        return tuple(int(part) for part in text.split('.'))
    except ValueError:
        raise ValueError(f"Invalid position: {text}")


def format_object(obj: ObjectExpr) -> str:
    """
    Render an object; `*` is read left-associatively so only a tensor in
    the right operand needs parentheses.
    """
    if isinstance(obj, Tensor):
        right = format_object(obj.right)
        if isinstance(obj.right, Tensor):
            right = f"({right})"
        return f"{format_object(obj.left)}*{right}"
    return obj.name


def _format_generator(generator: Generator) -> str:
    params = ','.join(format_object(p) for p in generator.params)
    return f"{generator.kind.value}[{params}]"


def format_term(term: MorphismTerm) -> str:
    """
    Render a term in the text syntax accepted by `src.syntax.parse_term`.

    `;` composes in diagram order (`f ; g` is g ∘ f) and binds looser
    than `*`.
    """
    if isinstance(term, Gen):
        return _format_generator(term.generator)
    if isinstance(term, Id):
        return f"id[{format_object(term.obj)}]"
    if isinstance(term, MorphVar):
        return f"?{term.name}[{format_object(term.dom)},{format_object(term.cod)}]"
    if isinstance(term, Seq):
        after = format_term(term.after)
        if isinstance(term.after, Seq):
            after = f"({after})"
        return f"{format_term(term.before)} ; {after}"
    left = format_term(term.left)
    if isinstance(term.left, Seq):
        left = f"({left})"
    right = format_term(term.right)
    if isinstance(term.right, (Seq, Par)):
        right = f"({right})"
    return f"{left} * {right}"

"""
Named equations: coherence laws, Frobenius laws and the theorem corpus.

A preset is written `name@p1,p2,...` where the parameters are objects.
Parameters may be omitted: monoidal and braided presets then use object
variables, Frobenius presets use the open boundary A.

Functions:
    preset_equation: Build a named equation
    resolve_equation: Accept either `lhs = rhs` text or a preset reference
    pairing, copairing: The open pairing ε∘μ and copairing Δ∘η
    corpus: The theorem corpus at one atom
"""

from dataclasses import dataclass
from typing import Dict, List, Tuple

from src.axioms import Equation
from src.syntax import parse_equation, parse_object
from src.terms import (OPEN, Atom, GeneratorKind, MorphismTerm, ObjectExpr,
                       format_object, gen, then)


class PresetError(ValueError):
    """Raised for unknown presets or wrong parameter counts."""


@dataclass(frozen=True)
class Preset:
    name: str
    params: Tuple[str, ...]
    template: str
    description: str = ''

    @property
    def frobenius(self) -> bool:
        return self.params == ('o',)

    def defaults(self) -> List[str]:
        return ['A'] if self.frobenius else list(self.params)

    def equation(self, args: List[ObjectExpr]) -> Equation:
        if len(args) != len(self.params):
            raise PresetError(
                f"{self.name} takes {len(self.params)} object(s), got {len(args)}")
        values = {p: f"({format_object(a)})" for p, a in zip(self.params, args)}
        text = _expand(self.template).format(**values)
        lhs, rhs = parse_equation(text)
        suffix = ','.join(format_object(a) for a in args)
        return Equation(lhs, rhs, f"{self.name}@{suffix}" if suffix else self.name)


_SHORTHANDS = {
    'M': 'mu[{o}]', 'D': 'delta[{o}]', 'E': 'eta[{o}]', 'EP': 'epsilon[{o}]',
    'I': 'id[{o}]', 'AL': 'alpha[{o},{o},{o}]', 'AI': 'alpha~[{o},{o},{o}]',
    'L': 'lambda[{o}]', 'LI': 'lambda~[{o}]', 'R': 'rho[{o}]', 'RI': 'rho~[{o}]',
}


def _expand(template: str) -> str:
    """Replace Frobenius shorthand tokens (`M`, `D*I`, ...) in a template."""
    out = []
    for token in template.replace('*', ' * ').replace(';', ' ; ').split():
        out.append(_SHORTHANDS.get(token, token))
    return ' '.join(out)


_CONJ5 = "RI ; I*E ; I*D ; AI ; M*I ; EP*I ; L"
_CONJ6 = "LI ; E*I ; D*I ; AL ; I*M ; I*EP ; R"
_CONJ10 = "RI ; I*E ; I*D ; AI ; M*I"
_CONJ11 = "LI ; E*I ; D*I ; AL ; I*M"
_CONJ13 = "D ; D*I ; AL ; AI ; M*I"
_CONJ16 = "I*D ; AI ; AL ; I*M ; M"

_CORPUS = [
    ('conj', "E*I ; D*I ; AL ; I*M ; I*EP = E*I ; M ; D ; I*EP"),
    ('conj2', "LI ; E*I ; M ; D ; I*EP ; R = I"),
    ('conj3', "I*E ; I*D ; AI ; M*I ; EP*I = I*E ; M ; D ; EP*I"),
    ('conj4', "RI ; I*E ; M ; D ; EP*I ; L = I"),
    ('conj5', f"{_CONJ5} = I"),
    ('conj6', f"{_CONJ6} = I"),
    ('conj7', f"{_CONJ5} = {_CONJ6}"),
    ('conj8', "M*I ; M ; EP = AL ; I*M ; M ; EP"),
    ('conj9', "E ; D ; D*I ; AL = E ; D ; I*D"),
    ('conj10', f"{_CONJ10} = D"),
    ('conj11', f"{_CONJ11} = D"),
    ('conj12', f"{_CONJ10} = {_CONJ11}"),
    ('conj13', f"{_CONJ13} = D ; M ; D"),
    ('conj14', f"{_CONJ13} = D ; I*D ; I*M"),
    ('conj15', "D ; I*D ; I*M = D ; M ; D"),
    ('conj16', f"{_CONJ16} = D*I ; M*I ; M"),
    ('conj17', "D*I ; M*I ; M = M ; D ; M"),
    ('conj18', f"{_CONJ16} = M ; D ; M"),
]

_PRESETS: List[Preset] = [
    Preset('pentagon', ('w', 'x', 'y', 'z'),
           "alpha[{w},{x},{y}] * id[{z}] ; alpha[{w},{x}*{y},{z}] ; id[{w}] * alpha[{x},{y},{z}]"
           " = alpha[{w}*{x},{y},{z}] ; alpha[{w},{x},{y}*{z}]",
           "Mac Lane pentagon"),
    Preset('triangle', ('x', 'y'),
           "alpha[{x},I,{y}] ; id[{x}] * lambda[{y}] = rho[{x}] * id[{y}]",
           "Triangle identity"),
    Preset('frobenius', ('o',),
           "M ; D = I*D ; AI ; M*I", "Frobenius relation"),
    Preset('frobenius-mirror', ('o',),
           "M ; D = D*I ; AL ; I*M", "Mirrored Frobenius relation"),
    Preset('assoc', ('o',), "M*I ; M = AL ; I*M ; M", "Associativity"),
    Preset('coassoc', ('o',), "D ; D*I ; AL = D ; I*D", "Coassociativity"),
    Preset('zigzag', ('o',), f"{_CONJ5} = I", "Zig-zag identity"),
    Preset('pairing', ('o',), "M*I ; M ; EP = AL ; I*M ; M ; EP",
           "Associativity of the pairing"),
    Preset('copairing', ('o',), "E ; D ; D*I ; AL = E ; D ; I*D",
           "Coassociativity of the copairing"),
    Preset('braid-inverse', ('x', 'y'),
           "sigma[{x},{y}] ; sigma~[{x},{y}] = id[{x}] * id[{y}]",
           "Braiding is invertible"),
    Preset('braid-naturality', ('x', 'y'),
           "?F[{x},{x}] * ?G[{y},{y}] ; sigma[{x},{y}] = sigma[{x},{y}] ; ?G[{y},{y}] * ?F[{x},{x}]",
           "Naturality of the braiding"),
    Preset('hexagon1', ('x', 'y', 'z'),
           "alpha~[{x},{y},{z}] ; sigma[{x},{y}] * id[{z}] ; alpha[{y},{x},{z}]"
           " ; id[{y}] * sigma[{x},{z}] ; alpha~[{y},{z},{x}] = sigma[{x},{y}*{z}]",
           "First hexagon"),
    Preset('hexagon2', ('x', 'y', 'z'),
           "alpha[{x},{y},{z}] ; id[{x}] * sigma[{y},{z}] ; alpha~[{x},{z},{y}]"
           " ; sigma[{x},{z}] * id[{y}] ; alpha[{z},{x},{y}] = sigma[{x}*{y},{z}]",
           "Second hexagon"),
    Preset('yang-baxter', ('x', 'y', 'z'),
           "sigma[{x},{y}] * id[{z}] ; alpha[{y},{x},{z}] ; id[{y}] * sigma[{x},{z}]"
           " ; alpha~[{y},{z},{x}] ; sigma[{y},{z}] * id[{x}]"
           " = alpha[{x},{y},{z}] ; id[{x}] * sigma[{y},{z}] ; alpha~[{x},{z},{y}]"
           " ; sigma[{x},{z}] * id[{y}] ; alpha[{z},{x},{y}] ; id[{z}] * sigma[{x},{y}]"
           " ; alpha~[{z},{y},{x}]",
           "Yang-Baxter equation"),
] + [Preset(name, ('o',), template, "Theorem corpus") for name, template in _CORPUS]

PRESETS: Dict[str, Preset] = {preset.name: preset for preset in _PRESETS}
CORPUS_NAMES = tuple(name for name, _ in _CORPUS)


def preset_equation(name: str, args: List[str] = None) -> Equation:
    """
    Build a preset equation.

    Args:
        name: Preset name, e.g. `yang-baxter`
        args: Object texts; defaults per preset when omitted

    Raises:
        PresetError: If the name is unknown or the argument count is wrong
    """
    preset = PRESETS.get(name)
    if preset is None:
        raise PresetError(f"unknown preset '{name}' (known: {', '.join(PRESETS)})")
    texts = args if args else preset.defaults()
    return preset.equation([parse_object(text) for text in texts])


def resolve_equation(text: str) -> Equation:
    """
    Turn `lhs = rhs` or `name[@objects]` into a typechecked Equation.

    Raises:
        TermSyntaxError, TypeMismatch, PresetError
    """
    if '=' in text:
        lhs, rhs = parse_equation(text)
        return Equation(lhs, rhs)
    name, _, params = text.strip().partition('@')
    args = [p.strip() for p in params.split(',')] if params else []
    return preset_equation(name, args)


def pairing(atom: Atom = OPEN) -> MorphismTerm:
    return then(gen(GeneratorKind.MU, atom), gen(GeneratorKind.EPSILON, atom))


def copairing(atom: Atom = OPEN) -> MorphismTerm:
    return then(gen(GeneratorKind.ETA, atom), gen(GeneratorKind.DELTA, atom))


def corpus(atom: Atom = OPEN) -> List[Equation]:
    return [preset_equation(name, [atom.name]) for name in CORPUS_NAMES]

"""
Bigraded rank tables and the filtered Poincaré polynomial of a tangle.

A rank table lists states |r, k⟩ with the rank of the homology group in
homological degree r and filtration degree k. The operators t^F, A^P and
M act diagonally on these states; their product U turns each state into
the monomial rank·t^r·A^k, and summing over states gives the tangle
polynomial.

Classes:
    LaurentPoly2: Integer Laurent polynomial in t and A
    HomologyState: One (r, k, rank) entry with an optional generator label
    RankTable: A named list of states with unique (r, k)
    RankTableError: Raised for invalid tables or table files

Functions:
    apply_tF, apply_AP, apply_M: The three diagonal actions
    apply_U: Their composite
    tangle_polynomial: Sum of rank·t^r·A^k over a table
    bar_natan_table, khovanov_table: Built-in tables
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Tuple

import sympy

logger = logging.getLogger(__name__)

T, A = sympy.symbols('t A')


class LaurentPoly2:
    """
    Finite sum of c·t^i·A^j with integer c, i and j.

    Zero coefficients are never stored. Instances are immutable.
    """

    __slots__ = ('_terms',)

    def __init__(self, terms: Optional[Dict[Tuple[int, int], int]] = None):
        cleaned = {}
        for (t_exp, a_exp), coeff in (terms or {}).items():
            if int(coeff) != coeff:
                raise ValueError(f"non-integer coefficient {coeff}")
            if coeff:
                cleaned[(int(t_exp), int(a_exp))] = int(coeff)
        self._terms = cleaned

    @staticmethod
    def zero() -> 'LaurentPoly2':
        return LaurentPoly2()

    @staticmethod
    def one() -> 'LaurentPoly2':
        return LaurentPoly2({(0, 0): 1})

    @staticmethod
    def monomial(coeff: int, t_exp: int, a_exp: int) -> 'LaurentPoly2':
        return LaurentPoly2({(t_exp, a_exp): coeff})

    @property
    def terms(self) -> Dict[Tuple[int, int], int]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __add__(self, other: 'LaurentPoly2') -> 'LaurentPoly2':
        result = dict(self._terms)
        for key, coeff in other._terms.items():
            result[key] = result.get(key, 0) + coeff
        return LaurentPoly2(result)

    def __neg__(self) -> 'LaurentPoly2':
        return LaurentPoly2({key: -coeff for key, coeff in self._terms.items()})

    def __sub__(self, other: 'LaurentPoly2') -> 'LaurentPoly2':
        return self + (-other)

    def __mul__(self, other: 'LaurentPoly2') -> 'LaurentPoly2':
        result: Dict[Tuple[int, int], int] = {}
        for (t1, a1), c1 in self._terms.items():
            for (t2, a2), c2 in other._terms.items():
                key = (t1 + t2, a1 + a2)
                result[key] = result.get(key, 0) + c1 * c2
        return LaurentPoly2(result)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPoly2):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def triples(self) -> List[Tuple[int, int, int]]:
        """(t exponent, A exponent, coefficient), ascending t then A."""
        return [(t_exp, a_exp, self._terms[(t_exp, a_exp)])
                for t_exp, a_exp in sorted(self._terms)]

    def to_sympy(self) -> sympy.Expr:
        return sympy.Add(*[coeff * T ** t_exp * A ** a_exp
                           for t_exp, a_exp, coeff in self.triples()])

    @staticmethod
    def from_sympy(expr) -> 'LaurentPoly2':
        """
        Convert an expression in the symbols `t` and `A`.

        Raises:
            ValueError: If the expression is not an integer Laurent polynomial
        """
        terms: Dict[Tuple[int, int], int] = {}
        for monomial, coeff in sympy.expand(expr).as_coefficients_dict().items():
            powers = monomial.as_powers_dict()
            if set(powers) - {T, A, sympy.S.One}:
                raise ValueError(f"unexpected symbols in {monomial}")
            exponents = [sympy.sympify(powers.get(symbol, 0)) for symbol in (T, A)]
            if not all(exponent.is_integer for exponent in exponents):
                raise ValueError(f"non-integer exponent in {monomial}")
            key = (int(exponents[0]), int(exponents[1]))
            terms[key] = terms.get(key, 0) + coeff
        return LaurentPoly2(terms)

    def __str__(self) -> str:
        if not self._terms:
            return '0'
        parts = []
        for index, (t_exp, a_exp, coeff) in enumerate(self.triples()):
            factors = []
            for symbol, exponent in (('t', t_exp), ('A', a_exp)):
                if exponent == 1:
                    factors.append(symbol)
                elif exponent != 0:
                    factors.append(f"{symbol}^{exponent}")
            magnitude = abs(coeff)
            if not factors:
                body = str(magnitude)
            elif magnitude == 1:
                body = '*'.join(factors)
            else:
                body = '*'.join([str(magnitude)] + factors)
            if index == 0:
                parts.append(body if coeff > 0 else f"-{body}")
            else:
                parts.append(f"{'+' if coeff > 0 else '-'} {body}")
        return ' '.join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly2({self})"


class RankTableError(ValueError):
    """Raised for invalid rank tables."""


@dataclass(frozen=True)
class HomologyState:
    r: int
    k: int
    rank: int
    label: str = ''

    def __post_init__(self):
        if self.rank < 0:
            raise RankTableError(f"negative rank at (r={self.r}, k={self.k})")


@dataclass
class RankTable:
    name: str
    states: List[HomologyState] = field(default_factory=list)

    def __post_init__(self):
        seen = set()
        for state in self.states:
            key = (state.r, state.k)
            if key in seen:
                raise RankTableError(
                    f"duplicate state (r={state.r}, k={state.k}) in table {self.name}")
            seen.add(key)

    def __len__(self) -> int:
        return len(self.states)

    def to_text(self) -> str:
        lines = [f"# {self.name}", "# r k rank [label]"]
        for state in self.states:
            line = f"{state.r} {state.k} {state.rank}"
            if state.label:
                line += f" {state.label}"
            lines.append(line)
        return '\n'.join(lines) + '\n'

    @staticmethod
    def from_text(text: str, name: str = 'table') -> 'RankTable':
        """
        Parse `r k rank [label]` lines; `#` starts a comment.

        Raises:
            RankTableError: With the offending line number
        """
        states = []
        for number, raw in enumerate(text.splitlines(), start=1):
            line = raw.split('#', 1)[0].strip()
            if not line:
                continue
            fields = line.split(None, 3)
            if len(fields) < 3:
                raise RankTableError(f"line {number}: expected 'r k rank [label]'")
            try:
                r, k, rank = (int(value) for value in fields[:3])
            except ValueError:
                raise RankTableError(f"line {number}: r, k and rank must be integers")
            states.append(HomologyState(r, k, rank, fields[3] if len(fields) > 3 else ''))
        return RankTable(name, states)

    @staticmethod
    def from_file(filepath: str) -> 'RankTable':
        path = Path(filepath)
        with open(path, encoding='utf-8') as f:
            return RankTable.from_text(f.read(), path.stem)


def apply_tF(poly: LaurentPoly2, state: HomologyState) -> Tuple[LaurentPoly2, HomologyState]:
    """t^F multiplies by t^r."""
    return poly * LaurentPoly2.monomial(1, state.r, 0), state


def apply_AP(poly: LaurentPoly2, state: HomologyState) -> Tuple[LaurentPoly2, HomologyState]:
    """A^P multiplies by A^k."""
    return poly * LaurentPoly2.monomial(1, 0, state.k), state


def apply_M(poly: LaurentPoly2, state: HomologyState) -> Tuple[LaurentPoly2, HomologyState]:
    """M multiplies by the rank."""
    return poly * LaurentPoly2.monomial(state.rank, 0, 0), state


def apply_U(state: HomologyState) -> Tuple[LaurentPoly2, HomologyState]:
    """
    U = t^F A^P M on one state.

    Returns:
        (rank·t^r·A^k, state); the state is an eigenstate and is unchanged
    """
    poly, current = LaurentPoly2.one(), state
    for action in (apply_M, apply_AP, apply_tF):
        poly, current = action(poly, current)
    return poly, current


def expectation_sum(table: RankTable) -> LaurentPoly2:
    """Σ ⟨s|U|s⟩ over the table's states."""
    total = LaurentPoly2.zero()
    for state in table.states:
        total = total + apply_U(state)[0]
    return total


def tangle_polynomial(table: RankTable) -> LaurentPoly2:
    """Filtered Poincaré polynomial Σ rank·t^r·A^k, summed directly."""
    terms: Dict[Tuple[int, int], int] = {}
    for state in table.states:
        key = (state.r, state.k)
        terms[key] = terms.get(key, 0) + state.rank
    result = LaurentPoly2(terms)
    logger.debug("Polynomial of %s: %s", table.name, result)
    return result


def _table(name: str, rows: Iterable[Tuple[int, int, int, str]]) -> RankTable:
    return RankTable(name, [HomologyState(r, k, rank, label) for k, r, rank, label in rows])


def bar_natan_table() -> RankTable:
    """States of the Bar-Natan kind, listed as (k, r, rank, generators)."""
    return _table('bar-natan', [
        (2, 0, 1, '1⊗y + y⊗y'),
        (4, 0, 1, '1⊗y + y⊗1'),
        (8, 2, 1, '1⊗x⊗1'),
        (12, 2, 1, '1⊗1⊗1'),
    ])


def khovanov_table() -> RankTable:
    """States of the Khovanov kind, listed as (k, r, rank, generators)."""
    return _table('khovanov', [
        (2, 0, 1, 'y⊗y'),
        (4, 0, 1, '1⊗y + y⊗1'),
        (6, 1, 1, '(1⊗y, 1⊗y)'),
        (8, 1, 1, '(1⊗1, 1⊗1)'),
        (8, 2, 1, 'y⊗1⊗y'),
        (10, 2, 2, '1⊗1⊗y, y⊗1⊗1'),
        (12, 2, 1, '1⊗1⊗1'),
    ])


TABLE_REGISTRY = {
    'bar-natan': bar_natan_table,
    'barnatan': bar_natan_table,
    'khovanov': khovanov_table,
}


def load_table(name_or_path: str) -> RankTable:
    """
    Resolve a built-in table name or read a table file.

    Raises:
        RankTableError: If the name is unknown and no such file exists
    """
    if name_or_path in TABLE_REGISTRY:
        return TABLE_REGISTRY[name_or_path]()
    if not Path(name_or_path).exists():
        raise RankTableError(
            f"unknown table '{name_or_path}' (known: {', '.join(TABLE_REGISTRY)})")
    return RankTable.from_file(name_or_path)

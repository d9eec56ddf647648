"""
Loop braid words and their permutation images.

The loop braid group on n strands is generated by σ_i (braiding) and
ρ_i (permuting), 1 ≤ i < n. Words are freely reduced; ρ_i is an
involution so ρ_i⁻¹ is stored as ρ_i.

Classes:
    GeneratorType: SIGMA or RHO
    Letter: One generator with its power
    LoopBraidWord: A word on a fixed number of strands
    PermutationRep: Images of the generators in the symmetric group
    RelationCheck: Outcome of one relation

Functions:
    concat_reduce: Concatenate and freely reduce
    to_permutations: Image of a word in the symmetric group
    check_relations: Verify the defining relations in the representation
    parse_word, format_word: Word text syntax `s1 s2^-1 r1`
"""

import logging
import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Tuple

from sympy.combinatorics import Permutation

logger = logging.getLogger(__name__)


class GeneratorType(Enum):
    SIGMA = 's'
    RHO = 'r'


class StrandMismatch(ValueError):
    """Raised when combining words on different strand counts."""


class WordSyntaxError(ValueError):
    """Raised for malformed word text."""


@dataclass(frozen=True)
class Letter:
    kind: GeneratorType
    index: int
    power: int = 1

    def __post_init__(self):
        if self.power not in (1, -1):
            raise ValueError(f"power must be 1 or -1, got {self.power}")
        if self.kind == GeneratorType.RHO and self.power == -1:
            object.__setattr__(self, 'power', 1)

    def inverse(self) -> 'Letter':
        return Letter(self.kind, self.index, -self.power)

    def cancels(self, other: 'Letter') -> bool:
        return other == self.inverse()

    def __str__(self) -> str:
        suffix = '^-1' if self.power == -1 else ''
        return f"{self.kind.value}{self.index}{suffix}"


def free_reduce(letters: List[Letter], from_right: bool = False) -> List[Letter]:
    """Cancel adjacent inverse pairs with a stack, scanning in either direction."""
    stack: List[Letter] = []
    sequence = reversed(letters) if from_right else letters
    for letter in sequence:
        if stack and stack[-1].cancels(letter):
            stack.pop()
        else:
            stack.append(letter)
    if from_right:
        stack.reverse()
    return stack


@dataclass(frozen=True)
class LoopBraidWord:
    n: int
    letters: Tuple[Letter, ...] = ()

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("strand count must be at least 1")
        for letter in self.letters:
            if not 1 <= letter.index < self.n:
                raise ValueError(
                    f"generator index {letter.index} out of range for {self.n} strands")

    @staticmethod
    def of(n: int, *letters: Letter) -> 'LoopBraidWord':
        return LoopBraidWord(n, tuple(letters))

    def reduced(self, from_right: bool = False) -> 'LoopBraidWord':
        return LoopBraidWord(self.n, tuple(free_reduce(list(self.letters), from_right)))

    def inverse(self) -> 'LoopBraidWord':
        return LoopBraidWord(self.n, tuple(l.inverse() for l in reversed(self.letters)))

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return format_word(self)


def sigma(index: int, power: int = 1) -> Letter:
    return Letter(GeneratorType.SIGMA, index, power)


def rho(index: int) -> Letter:
    return Letter(GeneratorType.RHO, index)


def concat_reduce(w1: LoopBraidWord, w2: LoopBraidWord) -> LoopBraidWord:
    """
    Concatenate two words and freely reduce.

    Raises:
        StrandMismatch: If the strand counts differ
    """
    if w1.n != w2.n:
        raise StrandMismatch(f"cannot combine words on {w1.n} and {w2.n} strands")
    return LoopBraidWord(w1.n, w1.letters + w2.letters).reduced()


@dataclass
class PermutationRep:
    """
    Images of σ_i and ρ_i in the symmetric group on n points.

    The default assignment sends both σ_i and ρ_i to the transposition
    (i, i+1); this quotient cannot tell σ_i from ρ_i.
    """
    n: int
    images: Dict[Tuple[GeneratorType, int], Permutation] = field(default_factory=dict)

    def __post_init__(self):
        if not self.images:
            for i in range(1, self.n):
                swap = Permutation(i - 1, i, size=self.n)
                self.images[(GeneratorType.SIGMA, i)] = swap
                self.images[(GeneratorType.RHO, i)] = swap

    def image(self, letter: Letter) -> Permutation:
        perm = self.images[(letter.kind, letter.index)]
        return perm if letter.power == 1 else ~perm

    def word_image(self, word: LoopBraidWord) -> Permutation:
        # Letters act left to right: p * q applies p first
        result = Permutation(self.n - 1)
        for letter in word.letters:
            result = result * self.image(letter)
        return result


def to_permutations(word: LoopBraidWord, rep: Optional[PermutationRep] = None) -> Permutation:
    return (rep or PermutationRep(word.n)).word_image(word)


def cycle_notation(perm: Permutation) -> str:
    """1-based disjoint cycles such as `(1 3)`; the identity is `()`."""
    cycles = perm.cyclic_form
    if not cycles:
        return '()'
    return ''.join('(' + ' '.join(str(point + 1) for point in cycle) + ')' for cycle in cycles)


@dataclass(frozen=True)
class RelationCheck:
    name: str
    lhs: LoopBraidWord
    rhs: LoopBraidWord
    holds: Optional[bool]
    note: str = ''

    @property
    def relator(self) -> LoopBraidWord:
        """lhs · rhs⁻¹, unreduced."""
        return LoopBraidWord(self.lhs.n, self.lhs.letters + self.rhs.inverse().letters)


def _relation_words(n: int) -> List[Tuple[str, List[Letter], List[Letter]]]:
    relations = []
    for i in range(1, n):
        relations.append((f"rho{i}^2 = 1", [rho(i), rho(i)], []))
    for i in range(1, n - 1):
        j = i + 1
        relations.append((f"braid s{i} s{j}",
                          [sigma(i), sigma(j), sigma(i)], [sigma(j), sigma(i), sigma(j)]))
        relations.append((f"braid r{i} r{j}",
                          [rho(i), rho(j), rho(i)], [rho(j), rho(i), rho(j)]))
        relations.append((f"mixed r{i} r{j} s{i}",
                          [rho(i), rho(j), sigma(i)], [sigma(j), rho(i), rho(j)]))
        relations.append((f"mixed s{i} s{j} r{i}",
                          [sigma(i), sigma(j), rho(i)], [rho(j), sigma(i), sigma(j)]))
    for i in range(1, n):
        for j in range(i + 2, n):
            for a_name, a in (('s', sigma(i)), ('r', rho(i))):
                for b_name, b in (('s', sigma(j)), ('r', rho(j))):
                    relations.append((f"commute {a_name}{i} {b_name}{j}", [a, b], [b, a]))
    return relations


def check_relations(n: int, rep: Optional[PermutationRep] = None) -> List[RelationCheck]:
    """
    Check the loop braid relations on n strands in a permutation representation.

    Three-index relations need n ≥ 3 and are reported as skipped otherwise.
    """
    if n < 1:
        raise ValueError("strand count must be at least 1")
    rep = rep or PermutationRep(n)
    results = []
    for name, lhs, rhs in _relation_words(n):
        left, right = LoopBraidWord(n, tuple(lhs)), LoopBraidWord(n, tuple(rhs))
        holds = rep.word_image(left) == rep.word_image(right)
        results.append(RelationCheck(name, left, right, holds))
    if n < 3:
        results.append(RelationCheck(
            'three-index relations', LoopBraidWord(n), LoopBraidWord(n), None,
            f"skipped: need at least 3 strands, have {n}"))
        logger.info("Skipping three-index relations on %d strands", n)
    return results


_TOKEN = re.compile(r"^(?P<kind>[sr])(?P<index>\d+)(?:\^(?P<power>[+-]?1))?$")


def parse_word(text: str, n: Optional[int] = None) -> LoopBraidWord:
    """
    Parse whitespace-separated tokens like `s1 s2^-1 r1`.

    Args:
        text: Word text; empty text or `1` is the empty word
        n: Strand count; defaults to one more than the largest index (at least 1)

    Raises:
        WordSyntaxError: For a malformed token or out-of-range index
    """
    letters = []
    tokens = text.split()
    if tokens == ['1']:
        tokens = []
    for token in tokens:
        match = _TOKEN.match(token)
        if match is None:
            raise WordSyntaxError(f"bad token '{token}'")
        index = int(match.group('index'))
        if index < 1:
            raise WordSyntaxError(f"generator index must be positive in '{token}'")
        power = int(match.group('power') or 1)
        letters.append(Letter(GeneratorType(match.group('kind')), index, power))
    strands = n if n is not None else max([l.index for l in letters], default=0) + 1
    try:
        return LoopBraidWord(strands, tuple(letters))
    except ValueError as exc:
        raise WordSyntaxError(str(exc))


def format_word(word: LoopBraidWord) -> str:
    return ' '.join(str(letter) for letter in word.letters) or '1'

"""
Bounded bidirectional proof search for term equations.

Classes:
    SearchBudget: State and term size limits
    ProofStep: One rewrite with its position and surrounding terms
    ProofTrace: A replayable chain of rewrites between normal forms
    Exhausted: Search statistics when no proof was found
    ReplayError: Raised when a trace does not replay

Functions:
    prove_equal: Search for a rewrite proof of an equation
    replay: Re-run a trace against the rule set
    search_rules: Strict, non-trivial versions of a rule set
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path as FilePath
from typing import Dict, Iterator, List, Optional, Tuple, Union

from src.axioms import (Direction, Equation, NoMatch, RewriteRule, apply_rule,
                        rewrite_step, standard_axioms)
from src.coherence import normalize_coherence
from src.syntax import parse_term
from src.terms import (MorphismTerm, Path, TypeMismatch, format_path,
                       format_term, parse_path, positions, term_size)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SearchBudget:
    """
    Limits for `prove_equal`.

    Attributes:
        max_states: Total states discovered on both sides before giving up
        size_factor: States larger than this multiple of the bigger side
            are pruned
    """
    max_states: int = 10_000
    size_factor: int = 4

    def __post_init__(self):
        if self.max_states < 1:
            raise ValueError("max_states must be positive")
        if self.size_factor < 1:
            raise ValueError("size_factor must be positive")


@dataclass(frozen=True)
class ProofStep:
    rule: str
    direction: Direction
    position: Path
    before: MorphismTerm
    after: MorphismTerm


@dataclass
class ProofTrace:
    """
    Rewrite steps leading from the normal form of lhs to that of rhs.

    Attributes:
        lhs: Left side of the proved equation, as given
        rhs: Right side of the proved equation, as given
        start: Coherence normal form of lhs
        end: Coherence normal form of rhs
        steps: Rewrites in order; each step's `before` is the previous `after`
    """
    lhs: MorphismTerm
    rhs: MorphismTerm
    start: MorphismTerm
    end: MorphismTerm
    steps: List[ProofStep] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.steps)

    def to_text(self) -> str:
        """Serialize as one tab-separated line per step."""
        lines = [
            f"# lhs: {format_term(self.lhs)}",
            f"# rhs: {format_term(self.rhs)}",
            f"start\t{format_term(self.start)}",
        ]
        for step in self.steps:
            lines.append('\t'.join([
                step.rule, step.direction.value, format_path(step.position),
                format_term(step.after),
            ]))
        lines.append(f"end\t{format_term(self.end)}")
        return '\n'.join(lines) + '\n'

    def write(self, filepath: str) -> None:
        FilePath(filepath).parent.mkdir(parents=True, exist_ok=True)
        with open(filepath, 'w') as f:
            f.write(self.to_text())

    @staticmethod
    def from_text(text: str) -> 'ProofTrace':
        """
        Parse the output of `to_text`.

        Raises:
            ValueError: If a line is malformed
        """
        lhs = rhs = start = end = None
        steps: List[ProofStep] = []
        for number, raw in enumerate(text.splitlines(), start=1):
            line = raw.rstrip('\n')
            if not line.strip():
                continue
            if line.startswith('# lhs:'):
                lhs = parse_term(line[len('# lhs:'):])
                continue
            if line.startswith('# rhs:'):
                rhs = parse_term(line[len('# rhs:'):])
                continue
            if line.startswith('#'):
                continue
            fields = line.split('\t')
            if fields[0] == 'start' and len(fields) == 2:
                start = parse_term(fields[1])
            elif fields[0] == 'end' and len(fields) == 2:
                end = parse_term(fields[1])
            elif len(fields) == 4:
                if start is None:
                    raise ValueError(f"line {number}: step before start line")
                before = steps[-1].after if steps else start
                steps.append(ProofStep(
                    rule=fields[0],
                    direction=Direction(fields[1]),
                    position=parse_path(fields[2]),
                    before=before,
                    after=parse_term(fields[3]),
                ))
            else:
                raise ValueError(f"line {number}: malformed trace line")
        if start is None or end is None:
            raise ValueError("trace needs start and end lines")
        return ProofTrace(lhs if lhs is not None else start,
                          rhs if rhs is not None else end,
                          start, end, steps)

    @staticmethod
    def read(filepath: str) -> 'ProofTrace':
        with open(filepath) as f:
            return ProofTrace.from_text(f.read())


@dataclass(frozen=True)
class Exhausted:
    """Returned when the budget runs out; says nothing about inequality."""
    states: int
    forward_frontier: int
    backward_frontier: int
    pruned: int
    size_cap: int
    reason: str


class ReplayError(ValueError):
    """Raised when a proof step does not reproduce its recorded result."""


def search_rules(rules: List[RewriteRule]) -> List[RewriteRule]:
    """
    Strictify rules, dropping those that become trivial and duplicates.

    Registration order is kept; a later rule identical to an earlier one
    is skipped.
    """
    result: List[RewriteRule] = []
    seen = set()
    for rule in rules:
        strict = rule.strictified()
        if strict.lhs == strict.rhs:
            continue
        key = (strict.lhs, strict.rhs, strict.orientation)
        if key in seen:
            continue
        seen.add(key)
        result.append(strict)
    return result


_Step = Tuple[RewriteRule, Direction, Path, MorphismTerm]


def _successors(state: MorphismTerm, rules: List[RewriteRule],
                backward: bool) -> Iterator[_Step]:
    """
    Enumerate one-step neighbours of a state.

    Forward search applies usable directions. Backward search finds the
    states from which a usable direction leads to `state`, and reports
    that forward direction.
    """
    for rule in rules:
        for position in positions(state):
            for direction in (Direction.FORWARD, Direction.BACKWARD):
                if not rule.usable(direction):
                    continue
                applied = direction.reverse() if backward else direction
                try:
                    neighbour = apply_rule(state, rule, position, applied, strict=True)
                    if backward and apply_rule(neighbour, rule, position, direction,
                                               strict=True) != state:
                        continue
                except (NoMatch, TypeMismatch):
                    continue
                yield rule, direction, position, neighbour


def prove_equal(eq: Equation, budget: Optional[SearchBudget] = None,
                rules: Optional[List[RewriteRule]] = None) -> Union[ProofTrace, Exhausted]:
    """
    Search for a rewrite proof of `eq`.

    Both sides are brought to coherence normal form, then a breadth-first
    search runs from each side, alternating one full level at a time.
    Rules are tried in registration order, positions leftmost-outermost,
    and frontiers are FIFO, so the result is deterministic.

    Args:
        eq: Equation to prove
        budget: Search limits (defaults to SearchBudget())
        rules: Rule set (defaults to standard_axioms())

    Returns:
        ProofTrace on success, Exhausted otherwise
    """
    budget = budget or SearchBudget()
    active = search_rules(rules if rules is not None else standard_axioms())
    start = normalize_coherence(eq.lhs)
    goal = normalize_coherence(eq.rhs)
    logger.info("Proving %s with %d rules", eq, len(active))

    if start == goal:
        return ProofTrace(eq.lhs, eq.rhs, start, goal, [])

    size_cap = budget.size_factor * max(term_size(start), term_size(goal))
    # state -> (neighbour, rule, direction, position); forward maps point
    # back towards start, backward maps point on towards goal
    forward: Dict[MorphismTerm, Optional[_Step]] = {start: None}
    backward: Dict[MorphismTerm, Optional[_Step]] = {goal: None}
    forward_frontier = [start]
    backward_frontier = [goal]
    states = 2
    pruned = 0
    level = 0

    while forward_frontier or backward_frontier:
        for is_backward in (False, True):
            frontier = backward_frontier if is_backward else forward_frontier
            visited = backward if is_backward else forward
            other = forward if is_backward else backward
            next_frontier = []
            for state in frontier:
                for rule, direction, position, neighbour in _successors(state, active, is_backward):
                    if neighbour in visited:
                        continue
                    if term_size(neighbour) > size_cap:
                        pruned += 1
                        continue
                    visited[neighbour] = (state, rule, direction, position)
                    if neighbour in other:
                        trace = _assemble(eq, start, goal, neighbour, forward, backward)
                        logger.info("Proof found: %d steps, %d states", len(trace), states)
                        return trace
                    states += 1
                    if states >= budget.max_states:
                        logger.info("Budget exhausted after %d states", states)
                        return Exhausted(states, len(forward_frontier), len(backward_frontier),
                                         pruned, size_cap, "state budget exhausted")
                    next_frontier.append(neighbour)
            if is_backward:
                backward_frontier = next_frontier
            else:
                forward_frontier = next_frontier
        level += 1
        logger.debug("Level %d: frontiers %d/%d, %d states", level,
                     len(forward_frontier), len(backward_frontier), states)

    return Exhausted(states, 0, 0, pruned, size_cap, "search space exhausted")


def _assemble(eq: Equation, start: MorphismTerm, goal: MorphismTerm,
              meet: MorphismTerm, forward: Dict, backward: Dict) -> ProofTrace:
    steps: List[ProofStep] = []
    state = meet
    while forward[state] is not None:
        previous, rule, direction, position = forward[state]
        steps.append(ProofStep(rule.name, direction, position, previous, state))
        state = previous
    steps.reverse()
    state = meet
    while backward[state] is not None:
        following, rule, direction, position = backward[state]
        steps.append(ProofStep(rule.name, direction, position, state, following))
        state = following
    return ProofTrace(eq.lhs, eq.rhs, start, goal, steps)


def replay(trace: ProofTrace, rules: Optional[List[RewriteRule]] = None) -> MorphismTerm:
    """
    Re-apply every step of a trace and return the final term.

    Raises:
        ReplayError: If a rule is unknown, a step does not reproduce its
            recorded result, or the final term is not the trace's end
    """
    by_name = {rule.name: rule for rule in search_rules(rules or standard_axioms())}
    current = trace.start
    for index, step in enumerate(trace.steps):
        rule = by_name.get(step.rule)
        if rule is None:
            raise ReplayError(f"step {index}: unknown rule {step.rule}")
        try:
            current = rewrite_step(current, rule, step.position, step.direction, strict=True)
        except (NoMatch, TypeMismatch) as exc:
            raise ReplayError(f"step {index}: {exc}")
        if current != step.after:
            raise ReplayError(f"step {index}: result differs from recorded term")
    if current != trace.end:
        raise ReplayError("replay does not end at the recorded goal")
    return current

"""
Prover result lines in the SZS vocabulary.

Recognised lines:

    % RESULT: SOT_19PD5B - LEO-II---1.6.2 says Theorem - CPU = 0.01 WC = 0.04
    % OUTPUT: SOT_19PD5B - LEO-II---1.6.2 says CNFRefutation - CPU = 0.01 WC = 0.04
    % SZS status Theorem for /tmp/SystemOnTPTP12345/SOT_ZN9MIY
    % SolvedBy = LEO-II

The leading `%` is optional on RESULT and OUTPUT lines. Anything else is
ignored.
"""

import logging
import re
from dataclasses import dataclass
from enum import Enum
from pathlib import PurePosixPath
from typing import List, Optional

logger = logging.getLogger(__name__)


SHORT_TO_LONG = {
    'THM': 'Theorem',
    'CAX': 'ContradictoryAxioms',
    'UNS': 'Unsatisfiable',
    'SAT': 'Satisfiable',
    'CSA': 'CounterSatisfiable',
    'UNK': 'Unknown',
    'ERR': 'Error',
    'INE': 'InputError',
    'TMO': 'Timeout',
    'MMO': 'MemoryOut',
    'GUP': 'GaveUp',
    'INC': 'Incomplete',
}


class SzsStatus(Enum):
    THEOREM = 'Theorem'
    CONTRADICTORY_AXIOMS = 'ContradictoryAxioms'
    UNSATISFIABLE = 'Unsatisfiable'
    SATISFIABLE = 'Satisfiable'
    COUNTER_SATISFIABLE = 'CounterSatisfiable'
    UNKNOWN = 'Unknown'
    ERROR = 'Error'
    INPUT_ERROR = 'InputError'
    TIMEOUT = 'Timeout'
    MEMORY_OUT = 'MemoryOut'
    GAVE_UP = 'GaveUp'
    INCOMPLETE = 'Incomplete'

    @property
    def short(self) -> str:
        for short, long in SHORT_TO_LONG.items():
            if long == self.value:
                return short
        raise KeyError(self.value)

    @property
    def is_proved(self) -> bool:
        return self in (SzsStatus.THEOREM, SzsStatus.UNSATISFIABLE)

    @staticmethod
    def lookup(text: str) -> Optional['SzsStatus']:
        """Status by long name or short code; None if unrecognised."""
        name = SHORT_TO_LONG.get(text, text)
        try:
            return SzsStatus(name)
        except ValueError:
            return None


@dataclass
class SzsResult:
    problem: str
    prover: str
    status: SzsStatus
    cpu: Optional[float] = None
    wallclock: Optional[float] = None
    output_form: Optional[str] = None
    solved_by: Optional[str] = None

    def __post_init__(self):
        for label, value in (('cpu', self.cpu), ('wallclock', self.wallclock)):
            if value is not None and value < 0:
                raise ValueError(f"{label} time must be non-negative, got {value}")

    def to_dict(self) -> dict:
        return {
            'problem': self.problem,
            'prover': self.prover,
            'status': self.status.value,
            'cpu': self.cpu,
            'wallclock': self.wallclock,
            'output_form': self.output_form,
            'solved_by': self.solved_by,
        }


_NUMBER = r"\d+(?:\.\d+)?"
_VERDICT = re.compile(
    r"^\s*(?:%\s*)?(?P<kind>RESULT|OUTPUT):\s*(?P<problem>\S+)\s+-\s+(?P<prover>\S+)"
    r"\s+says\s+(?P<status>\w+)"
    rf"(?:\s+-\s+CPU\s*=\s*(?P<cpu>{_NUMBER})\s+WC\s*=\s*(?P<wc>{_NUMBER}))?\s*$")
_SZS_STATUS = re.compile(r"^\s*%\s*SZS\s+status\s+(?P<status>\w+)\s+for\s+(?P<problem>[^\s:]+)")
_SOLVED_BY = re.compile(r"^\s*%\s*SolvedBy\s*=\s*(?P<prover>\S+)")


def _tag(problem: str) -> str:
    return PurePosixPath(problem).name or problem


def _number(text: Optional[str]) -> Optional[float]:
    return float(text) if text is not None else None


def parse_szs(output: str) -> List[SzsResult]:
    """
    Extract results from prover output.

    OUTPUT lines set the output form of the latest RESULT for the same
    problem; SolvedBy lines annotate the latest result of any kind.

    Returns:
        Results in order of appearance; empty if nothing was recognised
    """
    results: List[SzsResult] = []
    for line in output.splitlines():
        match = _VERDICT.match(line)
        if match:
            if match.group('kind') == 'OUTPUT':
                tag = _tag(match.group('problem'))
                for result in reversed(results):
                    if result.problem == tag:
                        result.output_form = match.group('status')
                        break
                continue
            status = SzsStatus.lookup(match.group('status'))
            if status is None:
                logger.debug("Unrecognised status in: %s", line)
                continue
            results.append(SzsResult(
                problem=_tag(match.group('problem')),
                prover=match.group('prover'),
                status=status,
                cpu=_number(match.group('cpu')),
                wallclock=_number(match.group('wc')),
            ))
            continue
        match = _SZS_STATUS.match(line)
        if match:
            status = SzsStatus.lookup(match.group('status'))
            if status is not None:
                results.append(SzsResult(_tag(match.group('problem')), '', status))
            continue
        match = _SOLVED_BY.match(line)
        if match and results:
            results[-1].solved_by = match.group('prover')
            if not results[-1].prover:
                results[-1].prover = match.group('prover')
    return results

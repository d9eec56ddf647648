"""
Results reporting and export functionality.

Functions:
    trace_to_dict, exhausted_to_dict: Proof search outcomes as plain data
    table_to_dict, polynomial_to_dict: Rank tables and tangle polynomials
    export_trace_json: Export a proof trace to JSON
    export_report_json: Export a model validation report to JSON
    export_table_csv: Export a rank table to CSV
    export_table_json: Export a rank table with its polynomial to JSON
    export_corpus_csv: Export oracle/prover results for a list of equations
"""

import csv
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional

from src.khovanov import LaurentPoly2, RankTable, tangle_polynomial
from src.prover import Exhausted, ProofTrace
from src.semantics import ValidationReport
from src.terms import format_path, format_term


def trace_to_dict(trace: ProofTrace) -> Dict:
    return {
        'proved': True,
        'lhs': format_term(trace.lhs),
        'rhs': format_term(trace.rhs),
        'start': format_term(trace.start),
        'end': format_term(trace.end),
        'steps': [
            {
                'rule': step.rule,
                'direction': step.direction.value,
                'position': format_path(step.position),
                'after': format_term(step.after),
            }
            for step in trace.steps
        ],
    }


def exhausted_to_dict(result: Exhausted) -> Dict:
    return {
        'proved': False,
        'reason': result.reason,
        'states': result.states,
        'forward_frontier': result.forward_frontier,
        'backward_frontier': result.backward_frontier,
        'pruned': result.pruned,
        'size_cap': result.size_cap,
    }


def polynomial_to_dict(poly: LaurentPoly2) -> Dict:
    return {
        'polynomial': str(poly),
        'terms': [{'t': t_exp, 'A': a_exp, 'coefficient': coeff}
                  for t_exp, a_exp, coeff in poly.triples()],
    }


def table_to_dict(table: RankTable) -> Dict:
    return {
        'name': table.name,
        'states': [{'r': s.r, 'k': s.k, 'rank': s.rank, 'label': s.label}
                   for s in table.states],
    }


def export_trace_json(trace: ProofTrace, filepath: str) -> None:
    """
    Export a proof trace to JSON.

    Args:
        trace: ProofTrace to export
        filepath: Path to output JSON file
    """
    Path(filepath).parent.mkdir(parents=True, exist_ok=True)
    with open(filepath, 'w') as f:
        json.dump(trace_to_dict(trace), f, indent=2)


def export_report_json(report: ValidationReport, filepath: str) -> None:
    Path(filepath).parent.mkdir(parents=True, exist_ok=True)
    with open(filepath, 'w') as f:
        json.dump(report.to_dict(), f, indent=2)


def export_table_csv(table: RankTable, filepath: str) -> None:
    """
    Export a rank table to CSV (one row per state).

    Args:
        table: RankTable to export
        filepath: Path to output CSV file
    """
    Path(filepath).parent.mkdir(parents=True, exist_ok=True)

    with open(filepath, 'w', newline='', encoding='utf-8') as f:
        writer = csv.writer(f)
        writer.writerow(['r', 'k', 'rank', 'monomial', 'label'])
        for state in table.states:
            monomial = LaurentPoly2.monomial(state.rank, state.r, state.k)
            writer.writerow([state.r, state.k, state.rank, str(monomial), state.label])


def export_table_json(table: RankTable, filepath: str) -> None:
    """Export a rank table together with its tangle polynomial."""
    Path(filepath).parent.mkdir(parents=True, exist_ok=True)
    data = table_to_dict(table)
    data.update(polynomial_to_dict(tangle_polynomial(table)))
    with open(filepath, 'w', encoding='utf-8') as f:
        json.dump(data, f, indent=2)


@dataclass
class CorpusRow:
    """Outcome of checking one named equation."""
    name: str
    oracle: Dict[str, bool]
    proof_steps: Optional[int] = None


def export_corpus_csv(rows: List[CorpusRow], filepath: str) -> None:
    """
    Export corpus results, one column per model.

    Args:
        rows: Results to export; all rows must cover the same models
        filepath: Path to output CSV file
    """
    if not rows:
        return

    Path(filepath).parent.mkdir(parents=True, exist_ok=True)
    models = sorted(rows[0].oracle)

    with open(filepath, 'w', newline='') as f:
        writer = csv.writer(f)
        writer.writerow(['equation'] + [f'equal_{m}' for m in models] + ['proof_steps'])
        for row in rows:
            writer.writerow([row.name] + [row.oracle[m] for m in models]
                            + ['' if row.proof_steps is None else row.proof_steps])

#!/usr/bin/env python3
"""
Corpus Sweep

Checks every theorem-corpus equation on one boundary atom: equality of
both sides in each built-in model, then a bounded proof search.

Output: results/corpus_<atom>.csv
"""

import sys
import time
import argparse
from pathlib import Path

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.presets import corpus
from src.prover import ProofTrace, SearchBudget, prove_equal
from src.reporter import CorpusRow, export_corpus_csv
from src.semantics import MODEL_REGISTRY, evaluate, load_model
from src.terms import CLOSED, OPEN

ATOMS = {'A': OPEN, 'C': CLOSED}


def sweep(atom, budget):
    """Oracle verdicts and proof lengths for each corpus equation."""
    models = [load_model(name) for name in sorted(MODEL_REGISTRY)]
    rows = []
    for eq in corpus(atom):
        oracle = {model.name: evaluate(eq.lhs, model) == evaluate(eq.rhs, model)
                  for model in models}
        t0 = time.perf_counter()
        result = prove_equal(eq, budget)
        elapsed = time.perf_counter() - t0
        steps = len(result) if isinstance(result, ProofTrace) else None
        verdict = f"{steps} steps" if steps is not None else f"not proved ({result.reason})"
        marks = ' '.join(f"{name}={'=' if ok else '!='}" for name, ok in oracle.items())
        print(f"  {eq.name:12s} {marks}  {verdict}  ({elapsed:.2f}s)")
        rows.append(CorpusRow(eq.name, oracle, steps))
    return rows


def main():
    parser = argparse.ArgumentParser(description="Check the theorem corpus in models and by search")
    parser.add_argument("--atom", choices=sorted(ATOMS), default="A",
                        help="Boundary atom to instantiate the corpus at")
    parser.add_argument("--max-states", type=int, default=10_000,
                        help="State budget per search")
    parser.add_argument("--output", default=None,
                        help="CSV path (default results/corpus_<atom>.csv)")
    args = parser.parse_args()

    output_path = Path(args.output or f"results/corpus_{args.atom}.csv")
    print("=" * 60)
    print(f"Corpus sweep on {args.atom}, budget {args.max_states:,} states")
    print("=" * 60)

    rows = sweep(ATOMS[args.atom], SearchBudget(max_states=args.max_states))
    export_corpus_csv(rows, str(output_path))

    proved = sum(1 for row in rows if row.proof_steps is not None)
    equal = sum(1 for row in rows if all(row.oracle.values()))
    print()
    print(f"Equal in every model: {equal}/{len(rows)}")
    print(f"Proved by search:     {proved}/{len(rows)}")
    print(f"Output saved to: {output_path}")


if __name__ == "__main__":
    main()

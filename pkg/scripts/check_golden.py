#!/usr/bin/env python3
"""
Check Golden THF Problems

Re-encodes each golden case and reports whether its formulas match the
hand-written file under tests/golden/. The golden files are maintained by
hand; with --show, the encoder's text is printed for files that differ so
a reviewer can compare the two.
"""

import sys
import argparse
from pathlib import Path

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.axioms import rules_by_name, standard_axioms
from src.presets import preset_equation
from src.tptp import emit, encode_equation, normalize_whitespace

GOLDEN_DIR = Path(__file__).parent.parent / "tests" / "golden"

# file stem -> (preset, objects, rules stated as axioms)
CASES = {
    'pentagon': ('pentagon', ['C', 'C', 'C', 'C'], []),
    'triangle': ('triangle', ['C', 'C'], []),
    'braid-naturality': ('braid-naturality', ['C', 'C'], []),
    'hexagon1': ('hexagon1', ['C', 'C', 'C'], []),
    'yang-baxter': ('yang-baxter', ['C', 'C', 'C'], []),
    'frobenius-assoc': ('frobenius', ['A'], ['frobenius.assoc.A']),
}


def render(stem):
    name, args, rule_names = CASES[stem]
    by_name = rules_by_name(standard_axioms())
    problem = encode_equation(preset_equation(name, args), [by_name[r] for r in rule_names])
    return emit(problem)


def main():
    parser = argparse.ArgumentParser(description="Check golden THF problems")
    parser.add_argument("--show", action="store_true",
                        help="Print the encoder's text for files that differ")
    parser.add_argument("cases", nargs="*", help="Stems to check (default all)")
    args = parser.parse_args()

    stems = args.cases or list(CASES)
    unknown = [s for s in stems if s not in CASES]
    if unknown:
        parser.error(f"unknown case(s): {', '.join(unknown)}")

    stale = 0
    for stem in stems:
        path = GOLDEN_DIR / f"{stem}.p"
        text = render(stem)
        current = path.read_text(encoding='utf-8') if path.exists() else ''
        same = normalize_whitespace(text) == normalize_whitespace(current)
        print(f"{stem}: {'ok' if same else 'DIFFERS'}")
        if not same:
            stale += 1
            if args.show:
                print(text)

    if stale:
        sys.exit(1)


if __name__ == "__main__":
    main()

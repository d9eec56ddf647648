"""
Demo script showing tangle polynomials, loop braids and THF export.
"""

from src.axioms import rules_by_name, standard_axioms
from src.khovanov import bar_natan_table, khovanov_table, tangle_polynomial
from src.loop_braid import check_relations, cycle_notation, parse_word, to_permutations
from src.presets import preset_equation
from src.szs import parse_szs
from src.tptp import emit, encode_equation


def demo_polynomials():
    """Demonstrate the two built-in rank tables."""
    print("=== Tangle Polynomial Demo ===")

    for table in (bar_natan_table(), khovanov_table()):
        print(f"{table.name}: {tangle_polynomial(table)}")
    print()


def demo_loop_braids():
    """Demonstrate word reduction and permutation images."""
    print("=== Loop Braid Demo ===")

    word = parse_word('s1 s2 s2^-1 r1 r1 s2')
    reduced = word.reduced()
    print(f"Word:    {word}")
    print(f"Reduced: {reduced}")
    print(f"Image:   {cycle_notation(to_permutations(reduced))}")
    failed = [check.name for check in check_relations(4) if check.holds is False]
    print(f"Relations failing on 4 strands: {failed or 'none'}")
    print()


def demo_tptp():
    """Demonstrate encoding an equation and reading a verdict."""
    print("=== THF Demo ===")

    rule = rules_by_name(standard_axioms())['frobenius.assoc.A']
    problem = encode_equation(preset_equation('frobenius', ['A']), [rule])
    print(emit(problem))
    for result in parse_szs("% SZS status Theorem for frobenius.p\n% SolvedBy = LEO-II\n"):
        print(f"{result.problem}: {result.status.value} by {result.prover}")
    print()


if __name__ == '__main__':
    demo_polynomials()
    demo_loop_braids()
    demo_tptp()

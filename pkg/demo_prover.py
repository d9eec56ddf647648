"""
Demo script showing terms, coherence and proof search.
"""

from src.coherence import normalize_coherence
from src.presets import preset_equation, resolve_equation
from src.prover import ProofTrace, SearchBudget, prove_equal
from src.syntax import parse_term
from src.terms import format_object, format_term, typecheck


def demo_typecheck():
    """Demonstrate typechecking and the coherence normal form."""
    print("=== Typecheck Demo ===")

    term = parse_term('alpha[A,A,A] ; id[A] * mu[A] ; mu[A]')
    dom, cod = typecheck(term)
    print(f"Term:        {format_term(term)}")
    print(f"Boundary:    {format_object(dom)} -> {format_object(cod)}")
    print(f"Normal form: {format_term(normalize_coherence(term))}")
    print()


def demo_coherence_laws():
    """Demonstrate that coherence laws need no rewriting."""
    print("=== Coherence Demo ===")

    for name, args in (('pentagon', ['C', 'C', 'C', 'C']), ('triangle', ['A', 'C'])):
        trace = prove_equal(preset_equation(name, args))
        print(f"{name}: {len(trace)} rewrite steps")
    print()


def demo_frobenius():
    """Demonstrate a proof of the Frobenius relation."""
    print("=== Frobenius Proof Demo ===")

    eq = preset_equation('frobenius', ['A'])
    print(f"Equation: {eq}")
    trace = prove_equal(eq)
    if isinstance(trace, ProofTrace):
        for step in trace.steps:
            print(f"  {step.rule} ({step.direction.value}) -> {format_term(step.after)}")
    else:
        print(f"  not proved: {trace.reason}")
    print()


def demo_exhausted():
    """Demonstrate a search that runs out of budget."""
    print("=== Exhausted Search Demo ===")

    eq = resolve_equation('mu[A] ; delta[A] = id[A*A]')
    result = prove_equal(eq, SearchBudget(max_states=200))
    print(f"Equation: {eq}")
    print(f"Result:   {result.reason} after {result.states} states")
    print()


if __name__ == '__main__':
    demo_typecheck()
    demo_coherence_laws()
    demo_frobenius()
    demo_exhausted()

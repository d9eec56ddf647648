"""
Demo script showing Frobenius models and closed surfaces.
"""

from src.presets import preset_equation
from src.semantics import (closed_surface_value, evaluate, khovanov_model,
                           lee_model, load_model, validate_model)
from src.syntax import parse_term


def demo_evaluate():
    """Demonstrate evaluating the handle in two models."""
    print("=== Evaluation Demo ===")

    term = parse_term('delta[C] ; mu[C]')
    for model in (khovanov_model(), lee_model()):
        value = evaluate(term, model)
        print(f"{model.name}: {value.matrix.tolist()}")
    print()


def demo_closed_surfaces():
    """Demonstrate closed surface values by genus."""
    print("=== Closed Surface Demo ===")

    for model in (khovanov_model(), lee_model()):
        values = [closed_surface_value(model, genus) for genus in range(5)]
        print(f"{model.name}: genus 0-4 -> {values}")
    print()


def demo_oracle():
    """Demonstrate comparing both sides of an equation."""
    print("=== Oracle Demo ===")

    eq = preset_equation('conj7', ['A'])
    model = lee_model()
    print(f"{eq.name} in {model.name}: {evaluate(eq.lhs, model) == evaluate(eq.rhs, model)}")
    print()


def demo_validate():
    """Demonstrate validating a model file."""
    print("=== Validation Demo ===")

    report = validate_model(load_model('config/models/mixed.json'))
    for check in report.checks:
        print(f"  {check.atom} {check.law}: {'ok' if check.passed else check.detail}")
    print(f"Passed: {report.passed}")
    print()


if __name__ == '__main__':
    demo_evaluate()
    demo_closed_surfaces()
    demo_oracle()
    demo_validate()

"""Exact double Lie algebras, Rota-Baxter operators and their modules."""

from ._dblie import (
    BudgetExhausted,
    DomainError,
    InputError,
    WindowError,
    bracket_eval,
    bracket_names,
    check_leibniz,
    divided_difference,
    ideal_closure,
    module_names,
    module_report,
    operator_names,
    run_cli,
    run_suite,
    simplicity_probe,
    verify_bracket,
    verify_operator,
)

__all__ = [
    "BudgetExhausted",
    "DomainError",
    "InputError",
    "WindowError",
    "bracket_eval",
    "bracket_names",
    "check_leibniz",
    "divided_difference",
    "ideal_closure",
    "module_names",
    "module_report",
    "operator_names",
    "run_cli",
    "run_suite",
    "simplicity_probe",
    "verify_bracket",
    "verify_operator",
]

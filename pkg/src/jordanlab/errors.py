"""Exception types shared across the package."""

from __future__ import annotations

from dataclasses import dataclass, field


class JordanLabError(Exception):
    pass


class StructuralError(JordanLabError):
    """Tables are malformed (wrong shape, entries out of range)."""


class SizeCapError(JordanLabError):
    """A construction would exceed the configured order cap."""


class UnsupportedOperation(JordanLabError):
    """The ring lacks a property the operation depends on (e.g. it has 2-torsion)."""


class BudgetExceeded(JordanLabError):
    def __init__(self, required: int, budget: int, hint: str = ""):
        self.required = required
        self.budget = budget
        msg = f"search space of {required} exceeds budget {budget}"
        if hint:
            msg += f"; {hint}"
        super().__init__(msg)


class DefinitionError(JordanLabError):
    """An auxiliary map fails the predicate that is part of a definition."""

    def __init__(self, message: str, witness=None):
        self.witness = witness
        super().__init__(message)


class PreconditionError(JordanLabError):
    def __init__(self, predicate: str, witness=None):
        self.predicate = predicate
        self.witness = witness
        super().__init__(f"precondition failed: {predicate} (witness {witness})")


@dataclass(frozen=True)
class Check:
    """Outcome of an exhaustive predicate scan.

    ``witness`` is the lexicographically smallest failing tuple (a bare element
    index for one-variable conditions), ``law`` names the part of the predicate
    that failed.
    """

    ok: bool
    witness: tuple | int | None = None
    law: str | None = None
    info: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok


PASS = Check(True)

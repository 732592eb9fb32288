"""Exception hierarchy shared by every layer of the package."""

from __future__ import annotations


class Em1Error(Exception):
    """Base class. ``exit_code`` is what the CLI returns for it."""

    exit_code = 1


class ParseError(Em1Error):
    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.line = line
        self.col = col
        where = f"{line}:{col}: " if line is not None else ""
        super().__init__(where + message)


class ArityError(ParseError):
    pass


class UndeclaredName(ParseError):
    pass


class CyclicDefinition(ParseError):
    pass


class DuplicateDeclaration(ParseError):
    pass


class BudgetExhausted(Em1Error):
    """A primitive recursive evaluation ran past its step budget."""


class UnboundVariable(Em1Error):
    pass


class ModelViolation(Em1Error):
    """An atom that is false in the standard model."""


class Inconsistency(Em1Error):
    """Two witnesses for the same (predicate, arguments) key."""


class IncompatibleStates(Em1Error):
    pass


class ProofError(Em1Error):
    pass


class RuleMismatch(ProofError):
    pass


class AxiomRejected(ProofError):
    pass


class InductionShapeError(ProofError):
    pass


class TooManyAtoms(Em1Error):
    pass


class CapExceeded(Em1Error):
    """The learning loop did not reach a prefix point within its cap."""


class ContractViolation(Em1Error):
    """A state transformer broke the realizer contract at a visited state."""

    exit_code = 2


class ExtractionError(Em1Error):
    """The extracted realizer failed to force its conclusion."""

    exit_code = 2

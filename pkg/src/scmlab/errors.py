"""Exception hierarchy. Exit-code mapping for the CLI lives in cli.py."""


class ScmlabError(Exception):
    """Base class for all workbench errors."""


class RingError(ScmlabError):
    """Invalid ring construction or mixed-ring operands."""


class ParseError(ScmlabError):
    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class PreconditionError(ScmlabError):
    """An operation was called outside its stated domain."""


class ResourceCapError(ScmlabError):
    """A degree/size/attempt cap was exhausted before completion."""


class InvariantViolation(ScmlabError):
    """An internal consistency check failed; always fatal."""


class EquivalenceBreach(InvariantViolation):
    """The two sides of the equivalence harness disagreed while every
    hypothesis held.  This indicates a bug in the workbench, never a
    counterexample."""

from typing import FrozenSet, Optional


class ParseError(Exception):
    """Base Exception for program text that does not match the grammar."""

    def __init__(self, message: str, position: int, expected: FrozenSet[str]):
        self.position = position
        self.expected = expected
        wanted = ", ".join(sorted(expected)) or "end of input"
        super().__init__(f"{message} at position {position} (expected: {wanted})")


class GuardViolation(Exception):
    """Base Exception for a guarded minimisation without a witness in bound."""


class BudgetExhausted(Exception):
    """Base Exception for searches that found nothing within their budget."""

    def __init__(self, message: str, point: Optional[object] = None):
        self.point = point
        super().__init__(message)


class DisjointnessViolation(Exception):
    """Base Exception for a predicate and its complement both firing."""


class NotANode(Exception):
    """Base Exception for subtrees taken at a non-member."""


class NotBounded(Exception):
    """Base Exception for longest-element queries on a tree with deeper members."""


class NotALeaf(Exception):
    """Base Exception for leaf queries on lists that are not leaves."""


class InputDivergence(Exception):
    """Base Exception for a program not converging on an input within its fuel."""

    def __init__(self, message: str, index: int):
        self.index = index
        super().__init__(message)


class DivergenceAtFuel(Exception):
    """Base Exception for evaluations still silent at their last fuel."""


class PropertyViolation(Exception):
    """Base Exception for a law failing in an acceptance suite."""

"""
Exception types raised across the hypernetwork kernel.

Operator errors map to CLI exit status 4, parse errors to 2.
"""
from typing import Optional


class HypernetworkError(Exception):
    """Base class for every error raised by the kernel."""


# ===== OPERATOR ERRORS =====

class OperatorError(HypernetworkError):
    """An operator could not be applied to its operands."""

    axiom = "C5"

    def __init__(self, message: str, element: str = ""):
        super().__init__(message)
        self.element = element


class DanglingReference(OperatorError):
    """A participant id does not resolve to any element."""

    axiom = "C5"

    def __init__(self, element: str, container: Optional[str] = None):
        where = f" (participant of {container})" if container else ""
        super().__init__(f"dangling reference: {element}{where}", element)
        self.container = container


class UnknownSelector(OperatorError):
    """A prune selector item names nothing in the target hypernetwork."""

    axiom = "C3"

    def __init__(self, item: str):
        super().__init__(f"unknown selector: {item}", item)
        self.item = item


class UnknownBoundary(OperatorError):
    """A boundary id is not in the boundary registry."""

    axiom = "A5"

    def __init__(self, boundary: str, element: str = ""):
        who = f" on {element}" if element else ""
        super().__init__(f"unregistered boundary: {boundary}{who}", element or boundary)
        self.boundary = boundary


class UnknownSeed(OperatorError):
    """A split seed is not a vertex or anti-vertex of the hypernetwork."""

    axiom = "C3"

    def __init__(self, seed: str):
        super().__init__(f"unknown seed: {seed}", seed)
        self.seed = seed


class ClosureViolation(HypernetworkError):
    """An operator produced a hypernetwork that fails validation.

    This is an internal defect, never an input problem.
    """

    def __init__(self, operator: str, report):
        lines = "; ".join(v.line() for v in report.violations[:5])
        super().__init__(f"{operator} broke closure: {lines}")
        self.operator = operator
        self.report = report


# ===== NOTATION =====

class ParseError(HypernetworkError):
    """Malformed `.hn` input, pointing at a single token."""

    def __init__(self, line: int, column: int, expected: str, found: str):
        super().__init__(f"line {line}, column {column}: expected {expected}, found {found}")
        self.line = line
        self.column = column
        self.expected = expected
        self.found = found


# ===== TESTKIT =====

class OperandNotFlat(HypernetworkError):
    """A set oracle received a hypernetwork containing hypersimplices."""


class TooLarge(HypernetworkError):
    """An exhaustive oracle received more elements than it can enumerate."""

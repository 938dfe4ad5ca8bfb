from __future__ import annotations

from typing import Any, Optional, Tuple


class WorkbenchError(Exception):
    pass


class TermSyntaxError(WorkbenchError, ValueError):
    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None) -> None:
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(f"{message}{where}")
        self.line = line
        self.column = column


class PropSyntaxError(TermSyntaxError):
    pass


class ResolutionError(WorkbenchError, KeyError):
    def __init__(self, name: str) -> None:
        super().__init__(f"Unresolved definition: {name!r}")
        self.name = name

    def __str__(self) -> str:
        return self.args[0]


class DefinitionError(WorkbenchError, ValueError):
    pass


class RedexError(WorkbenchError, ValueError):
    pass


class DecodeError(WorkbenchError, ValueError):
    pass


class EncodingError(WorkbenchError, ValueError):
    pass


class UnknownCellError(WorkbenchError, RuntimeError):
    def __init__(self, message: str, cell: Tuple[Any, ...] = ()) -> None:
        super().__init__(message)
        self.cell = cell


class UnboundVariableError(WorkbenchError, KeyError):
    def __init__(self, name: str) -> None:
        super().__init__(f"Unbound propositional variable: {name!r}")
        self.name = name

    def __str__(self) -> str:
        return self.args[0]


class LambdaIError(WorkbenchError, ValueError):
    def __init__(self, message: str, violations: Tuple[Any, ...] = ()) -> None:
        super().__init__(message)
        self.violations = violations

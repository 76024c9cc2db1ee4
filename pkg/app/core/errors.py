from typing import Optional


class ThompsonLinkError(Exception):
    """Base class for every error raised by the services."""

    code = "thompson_link_error"

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message

    def to_dict(self) -> dict:
        return {"type": self.code, "message": self.message}


class MalformedPairError(ThompsonLinkError):
    code = "malformed_pair"


class UnresolvableAddressError(ThompsonLinkError):
    code = "unresolvable_address"


class InvalidAddressError(ThompsonLinkError):
    code = "invalid_address"


class DomainError(ThompsonLinkError):
    code = "domain_error"


class DegenerateOperandError(ThompsonLinkError):
    code = "degenerate_operand"


class ResourceError(ThompsonLinkError):
    code = "resource_error"


class StructureError(ThompsonLinkError):
    code = "structure_error"


class ParseError(ThompsonLinkError):
    code = "parse_error"

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        location = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(f"{message}{location}")
        self.line = line
        self.column = column

    def to_dict(self) -> dict:
        payload = super().to_dict()
        payload.update({"line": self.line, "column": self.column})
        return payload

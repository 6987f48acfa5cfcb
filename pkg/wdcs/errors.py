"""Custom exceptions for wikidata-cs."""

from typing import Optional

EXIT_INPUT_ERROR = 1
EXIT_CONFIGURATION_ERROR = 2


class WdcsError(Exception):
    """Base exception for wikidata-cs."""

    exit_code = EXIT_INPUT_ERROR


class InputError(WdcsError):
    """Fatal problem with an input file or its contents."""

    exit_code = EXIT_INPUT_ERROR


class InputFileError(InputError):
    """Raised when a file cannot be opened, read or written."""

    def __init__(self, path: str, reason: Optional[str] = None):
        self.path = path
        self.reason = reason
        message = f"Cannot access file: {path}"
        if reason:
            message += f" ({reason})"
        super().__init__(message)


class MalformedRowError(InputError):
    """Raised in strict mode on the first row that cannot be parsed."""

    def __init__(self, path: str, line_number: int, reason: str):
        self.path = path
        self.line_number = line_number
        super().__init__(f"Malformed row at {path}:{line_number}: {reason}")


class FrequencyTableError(InputError):
    """Raised when a frequency table row is invalid."""

    def __init__(self, path: str, line_number: int, reason: str):
        self.path = path
        self.line_number = line_number
        super().__init__(f"Frequency table error at {path}:{line_number}: {reason}")


class SpillError(InputError):
    """Raised when temporary sort storage runs out."""

    def __init__(self, directory: str, free_bytes: Optional[int], reason: str):
        self.directory = directory
        self.free_bytes = free_bytes
        free = "unknown" if free_bytes is None else f"{free_bytes} bytes free"
        super().__init__(f"Spill to {directory} failed ({free}): {reason}")


class IdCollisionError(InputError):
    """Raised when an edge id cannot be disambiguated."""

    def __init__(self, edge_id: str):
        self.edge_id = edge_id
        super().__init__(f"More than 9999 colliding edges share id {edge_id}")


class ConfigurationError(WdcsError):
    """Raised when configuration is invalid."""

    exit_code = EXIT_CONFIGURATION_ERROR

    def __init__(self, message: str):
        super().__init__(f"Configuration error: {message}")


class MissingColumnError(ConfigurationError):
    """Raised when a required header column is absent."""

    def __init__(self, path: str, column: str):
        self.path = path
        self.column = column
        super().__init__(f"{path} has no required column '{column}'")


class MappingTableError(ConfigurationError):
    """Raised when a relation mapping file is invalid."""

    def __init__(self, path: str, line_number: int, reason: str):
        self.path = path
        self.line_number = line_number
        super().__init__(f"mapping {path}:{line_number}: {reason}")

"""Exception hierarchy shared by every HeisLab package.

Each error carries a short machine-readable ``code`` and the process exit
status the CLI uses when the error escapes a command.
"""

from __future__ import annotations

from typing import Any, Dict

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


class HeisLabError(Exception):
    code = "heislab_error"
    exit_code = EXIT_USAGE

    def __init__(self, message: str, **details: Any):
        super().__init__(message)
        self.message = message
        self.details = details

    def to_dict(self) -> Dict[str, Any]:
        return {
            "code": self.code,
            "message": self.message,
            "exit_code": self.exit_code,
            "details": {k: repr(v) for k, v in sorted(self.details.items())},
        }


class DimensionError(HeisLabError):
    code = "dimension_mismatch"


class InvalidParametersError(HeisLabError):
    code = "invalid_parameters"


class DegenerateDirectionError(HeisLabError):
    code = "degenerate_direction"


class InvalidNuError(HeisLabError):
    code = "invalid_nu"


class ModeMismatchError(HeisLabError):
    code = "mode_mismatch"


class InvalidInputError(HeisLabError):
    code = "invalid_input"


class InvalidPairError(HeisLabError):
    code = "invalid_pair"


class ResourceError(HeisLabError):
    code = "resource_exceeded"
    exit_code = EXIT_RESOURCE

"""
Error hierarchy for qforge.

Every error carries a stable machine-readable ``code``. Input errors map to
CLI exit code 2, mathematical failures to exit code 1.
"""

from typing import Optional

from .constants import EXIT_INPUT_ERROR, EXIT_MATH_FAILURE


class QForgeError(Exception):
    """Base class for all qforge errors."""
    code = "QForgeError"
    exit_code = EXIT_MATH_FAILURE

    def __init__(self, message: str):
        self.message = message
        super().__init__(message)

    def to_dict(self) -> dict:
        return {'code': self.code, 'message': self.message}


class InputError(QForgeError):
    """The request itself is invalid (bad file, bad vector, wrong field...)."""
    code = "InputError"
    exit_code = EXIT_INPUT_ERROR


class MathematicalFailure(QForgeError):
    """A mathematical check failed on valid input."""
    code = "MathematicalFailure"
    exit_code = EXIT_MATH_FAILURE


# ============================================================================
# Linear algebra
# ============================================================================

class MixedDegree(InputError):
    code = "MixedDegree"


class MixedField(InputError):
    code = "MixedField"


class DimensionMismatch(InputError):
    code = "DimensionMismatch"


class NotInSpan(MathematicalFailure):
    code = "NotInSpan"


class ResourceBound(InputError):
    code = "ResourceBound"


# ============================================================================
# Presentations, Clifford maps, hypersurfaces
# ============================================================================

class ZeroElement(InputError):
    code = "ZeroElement"


class NotCentral(InputError):
    code = "NotCentral"


class NotClifford(InputError):
    code = "NotClifford"


class NameClash(InputError):
    code = "NameClash"


class FieldLacksI(InputError):
    code = "FieldLacksI"


class NotFrobeniusTop(InputError):
    code = "NotFrobeniusTop"


# ============================================================================
# Fatal mathematical failures
# ============================================================================

class PBWFailure(MathematicalFailure):
    code = "PBWFailure"


class NondegeneracyFailure(MathematicalFailure):
    code = "NondegeneracyFailure"


class InhomogeneousRadical(MathematicalFailure):
    code = "InhomogeneousRadical"


class NotStabilized(MathematicalFailure):
    code = "NotStabilized"


class NotRegular(MathematicalFailure):
    code = "NotRegular"


class WNotCentral(MathematicalFailure):
    code = "WNotCentral"


class RelationNotKilled(MathematicalFailure):
    code = "RelationNotKilled"


class CertificateFailure(MathematicalFailure):
    code = "CertificateFailure"


# ============================================================================
# Presentation files
# ============================================================================

class PresentationError(InputError):
    """An error located in a presentation file."""
    code = "PresentationError"

    def __init__(self, message: str, line: Optional[int] = None,
                 column: Optional[int] = None):
        self.line, self.column = line, column
        if line is not None:
            if column is not None:
                message = f"Line {line}, column {column}: {message}"
            else:
                message = f"Line {line}: {message}"
        super().__init__(message)

    def to_dict(self) -> dict:
        data = super().to_dict()
        data['line'] = self.line
        data['column'] = self.column
        return data


class PresentationSyntaxError(PresentationError):
    code = "SyntaxError"


class DegreeError(PresentationError):
    code = "DegreeError"


class UnknownGenerator(PresentationError):
    code = "UnknownGenerator"


class ArityMismatch(PresentationError):
    code = "ArityMismatch"


class UnknownName(InputError):
    """A --theta / --central name not present in the file."""
    code = "UnknownName"

"""Exception types shared across the package."""


class BraidbreakError(Exception):
    """Base class for all package-specific errors."""


class FieldMismatchError(BraidbreakError):
    """Operands belong to different field contexts."""


class SingularMatrixError(BraidbreakError):
    """Matrix inversion hit a zero pivot. Protocol elements are group
    elements, so this always signals a bug upstream."""


class NotInSpanError(BraidbreakError):
    """A target vector is not in the span of the given basis."""


class RelationValidationError(BraidbreakError):
    """A representation's generator images violate the braid relations
    or are not invertible."""


class ProtocolInternalError(BraidbreakError):
    """The honest simulator produced inconsistent state (k_alice != k_bob)."""


class MalformedTranscriptError(BraidbreakError):
    """A transcript is inconsistent with the protocol it claims: an attack
    stage failed to express a public message in its subspace basis."""

    def __init__(self, stage: int, message: str):
        super().__init__(message)
        self.stage = stage


class TranscriptFormatError(BraidbreakError):
    """A transcript or report document failed schema validation."""

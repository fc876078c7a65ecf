"""Exception types shared across the toolkit.

Every error that crosses a module boundary has a named class here so that
callers (and the HTTP layer) can map failures without string matching.
"""

from __future__ import annotations


class FrameKitError(Exception):
    """Base class for all toolkit errors."""


# -- corpus ingestion / serialization --

class MissingExampleColumn(FrameKitError):
    """Uploaded table has no 'Example' header."""


class MissingLabelColumn(FrameKitError):
    """Labels were required but no 'Label' header is present."""


class EmptyCorpus(FrameKitError):
    """Table has a header but no data rows."""


class MalformedRow(FrameKitError):
    """A data row's field count does not match the header."""

    def __init__(self, row_number: int, expected: int, got: int):
        self.row_number = row_number
        self.expected = expected
        self.got = got
        super().__init__(
            f"row {row_number}: expected {expected} fields, got {got}"
        )


class DimensionMismatch(FrameKitError):
    """Model dimensions do not match the data they are applied to."""


class RaggedSummaries(FrameKitError):
    """Topic summaries carry keyword lists of differing lengths."""


class NormalizationError(FrameKitError):
    """A probability vector does not sum to 1 within tolerance."""


# -- preprocessing --

class EmptyVocabulary(FrameKitError):
    """No term survived document-frequency pruning."""


# -- topic modeling --

class AllDocumentsEmpty(FrameKitError):
    """Every document is empty after preprocessing; nothing to sample."""


class KeywordCountExceedsVocabulary(FrameKitError):
    """Requested more keywords per topic than there are vocabulary terms."""


class TermNotInVocabulary(FrameKitError):
    """A coherence term is not part of the corpus vocabulary."""


# -- classification --

class LabelTooSmall(FrameKitError):
    """A label has too few documents to populate both split sides."""


class NonFiniteLoss(FrameKitError):
    """Training loss became NaN or infinite (learning-rate divergence)."""


class BackendUnavailable(FrameKitError):
    """An external classifier backend is configured but unreachable."""


# -- model registry --

class CorruptModelFile(FrameKitError):
    """A registry artifact failed its checksum or version check."""

    def __init__(self, path: str, reason: str):
        self.path = path
        self.reason = reason
        super().__init__(f"{path}: {reason}")


class DuplicateModelId(FrameKitError):
    """A model with this id is already registered."""


class UnknownModelId(FrameKitError):
    """No registered model has this id."""


# -- job system --

class InvalidParams(FrameKitError):
    """Job parameters failed validation."""

    def __init__(self, field: str, message: str | None = None):
        self.field = field
        super().__init__(message or f"invalid value for {field!r}")


class UnknownJob(FrameKitError):
    """No job record has this id."""


class StoreCorrupt(FrameKitError):
    """The persistent job store cannot be read."""


class SinkUnavailable(FrameKitError):
    """The notification sink rejected a delivery attempt."""


class UnknownCorpus(FrameKitError):
    """No stored corpus has this id."""

"""Exception types shared across the package."""


class PromptlinkError(Exception):
    """Base class for all package-specific errors."""


class ConfigError(PromptlinkError):
    """Bad configuration or misuse of a command/API (CLI exit status 2)."""


class DataFormatError(PromptlinkError):
    """Malformed input file: entity store, alias table, dataset, or record."""


class DuplicateEntityError(DataFormatError):
    """Entity id appears more than once in a store (or alias row repeated)."""


class TemplateError(PromptlinkError):
    """Prompt template problem, e.g. rendering with a missing slot."""


class BackendError(PromptlinkError):
    """Base class for completion-backend failures."""


class TransportError(BackendError):
    """Network-level failure (or retry exhaustion) talking to an endpoint."""


class EndpointError(BackendError):
    """HTTP endpoint returned a non-retryable error response."""

    def __init__(self, message: str, status: int | None = None):
        super().__init__(message)
        self.status = status


class MockScriptError(BackendError):
    """Scripted mock had no matching rule and no default reply."""


class SummaryError(PromptlinkError):
    """Summarization failed: empty description or empty backend reply."""


class EmbeddingError(PromptlinkError):
    """Text could not be embedded (normalizes to no tokens)."""


class PoolError(PromptlinkError):
    """Exemplar pool file is invalid or built with a different embedder."""


class AlignmentError(PromptlinkError):
    """Decisions and gold labels cannot be aligned by mention id."""

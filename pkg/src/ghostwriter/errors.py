"""Exception hierarchy shared across the package.

Every operational failure raises one of these; callers distinguish
transport problems (repository, model endpoint, store) from contract
violations (bad config, malformed input).
"""


class GhostwriterError(Exception):
    """Base class for all package errors."""


# --- ingest ---------------------------------------------------------------


class RepoUnavailable(GhostwriterError):
    """Repository endpoint unreachable or answering with a server error."""


class CollectionNotFound(GhostwriterError):
    """Repository answered 404 for the requested collection."""


class MalformedPage(GhostwriterError):
    """Repository or fixture returned a body that is not valid JSON."""


class MissingField(GhostwriterError):
    """A required metadata field is absent from the source document."""

    def __init__(self, field_name: str):
        super().__init__(f"required field missing: {field_name}")
        self.field_name = field_name


class NotCroissant(GhostwriterError):
    """Document does not declare a Croissant dataset type/context."""


class UnknownSchemaVersion(GhostwriterError):
    """Native export declares a schema version this parser does not speak."""


class BadConfig(GhostwriterError):
    """Configuration value violates a stated precondition."""


class StoreUnavailable(GhostwriterError):
    """Canonical store cannot be read or written."""


# --- kgraph ---------------------------------------------------------------


class DanglingLink(GhostwriterError):
    """A concept link references a record absent from the build input."""


# --- vindex ---------------------------------------------------------------


class ZeroVector(GhostwriterError):
    """Normalization of the all-zero vector is undefined."""


class DimensionMismatch(GhostwriterError):
    """Vector dimension differs from the index's declared dimension."""


class ModelTagMismatch(GhostwriterError):
    """Query embedder and index were produced by different embedding models."""


class IndexCorrupt(GhostwriterError):
    """Index file failed its checksum or structural validation."""


class IoError(GhostwriterError):
    """Index file could not be read or written."""


# --- modelgw --------------------------------------------------------------


class GatewayError(GhostwriterError):
    """Base class for model-endpoint failures."""


class ModelTimeout(GatewayError):
    """Endpoint exceeded its deadline."""


class EndpointError(GatewayError):
    """Endpoint answered with a non-2xx status or a malformed body."""


class EndpointUnreachable(EndpointError):
    """Endpoint could not be contacted at all."""


class PromptTooLarge(GatewayError):
    """Rendered prompt exceeds the context budget (checked before any call)."""


class GenerationFailed(GatewayError):
    """A generation required by the pipeline failed."""


class ScriptExhausted(GatewayError):
    """Scripted mock ran out of replies; the test script is too short."""


# --- strategies / service -------------------------------------------------


class BudgetImpossible(GhostwriterError):
    """Even the bare question exceeds the context budget."""


class UnknownStrategy(GhostwriterError):
    """Requested strategy name is not registered."""


class CollectionNotIndexed(GhostwriterError):
    """Ask arrived before the collection's index was built."""


# --- evalkit ---------------------------------------------------------------


class EmptySuite(GhostwriterError):
    """Evaluation suite holds no cases."""

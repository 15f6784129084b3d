"""Exception types shared across the package."""


class SumgraphError(Exception):
    """Base class for all errors raised by this package."""


class MalformedDocumentError(SumgraphError):
    """A document is structurally unusable (e.g. empty body)."""


class CorpusError(SumgraphError):
    """A corpus file or directory cannot be interpreted."""


class ConfigError(SumgraphError):
    """Invalid configuration value or unreadable resource file."""


class AnnotationError(SumgraphError):
    """An imported entity annotation record is inconsistent with the document."""

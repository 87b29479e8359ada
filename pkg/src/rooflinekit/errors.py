"""Exception types shared across the toolkit.

The CLI maps these onto stable exit codes, and the HTTP service maps them
onto status codes, so new failure modes should reuse one of these classes
rather than raising bare ValueError.
"""


class RooflineError(Exception):
    """Base class for all toolkit errors."""


class DomainError(RooflineError, ValueError):
    """A numeric argument is outside the mathematical domain (<= 0, NaN, inf)."""


class ValidationError(RooflineError, ValueError):
    """A dataset or value violates an invariant.

    ``path`` names the offending JSON location when the error came from
    parsing a document (e.g. "machine.gflops[0].value").
    """

    def __init__(self, message: str, path: str | None = None):
        if path:
            message = f"{path}: {message}"
        super().__init__(message)
        self.path = path


class ParseError(RooflineError, ValueError):
    """Input is not well-formed JSON. ``byte_offset`` locates the failure."""

    def __init__(self, message: str, byte_offset: int = 0):
        super().__init__(message)
        self.byte_offset = byte_offset


class VersionError(RooflineError):
    """Dataset or index declares a schema version this build does not support."""


class TransportError(RooflineError):
    """Network-level failure talking to a remote repository."""


class RemoteError(RooflineError):
    """Remote repository answered with a non-200 status."""

    def __init__(self, message: str, status: int):
        super().__init__(message)
        self.status = status


class IntegrityError(RooflineError):
    """Downloaded payload does not match the checksum published in the index."""


class NotFoundError(RooflineError, KeyError):
    """Requested identifier is unknown."""


class CapacityError(RooflineError, ValueError):
    """More datasets requested than a comparison chart can legibly hold."""


class RenderError(RooflineError, ValueError):
    """Chart geometry cannot be projected onto pixels (degenerate domain)."""

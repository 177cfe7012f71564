"""
Exception hierarchy shared by the library, the harness and the CLI
"""


class TrackerError(Exception):
    """Base class for every error raised by influence_tracker"""


class ConfigurationError(TrackerError):
    """Invalid parameters or an algorithm that cannot run on the configured stream"""


class InvalidInteractionError(TrackerError):
    """A single stream record that cannot become an Interaction"""

    def __init__(self, message: str, record: object = None):
        super().__init__(message)
        self.record = record


class ChronologyError(TrackerError):
    """Interactions fed out of timestep order"""


class LifetimeBoundError(TrackerError):
    """An interaction whose lifetime exceeds the configured maximum L"""


class SearchSpaceError(TrackerError):
    """Exhaustive search refused because the subset count exceeds its guard"""


class StreamFormatError(TrackerError):
    """Malformed or unreadable stream input"""

    def __init__(self, message: str, line_number: int | None = None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number


class EmptyStreamError(StreamFormatError):
    """A stream source that produced no interactions"""

"""Exception hierarchy shared by every module."""


class MelogeoError(Exception):
    """Base class for all errors raised by melogeo."""


class MelodyError(MelogeoError, ValueError):
    """A melody violates a structural invariant."""


class NonMonotoneTimes(MelodyError):
    pass


class NonZeroOrigin(MelodyError):
    pass


class LengthMismatch(MelodyError):
    pass


class EmptyMelody(MelodyError):
    pass


class DurationMismatch(MelodyError):
    pass


class QueryLongerThanReference(MelodyError):
    pass


class BadK(MelogeoError, ValueError):
    pass


class ProblemTooLarge(MelogeoError, MemoryError):
    pass


class SweepInconsistency(MelogeoError, AssertionError):
    """Internal sweep state disagrees with its own invariants."""


class FormatError(MelogeoError, ValueError):
    """Base class for serialization and ingestion errors."""


class MalformedJson(FormatError):
    pass


class SchemaViolation(FormatError):
    pass


class NotMidi(FormatError):
    pass


class UnsupportedFormat(FormatError):
    pass


class EmptyTrack(FormatError):
    pass


class PolyphonyDetected(FormatError):
    def __init__(self, tick, message=None):
        self.tick = tick
        super().__init__(message or f"overlapping notes at tick {tick}")


class MelodyWarning(UserWarning):
    """Non-fatal oddity in an input melody."""

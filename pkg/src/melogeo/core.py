"""Melody representations, exact arithmetic and representation conversions.

Every time and pitch is held as a :class:`fractions.Fraction` so that the
event equalities the sweeps rely on (a query boundary landing exactly on a
reference boundary, a point landing exactly on a bisector) are decidable.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence, Union

from .errors import (
    EmptyMelody,
    LengthMismatch,
    MelodyWarning,
    NonMonotoneTimes,
    NonZeroOrigin,
)

Rational = Fraction
RationalLike = Union[int, Fraction, str, float]


def as_rational(value: RationalLike) -> Fraction:
    """Convert ``value`` to an exact :class:`Fraction`.

    Accepts integers, fractions, ``"num/den"`` or decimal strings and finite
    floats (converted exactly, binary expansion included).
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, _RationalABC)):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"non-finite value {value!r}")
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.replace(" ", ""))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational: {value!r}") from exc
    raise TypeError(f"cannot interpret {type(value).__name__} as a rational")


def format_rational(value: Fraction) -> int | str:
    """Integers stay integers, everything else becomes ``"num/den"``."""
    if value.denominator == 1:
        return value.numerator
    return f"{value.numerator}/{value.denominator}"


def _check_increasing(times: Sequence[Fraction]) -> None:
    for k in range(1, len(times)):
        if times[k] <= times[k - 1]:
            raise NonMonotoneTimes(
                f"times must be strictly increasing: position {k} has "
                f"{times[k]} after {times[k - 1]}"
            )


def _warn_repeated_pitch(pitches: Sequence[Fraction]) -> None:
    for k in range(1, len(pitches)):
        if pitches[k] == pitches[k - 1]:
            warnings.warn(
                f"consecutive notes {k} and {k + 1} share pitch {pitches[k]}; "
                "they are kept as separate notes",
                MelodyWarning,
                stacklevel=3,
            )
            return


@dataclass(frozen=True)
class SegmentMelody:
    """A melodic contour: a step function of pitch over time.

    ``times`` is the partition ``x_0 = 0 < x_1 < ... < x_n`` and
    ``pitches[i]`` is the pitch on ``[times[i], times[i + 1]]``.
    """

    times: tuple[Fraction, ...]
    pitches: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "times", tuple(as_rational(t) for t in self.times))
        object.__setattr__(self, "pitches", tuple(as_rational(p) for p in self.pitches))
        _check_segment(self.times, self.pitches)

    @property
    def n(self) -> int:
        return len(self.pitches)

    @property
    def end(self) -> Fraction:
        return self.times[-1]

    def __len__(self) -> int:
        return len(self.pitches)


@dataclass(frozen=True)
class PointMelody:
    """A melody as a time-ordered sequence of ``(time, pitch)`` points."""

    times: tuple[Fraction, ...]
    pitches: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "times", tuple(as_rational(t) for t in self.times))
        object.__setattr__(self, "pitches", tuple(as_rational(p) for p in self.pitches))
        _check_point(self.times, self.pitches)

    @classmethod
    def from_notes(cls, notes: Iterable[tuple[RationalLike, RationalLike]]) -> "PointMelody":
        notes = list(notes)
        return cls(tuple(t for t, _ in notes), tuple(p for _, p in notes))

    @property
    def notes(self) -> tuple[tuple[Fraction, Fraction], ...]:
        return tuple(zip(self.times, self.pitches))

    @property
    def n(self) -> int:
        return len(self.times)

    def __len__(self) -> int:
        return len(self.times)


Melody = Union[SegmentMelody, PointMelody]


def _check_segment(times, pitches) -> None:
    if len(pitches) == 0 or len(times) < 2:
        raise EmptyMelody("a segment melody needs at least one segment")
    if len(pitches) != len(times) - 1:
        raise LengthMismatch(
            f"{len(times)} boundary times describe {len(times) - 1} segments "
            f"but {len(pitches)} pitches were given"
        )
    if times[0] != 0:
        raise NonZeroOrigin(f"the first boundary must be 0, got {times[0]}")
    _check_increasing(times)


def _check_point(times, pitches) -> None:
    if len(times) == 0:
        raise EmptyMelody("a point melody needs at least one note")
    if len(times) != len(pitches):
        raise LengthMismatch(f"{len(times)} times but {len(pitches)} pitches")
    _check_increasing(times)


def validate(melody: Melody) -> Melody:
    """Return ``melody`` unchanged if all of its invariants hold, else raise.

    Repeated consecutive pitches are legal but reported as a
    :class:`~melogeo.errors.MelodyWarning`.
    """
    if isinstance(melody, SegmentMelody):
        _check_segment(melody.times, melody.pitches)
    elif isinstance(melody, PointMelody):
        _check_point(melody.times, melody.pitches)
    else:
        raise TypeError(f"not a melody: {type(melody).__name__}")
    _warn_repeated_pitch(melody.pitches)
    return melody


def segment_to_point(melody: SegmentMelody) -> PointMelody:
    """Place one point at the time midpoint of every segment."""
    x = melody.times
    return PointMelody(
        tuple((x[i] + x[i + 1]) / 2 for i in range(melody.n)),
        melody.pitches,
    )


def shift_pitch(melody: Melody, shift: RationalLike) -> Melody:
    s = as_rational(shift)
    return type(melody)(melody.times, tuple(p + s for p in melody.pitches))


def transpose_normalize(melody: Melody) -> Melody:
    """Transpose so the first pitch is 0.

    Both similarity measures only see pitch differences, so this makes a
    comparison key-invariant without changing any measured value.
    """
    return shift_pitch(melody, -melody.pitches[0])

"""JSON melody documents.

A segment document lists boundary times and one pitch per segment::

    {"representation": "segment", "time_unit": "beat",
     "times": [0, 1, "5/2"], "pitches": [60, 62]}

A point document lists ``[time, pitch]`` pairs::

    {"representation": "point", "time_unit": "beat", "notes": [[0, 60], ["1/2", 62]]}

Numbers are integers or exact ``"num/den"`` strings. ``time_unit`` is an
optional free-form label.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction

from ..core import Melody, PointMelody, SegmentMelody, format_rational, validate
from ..errors import MalformedJson, SchemaViolation

_RATIONAL = re.compile(r"^\s*[+-]?\d+(\s*/\s*\d+)?\s*$")
_FIELDS = {
    "segment": {"representation", "time_unit", "times", "pitches"},
    "point": {"representation", "time_unit", "notes"},
}


@dataclass(frozen=True)
class MelodyDocument:
    representation: str
    time_unit: str
    melody: Melody


def _number(value, where: str) -> Fraction:
    if isinstance(value, bool):
        raise SchemaViolation(f"{where}: expected a number, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str) and _RATIONAL.match(value):
        try:
            return Fraction(value.replace(" ", ""))
        except ZeroDivisionError:
            raise SchemaViolation(f"{where}: zero denominator in {value!r}") from None
    raise SchemaViolation(
        f"{where}: expected an integer or a 'num/den' string, got {value!r}"
    )


def _array(doc, key):
    value = doc.get(key)
    if not isinstance(value, list):
        raise SchemaViolation(f"'{key}' must be an array")
    return value


def parse_document(data: bytes | str) -> MelodyDocument:
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise MalformedJson(f"not UTF-8: {exc}") from None
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise MalformedJson(str(exc)) from None
    if not isinstance(doc, dict):
        raise SchemaViolation("a melody document must be a JSON object")
    rep = doc.get("representation")
    if rep not in _FIELDS:
        raise SchemaViolation("'representation' must be 'segment' or 'point'")
    missing = _FIELDS[rep] - {"time_unit"} - doc.keys()
    extra = doc.keys() - _FIELDS[rep]
    if missing:
        raise SchemaViolation(f"missing field(s): {', '.join(sorted(missing))}")
    if extra:
        raise SchemaViolation(f"unexpected field(s): {', '.join(sorted(extra))}")
    unit = doc.get("time_unit", "")
    if not isinstance(unit, str):
        raise SchemaViolation("'time_unit' must be a string")
    if rep == "segment":
        times = [_number(v, f"times[{i}]") for i, v in enumerate(_array(doc, "times"))]
        pitches = [_number(v, f"pitches[{i}]") for i, v in enumerate(_array(doc, "pitches"))]
        melody = SegmentMelody(tuple(times), tuple(pitches))
    else:
        notes = []
        for i, note in enumerate(_array(doc, "notes")):
            if not isinstance(note, list) or len(note) != 2:
                raise SchemaViolation(f"notes[{i}] must be a [time, pitch] pair")
            notes.append((_number(note[0], f"notes[{i}][0]"), _number(note[1], f"notes[{i}][1]")))
        melody = PointMelody.from_notes(notes)
    return MelodyDocument(rep, unit, validate(melody))


def parse_json(data: bytes | str) -> Melody:
    """Parse and validate a melody document."""
    return parse_document(data).melody


def to_document(melody: Melody, time_unit: str = "") -> dict:
    f = format_rational
    if isinstance(melody, SegmentMelody):
        doc = {"representation": "segment", "time_unit": time_unit,
               "times": [f(t) for t in melody.times], "pitches": [f(p) for p in melody.pitches]}
    elif isinstance(melody, PointMelody):
        doc = {"representation": "point", "time_unit": time_unit,
               "notes": [[f(t), f(p)] for t, p in melody.notes]}
    else:
        raise TypeError(f"not a melody: {type(melody).__name__}")
    return doc


def serialize_json(melody: Melody, time_unit: str = "") -> bytes:
    """Canonical UTF-8 encoding; ``parse_json`` inverts it exactly."""
    return (json.dumps(to_document(melody, time_unit)) + "\n").encode("utf-8")

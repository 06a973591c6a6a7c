"""Serialization: JSON melody documents, MIDI ingestion, CSV profiles."""

from .csvfmt import export_profile_csv, read_profile_csv
from .jsonfmt import MelodyDocument, parse_document, parse_json, serialize_json, to_document
from .midi import midi_to_segment

__all__ = [
    "MelodyDocument",
    "export_profile_csv",
    "midi_to_segment",
    "parse_document",
    "parse_json",
    "read_profile_csv",
    "serialize_json",
    "to_document",
]

"""Monophonic Standard MIDI File ingestion.

Decoding of the byte stream (running status, variable-length deltas, meta
and sysex events) is left to :mod:`mido`; this module turns the resulting
note stream into a gapless contour measured in ticks.
"""

from __future__ import annotations

import io
from collections import defaultdict

import mido

from ..core import SegmentMelody
from ..errors import EmptyTrack, NotMidi, PolyphonyDetected, UnsupportedFormat


def _note_events(track):
    """``(tick, is_on, key)`` for every note message, in file order."""
    tick = 0
    for msg in track:
        tick += msg.time
        if msg.type == "note_on" and msg.velocity > 0:
            yield tick, True, msg.note
        elif msg.type == "note_off" or (msg.type == "note_on" and msg.velocity == 0):
            yield tick, False, msg.note


def _notes(events):
    """Collapse note events into ``(onset, offset, key)`` spans.

    Within one tick note-offs of already sounding notes are applied first,
    so back-to-back legato notes written on-before-off are not overlaps. A
    note switched on and off at the same tick has no duration and is dropped.
    """
    by_tick = defaultdict(list)
    order = []
    for tick, is_on, key in events:
        if tick not in by_tick:
            order.append(tick)
        by_tick[tick].append((is_on, key))
    spans = []
    sounding = None  # (onset, key)
    for tick in order:
        batch = by_tick[tick]
        if sounding is not None:
            for k, (is_on, key) in enumerate(batch):
                if not is_on and key == sounding[1]:
                    spans.append((sounding[0], tick, key))
                    sounding = None
                    del batch[k]
                    break
        for k, (is_on, key) in enumerate(batch):
            if not is_on:
                continue
            if any(not on and kk == key for on, kk in batch[k + 1:]):
                batch.remove((False, key))
                continue
            if sounding is not None:
                raise PolyphonyDetected(
                    tick, f"note {key} starts at tick {tick} while note "
                    f"{sounding[1]} (from tick {sounding[0]}) is still sounding"
                )
            sounding = (tick, key)
    return spans, sounding


def midi_to_segment(data: bytes) -> SegmentMelody:
    """Read a format 0 file, or a format 1 file with one track holding notes.

    Rests are absorbed by extending the preceding note to the next onset,
    leading silence is trimmed, tempo is ignored and pitches are key numbers.
    A note left sounding at the end of its track ends there.
    """
    if len(data) < 14 or data[:4] != b"MThd":
        raise NotMidi("missing MThd header")
    fmt = int.from_bytes(data[8:10], "big")
    if fmt == 2:
        raise UnsupportedFormat("format 2 (independent sequences) is not supported")
    if fmt not in (0, 1):
        raise NotMidi(f"unknown SMF format {fmt}")
    if data[12] & 0x80:
        raise UnsupportedFormat("SMPTE time division is not supported")
    try:
        mid = mido.MidiFile(file=io.BytesIO(data))
    except (OSError, EOFError, ValueError, KeyError, IndexError) as exc:
        raise NotMidi(f"cannot decode MIDI data: {exc}") from None
    melodic = []
    for track in mid.tracks:
        events = list(_note_events(track))
        if events:
            melodic.append((track, events))
    if not melodic:
        raise EmptyTrack("no note events found")
    if len(melodic) > 1:
        raise UnsupportedFormat(
            f"{len(melodic)} tracks contain notes; expected a single melodic track"
        )
    track, events = melodic[0]
    spans, sounding = _notes(events)
    if sounding is not None:
        end = sum(msg.time for msg in track)
        if end > sounding[0]:
            spans.append((sounding[0], end, sounding[1]))
    if not spans:
        raise EmptyTrack("no note with positive duration")
    origin = spans[0][0]
    times = [on - origin for on, _, _ in spans] + [spans[-1][1] - origin]
    return SegmentMelody(tuple(times), tuple(key for _, _, key in spans))

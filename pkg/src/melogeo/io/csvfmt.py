"""CSV export of piecewise cost profiles."""

from __future__ import annotations

import csv
import io
from fractions import Fraction
from typing import Iterable

from ..core import format_rational
from ..scaling.common import PiecewisePiece

COLUMNS = ("eps_lo", "eps_hi", "value_at_lo", "slope")


def _decimal(value: Fraction, digits: int) -> str:
    return f"{float(value):.{digits}g}"


def export_profile_csv(pieces: Iterable[PiecewisePiece], *, digits: int = 12) -> bytes:
    """One row per piece: decimal columns, then the same four values exactly.

    The exact columns hold ``num/den`` (or integer) strings and are the ones
    to read back; the decimal ones are rounded to ``digits`` significant
    digits for plotting tools.
    """
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(COLUMNS + tuple(f"{c}_exact" for c in COLUMNS))
    for piece in pieces:
        values = (piece.eps_lo, piece.eps_hi, piece.value_at_lo, piece.slope)
        writer.writerow(
            [_decimal(v, digits) for v in values] + [str(format_rational(v)) for v in values]
        )
    return buf.getvalue().encode("utf-8")


def read_profile_csv(data: bytes) -> list[PiecewisePiece]:
    """Inverse of :func:`export_profile_csv`, using the exact columns."""
    rows = list(csv.reader(io.StringIO(data.decode("utf-8"))))
    header, body = rows[0], rows[1:]
    idx = [header.index(f"{c}_exact") for c in COLUMNS]
    return [PiecewisePiece(*(Fraction(row[k]) for k in idx)) for row in body]

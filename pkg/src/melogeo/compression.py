"""Optimal k-note compression of a melody by dynamic programming.

``compress_points`` picks the k-subset of notes whose t-monotone matching
against the full melody is cheapest. ``compress_segments`` builds the
k-segment contour, with boundaries on the original partition and pitches
from the original pitch set, that has the least area to the original.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .core import PointMelody, SegmentMelody
from .errors import BadK, ProblemTooLarge
from .measures import area_between, t_monotone_matching

MAX_PAIRWISE_POINTS = 4096


@dataclass(frozen=True)
class PairwiseCostTable:
    """Matching cost of the notes strictly between two consecutive selected notes.

    Rows are indexed by the left selected note ``i`` (``0`` is a virtual note
    before the melody), and ``left[i][i2 - i - 1]`` / ``right[i][i2 - i - 1]``
    hold the part charged to ``R_i`` and to ``R_{i2}`` for ``i < i2 <= n + 1``
    (``n + 1`` is a virtual note after the melody).
    """

    n: int
    left: tuple[tuple[Fraction, ...], ...]
    right: tuple[tuple[Fraction, ...], ...]

    def L(self, i: int, i2: int) -> Fraction:
        return self.left[i][i2 - i - 1]

    def R(self, i: int, i2: int) -> Fraction:
        return self.right[i][i2 - i - 1]

    def W(self, i: int, i2: int) -> Fraction:
        return self.left[i][i2 - i - 1] + self.right[i][i2 - i - 1]


@dataclass(frozen=True)
class PointCompression:
    indices: tuple[int, ...]  # 1-based, strictly increasing
    cost: Fraction

    def melody(self, r: PointMelody) -> PointMelody:
        return PointMelody(
            tuple(r.times[i - 1] for i in self.indices),
            tuple(r.pitches[i - 1] for i in self.indices),
        )


@dataclass(frozen=True)
class SegmentCompression:
    times: tuple[Fraction, ...]
    pitches: tuple[Fraction, ...]
    cost: Fraction

    @property
    def melody(self) -> SegmentMelody:
        return SegmentMelody(self.times, self.pitches)


def _d1(r: PointMelody, a: int, b: int) -> Fraction:
    return abs(r.times[a] - r.times[b]) + abs(r.pitches[a] - r.pitches[b])


def build_pairwise_costs(r: PointMelody, *, max_points: int = MAX_PAIRWISE_POINTS) -> PairwiseCostTable:
    """All left and right partial costs in O(n^2).

    For a fixed left note the midpoint to the next selected note only moves
    right as that note moves right, so one forward sweep yields a whole row
    of left parts; the right parts come from one backward sweep per note.
    A note sitting exactly on the midpoint goes to the left note unless the
    right one is strictly nearer in l1.
    """
    n = r.n
    if n > max_points:
        raise ProblemTooLarge(
            f"{n} notes need a {n + 2}x{n + 2} table of exact rationals; "
            f"the limit is {max_points} (raise max_points to override)"
        )
    x = r.times
    # 0-based note a is note a + 1; virtual notes are -1 and n.
    left_rows = [[Fraction(0)] * (n + 1)]  # row for virtual note 0: nothing charged left
    for a in range(n):
        row = []
        acc = Fraction(0)
        c = a + 1  # first note not yet charged to a
        for b in range(a + 1, n + 1):
            if b == n:
                total = acc + sum((_d1(r, k, a) for k in range(c, n)), Fraction(0))
                row.append(total)
                break
            mid = (x[a] + x[b]) / 2
            while c < b and x[c] < mid:
                acc += _d1(r, c, a)
                c += 1
            extra = Fraction(0)
            if c < b and x[c] == mid and _d1(r, c, a) <= _d1(r, c, b):
                extra = _d1(r, c, a)
            row.append(acc + extra)
        left_rows.append(row)

    right_cols = [[None] * (n + 1 - a) for a in range(n + 1)]
    for b in range(n):
        acc = Fraction(0)
        c = b - 1  # last note not yet charged to b
        for a in range(b - 1, -2, -1):
            if a == -1:
                total = acc + sum((_d1(r, k, b) for k in range(0, c + 1)), Fraction(0))
                right_cols[0][b] = total
                break
            mid = (x[a] + x[b]) / 2
            while c > a and x[c] > mid:
                acc += _d1(r, c, b)
                c -= 1
            extra = Fraction(0)
            if c > a and x[c] == mid and _d1(r, c, b) < _d1(r, c, a):
                extra = _d1(r, c, b)
            right_cols[a + 1][b - a - 1] = acc + extra
    for a in range(n + 1):
        right_cols[a][n - a] = Fraction(0)
    return PairwiseCostTable(
        n,
        tuple(tuple(row) for row in left_rows),
        tuple(tuple(col) for col in right_cols),
    )


def _check_k(k: int, n: int) -> None:
    if not isinstance(k, int) or isinstance(k, bool) or not 1 <= k <= n:
        raise BadK(f"k must be an integer in 1..{n}, got {k!r}")


def compress_points(r: PointMelody, k: int, *, table: PairwiseCostTable | None = None) -> PointCompression:
    """Optimal k-subset of the notes of ``r`` under t-monotone matching cost.

    ``best[j][i]`` is the cheapest left-optimal j-set ending at note ``i``
    and ``pred[j][i]`` its previous note. Ties keep the smallest predecessor
    and the smallest final note.
    """
    n = r.n
    _check_k(k, n)
    w = table or build_pairwise_costs(r)
    W = w.W
    best = [None, [None] + [W(0, i) for i in range(1, n + 1)]]
    pred = [None, [0] * (n + 1)]
    for j in range(2, k + 1):
        prev = best[j - 1]
        row, back = [None] * (n + 1), [0] * (n + 1)
        for i in range(j, n + 1):
            cand, arg = None, 0
            for l in range(j - 1, i):
                c = prev[l] + W(l, i)
                if cand is None or c < cand:
                    cand, arg = c, l
            row[i], back[i] = cand, arg
        best.append(row)
        pred.append(back)
    cost, last = None, 0
    for i in range(k, n + 1):
        c = best[k][i] + W(i, n + 1)
        if cost is None or c < cost:
            cost, last = c, i
    indices = [last]
    for j in range(k, 1, -1):
        indices.append(pred[j][indices[-1]])
    indices.reverse()
    result = PointCompression(tuple(indices), cost)
    check = t_monotone_matching(r, result.melody(r)).cost
    if check != cost:
        raise AssertionError(f"DP cost {cost} disagrees with recomputed {check}")
    return result


def compress_segments(r: SegmentMelody, k: int) -> SegmentCompression:
    """Optimal k-segment contour under the area measure, in O(k * n * distinct pitches).

    ``cur[j][p]`` is the least area of a j-segment contour of the current
    prefix whose last segment has pitch ``levels[p]``; ``start[j][p]`` is where
    that last segment begins. After each prefix the per-j minimum (smallest
    pitch on ties) is frozen into ``best``/``best_start``/``best_pitch``.
    """
    n = r.n
    _check_k(k, n)
    levels = sorted(set(r.pitches))
    n_levels = len(levels)
    x, rp = r.times, r.pitches
    inf = math.inf

    # best[i][j]: optimum j-compression of the prefix ending at x_i
    best = [[inf] * (k + 1) for _ in range(n + 1)]
    best_start = [[0] * (k + 1) for _ in range(n + 1)]
    best_pitch = [[None] * (k + 1) for _ in range(n + 1)]

    width = x[1] - x[0]
    cur = [[inf] * n_levels for _ in range(k + 1)]
    start = [[0] * n_levels for _ in range(k + 1)]
    cur[1] = [abs(p - rp[0]) * width for p in levels]

    for i in range(1, n + 1):
        for j in range(1, min(i, k) + 1):
            row = cur[j]
            arg = min(range(n_levels), key=row.__getitem__)  # first index = lowest pitch
            best[i][j] = row[arg]
            best_start[i][j] = start[j][arg]
            best_pitch[i][j] = levels[arg]
        if i == n:
            break
        width = x[i + 1] - x[i]
        seg_pitch = rp[i]
        for j in range(min(i + 1, k), 0, -1):
            split = best[i][j - 1] if j > 1 else inf
            row, srow = cur[j], start[j]
            for p in range(n_levels):
                add = abs(levels[p] - seg_pitch) * width
                if row[p] <= split:
                    row[p] = row[p] + add
                else:
                    row[p] = split + add
                    srow[p] = i

    cost = best[n][k]
    bounds, pitches = [x[n]], []
    i, j = n, k
    while j >= 1:
        pitches.append(best_pitch[i][j])
        i = best_start[i][j]
        bounds.append(x[i])
        j -= 1
    bounds.reverse()
    pitches.reverse()
    result = SegmentCompression(tuple(bounds), tuple(pitches), cost)
    xs = set(x)
    if bounds[0] != 0 or not all(t in xs for t in bounds):
        raise AssertionError("compressed partition left the original boundaries")
    check = area_between(r, result.melody)
    if check != cost:
        raise AssertionError(f"DP area {cost} disagrees with recomputed {check}")
    return result

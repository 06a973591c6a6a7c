"""Brute-force reference implementations.

Each function here transcribes a definition directly: no incremental state,
no priority queues, no shared code with the optimisers beyond the melody
types. They exist so results can be audited, not for speed.
"""

from __future__ import annotations

from bisect import bisect_right
from fractions import Fraction
from itertools import combinations

from .compression import PointCompression, SegmentCompression
from .core import PointMelody, SegmentMelody
from .errors import BadK, DurationMismatch, QueryLongerThanReference
from .measures import Matching
from .scaling.common import ScaleResult


def _pitch_at(melody: SegmentMelody, t: Fraction) -> Fraction:
    return melody.pitches[bisect_right(melody.times, t) - 1]


def oracle_area(r: SegmentMelody, q: SegmentMelody) -> Fraction:
    """Integrate ``|R(t) - Q(t)|`` over the union of both partitions."""
    if r.times[-1] != q.times[-1]:
        raise DurationMismatch("melodies must end together")
    cuts = sorted(set(r.times) | set(q.times))
    total = Fraction(0)
    for a, b in zip(cuts, cuts[1:]):
        probe = (a + b) / 2
        total += abs(_pitch_at(r, probe) - _pitch_at(q, probe)) * (b - a)
    return total


def _rule(x, p, ts, qs):
    """t-monotone nearest index of ``ts`` for (x, p), written as the case list."""
    m = len(ts)
    d = lambda j: abs(x - ts[j]) + abs(p - qs[j])  # noqa: E731
    if x < ts[0]:
        return 0
    if x > ts[m - 1]:
        return m - 1
    for j in range(m):
        if x == ts[j]:
            return j
    for j in range(m - 1):
        mid = (ts[j] + ts[j + 1]) / 2
        if ts[j] < x < mid:
            return j
        if mid < x < ts[j + 1]:
            return j + 1
        if x == mid:
            return j if d(j) <= d(j + 1) else j + 1
    raise AssertionError("unreachable")


def oracle_matching(r: PointMelody, q: PointMelody) -> Matching:
    xs, ps, ts, qs = r.times, r.pitches, q.times, q.pitches
    forward = [_rule(xs[i], ps[i], ts, qs) for i in range(len(xs))]
    backward = [
        (j, _rule(ts[j], qs[j], xs, ps)) for j in range(len(ts)) if j not in forward
    ]
    pairs = [(i, j) for i, j in enumerate(forward)] + [(i, j) for j, i in backward]
    cost = sum((abs(xs[i] - ts[j]) + abs(ps[i] - qs[j]) for i, j in pairs), Fraction(0))
    return Matching(
        frozenset((i + 1, j + 1) for i, j in pairs if xs[i] < ts[j]),
        frozenset((i + 1, j + 1) for i, j in pairs if xs[i] >= ts[j]),
        cost,
        tuple(j + 1 for j in forward),
        tuple((j + 1, i + 1) for j, i in backward),
    )


def _scaled_segment(q: SegmentMelody, eps, end) -> SegmentMelody:
    times = [t + j * eps for j, t in enumerate(q.times)]
    times[-1] = end
    return SegmentMelody(tuple(times), q.pitches)


def _scaled_points(q: PointMelody, eps) -> PointMelody:
    return PointMelody(
        tuple(t + Fraction(2 * j - 1, 2) * eps for j, t in enumerate(q.times, start=1)),
        q.pitches,
    )


def oracle_min_area_scaling(r: SegmentMelody, q: SegmentMelody) -> ScaleResult:
    """Evaluate the area at every ``eps`` with ``t_j + j*eps = x_i`` and at both ends."""
    x, t = r.times, q.times
    n, m = r.n, q.n
    if t[-1] > x[-1]:
        raise QueryLongerThanReference("query longer than reference")
    eps_max = (x[-1] - t[-1]) / m
    cands = {Fraction(0), eps_max}
    for j in range(1, m):
        for i in range(1, n):
            e = Fraction(x[i] - t[j], j)
            if 0 <= e <= eps_max:
                cands.add(e)
    entries = [(oracle_area(r, _scaled_segment(q, e, x[-1])), e) for e in cands]
    cost, eps = min(entries)
    return ScaleResult(eps, cost, len(cands), eps_max, True)


def matching_candidates(r: PointMelody, q: PointMelody, eps_max) -> list[Fraction]:
    """Every solution in ``[0, eps_max]`` of the three event equations, plus both ends."""
    x, t = r.times, q.times
    n, m = len(x), len(t)
    c = lambda j: Fraction(2 * j + 1, 2)  # noqa: E731 (0-based query index)
    sols = {Fraction(0), Fraction(eps_max)}
    for j in range(m):
        for i in range(n):
            sols.add((x[i] - t[j]) / c(j))
            if i + 1 < n:
                sols.add(((x[i] + x[i + 1]) / 2 - t[j]) / c(j))
            if j + 1 < m:
                sols.add((x[i] - (t[j] + t[j + 1]) / 2) / (c(j) + c(j + 1)) * 2)
    return sorted(e for e in sols if 0 <= e <= eps_max)


def oracle_min_matching_scaling(r: PointMelody, q: PointMelody, eps_max=None) -> ScaleResult:
    """Infimum of the matching cost over ``[0, eps_max]``.

    The cost at every candidate is evaluated directly. Between two adjacent
    candidates the cost is linear, so it is sampled at two interior points
    and extended to both ends to obtain the one-sided limits there.
    """
    if eps_max is None:
        eps_max = 2 * (r.times[-1] - q.times[-1]) / (2 * q.n - 1)
    eps_max = Fraction(eps_max)
    if eps_max < 0:
        raise QueryLongerThanReference("query longer than reference")
    cost = lambda e: oracle_matching(r, _scaled_points(q, e)).cost  # noqa: E731
    cands = matching_candidates(r, q, eps_max)
    exact = {e: cost(e) for e in cands}
    entries = [(v, e, 0) for e, v in exact.items()]
    for a, b in zip(cands, cands[1:]):
        u, v = a + (b - a) / 3, a + 2 * (b - a) / 3
        fu, fv = cost(u), cost(v)
        slope = (fv - fu) / (v - u)
        entries.append((fu - slope * (u - a), a, 1))
        entries.append((fv + slope * (b - v), b, 1))
    best, eps, _ = min(entries)
    return ScaleResult(eps, best, len(cands), eps_max, exact[eps] == best)


def oracle_compress_points(r: PointMelody, k: int) -> PointCompression:
    """Try every k-subset in lexicographic order (n <= 14 is practical)."""
    n = r.n
    if not 1 <= k <= n:
        raise BadK(f"k must be in 1..{n}")
    best = None
    for subset in combinations(range(n), k):
        sub = PointMelody(
            tuple(r.times[i] for i in subset), tuple(r.pitches[i] for i in subset)
        )
        c = oracle_matching(r, sub).cost
        if best is None or c < best[0]:
            best = (c, subset)
    return PointCompression(tuple(i + 1 for i in best[1]), best[0])


def oracle_compress_segments(r: SegmentMelody, k: int, *, contained: bool = False) -> SegmentCompression:
    """Try every partition on the original boundaries.

    Each output segment independently takes its cheapest pitch: from the
    whole pitch set, or with ``contained`` only a pitch of some original
    segment lying inside it.
    """
    n = r.n
    if not 1 <= k <= n:
        raise BadK(f"k must be in 1..{n}")
    x, rp = r.times, r.pitches
    levels = sorted(set(rp))

    def segment_cost(a, b, p):
        return sum((abs(p - rp[l]) * (x[l + 1] - x[l]) for l in range(a, b)), Fraction(0))

    best = None
    for cuts in combinations(range(1, n), k - 1):
        bounds = (0,) + cuts + (n,)
        total, pitches = Fraction(0), []
        for a, b in zip(bounds, bounds[1:]):
            choices = sorted(set(rp[a:b])) if contained else levels
            c, p = min((segment_cost(a, b, p), p) for p in choices)
            total += c
            pitches.append(p)
        if best is None or total < best[0]:
            best = (total, bounds, pitches)
    total, bounds, pitches = best
    return SegmentCompression(tuple(x[b] for b in bounds), tuple(pitches), total)

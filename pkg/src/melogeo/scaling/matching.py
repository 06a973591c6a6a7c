"""Minimum t-monotone matching cost scaling (point representation).

Query note ``j`` (1-based) moves right at rate ``(2j - 1)/2``. The matching
only changes at three kinds of events:

* ``Type1``: a query note reaches a reference note, ``t_j(eps) = x_i``;
* ``Type2``: a query bisector reaches a reference note,
  ``(t_j(eps) + t_{j+1}(eps))/2 = x_i``;
* ``Type3``: a query note reaches a reference bisector,
  ``t_j(eps) = (x_i + x_{i+1})/2``.

Between events the cost is linear with slope ``(S- - S+)/2`` where ``S-`` and
``S+`` sum ``2j - 1`` over the pairs in ``A-`` and ``A+``. At each event only a
constant number of notes can change partner, so the sweep re-derives the
assignment of just those notes, once for the configuration at exactly
``eps`` and once for the configuration just after it. Positions are compared
as ``(value, rate)`` pairs in the second case, which resolves every
comparison to its sign for ``eps + delta`` with ``delta`` infinitesimal.
"""

from __future__ import annotations

import heapq
from bisect import bisect_right
from fractions import Fraction

from ..core import PointMelody, as_rational
from ..errors import QueryLongerThanReference, SweepInconsistency
from ..measures import t_monotone_matching
from .common import (
    Delta,
    EventValue,
    PiecewisePiece,
    ScaleResult,
    SweepEvent,
    _Best,
    group_batches,
)

EXACT, AFTER = False, True
_KINDS = ("Type1", "Type2", "Type3")


def scale_points(q: PointMelody, eps) -> PointMelody:
    """Point ``j`` (1-based) moves to ``t_j + (2j - 1) * eps / 2``."""
    eps = as_rational(eps)
    return PointMelody(
        tuple(t + (2 * j + 1) * eps / 2 for j, t in enumerate(q.times)), q.pitches
    )


def default_eps_max(r: PointMelody, q: PointMelody) -> Fraction:
    """Scaling at which the last query note reaches the last reference note."""
    span = r.times[-1] - q.times[-1]
    if span < 0:
        raise QueryLongerThanReference(
            f"last query note at {q.times[-1]} is after the last reference note "
            f"at {r.times[-1]}"
        )
    return 2 * span / (2 * q.n - 1)


def matching_at(r: PointMelody, q: PointMelody, eps) -> Fraction:
    """From-scratch matching cost between ``r`` and the ``eps``-scaled ``q``."""
    return t_monotone_matching(r, scale_points(q, eps)).cost


def _candidates(r: PointMelody, q: PointMelody, eps_max: Fraction):
    """``2m - 1`` eps-sorted sweeps over the reference, merged by a heap.

    Entries are ``(eps, kind, i, j)`` with 0-based ``i``, ``j``; kind 0, 1, 2
    stand for Type1, Type2, Type3.
    """
    x, t = r.times, q.times
    n, m = len(x), len(t)
    lists = []
    for j in range(m):
        rate = Fraction(2 * j + 1, 2)
        start = bisect_right(x, t[j])
        lst = []
        for i in range(start, n):
            lst.append(((x[i] - t[j]) / rate, 0, i, j))
            if i + 1 < n:
                lst.append((((x[i] + x[i + 1]) / 2 - t[j]) / rate, 2, i, j))
        if start > 0 and start < n:
            mid = (x[start - 1] + x[start]) / 2
            if mid > t[j]:
                lst.insert(0, ((mid - t[j]) / rate, 2, start - 1, j))
        lists.append([c for c in lst if c[0] <= eps_max])
    for j in range(m - 1):
        bis = (t[j] + t[j + 1]) / 2
        rate = j + 1
        lists.append(
            [((x[i] - bis) / rate, 1, i, j) for i in range(bisect_right(x, bis), n)
             if (x[i] - bis) / rate <= eps_max]
        )
    return heapq.merge(*lists), sum(len(lst) for lst in lists)


class _MatchingState:
    """A t-monotone matching kept up to date while the query is stretched."""

    def __init__(self, r: PointMelody, q: PointMelody):
        self.x, self.p = r.times, r.pitches
        self.t, self.q = q.times, q.pitches
        self.n, self.m = len(self.x), len(self.t)
        self.rate = [Fraction(2 * j + 1, 2) for j in range(self.m)]
        self.fwd = [None] * self.n
        self.cnt = [0] * self.m
        self.back = [None] * self.m
        self.pairs = {}
        self.value = Fraction(0)
        self.s_minus = 0
        self.s_plus = 0
        self.log = None

    # positions -------------------------------------------------------------

    def tpos(self, j, eps):
        return self.t[j] + self.rate[j] * eps

    def tkey(self, j, eps, mode):
        return (self.tpos(j, eps), self.rate[j] if mode else 0)

    def bkey(self, j, eps, mode):
        return ((self.tpos(j, eps) + self.tpos(j + 1, eps)) / 2, j + 1 if mode else 0)

    def _l1(self, i, j, eps):
        return abs(self.x[i] - self.tpos(j, eps)) + abs(self.p[i] - self.q[j])

    # assignment rules ------------------------------------------------------

    def partner_of_reference(self, i, eps, mode):
        xk = (self.x[i], 0)
        g = self.hint_g[i]
        while g < self.m and self.tkey(g, eps, mode) <= xk:
            g += 1
        while g > 0 and self.tkey(g - 1, eps, mode) > xk:
            g -= 1
        self.hint_g[i] = g
        if g == 0:
            return 0
        if g == self.m or self.tkey(g - 1, eps, mode) == xk:
            return g - 1
        bk = self.bkey(g - 1, eps, mode)
        if xk < bk:
            return g - 1
        if xk > bk:
            return g
        return g - 1 if self._l1(i, g - 1, eps) <= self._l1(i, g, eps) else g

    def partner_of_query(self, j, eps, mode):
        tk = self.tkey(j, eps, mode)
        h = self.hint_h[j]
        while h < self.n and (self.x[h], 0) <= tk:
            h += 1
        while h > 0 and (self.x[h - 1], 0) > tk:
            h -= 1
        self.hint_h[j] = h
        if h == 0:
            return 0
        if h == self.n or (self.x[h - 1], 0) == tk:
            return h - 1
        mk = ((self.x[h - 1] + self.x[h]) / 2, 0)
        if tk < mk:
            return h - 1
        if tk > mk:
            return h
        return h - 1 if self._l1(h - 1, j, eps) <= self._l1(h, j, eps) else h

    def in_minus(self, i, j, eps, mode):
        return (self.x[i], 0) < self.tkey(j, eps, mode)

    # pair bookkeeping ------------------------------------------------------

    def _add(self, tag, i, j, eps, mode):
        minus = self.in_minus(i, j, eps, mode)
        self.pairs[(tag, i, j)] = minus
        w = self._l1(i, j, eps)
        self.value += w
        if minus:
            self.s_minus += 2 * j + 1
        else:
            self.s_plus += 2 * j + 1
        if self.log is not None:
            self.log.append((+1, i, j, minus, w))

    def _drop(self, tag, i, j, eps):
        minus = self.pairs.pop((tag, i, j))
        w = self._l1(i, j, eps)
        self.value -= w
        if minus:
            self.s_minus -= 2 * j + 1
        else:
            self.s_plus -= 2 * j + 1
        if self.log is not None:
            self.log.append((-1, i, j, minus, w))

    @property
    def slope(self) -> Fraction:
        return Fraction(self.s_minus - self.s_plus, 2)

    def reassign(self, eps, mode, touched_r, touched_q, order=sorted):
        """Re-derive the partners of the given notes for the configuration
        at ``eps`` (``mode`` EXACT) or just after it (``mode`` AFTER)."""
        for i in order(touched_r):
            new = self.partner_of_reference(i, eps, mode)
            old = self.fwd[i]
            if old is not None:
                if old == new and self.pairs[("f", i, old)] == self.in_minus(i, new, eps, mode):
                    continue
                self._drop("f", i, old, eps)
                self.cnt[old] -= 1
                touched_q.add(old)
            self._add("f", i, new, eps, mode)
            self.cnt[new] += 1
            self.fwd[i] = new
            touched_q.add(new)
        for j in order(touched_q):
            want = self.partner_of_query(j, eps, mode) if self.cnt[j] == 0 else None
            have = self.back[j]
            if have is not None:
                if want == have and self.pairs[("b", have, j)] == self.in_minus(have, j, eps, mode):
                    continue
                self._drop("b", have, j, eps)
                self.back[j] = None
            if want is not None:
                self._add("b", want, j, eps, mode)
                self.back[j] = want

    def start(self, eps):
        """Build the matching at ``eps`` from scratch (EXACT configuration)."""
        self.hint_g = [bisect_right(self.t, x) for x in self.x]
        self.hint_h = [bisect_right(self.x, t) for t in self.tpos_list(eps)]
        self.reassign(eps, EXACT, range(self.n), set(range(self.m)))

    def tpos_list(self, eps):
        return [self.tpos(j, eps) for j in range(self.m)]


def _touched(batch):
    tr, tq = set(), set()
    for _, kind, i, j in batch:
        if kind == 0:
            tr.add(i)
            tq.add(j)
        elif kind == 1:
            tr.add(i)
            tq.update((j, j + 1))
        else:
            tq.add(j)
    return tr, tq


def _net_deltas(log):
    """Collapse an add/drop log into the net left-to-right change."""
    balance = {}
    for sign, i, j, minus, w in log:
        key = (i, j, minus)
        count, _ = balance.get(key, (0, w))
        balance[key] = (count + sign, w)
    deltas = []
    for (i, j, minus), (count, w) in sorted(balance.items()):
        if count:
            deltas.append(
                Delta("enter" if count > 0 else "disappear", "A-" if minus else "A+",
                      (i + 1, j + 1), w)
            )
    return tuple(deltas)


def _sweep(r, q, eps_max, batch_rng=None):
    """Yield one record per distinct candidate epsilon, after an initial one
    for ``eps = 0``. Records are ``(eps, batch, left, at, right, slope, deltas)``.

    ``deltas`` is the net change from just before ``eps`` to just after it;
    at ``eps_max`` itself it is the change to the configuration at ``eps_max``.
    """
    state = _MatchingState(r, q)
    zero = Fraction(0)
    state.start(zero)
    at0 = state.value
    state.reassign(zero, AFTER, range(state.n), set(range(state.m)))
    yield zero, (), None, at0, state.value, state.slope, ()

    def shuffled(items):
        items = list(items)
        batch_rng.shuffle(items)
        return items

    order = sorted if batch_rng is None else shuffled

    merged, _ = _candidates(r, q, eps_max)
    prev = zero
    for eps, batch in group_batches(c for c in merged if c[0] > 0):
        left = state.value + (eps - prev) * state.slope
        state.value = left
        state.log = []
        tr, tq = _touched(batch)
        state.reassign(eps, EXACT, tr, tq, order)
        at = state.value
        if eps < eps_max:  # past eps_max the configuration is outside the domain
            state.reassign(eps, AFTER, tr, tq, order)
        deltas = _net_deltas(state.log)
        state.log = None
        yield eps, batch, left, at, state.value, state.slope, deltas
        prev = eps


def matching_event_schedule(r: PointMelody, q: PointMelody, eps_max) -> list[SweepEvent]:
    """Events in ``(0, eps_max]`` where the matched pair sets actually change.

    Each event's deltas take the pair sets just before it to those just
    after it (to those at ``eps_max`` for an event there).
    """
    eps_max = as_rational(eps_max)
    events = []
    sweep = _sweep(r, q, eps_max)
    next(sweep)
    for eps, batch, _, _, _, _, deltas in sweep:
        if not deltas:
            continue
        crossings = tuple(sorted((_KINDS[k], i + 1, j + 1) for _, k, i, j in batch))
        kinds = tuple(sorted({c[0] for c in crossings}))
        events.append(SweepEvent(eps, kinds, crossings, deltas))
    return events


def min_matching_scaling(
    r: PointMelody,
    q: PointMelody,
    eps_max=None,
    *,
    profile: bool = False,
    batch_rng=None,
    verify: bool = False,
) -> ScaleResult:
    """Minimise the t-monotone matching cost over ``0 <= eps <= eps_max``.

    The cost may jump at Type2 and Type3 events, so at every event the left
    limit, the value at the event and the right limit are all considered.
    ``eps_max`` defaults to :func:`default_eps_max`.
    """
    eps_max = default_eps_max(r, q) if eps_max is None else as_rational(eps_max)
    if eps_max < 0:
        raise ValueError("eps_max must be non-negative")
    best = _Best()
    pieces, samples = [], []
    count = 0
    sweep = _sweep(r, q, eps_max, batch_rng)
    prev, _, _, at0, value, slope, _ = next(sweep)
    best.offer(prev, at0, True)
    if eps_max > 0:
        best.offer(prev, value, at0 == value)
    samples.append(EventValue(prev, None, at0, value if eps_max > 0 else None))
    for eps, _, left, at, right, new_slope, _ in sweep:
        count += 1
        if verify:
            fresh = matching_at(r, q, eps)
            if fresh != at:
                raise SweepInconsistency(
                    f"incremental cost {at} != {fresh} at eps={eps}"
                )
        pieces.append(PiecewisePiece(prev, eps, value, slope))
        best.offer(eps, left, at == left)
        best.offer(eps, at, True)
        if eps < eps_max:
            best.offer(eps, right, at == right)
        samples.append(EventValue(eps, left, at, right if eps < eps_max else None))
        prev, value, slope = eps, right, new_slope
    if prev < eps_max:
        end = value + (eps_max - prev) * slope
        pieces.append(PiecewisePiece(prev, eps_max, value, slope))
        best.offer(eps_max, end, True)
        samples.append(EventValue(eps_max, end, end, None))
    return ScaleResult(
        best_epsilon=best.epsilon,
        best_cost=best.value,
        evaluated_events=count,
        eps_max=eps_max,
        attained=best.attained,
        profile=tuple(pieces) if profile else None,
        samples=tuple(samples) if profile else None,
    )

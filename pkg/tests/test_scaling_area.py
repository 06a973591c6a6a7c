import random
from fractions import Fraction

import pytest

from gen import area_pair, segment_melody
from melogeo import SegmentMelody, area_event_schedule, min_area_scaling, scale_segment, shift_pitch
from melogeo.errors import QueryLongerThanReference
from melogeo.oracle import oracle_min_area_scaling
from melogeo.scaling import area_at, area_eps_max, cost_profile
from melogeo.scaling.area import _candidates

FORTY_R = SegmentMelody((0, 1, 4), (0, 10))
FORTY_Q = SegmentMelody((0, 1, 2), (10, 0))


def test_scale_segment():
    q = SegmentMelody((0, 1, 2), (3, 4))
    assert scale_segment(q, 0) == q
    assert scale_segment(q, Fraction(1, 2)).times == (0, Fraction(3, 2), 3)
    rng = random.Random(0)
    for _ in range(50):
        q = segment_melody(rng, rng.randint(1, 6))
        e = Fraction(rng.randint(0, 9), rng.randint(1, 5))
        assert scale_segment(q, e).end == q.end + q.n * e


def test_forty_minus_ten_eps():
    res = min_area_scaling(FORTY_R, FORTY_Q, profile=True)
    assert (res.best_epsilon, res.best_cost) == (1, 30)
    assert res.profile == cost_profile(FORTY_R, FORTY_Q, "area")
    (piece,) = res.profile
    assert (piece.eps_lo, piece.eps_hi, piece.value_at_lo, piece.slope) == (0, 1, 40, -10)


def test_schedule_examples():
    assert area_event_schedule(FORTY_R, SegmentMelody((0, 2), (1,))) == []
    # t_1 = x_1 already at eps = 0 and nothing else lies in (0, eps_max]
    assert area_event_schedule(FORTY_R, FORTY_Q) == []


def _enumerated(r, q):
    """Every (eps, i, j) with t_j + j*eps = x_i in (0, eps_max], 1-based interior indices."""
    eps_max = area_eps_max(r, q)
    out = []
    for j in range(1, q.n):
        for i in range(1, r.n):
            e = Fraction(r.times[i] - q.times[j], j)
            if 0 < e <= eps_max:
                out.append((e, i, j))
    return sorted(out)


def test_schedule_matches_enumeration():
    rng = random.Random(21)
    for _ in range(300):
        r, q = area_pair(rng)
        events = area_event_schedule(r, q)
        flat = sorted((e.epsilon, i, j) for e in events for _, i, j in e.crossings)
        assert flat == _enumerated(r, q)
        eps = [e.epsilon for e in events]
        assert eps == sorted(set(eps))
        assert len(flat) <= (q.n - 1) * (r.n - 1)
        _, popped = _candidates(r, q, area_eps_max(r, q))
        assert popped == len(flat)
        for e in events:
            assert e.deltas and e.kinds == ("AreaBoundaryCross",)


def test_single_crossing_deltas():
    # one query boundary passes one reference boundary
    r = SegmentMelody((0, 2, 6), (0, 4))
    q = SegmentMelody((0, 1, 2), (1, 3))
    (event,) = area_event_schedule(r, q)
    assert event.epsilon == 1 and event.crossings == (("AreaBoundaryCross", 1, 1),)
    gone = {d.group for d in event.deltas if d.action == "disappear"}
    new = {d.group for d in event.deltas if d.action == "enter"}
    assert "C3" in gone and "C2" in new


def test_against_oracle_with_verification():
    rng = random.Random(3)
    for _ in range(200):
        r, q = area_pair(rng)
        res = min_area_scaling(r, q, verify=True)
        ref = oracle_min_area_scaling(r, q)
        assert (res.best_cost, res.best_epsilon) == (ref.best_cost, ref.best_epsilon)
        assert res.best_cost <= area_at(r, q, 0)
        assert res.best_cost <= area_at(r, q, res.eps_max)
        assert 0 <= res.best_epsilon <= res.eps_max


def test_perfect_overlay_has_zero_cost():
    rng = random.Random(8)
    for _ in range(30):
        q = segment_melody(rng, rng.randint(1, 6))
        e = Fraction(rng.randint(1, 6), rng.randint(1, 4))
        r = scale_segment(q, e)
        res = min_area_scaling(r, q)
        assert res.best_cost == 0 and res.eps_max == e


def test_profile_tiles_and_is_continuous_and_linear():
    rng = random.Random(4)
    for _ in range(60):
        r, q = area_pair(rng)
        pieces = cost_profile(r, q, "area")
        eps_max = area_eps_max(r, q)
        if eps_max == 0:
            assert pieces == ()
            continue
        assert pieces[0].eps_lo == 0 and pieces[-1].eps_hi == eps_max
        for a, b in zip(pieces, pieces[1:]):
            assert a.eps_hi == b.eps_lo
            assert a.value_at_hi == b.value_at_lo
        for p in pieces:
            assert p.eps_lo < p.eps_hi
            for f in (Fraction(1, 5), Fraction(1, 2), Fraction(4, 5)):
                e = p.eps_lo + f * (p.eps_hi - p.eps_lo)
                assert area_at(r, q, e) == p.value_at(e)


def test_batch_order_does_not_matter():
    rng = random.Random(9)
    r = SegmentMelody((0, 2, 4, 6, 8), (0, 3, 1, 4))
    q = SegmentMelody((0, 1, 2, 3, 4), (1, 2, 3, 0))  # many simultaneous crossings
    base = min_area_scaling(r, q, profile=True)
    assert any(len(e.crossings) > 1 for e in area_event_schedule(r, q))
    for _ in range(20):
        assert min_area_scaling(r, q, profile=True, batch_rng=random.Random(rng.random())) == base


def test_transposition_invariance():
    rng = random.Random(6)
    for _ in range(50):
        r, q = area_pair(rng)
        s = rng.randint(-30, 30)
        a = min_area_scaling(r, q)
        b = min_area_scaling(shift_pitch(r, s), shift_pitch(q, s))
        assert (a.best_epsilon, a.best_cost) == (b.best_epsilon, b.best_cost)


def test_query_longer_than_reference():
    with pytest.raises(QueryLongerThanReference):
        min_area_scaling(FORTY_Q, FORTY_R)
    with pytest.raises(ValueError):
        cost_profile(FORTY_R, FORTY_Q, "area", eps_max=1)

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gen import point_melody, segment_melody
from melogeo import (
    PointMelody,
    SegmentMelody,
    area_between,
    extend_query,
    shift_pitch,
    t_monotone_matching,
)
from melogeo.errors import DurationMismatch, QueryLongerThanReference
from melogeo.oracle import oracle_area, oracle_matching

P = PointMelody.from_notes


def test_extend_query():
    q = SegmentMelody((0, 1, 2), (5, 7))
    assert extend_query(q, 4).times == (0, 1, 4)
    assert extend_query(q, 2) is q
    with pytest.raises(QueryLongerThanReference):
        extend_query(q, 1)


def test_area_examples():
    r = SegmentMelody((0, 2, 4), (60, 62))
    assert area_between(r, r) == 0
    assert area_between(r, SegmentMelody((0, 4), (61,))) == 4
    assert area_between(SegmentMelody((0, 1, 4), (0, 10)), SegmentMelody((0, 1, 4), (10, 0))) == 40


def test_area_needs_equal_duration():
    with pytest.raises(DurationMismatch):
        area_between(SegmentMelody((0, 2), (0,)), SegmentMelody((0, 1), (0,)))


def test_area_against_oracle_and_symmetry():
    rng = random.Random(11)
    for _ in range(1000):
        r = segment_melody(rng, rng.randint(1, 8))
        q = segment_melody(rng, rng.randint(1, 8))
        end = max(r.end, q.end)
        r, q = extend_query(r, end), extend_query(q, end)
        a = area_between(r, q)
        assert a == oracle_area(r, q)
        assert a == area_between(q, r)
        assert a >= 0


def test_area_zero_iff_same_step_function():
    # same contour, different partitions
    a = SegmentMelody((0, 1, 2, 3), (4, 4, 6))
    b = SegmentMelody((0, 2, 3), (4, 6))
    assert area_between(a, b) == 0
    assert area_between(a, SegmentMelody((0, 2, 3), (4, 7))) > 0


def test_matching_examples():
    same = P([(0, 1), (2, 5), (3, 0)])
    m = t_monotone_matching(same, same)
    assert m.pairs == [(1, 1), (2, 2), (3, 3)] and m.cost == 0

    m = t_monotone_matching(P([(1, 60), (3, 64)]), P([(2, 62)]))
    assert m.forward == (1, 1) and m.cost == 6
    assert m.a_minus == {(1, 1)} and m.a_plus == {(2, 1)}


def test_matching_tie_rule():
    m = t_monotone_matching(P([(2, 0)]), P([(1, 0), (3, 0)]))
    assert m.forward == (1,)  # tie goes to the earlier query note
    assert m.backward == ((2, 1),)
    assert m.cost == 2


def test_boundary_goes_to_a_plus():
    m = t_monotone_matching(P([(1, 0)]), P([(1, 3)]))
    assert m.a_plus == {(1, 1)} and not m.a_minus


def _check_structure(r, q, m):
    assert sorted(m.forward) == list(m.forward)  # t-monotone
    assert len(m.forward) == r.n  # one forward pair per reference note
    covered = set(m.forward) | {j for j, _ in m.backward}
    assert covered == set(range(1, q.n + 1))
    assert {i for i, _ in m.pairs} == set(range(1, r.n + 1))
    xs, ts = r.times, q.times
    assert all(xs[i - 1] < ts[j - 1] for i, j in m.a_minus)
    assert all(xs[i - 1] >= ts[j - 1] for i, j in m.a_plus)
    cost = sum(abs(xs[i - 1] - ts[j - 1]) + abs(r.pitches[i - 1] - q.pitches[j - 1])
               for i, j in m.pairs)
    assert cost == m.cost


def test_matching_against_oracle():
    rng = random.Random(5)
    for _ in range(1000):
        r = point_melody(rng, rng.randint(1, 9), denominators=(1, 2))
        q = point_melody(rng, rng.randint(1, 9), denominators=(1, 2))
        m = t_monotone_matching(r, q)
        assert m == oracle_matching(r, q)
        _check_structure(r, q, m)


@given(st.integers(0, 10**6), st.fractions(-20, 20, max_denominator=6),
       st.fractions(-20, 20, max_denominator=6))
def test_measures_invariant_under_common_shifts(seed, s, dt):
    rng = random.Random(seed)
    r = point_melody(rng, rng.randint(1, 7))
    q = point_melody(rng, rng.randint(1, 7))
    moved = lambda m: PointMelody(tuple(t + dt for t in m.times), tuple(p + s for p in m.pitches))  # noqa: E731
    assert t_monotone_matching(moved(r), moved(q)).cost == t_monotone_matching(r, q).cost
    a, b = segment_melody(rng, 4), segment_melody(rng, 3)
    end = max(a.end, b.end)
    a, b = extend_query(a, end), extend_query(b, end)
    assert area_between(shift_pitch(a, s), shift_pitch(b, s)) == area_between(a, b)


def test_matching_linear_time_smoke():
    # two pointers: 20000 notes should be well under a second
    import time
    rng = random.Random(2)
    r = point_melody(rng, 20000)
    q = point_melody(rng, 20000)
    start = time.perf_counter()
    t_monotone_matching(r, q)
    assert time.perf_counter() - start < 5

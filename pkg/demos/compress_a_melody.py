"""
Keeping only k notes
====================

Two ways to summarise a melody with fewer notes. Picking a k-subset of the
points that stays close under point matching, and drawing a k-step contour
on the original boundaries that encloses the least area with the original.
"""

from melogeo import (
    PointMelody,
    SegmentMelody,
    compress_points,
    compress_segments,
    segment_to_point,
)

# "Frere Jacques", first two bars, one beat per note
pitches = (60, 62, 64, 60, 60, 62, 64, 60, 64, 65)
contour = SegmentMelody(tuple(range(11)), pitches)
points = segment_to_point(contour)

for k in (1, 3, 5, 10):
    sel = compress_points(points, k)
    print(f"k={k:2d}  points kept {sel.indices}  matching cost {sel.cost}")

print()
for k in (1, 2, 4, 10):
    seg = compress_segments(contour, k)
    steps = ", ".join(f"[{a},{b})->{p}" for a, b, p in zip(seg.times, seg.times[1:], seg.pitches))
    print(f"k={k:2d}  area {seg.cost}  {steps}")

# Costs never increase with k, and k = n reproduces the input.
full = compress_points(points, points.n)
assert full.cost == 0 and isinstance(full.melody(points), PointMelody)

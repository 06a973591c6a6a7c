"""
Stretching a query contour onto a reference
===========================================

A hummed query is often sung a little faster than the tune it imitates.
Stretching every query note by the same amount ``eps`` and measuring the
area between the two step functions gives a cost that is piecewise linear
in ``eps``. The optimiser walks the breakpoints exactly.
"""

from fractions import Fraction

from melogeo import SegmentMelody, min_area_scaling
from melogeo.scaling import area_at

# The reference: four notes, one beat each, plus a closing long note.
reference = SegmentMelody((0, 1, 2, 3, 4, 6), (60, 62, 64, 65, 67))

# The query has the same shape but every note lasts only 3/4 of a beat.
q = Fraction(3, 4)
query = SegmentMelody(tuple(k * q for k in range(6)), (60, 62, 64, 65, 67))

res = min_area_scaling(reference, query, profile=True)
print("stretch range     :", 0, "to", res.eps_max)
print("best stretch      :", res.best_epsilon)
print("area at that point:", res.best_cost)
print("area unstretched  :", area_at(reference, query, 0))

# The cost profile, one line per linear piece.
for piece in res.profile:
    print(f"  eps in [{piece.eps_lo}, {piece.eps_hi}]: "
          f"{piece.value_at_lo} + ({piece.slope}) * (eps - {piece.eps_lo})")

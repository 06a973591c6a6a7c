"""
Ranking several queries against one tune
========================================

The retrieval use: one reference, many candidate queries, each stretched to
fit as well as possible. The command-line tool does the same over a
directory (``melogeo scale --query-dir``); here the library is called
directly, and every result is cross-checked with the brute-force oracle.
"""

from fractions import Fraction

from melogeo import SegmentMelody, min_area_scaling, transpose_normalize
from melogeo.oracle import oracle_min_area_scaling

reference = transpose_normalize(SegmentMelody((0, 1, 2, 3, 4, 6), (67, 64, 64, 65, 62)))

queries = {
    "same tune, faster": SegmentMelody(tuple(Fraction(3, 4) * k for k in range(6)), (67, 64, 64, 65, 62)),
    "same tune, other key": SegmentMelody((0, 1, 2, 3, 4, 5), (60, 57, 57, 58, 55)),
    "different tune": SegmentMelody((0, 1, 2, 3, 4, 5), (60, 62, 64, 65, 67)),
    "one held note": SegmentMelody((0, 4), (64,)),
}

rows = []
for name, q in queries.items():
    res = min_area_scaling(reference, transpose_normalize(q))
    ref = oracle_min_area_scaling(reference, transpose_normalize(q))
    assert (res.best_cost, res.best_epsilon) == (ref.best_cost, ref.best_epsilon)
    rows.append((res.best_cost, name, res.best_epsilon))

for rank, (cost, name, eps) in enumerate(sorted(rows), start=1):
    print(f"{rank}. {name:22s} area {str(cost):>6s}  at stretch {eps}")

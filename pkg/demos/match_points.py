"""
Point matching and its jumps
============================

In the point form every note is a ``(time, pitch)`` point. Each reference
note is paired with its nearest query note in time, and query notes nobody
chose get paired back. Stretching the query changes the pairing at discrete
events, and at some of them the cost jumps: the optimum can then be a limit
that no single stretch attains.
"""

from fractions import Fraction

from melogeo import PointMelody, min_matching_scaling, t_monotone_matching
from melogeo.oracle import oracle_min_matching_scaling
from melogeo.scaling import matching_at, scale_points

reference = PointMelody.from_notes([(0, 0), (1, 0), (5, 0)])
query = PointMelody.from_notes([(0, 0), (1, 2), (2, 2)])

m = t_monotone_matching(reference, query)
print("pairs at eps = 0:", m.pairs, "cost", m.cost)

res = min_matching_scaling(reference, query, profile=True)
print("infimum", res.best_cost, "near eps =", res.best_epsilon, "attained:", res.attained)

# Just before the event the cost approaches the infimum; at it and after it the cost is higher.
for e in (Fraction(1, 2) - Fraction(1, 1000), Fraction(1, 2), Fraction(1, 2) + Fraction(1, 1000)):
    print(f"  cost at eps = {e}: {matching_at(reference, query, e)}")

stretched = scale_points(query, res.best_epsilon)
print("query at that stretch:", [(str(t), str(p)) for t, p in stretched.notes])

# The brute-force oracle agrees.
ref = oracle_min_matching_scaling(reference, query)
print("oracle:", ref.best_cost, ref.best_epsilon, ref.attained)

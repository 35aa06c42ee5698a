"""
Length loss on the third level
==============================

An element fixing all eight vertices of level three splits into eight
coordinates.  Their total length is at most five sixths of the original,
plus eight.
"""

from grigorchuk import enumerate_ball
from grigorchuk.stabilizers import check_cancellation, heart_inequalities, in_stabilizer, psi3_split

table, _ = enumerate_ball(20, cap=20)
st3 = [e.witness for e in table if in_stabilizer(e.witness, 3)]
print(len(table), "elements,", len(st3), "in the level-3 stabilizer")

# %%
h = max(st3, key=len)
print(h)
print(psi3_split(h).components)
print(heart_inequalities(h))

# %%
checks = [check_cancellation(h, table) for h in st3]
worst = min(checks, key=lambda c: c.rhs - c.lhs)
print(all(c.holds for c in checks), worst.word, worst.lhs, float(worst.rhs))

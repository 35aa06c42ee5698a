"""
Counting elements by length
===========================

Breadth-first search of the Cayley graph, with portraits as hash keys and
the word-problem solver confirming every duplicate.
"""

import math

from grigorchuk import enumerate_ball
from grigorchuk.bounds import sandwich_report, search_lower_recursion, verify_upper_recursion

table, series = enumerate_ball(14)
for n, (g, s) in enumerate(zip(series.values, series.spheres)):
    ratio = math.log(math.log(g)) / math.log(n) if n >= 2 else float("nan")
    print(f"{n:>3} {s:>6} {g:>7}  {ratio:.3f}")

# %%
# The upper recursion is checked exactly on big integers.
pre, shifted = verify_upper_recursion(series.values)
print(pre.passed, shifted.passed, len(str(pre.details[14][1])), "digits on the right")

# %%
# Sandwich inequalities for the star convolution.
print([sandwich_report(series.values, k).passed for k in (2, 3, 8)])

# %%
# The lower recursion can only be shown consistent with finite data.
best = search_lower_recursion(series.values)
print(best.params)

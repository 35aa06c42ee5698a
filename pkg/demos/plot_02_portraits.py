"""
Portraits on the truncated tree
===============================

A portrait records, for each vertex above some depth, whether the element
swaps the two subtrees hanging below it.
"""

import numpy as np

from grigorchuk import portrait_of, wreath_compose
from grigorchuk.tree import enumerate_Am, format_portrait, infinite_order_witness, portrait_order

for x in "abcd":
    print(x, format_portrait(portrait_of(x, 5)))

# %%
# b, c and d act as a on the left subtree only at some levels; the pattern
# repeats with period three down the rightmost branch.
sub = {x: portrait_of(x, 4) for x in "abcd"}
print(portrait_of("b", 5) == wreath_compose(sub["a"], sub["c"], 0))

# %%
# Products act left to right: ab first applies a, then b.
print(format_portrait(portrait_of("ab", 4)))
print(format_portrait(portrait_of("ba", 4)))

# %%
# The finite quotients A_m are all 2-groups of size 2^(2^m - 1).
print([len(enumerate_Am(m)) for m in range(1, 5)])
print([portrait_order(infinite_order_witness(m)) for m in range(1, 7)])

# %%
# Leaf permutations make composition a single numpy take.
perm = portrait_of("abcad", 6).leaf_permutation()
print(perm[:16], np.all(np.sort(perm) == np.arange(64)))

"""
Deciding equality in the first Grigorchuk group
===============================================

Words over a, b, c, d spell elements of a group acting on the binary tree.
All four generators are involutions, so a word never needs inverse letters.
"""

from grigorchuk import is_identity, order, psi_split, reduce

# reduction fuses neighbouring letters: bc = d, and xx = 1
for w in ["bc", "abba", "abcacdab"]:
    r = reduce(w)
    print(f"{w!r:>12} -> {r.letters!r:<8} type {r.type_tag}")

# %%
# Splitting a word gives its action on the two halves of the tree, plus a
# bit saying whether the halves are swapped.  The halves are shorter, which
# is what makes the word problem decidable quickly.
w = "abacabadabac"
print(psi_split(w))

# %%
# The classical relations, and the exact orders of ad, ac and ab.
print(is_identity("ad" * 4), is_identity("ac" * 8), is_identity("ab" * 16))
print(is_identity("ad" * 2), is_identity("ac" * 4), is_identity("ab" * 8))
print({w: order(w) for w in ["ad", "ac", "ab", "abcab"]})

# %%
# A word of a million letters that spells the identity.
big = "adadadad" * 125_000
print(len(big), is_identity(big), is_identity(big + "b"))

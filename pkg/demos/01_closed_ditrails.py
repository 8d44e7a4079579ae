# %% [markdown]
# # Closed ditrails through a vertex set
#
# A closed ditrail may revisit vertices but never an arc.  That makes it
# strictly more permissive than a dicycle: the "bowtie" below has a closed
# ditrail through 0 and 4, yet no dicycle contains both.

# %%
from ditrail import Digraph, closed_ditrail_through, dicycle_through
from ditrail.validator import validate_certificate

bowtie = Digraph(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)])
trail = closed_ditrail_through(bowtie, {0, 4})
print("closed ditrail:", trail.to_text())
print("dicycle through 0 and 4:", dicycle_through(bowtie, {0, 4}))
print("validator agrees:", validate_certificate(bowtie, {0, 4}, trail))

# %% [markdown]
# Two independent exact searches answer the same question: a depth-first
# search over arc sequences, and an enumeration of balanced arc subsets
# followed by an Euler circuit.  They must always agree.

# %%
subset = closed_ditrail_through(bowtie, {0, 4}, method="subset")
print("subset search:", subset.to_text())

star = Digraph(4, [(0, 1), (0, 2), (0, 3)])
print("out-star, S={0}:", closed_ditrail_through(star, {0}))

# %% [markdown]
# Searches are exponential in the worst case, so every one accepts an
# expansion budget.  Running out raises `BudgetExhausted`; the search never
# guesses.

# %%
from ditrail import Budget, BudgetExhausted, complete_digraph

try:
    closed_ditrail_through(complete_digraph(6), range(6), Budget(5), method="subset")
except BudgetExhausted as exc:
    print("inconclusive:", exc)

# %% [markdown]
# # Maximum matchings and their forced structure
#
# The blossom search handles odd cycles; a triangle with a pendant path
# needs a contraction to find the perfect matching.

# %%
from ditrail import Digraph, UndirectedGraph, complete_digraph, maximum_matching
from ditrail.matching import Matching, lemma32_analyze

G = UndirectedGraph(6, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5)])
print("maximum matching:", sorted(maximum_matching(G).edges))

# %% [markdown]
# When the minimum semi-degree of `H` is at least the matching number and
# at least two vertices stay unmatched, the shape of `H` is forced.  In the
# generic case every matching edge has one end `v(e)` tied both ways to all
# unmatched vertices, and the other ends form an independent set.

# %%
hubs, leaves = range(2), range(2, 6)
H = Digraph(6, [(h, x) for h in hubs for x in leaves] + [(x, h) for h in hubs for x in leaves])
structure = lemma32_analyze(H, Matching([(0, 2), (1, 3)]))
print(structure.as_dict())

# %% [markdown]
# The exceptional case is two disjoint complete digraphs on `m + 1`
# vertices with no arcs between them.

# %%
K = complete_digraph(3).arcs
two = Digraph(6, list(K) + [(u + 3, v + 3) for u, v in K])
print(lemma32_analyze(two, Matching([(0, 1), (3, 4)])).as_dict())

# %% [markdown]
# # Building a trail by local moves
#
# `construct` starts from a short dicycle and absorbs missing vertices one
# at a time.  Every step is validated and logged, and the log replays to
# the same trail.

# %%
from ditrail import Digraph, construct, replay_moves
from ditrail.generators import GenSpec, sample_satisfying

D, S = next(sample_satisfying("degree-sum", GenSpec(8, seed=3, require_nonadjacent=True), count=1))
result = construct(D, S)
print("status:", result.status, " S =", sorted(S))
for move in result.moves:
    print(f"  {move['move']:28s} length {move['length']}")
print("trail:", result.trail.to_text())
print("replays:", replay_moves(D, S, result.moves) == result.trail)

# %% [markdown]
# When no closed ditrail exists the answer is a certified impossibility,
# decided by the exact oracle.

# %%
print(construct(Digraph(4, [(0, 1), (0, 2), (0, 3)]), {0}).status)

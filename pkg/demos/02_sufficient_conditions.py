# %% [markdown]
# # Sufficient conditions and their certificates
#
# Each checker returns a report whose diagnostics explain the verdict.  When
# a condition holds, `verify_certificate` runs the exact oracle and returns a
# validated witness.

# %%
from ditrail import complete_digraph, directed_cycle, run_check, verify_certificate
from ditrail.theorems import THEOREMS

K4 = complete_digraph(4)
for theorem in THEOREMS:
    report = run_check(theorem, K4)
    line = f"{theorem:30s} holds={report.holds}"
    if report.holds:
        line += "  witness " + verify_certificate(K4, range(4), report).witness.to_text()
    print(line)

# %% [markdown]
# On a directed 5-cycle the arc-strong connectivity is 1 while the matching
# number of the underlying graph is 2, so the connectivity condition fails.
# The digraph is still supereulerian: sufficient, not necessary.

# %%
C5 = directed_cycle(5)
print(run_check("lambda-matching", C5).as_dict())

# %% [markdown]
# The degree-sum condition is evaluated on nonadjacent pairs of S only.
# Diagnostics name the weakest pair and the first one that fails.

# %%
report = run_check("degree-sum", directed_cycle(4), range(4))
print(report.diagnostics)

#!/usr/bin/env python
# coding: utf-8

# # Exact Steiner forest by dynamic programming over terminal subsets
#
# With few terminals the optimum can be found exactly.  A table of
# Steiner trees over every terminal subset is built bottom-up with numpy,
# then a partition recurrence picks which subsets become components.

# In[1]:


import time

from dccover import SteinerTable, brute_force_cover, fpt_proper_solve, steiner_forest_fpt
from dccover.generate import generate


# In[2]:


spec, g = generate("steiner_forest", 8, 12, seed=5, parts=3)
print("parts:", [[g.labels[v] for v in sorted(p)] for p in spec.parts])


# In[3]:


sol = steiner_forest_fpt(spec, g)
opt = brute_force_cover(spec, g)
print("fpt cost", g.cost(sol), "| brute force", g.cost(opt))


# The table is also available directly.  Costs come back indexed by
# bitmask over the terminal list, with `inf` where no tree avoids the
# other terminals.

# In[4]:


terms = sorted(set().union(*spec.parts))
tab = SteinerTable(g, terms)
costs = tab.costs()
print("terminals:", [g.labels[t] for t in terms])
pairs = [m for m in range(len(costs)) if bin(m).count("1") == 2]
for m in sorted(pairs, key=costs.__getitem__)[:5]:
    print([g.labels[t] for i, t in enumerate(terms) if m >> i & 1], costs[m])
print("pairs with no tree:", sum(costs[m] == float("inf") for m in pairs))


# Overlapping demand groups are fine when passed as a raw list.  They
# simply end up in the same component.

# In[5]:


print(g.cost(steiner_forest_fpt([[terms[0], terms[1]], [terms[1], terms[2]]], g)))


# In[6]:


# the size the library is meant to handle: 40 nodes, 14 terminals
big, bg = generate("steiner_forest", 40, 80, seed=1, parts=7)
t0 = time.perf_counter()
forest = fpt_proper_solve(big, bg)
print("cost", bg.cost(forest), "in %.2fs" % (time.perf_counter() - t0))

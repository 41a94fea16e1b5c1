#!/usr/bin/env python
# coding: utf-8

# # Primal-dual growth as a baseline
#
# For symmetric families a classic dual-growth method gives a factor-two
# guarantee.  It is handy as a fast reference point next to the greedy
# and exact solvers.

# In[1]:


from dccover import brute_force_cover, gw_solve, spider_cover_solve
from dccover.generate import generate
from dccover.pdual import dual_violations, gw_run


# In[2]:


spec, g = generate("gp2p", 8, 14, seed=3, tau=3, balance="zero")
state = gw_run(spec, g)
print("bought in order:", state.purchased)
print("kept after reverse delete:", state.edges)


# Potentials are exact fractions.  Their sum never exceeds the optimum,
# which is what makes the final comparison meaningful.

# In[3]:


lower = sum(state.potentials.values())
opt = g.cost(brute_force_cover(spec, g))
print("dual lower bound", float(lower), "| optimum", opt, "| primal-dual", g.cost(state.edges))
print("overloaded edges:", dual_violations(g, state))


# In[4]:


rows = []
for seed in range(20):
    s, h = generate("steiner_forest", 8, 12, seed, parts=2)
    o = brute_force_cover(s, h)
    if o is None:
        continue
    rows.append((seed, h.cost(o), h.cost(gw_solve(s, h)), spider_cover_solve(s, h).cost))
print("seed  opt  pd  greedy")
for r in rows:
    print("%4d %4d %4d %6d" % r)

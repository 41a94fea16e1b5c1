#!/usr/bin/env python
# coding: utf-8

# # Splitting a tree into terminal spiders
#
# A spider is a tree where only the root may branch.  Any tree whose
# leaves are terminals can be cut into node-disjoint spiders that between
# them hold every terminal, each with at least two terminals when there
# are at least two overall.

# In[1]:


from dccover import WeightedGraph, kr_decompose
from dccover.bench import decomposition_violations
from dccover.generate import SplitMix64, random_tree_edges


# In[2]:


rng = SplitMix64(2024)
n = 14
pairs = random_tree_edges(n, rng)
g = WeightedGraph([f"v{i}" for i in range(n)], [(u, v, rng.randint(1, 9)) for u, v in pairs])
terminals = sorted(rng.sample(range(n), 6))
print("tree:", pairs)
print("terminals:", [g.labels[t] for t in terminals])


# In[3]:


spiders = kr_decompose(g, [e.eid for e in g.edges], terminals)
for sp in spiders:
    print("root", g.labels[sp.root],
          "| terminals", sorted(g.labels[t] for t in sp.terminals),
          "| nodes", len(sp.nodes))


# Non-terminal leaves are trimmed away first, so some tree nodes may not
# appear in any spider.  The checker below reports nothing when the
# decomposition is sound.

# In[4]:


print(decomposition_violations(g, [e.eid for e in g.edges], terminals))


# In[5]:


# a few hundred random trees for good measure
bad = 0
for _ in range(300):
    k = rng.randint(2, 40)
    t = WeightedGraph([str(i) for i in range(k)], [(u, v, 1) for u, v in random_tree_edges(k, rng)])
    terms = rng.sample(range(k), rng.randint(2, k))
    bad += bool(decomposition_violations(t, [e.eid for e in t.edges], terms))
print("trees with problems:", bad)

#!/usr/bin/env python
# coding: utf-8

# # The averaging step behind the greedy bound
#
# The analysis needs one elementary fact: splitting the budget between a
# restricted cover and a spider, one of the two always achieves density at
# most max(alpha, 2) / nu0.  Here we just look at the numbers.

# In[1]:


import numpy as np

from dccover import density_bound_check
from dccover.greedy import density_bound_slack


# In[2]:


for alpha in (1, 2, 3):
    ok = all(density_bound_check(alpha, nu0, grid=1000) for nu0 in range(1, 51))
    print("alpha", alpha, "holds for nu0 in 1..50:", ok)


# The slack is how far the worst grid point stays below the bound.  For
# alpha >= 2 it is zero, so the bound is attained on the grid.  With
# alpha = 1 there is room to spare.

# In[3]:


slack = np.array([[density_bound_slack(a, nu0, grid=1000) for nu0 in range(1, 21)] for a in (1, 2, 3)])
np.set_printoptions(precision=3, suppress=True, linewidth=120)
print(slack)

# coding: utf-8

# # A characteristic 7 example
#
# For e of type 7^2 in gl(14) the centralizer is gl(2) over the ring
# F_7[t]/(t^7). Elements are stored as 7 coefficient matrices, and we check
# directly which of them have vanishing seventh power.

# In[1]:

import numpy as np

from nilcomm.remark7 import TruncMat, branch_predicate, grading_check, remark7_branch_check


# An element with constant term e12, linear term diag(1, 0) and lower-left
# entry s = 5 in the quadratic term:

# In[2]:

c = np.zeros((7, 2, 2), dtype=np.int64)
c[0] = [[0, 1], [0, 0]]
c[1] = [[1, 0], [0, 0]]
c[2, 1, 0] = 5
(TruncMat(c) ** 7).is_zero(), branch_predicate(c[None])[0]


# Changing s to 4 breaks the condition s + 2(a - d)^2 = 0:

# In[3]:

c[2, 1, 0] = 4
(TruncMat(c) ** 7).is_zero(), branch_predicate(c[None])[0]


# Random sampling of both cases:

# In[4]:

rep = remark7_branch_check(10_000, seed=42)
rep.to_json()


# The grading on the centralizer of the Jordan matrix of type 7.5.2:

# In[5]:

g = grading_check((7, 5, 2), 7)
g.degree_dims, g.dim_degree0, g.toral, g.dim_degree1

# coding: utf-8

# # Counting commuting square-zero pairs
#
# We count pairs (A, B) of n x n matrices over F_q with A^2 = B^2 = 0 and
# AB = BA. The count is organised by the Jordan type of A: every square-zero
# A is conjugate to one of the block matrices e_i, so the total is a sum of
# orbit sizes times centralizer counts.

# In[1]:

import numpy as np

from nilcomm.nilpotent import canonical_e, centralizer_basis, orbit_size
from nilcomm.variety import count_C, count_cent_nil, estimate_dim


# The representative e_2 in gl(5) and its 13-dimensional centralizer:

# In[2]:

e = canonical_e(5, 2).matrix
print(e.entries)
print(len(centralizer_basis(e)))


# Orbit sizes over GF(2) for n = 4. Their sum is the number of square-zero 4x4 matrices.

# In[3]:

sizes = [orbit_size(4, i, 2) for i in range(3)]
sizes, sum(sizes)


# Now the stratified count for n = 4, one term per orbit.

# In[4]:

for q in (2, 4, 8):
    terms = [orbit_size(4, i, q) * count_cent_nil(4, i, q) for i in range(3)]
    print(q, terms, sum(terms) == count_C(4, q))


# The variety for gl(4) should have dimension 12 with two top-dimensional
# components, so N(q) ~ 2 q^12. The slope between q = 4 and q = 8:

# In[5]:

samples = [(q, count_C(4, q)) for q in (2, 4, 8)]
est = estimate_dim(samples)
print(samples)
print(round(est.dim_estimate, 3), round(est.leading_coeff, 3))


# Same thing inside one centralizer: z(e_2) in gl(4) meets the nullcone in a
# set of dimension 4 with two components, and the count is exactly 2q^4 - q^2.

# In[6]:

qs = np.array([2, 4, 8])
counts = np.array([count_cent_nil(4, 2, int(q)) for q in qs])
print(counts, 2 * qs**4 - qs**2)

# coding: utf-8

# # Pairs as modules
#
# A commuting square-zero pair (X, Y) over a field of characteristic 2 is the
# same thing as a module for k[X,Y]/(X^2,Y^2). Here we decompose a few of the
# named pairs into indecomposables.

# In[1]:

from nilcomm.ff import make_field
from nilcomm.modvar import (LambdaModule, classify_indec, decompose, dualize, fingerprint,
                            iso_test)
from nilcomm.strata import ComponentId, generic_component_rep, w_pair, x0_pair, x0_plus_pair

f2 = make_field(2)


# The free module of rank one, from (e12 + e34, e13 + e24):

# In[2]:

w = LambdaModule.from_pair(w_pair(f2))
print(fingerprint(w))
[str(classify_indec(s)) for s in decompose(w)]


# The generic pair of X_0 in gl(4) splits into two 2-dimensional pieces with
# different parameters (a:b):

# In[3]:

x0 = LambdaModule.from_pair(x0_pair(f2, 4))
print(x0.X.entries)
print(x0.Y.entries)
[str(classify_indec(s)) for s in decompose(x0)]


# In odd dimension the generic pair is indecomposable, and its dual is a different module.

# In[4]:

zp = LambdaModule.from_pair(x0_plus_pair(f2, 5))
zm = dualize(zp)
print([str(classify_indec(s)) for s in decompose(zp)], fingerprint(zp).endDim)
print([str(classify_indec(s)) for s in decompose(zm)])
print(iso_test(zp, zm))


# Every component label for n = 7 and what its representative decomposes into:

# In[5]:

for cid in ComponentId.all_for(7):
    pair = generic_component_rep(cid, f2)
    print(cid, sorted(str(classify_indec(s)) for s in decompose(LambdaModule.from_pair(pair))))

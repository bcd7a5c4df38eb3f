# coding: utf-8

# # Peirce blocks, spectra and orbit tangent spaces
#
# For an even element x of a unital Jordan superalgebra with positive even
# part we get a spectral decomposition x = sum λ_i e_i.  The Peirce blocks
# P_ij of the frame {e_i} then predict the tangent spaces of the orbits
# through x.  Here we compare those predictions with brute force.

# In[1]:

import random

from superjordan.catalog import from_name
from superjordan.decomposition import frame_peirce, spectral, spectral_signature
from superjordan.sampling import point_on_frame, rotated_frame
from superjordan.structure import inner_derivations, mult_space, structure_algebra, tangent_spaces


# In[2]:

E = from_name("josp(2|2)")
J = E.algebra
rng = random.Random(2)
frame = rotated_frame(E, rng)
for e in frame:
    print(J.format_vector(e))


# A point with eigenvalues 2, -2 and 1 on the rotated frame.  The spectral
# routine only sees the vector, yet it recovers the eigenvalues and the
# idempotents exactly.

# In[3]:

x = point_on_frame(frame, [2, -2, 1])
data = spectral(J, x)
print(data.lambdas, data.multiplicities, spectral_signature(data))
print(data.reconstruct() == x)


# In[4]:

fp = frame_peirce(J, data.frame)
print({k: b.dim for k, b in sorted(fp.blocks.items())})


# The structure algebra is spanned by the multiplications L_a together with
# the brackets [L_a, L_b].  Because J is unital, that sum is direct.

# In[5]:

print(len(mult_space(J)), len(inner_derivations(J)), len(structure_algebra(J)))


# Since 2 + (-2) = 0, the block between those two eigenvalues drops out of
# 𝔪·x.  It stays in 𝔤·x, so x is not 𝔪-regular.

# In[6]:

rep = tangent_spaces(J, x)
print(rep.m_x.dim, rep.der_x.dim, rep.g_x.dim, rep.matches, rep.regular)


# In[7]:

y = point_on_frame(frame, [2, 3, 1])
rep = tangent_spaces(J, y)
print(rep.m_x.dim, rep.der_x.dim, rep.g_x.dim, rep.matches, rep.regular)

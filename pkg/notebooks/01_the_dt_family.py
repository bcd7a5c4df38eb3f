# coding: utf-8

# # The one-parameter family D(t)
#
# D(t) has even part spanned by two orthogonal idempotents e1, e2 and odd part
# spanned by x, y.  The only interesting product is {x, y} = e1 + t e2.  This
# script builds a few members, checks the axioms, and compares them with
# the other small Jordan superalgebras in the catalog.

# In[1]:

from fractions import Fraction

from superjordan.algebra import check_form, check_super_jordan, signature, verify_homomorphism
from superjordan.catalog import from_name
from superjordan.linalg import identity


# In[2]:

for t in ("-1", "-1/2", "1", "2", "-3"):
    E = from_name(f"dt({t})")
    J = E.algebra
    xy = J.multiply(J.element("x"), J.element("y"))
    print(f"t = {t:>4}:  {{x,y}} = {J.format_vector(xy):<12} Jordan: {check_super_jordan(J).ok}")


# The invariant form β is diag(1, 1/t) on the even part with β(x, y) = 2.
# It is valid for every nonzero t, and its signature tells Euclidean (t > 0)
# from pseudo-Euclidean (t < 0) apart.

# In[3]:

for t in ("2", "-3"):
    E = from_name(f"dt({t})")
    print(t, check_form(E.algebra, E.beta).as_dict(), signature(E.algebra, E.beta))


# Three members coincide with familiar algebras, and in each case the identity
# on (e1, e2, x, y) is an isomorphism.

# In[4]:

for a, b in (("dt(-1)", "gl+(1|1)"), ("dt(-1/2)", "josp(1|2)"), ("dt(1)", "spin(1|2)")):
    res = verify_homomorphism(identity(4), from_name(a).algebra, from_name(b).algebra, require_iso=True)
    print(a, "~", b, res.ok)


# D(t) and D(1/t) are isomorphic too: swap the idempotents and rescale x.

# In[5]:

t = Fraction(-3)
phi = ((0, 1, 0, 0), (1, 0, 0, 0), (0, 0, t, 0), (0, 0, 0, 1))
res = verify_homomorphism(phi, from_name("dt(-3)").algebra, from_name("dt(-1/3)").algebra, require_iso=True)
print(res.ok)


# Changing the coefficient of e1 breaks things.  The algebra dns(2) has
# {x, x} = e1 + 2 e2, and the Jordan identity already fails on the triple
# (x, e1, {x, x}).

# In[6]:

dns = from_name("dns(2)").algebra
res = check_super_jordan(dns)
print(res.ok, [dns.format_vector(v) for v in res.witness])

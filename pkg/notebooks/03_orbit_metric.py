# coding: utf-8

# # The metric on a regular orbit
#
# At a regular point ξ of the dual, the orbit carries the metric
#
#     g_ξ(η, η') = Σ 2/(λ_i + λ_j) β(η♯_ij, η'♯_ij),
#
# where the sum runs over the blocks with λ_i or λ_j nonzero.  It can be
# checked against the independent value β(ξ♯, ab) for the tangent vectors
# carried by a and b.

# In[1]:

from fractions import Fraction

from superjordan.algebra import flat
from superjordan.catalog import from_name, make_dt
from superjordan.structure import metric_at, metric_gram, metric_oracle
from superjordan.superfunctions import SuperFunctionRing, symbolic_parameter


# In[2]:

E = from_name("dt(2)")
J, beta = E.algebra, E.beta
xi = flat(beta, J.element("3*e1 + 5*e2"))
b = lambda s: flat(beta, J.element(s))  # noqa: E731
print(metric_at(J, beta, xi, b("e1"), b("e1")))   # 1/λ1
print(metric_at(J, beta, xi, b("e2"), b("e2")))   # 1/(t λ2)
print(metric_at(J, beta, xi, b("x"), b("y")))     # 4/(λ1 + λ2)


# The whole Gram matrix: the even block is symmetric, the odd block is
# antisymmetric.

# In[3]:

G = metric_gram(J, beta, xi)
for row in G.gram:
    print([str(v) for v in row])
print(G.signature)


# The oracle comparison, for a pair of odd elements a, b.

# In[4]:

x = J.element("3*e1 + 5*e2")
a, c = J.element("x + 2*y"), J.element("y")
ta, tc = flat(beta, J.multiply(a, x)), flat(beta, J.multiply(c, x))
print(metric_at(J, beta, xi, ta, tc), metric_oracle(J, beta, xi, a, c))


# The same metric written in coordinates on D(t)* with t symbolic.  Odd
# coordinates generate a Grassmann algebra, so the coefficients are
# superfunctions.

# In[5]:

t = symbolic_parameter("t")
R = SuperFunctionRing(make_dt(t).algebra)
for j, k in ((0, 0), (1, 1), (0, 1)):
    print((j, k), R.coordinate_metric(j, k, ["e1", "e2", "e1 + t*e2"]))

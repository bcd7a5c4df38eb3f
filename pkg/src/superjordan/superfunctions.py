"""Polynomial and localized superfunctions on the dual space A*.

A superfunction is a finite sum of Grassmann monomials in the odd
coordinates with coefficients in the rational-function field generated by the
even coordinates (and any symbolic parameters of A).  Coordinates are named
after the basis labels of A, so ``u_{e1}`` prints as ``e1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from sympy import QQ, Rational, field

from . import linalg
from .algebra import AlgebraError, SuperOperator, annihilator

__all__ = [
    "SuperFunctionRing",
    "SuperFunction",
    "SuperVectorField",
    "UnsupportedError",
    "LocalizationError",
    "symbolic_parameter",
    "kernel_is_constants",
]


class UnsupportedError(ValueError):
    """The requested quantity is not well defined for this algebra."""


class LocalizationError(ZeroDivisionError):
    """A denominator outside the declared localization appeared."""


def symbolic_parameter(name="t"):
    """A free parameter (element of Q(name)) usable as a structure constant."""
    _, t = field(name, QQ)
    return t


def kernel_is_constants(A):
    """True iff Ann(A) = 0, i.e. f -> X_f kills only constants."""
    return annihilator(A).dim == 0


def _merge_sign(I, J):
    """Sign and sorted union of two Grassmann monomials, or (0, None)."""
    if set(I) & set(J):
        return 0, None
    inv = sum(1 for i in I for j in J if i > j)
    return (-1 if inv % 2 else 1), tuple(sorted(I + J))


class SuperFunctionRing:
    """Superfunctions on A*, localized at rational functions of the even coordinates."""

    def __init__(self, A):
        self.algebra = A
        params = []
        for row in A._table.values():
            for c in row.values():
                if not isinstance(c, Fraction):
                    for s in c.field.symbols:
                        if s not in params:
                            params.append(s)
        self.parameters = tuple(params)
        names = [str(s) for s in params]
        even = []
        for lab in A.basis.even_labels:
            name = lab if lab not in names else f"u_{lab}"
            even.append(name)
        self.even_names = tuple(even)
        self.odd_names = tuple(A.basis.odd_labels)
        syms = names + even
        if syms:
            self.field, *gens = field(",".join(syms), QQ)
        else:
            self.field, gens = field("_dummy", QQ)[0], []
        gens = list(gens)
        self.param_gens = tuple(gens[: len(names)])
        self.even_gens = tuple(gens[len(names):])
        self._embedded = {}

    # -- scalars ---------------------------------------------------------------

    def scalar(self, c):
        if isinstance(c, (int, Fraction)):
            c = Fraction(c)
            return self.field(c.numerator) / c.denominator
        if hasattr(c, "as_expr"):
            return self.field.from_expr(c.as_expr())
        if isinstance(c, str):
            return self.field.from_expr(c)
        raise TypeError(f"cannot use {c!r} as a coefficient")

    def parse(self, text):
        """Rational function in the even coordinates and parameters."""
        return self.field.from_expr(text)

    # -- constructors ------------------------------------------------------------

    @property
    def m(self):
        return self.algebra.m

    @property
    def n(self):
        return self.algebra.n

    @property
    def dim(self):
        return self.algebra.dim

    def zero(self):
        return SuperFunction(self, {})

    def constant(self, c):
        return SuperFunction(self, {(): self.scalar(c)})

    def from_terms(self, terms):
        """From ``{tuple_of_odd_labels_or_indices: coefficient}``."""
        out = {}
        for mono, c in terms.items():
            idx = [self.odd_names.index(x) if isinstance(x, str) else int(x) for x in mono]
            perm = list(idx)
            sign = 1
            for i in range(len(perm)):
                for j in range(len(perm) - 1 - i):
                    if perm[j] > perm[j + 1]:
                        perm[j], perm[j + 1] = perm[j + 1], perm[j]
                        sign = -sign
                    elif perm[j] == perm[j + 1]:
                        sign = 0
            if len(set(idx)) != len(idx) or sign == 0:
                continue
            key = tuple(perm)
            out[key] = out.get(key, self.field(0)) + sign * self.scalar(c)
        return SuperFunction(self, out)

    def coordinate(self, i):
        """The coordinate function of basis vector i (u_i or θ_i)."""
        if isinstance(i, str):
            i = self.algebra.basis.index(i)
        if i < self.m:
            return SuperFunction(self, {(): self.even_gens[i]})
        return SuperFunction(self, {(i - self.m,): self.field(1)})

    def embed(self, a):
        """Image of a ∈ A as a linear function on A*."""
        self.algebra._check_vec(a)
        terms = {}
        for i, c in enumerate(a):
            if c == 0:
                continue
            c = self.scalar(c)
            if i < self.m:
                terms[()] = terms.get((), self.field(0)) + c * self.even_gens[i]
            else:
                terms[(i - self.m,)] = c
        return SuperFunction(self, terms)

    def embedded_product(self, i, j):
        key = (i, j)
        if key not in self._embedded:
            self._embedded[key] = self.embed(self.algebra.basis_product(i, j))
        return self._embedded[key]

    def structure_matrix(self):
        """M[i][j] = embed(x_i x_j)."""
        d = self.dim
        return [[self.embedded_product(i, j) for j in range(d)] for i in range(d)]

    # -- calculus ----------------------------------------------------------------

    def partial(self, f, i):
        """∂f/∂x_i; odd derivatives anticommute θ_i to the front and strip it."""
        if isinstance(i, str):
            i = self.algebra.basis.index(i)
        out = {}
        if i < self.m:
            g = self.even_gens[i]
            for mono, c in f.terms.items():
                dc = c.diff(g)
                if dc != 0:
                    out[mono] = dc
        else:
            k = i - self.m
            for mono, c in f.terms.items():
                if k in mono:
                    pos = mono.index(k)
                    rest = mono[:pos] + mono[pos + 1:]
                    out[rest] = out.get(rest, self.field(0)) + (-c if pos % 2 else c)
        return SuperFunction(self, out)

    def parity_of_index(self, i):
        return 0 if i < self.m else 1

    def bracket(self, f, g):
        """{f, g} = Σ (-1)^{|x_j|(|f|+|x_i|)} embed(x_i x_j) ∂_i f ∂_j g."""
        pf, pg = f.require_parity(), g.require_parity()
        d = self.dim
        df = [self.partial(f, i) for i in range(d)]
        dg = [self.partial(g, j) for j in range(d)]
        out = self.zero()
        for i in range(d):
            if df[i].is_zero():
                continue
            for j in range(d):
                if dg[j].is_zero():
                    continue
                M = self.embedded_product(i, j)
                if M.is_zero():
                    continue
                sign = -1 if self.parity_of_index(j) * (pf + self.parity_of_index(i)) % 2 else 1
                out = out + (M * df[i] * dg[j]).scaled(sign)
        del pg
        return out

    def field_of(self, f):
        """X_f, with X_f(g) = {f, g}."""
        pf = f.require_parity()
        d = self.dim
        comps = [self.zero() for _ in range(d)]
        for i in range(d):
            dfi = self.partial(f, i)
            if dfi.is_zero():
                continue
            pi = self.parity_of_index(i)
            sign = -1 if pi * (pf + pi) % 2 else 1
            for j in range(d):
                M = self.embedded_product(i, j)
                if not M.is_zero():
                    comps[j] = comps[j] + (dfi * M).scaled(sign)
        return SuperVectorField(self, tuple(comps))

    def coordinate_field(self, j):
        """∂/∂x_j as a vector field."""
        if isinstance(j, str):
            j = self.algebra.basis.index(j)
        comps = [self.zero() for _ in range(self.dim)]
        comps[j] = self.constant(1)
        return SuperVectorField(self, tuple(comps))

    def induced_action_field(self, op):
        """Σ_i embed(op x_i) ∂/∂x_i for a homogeneous operator on A."""
        if not isinstance(op, SuperOperator):
            raise TypeError("expected a SuperOperator")
        cols = linalg.transpose(op.matrix)
        return SuperVectorField(self, tuple(self.embed(tuple(c)) for c in cols))

    def pairing(self, f, g):
        """𝑔(X_f, X_g) = {f, g}."""
        if not (f.is_linear() and g.is_linear()) and not kernel_is_constants(self.algebra):
            raise UnsupportedError("pairing on non-linear functions needs Ann(A) = 0")
        return self.bracket(f, g)

    # -- the metric in coordinate fields ---------------------------------------------

    def structure_matrix_inverse(self, localized_at):
        """M^{-1} in the localized ring, by a finite Neumann series.

        ``localized_at`` lists the polynomials (strings or field elements) that
        may appear in denominators.
        """
        d = self.dim
        M = self.structure_matrix()
        M0 = tuple(tuple(M[i][j].body() for j in range(d)) for i in range(d))
        try:
            M0inv = linalg.inverse(M0)
        except ZeroDivisionError:
            raise LocalizationError("body of the structure matrix is singular (point not regular)") from None
        M0inv_sf = [[self.constant_from_field(M0inv[i][j]) for j in range(d)] for i in range(d)]
        Nmat = [[M[i][j] - M[i][j].body_function() for j in range(d)] for i in range(d)]
        K = _matmul_sf(self, M0inv_sf, Nmat)
        negK = [[x.scaled(-1) for x in row] for row in K]
        total = _identity_sf(self, d)
        power = _identity_sf(self, d)
        for _ in range(self.n):
            power = _matmul_sf(self, power, negK)
            if all(x.is_zero() for row in power for x in row):
                break
            total = _matadd_sf(total, power)
        inv = _matmul_sf(self, total, M0inv_sf)
        allowed = self._allowed_factors(localized_at)
        for row in inv:
            for x in row:
                for c in x.terms.values():
                    self._check_denominator(c, allowed)
        return inv

    def constant_from_field(self, c):
        if c == 0:
            return self.zero()
        if isinstance(c, Fraction) or c.field != self.field:
            c = self.scalar(c)
        return SuperFunction(self, {(): c})

    def _allowed_factors(self, localized_at):
        out = set()
        for p in localized_at:
            q = self.parse(p) if isinstance(p, str) else self.scalar(p)
            for poly in (q.numer, q.denom):
                _, facs = poly.factor_list()
                for fac, _ in facs:
                    out.add(fac.monic())
        return out

    def _check_denominator(self, c, allowed):
        _, facs = c.denom.factor_list()
        for fac, _ in facs:
            mf = fac.monic()
            if mf.is_ground:
                continue
            if mf not in allowed:
                raise LocalizationError(f"denominator factor {fac.as_expr()} is not localized")

    def coordinate_metric(self, j, k, localized_at, convention="plain"):
        """𝑔(∂/∂x_j, ∂/∂x_k) with ∂/∂x_j = Σ_i C_ji X_{x_i}, C = M^{-1}.

        ``convention`` fixes how 𝑔 is extended over superfunction coefficients:
        ``"graded"`` uses 𝑔(hX, Y) = h 𝑔(X,Y), 𝑔(X, hY) = (-1)^{|h||X|} h 𝑔(X,Y);
        ``"plain"`` drops the sign.
        """
        if convention not in ("graded", "plain"):
            raise ValueError(f"unknown convention {convention!r}")
        if isinstance(j, str):
            j = self.algebra.basis.index(j)
        if isinstance(k, str):
            k = self.algebra.basis.index(k)
        C = self.structure_matrix_inverse(localized_at)
        d = self.dim
        out = self.zero()
        for i in range(d):
            if C[j][i].is_zero():
                continue
            pi = self.parity_of_index(i)
            for l in range(d):
                if C[k][l].is_zero():
                    continue
                M = self.embedded_product(i, l)
                if M.is_zero():
                    continue
                h2 = C[k][l]
                sign = 1
                if convention == "graded":
                    ph = h2.require_parity()
                    sign = -1 if ph * pi % 2 else 1
                out = out + (C[j][i] * h2 * M).scaled(sign)
        return out

    # -- evaluation -----------------------------------------------------------------

    def evaluate_body(self, f, point, params=None):
        """Value of the body of f at a point of A_0^* (even coordinates)."""
        if isinstance(point, dict):
            vals = [point[lab] for lab in self.algebra.basis.even_labels]
        else:
            vals = list(point)[: self.m]
        subs = {}
        for g, v in zip(self.even_gens, vals):
            subs[g.as_expr()] = Rational(str(linalg.as_scalar(v)))
        for g in self.param_gens:
            name = str(g.as_expr())
            if params and name in params:
                subs[g.as_expr()] = Rational(str(linalg.as_scalar(params[name])))
        c = f.terms.get((), self.field(0))
        den = c.denom.as_expr().subs(subs)
        if den == 0:
            raise ZeroDivisionError("superfunction has a pole at this point")
        val = (c.numer.as_expr().subs(subs)) / den
        if val.free_symbols:
            return self.field.from_expr(val)
        val = Rational(val)
        return Fraction(int(val.p), int(val.q))


def _identity_sf(R, d):
    return [[R.constant(1) if i == j else R.zero() for j in range(d)] for i in range(d)]


def _matmul_sf(R, X, Y):
    d = len(X)
    out = []
    for i in range(d):
        row = []
        for j in range(len(Y[0])):
            acc = R.zero()
            for k in range(len(Y)):
                if not X[i][k].is_zero() and not Y[k][j].is_zero():
                    acc = acc + X[i][k] * Y[k][j]
            row.append(acc)
        out.append(row)
    return out


def _matadd_sf(X, Y):
    return [[a + b for a, b in zip(r, s)] for r, s in zip(X, Y)]


@dataclass(frozen=True, eq=False)
class SuperFunction:
    ring: SuperFunctionRing
    terms: dict

    def __post_init__(self):
        object.__setattr__(self, "terms", {k: v for k, v in self.terms.items() if v != 0})

    def __eq__(self, other):
        if isinstance(other, SuperFunction):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(tuple(sorted((k, str(v)) for k, v in self.terms.items())))

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        return SuperFunction(self.ring, out)

    def __sub__(self, other):
        return self + other.scaled(-1)

    def __neg__(self):
        return self.scaled(-1)

    def scaled(self, c):
        if c == 1:
            return self
        return SuperFunction(self.ring, {k: c * v for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, SuperFunction):
            return self.scaled(self.ring.scalar(other))
        out = {}
        for I, a in self.terms.items():
            for J, b in other.terms.items():
                sign, K = _merge_sign(I, J)
                if sign:
                    v = a * b if sign > 0 else -(a * b)
                    out[K] = out[K] + v if K in out else v
        return SuperFunction(self.ring, out)

    def parity(self):
        """0 or 1, or None for mixed parity (zero is even)."""
        ps = {len(k) % 2 for k in self.terms}
        if len(ps) > 1:
            return None
        return ps.pop() if ps else 0

    def require_parity(self):
        p = self.parity()
        if p is None:
            raise AlgebraError("superfunction is not homogeneous; split it into parts first")
        return p

    def is_linear(self):
        """True for images of A under embed."""
        R = self.ring
        for mono, c in self.terms.items():
            if len(mono) > 1:
                return False
            if len(mono) == 1:
                if any(c.diff(g) != 0 for g in R.even_gens):
                    return False
            else:
                num = c.numer
                if c.denom.as_expr().free_symbols & {g.as_expr() for g in R.even_gens}:
                    return False
                if any(sum(mon[len(R.param_gens):]) != 1 for mon in num.monoms()):
                    return False
        return True

    def body(self):
        return self.terms.get((), self.ring.field(0))

    def body_function(self):
        b = self.body()
        return SuperFunction(self.ring, {(): b} if b != 0 else {})

    def derivative(self, i):
        return self.ring.partial(self, i)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0]))

    def __str__(self):
        if not self.terms:
            return "0"
        names = self.ring.odd_names
        parts = []
        for mono, c in self.sorted_terms():
            s = f"({c.as_expr()})"
            if mono:
                s += "*" + "*".join(names[k] for k in mono)
            parts.append(s)
        return " + ".join(parts)

    __repr__ = __str__

    def to_json(self):
        names = self.ring.odd_names
        return {
            "terms": [
                {"monomial": [names[k] for k in mono], "coefficient": str(c.as_expr())}
                for mono, c in self.sorted_terms()
            ]
        }


@dataclass(frozen=True, eq=False)
class SuperVectorField:
    ring: SuperFunctionRing
    components: tuple

    def __eq__(self, other):
        return isinstance(other, SuperVectorField) and all(
            a == b for a, b in zip(self.components, other.components)
        )

    def __call__(self, g):
        """Apply the field (written Σ_j X_j ∂/∂x_j) to a superfunction."""
        out = self.ring.zero()
        for j, c in enumerate(self.components):
            if not c.is_zero():
                out = out + c * self.ring.partial(g, j)
        return out

    def component(self, label):
        return self.components[self.ring.algebra.basis.index(label)]

    def is_zero(self):
        return all(c.is_zero() for c in self.components)

"""Structure Lie superalgebra, orbit tangent spaces and the orbit metric."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .algebra import AlgebraError, SuperOperator, find_unit, flat, sharp
from .decomposition import (
    frame_peirce,
    spectral,
    spectral_signature,
    even_part_positive,
)
from .linalg import ZERO, Subspace

__all__ = [
    "OperatorSpace",
    "TangentReport",
    "MetricAtPoint",
    "TheoremViolation",
    "mult_space",
    "structure_algebra",
    "inner_derivations",
    "derivation_space",
    "is_superderivation",
    "tangent_spaces",
    "is_m_regular",
    "same_orbit_body",
    "metric_at",
    "metric_gram",
    "metric_oracle",
    "rank_at",
]


class TheoremViolation(AssertionError):
    """A brute-force computation contradicts a proved statement."""


def _cache(J, key, fn):
    store = J.__dict__.setdefault("_derived_cache", {})
    if key not in store:
        store[key] = fn()
    return store[key]


@dataclass(frozen=True)
class OperatorSpace:
    dim: int
    even_dim: int
    basis: tuple
    tag: str

    def __len__(self):
        return len(self.basis)

    def flat_space(self):
        return Subspace.span([op.flatten() for op in self.basis], self.dim * self.dim)

    def contains(self, op):
        return self.flat_space().contains(op.flatten())


def _span_ops(ops, dim, even_dim, tag):
    """Echelon basis of span(ops), computed separately in each parity."""
    basis = []
    for par in (0, 1):
        flats = [op.flatten() for op in ops if op.parity == par and not op.is_zero()]
        if not flats:
            continue
        rows, _ = linalg.rref(flats, dim * dim)
        for r in rows:
            M = tuple(tuple(r[i * dim:(i + 1) * dim]) for i in range(dim))
            basis.append(SuperOperator(M, par, even_dim))
    return OperatorSpace(dim, even_dim, tuple(basis), tag)


def mult_space(J):
    """𝔪_J = span{L_a}."""
    return _cache(
        J, "m", lambda: _span_ops([J.basis_left_mult(i) for i in range(J.dim)], J.dim, J.m, "m_J")
    )


def _bracket_space(J):
    def build():
        Ls = [J.basis_left_mult(i) for i in range(J.dim)]
        ops = [Ls[a].bracket(Ls[b]) for a in range(J.dim) for b in range(a, J.dim)]
        return _span_ops(ops, J.dim, J.m, "bracket_space")

    return _cache(J, "mm", build)


def structure_algebra(J):
    """𝔤(J) = span{L_a, [L_b, L_c]}, with closure (and for unital J the
    direct-sum split 𝔪 ⊕ [𝔪, 𝔪]) asserted."""

    def build():
        m = mult_space(J)
        b = _bracket_space(J)
        g = _span_ops(list(m.basis) + list(b.basis), J.dim, J.m, "g_J")
        flats = [op.flatten() for op in g.basis]
        for i, u in enumerate(g.basis):
            for v in g.basis[i:]:
                flats.append(u.bracket(v).flatten())
        if Subspace.span(flats, J.dim * J.dim).dim != len(g):
            raise AlgebraError("span of L_a and [L_b, L_c] is not bracket closed (input not Jordan)")
        if find_unit(J) is not None and len(g) != len(m) + len(b):
            raise TheoremViolation("𝔪_J ∩ [𝔪_J, 𝔪_J] != 0 for a unital algebra")
        return g

    return _cache(J, "g", build)


def is_superderivation(J, D):
    """D(ab) = D(a) b + (-1)^{|D||a|} a D(b) on all basis pairs."""
    for i in range(J.dim):
        a = J.basis_vector(i)
        Da = D(a)
        sign = -1 if D.parity * J.parity(i) else 1
        for j in range(J.dim):
            b = J.basis_vector(j)
            lhs = D(J.multiply(a, b))
            rhs = tuple(p + sign * q for p, q in zip(J.multiply(Da, b), J.multiply(a, D(b))))
            if lhs != rhs:
                return False
    return True


def derivation_space(J):
    """All homogeneous superderivations, by solving the linear conditions."""

    def build():
        d = J.dim
        ops = []
        for par in (0, 1):
            free = [(r, c) for r in range(d) for c in range(d) if (J.parity(r) != J.parity(c)) == bool(par)]
            idx = {rc: k for k, rc in enumerate(free)}
            rows = []
            for i in range(d):
                for j in range(d):
                    sign = -1 if par * J.parity(i) else 1
                    # coefficient of each unknown D[r][c] in component k of
                    # D(x_i x_j) - D(x_i) x_j - sign x_i D(x_j)
                    eqs = {}
                    for k2, c in J._table.get((i, j), {}).items():
                        for r in range(d):
                            if (r, k2) in idx:
                                eqs.setdefault(r, {})
                                eqs[r][idx[(r, k2)]] = eqs[r].get(idx[(r, k2)], ZERO) + c
                    for r in range(d):
                        if (r, i) in idx:
                            for k, c in J._table.get((r, j), {}).items():
                                eqs.setdefault(k, {})
                                eqs[k][idx[(r, i)]] = eqs[k].get(idx[(r, i)], ZERO) - c
                        if (r, j) in idx:
                            for k, c in J._table.get((i, r), {}).items():
                                eqs.setdefault(k, {})
                                eqs[k][idx[(r, j)]] = eqs[k].get(idx[(r, j)], ZERO) - sign * c
                    for k, coeffs in eqs.items():
                        row = [ZERO] * len(free)
                        for u, c in coeffs.items():
                            row[u] = c
                        if any(row):
                            rows.append(tuple(row))
            ker = linalg.kernel(rows, len(free)) if rows else Subspace.full(len(free))
            for v in ker.basis:
                M = [[ZERO] * d for _ in range(d)]
                for (r, c), k in idx.items():
                    M[r][c] = v[k]
                ops.append(SuperOperator(tuple(tuple(x) for x in M), par, J.m))
        return _span_ops(ops, d, J.m, "der")

    return _cache(J, "der", build)


def inner_derivations(J):
    """Der_0(J): span{[L_a, L_b]} for unital J (each member verified to be a
    superderivation); otherwise 𝔤(J) ∩ Der(J)."""

    def build():
        if find_unit(J) is not None:
            b = _bracket_space(J)
            for op in b.basis:
                if not is_superderivation(J, op):
                    raise TheoremViolation("[L_a, L_b] is not a derivation")
            return OperatorSpace(b.dim, b.even_dim, b.basis, "der0")
        g = structure_algebra(J)
        D = derivation_space(J)
        inter = g.flat_space().intersect(D.flat_space())
        d = J.dim
        ops = []
        for r in inter.basis:
            M = tuple(tuple(r[i * d:(i + 1) * d]) for i in range(d))
            ops.append(SuperOperator.from_matrix(M, J.m))
        return _span_ops(ops, d, J.m, "der0")

    return _cache(J, "der0", build)


def rank_at(J, space, point):
    """Pointwise rank of the distribution spanned by the operators in ``space``."""
    return Subspace.span([op(point) for op in space.basis], J.dim).dim


# ---------------------------------------------------------------------------
# tangent spaces


@dataclass(frozen=True)
class TangentReport:
    point: tuple
    m_x: Subspace
    der_x: Subspace
    g_x: Subspace
    lambdas: tuple = ()
    predicted: dict | None = None
    matches: dict | None = None
    regular: bool = False

    def as_dict(self, J):
        out = {
            "point": J.format_vector(self.point),
            "lambdas": [str(l) for l in self.lambdas],
            "dims": {"m_x": self.m_x.dim, "der_x": self.der_x.dim, "g_x": self.g_x.dim},
            "regular": self.regular,
            "bases": {
                k: [J.format_vector(v) for v in getattr(self, k).basis] for k in ("m_x", "der_x", "g_x")
            },
        }
        if self.matches is not None:
            out["peirce_matches"] = dict(self.matches)
        return out


def _block_sum(fp, keep, dim):
    space = Subspace(dim, ())
    for key, block in fp.blocks.items():
        if keep(*key):
            space = space + block
    return space


def _spectral_peirce(J, x):
    """Spectral data of x and the Peirce blocks of its frame (cached)."""
    x = tuple(x)
    return _cache(J, ("spectral", x), lambda: _spectral_peirce_uncached(J, x))


def _spectral_peirce_uncached(J, x):
    data = spectral(J, x)
    if not data.exact:
        raise AlgebraError("exact spectral data needed")
    return data, frame_peirce(J, data.frame)


def _peirce_sums(J, x):
    data, fp = _spectral_peirce(J, x)
    lam = data.lambdas
    pred = {
        "m_x": _block_sum(fp, lambda i, j: lam[i] + lam[j] != 0, J.dim),
        "der_x": _block_sum(fp, lambda i, j: lam[i] - lam[j] != 0, J.dim),
        "g_x": _block_sum(fp, lambda i, j: lam[i] != 0 or lam[j] != 0, J.dim),
    }
    return data, fp, pred


def tangent_spaces(J, x, predict=True):
    """Brute-force 𝔪·x, Der_0·x, 𝔤·x, compared with the Peirce prediction."""
    x = tuple(x)
    m = mult_space(J)
    D = inner_derivations(J)
    mx = Subspace.span([op(x) for op in m.basis], J.dim)
    dx = Subspace.span([op(x) for op in D.basis], J.dim)
    gx = Subspace.span([op(x) for op in structure_algebra(J).basis], J.dim)
    if not (mx + dx).dim == gx.dim:
        raise TheoremViolation("𝔤·x != 𝔪·x + Der_0·x")
    regular = mx.dim == gx.dim
    if not predict:
        return TangentReport(x, mx, dx, gx, regular=regular)
    if not even_part_positive(J):
        raise AlgebraError("Peirce prediction needs a positive even part")
    data, _, pred = _peirce_sums(J, x)
    matches = {"m_x": pred["m_x"] == mx, "der_x": pred["der_x"] == dx, "g_x": pred["g_x"] == gx}
    return TangentReport(x, mx, dx, gx, data.lambdas, pred, matches, regular)


def _regularity_criterion(J, x):
    data, fp = _spectral_peirce(J, x)
    lam = data.lambdas
    for (i, j), block in sorted(fp.blocks.items()):
        if block.dim and lam[i] != 0 and lam[j] != 0 and lam[i] + lam[j] == 0:
            return False, (lam[i], lam[j])
    return True, None


def is_m_regular(J, beta, xi):
    """Criterion λ_i + λ_j != 0 (over nonzero blocks) cross-checked against
    rank(𝔪·ξ♯) = rank(𝔤·ξ♯)."""
    if beta is None:
        raise AlgebraError("a form is needed")
    x = sharp(beta, xi)
    ok, witness = _regularity_criterion(J, x)
    brute = rank_at(J, mult_space(J), x) == rank_at(J, structure_algebra(J), x)
    if ok != brute:
        raise TheoremViolation(f"regularity criterion {ok} disagrees with rank test {brute} at {x}")
    return ok, witness


def same_orbit_body(J, beta, xi1, xi2):
    s1 = spectral_signature(spectral(J, sharp(beta, xi1)))
    s2 = spectral_signature(spectral(J, sharp(beta, xi2)))
    return s1 == s2


# ---------------------------------------------------------------------------
# the metric


@dataclass(frozen=True)
class MetricAtPoint:
    point: tuple
    tangent_basis: tuple
    gram: tuple
    signature: tuple


def _metric_setup(J, beta, xi):
    key = ("metric", id(beta), tuple(xi))
    store = J.__dict__.setdefault("_derived_cache", {})
    if key not in store:
        store[key] = _metric_setup_uncached(J, beta, xi)
    return store[key]


def _metric_setup_uncached(J, beta, xi):
    if not even_part_positive(J):
        raise AlgebraError("the metric formula needs a positive even part")
    x = sharp(beta, xi)
    if any(c != 0 for c in x[J.m:]):
        raise AlgebraError("ξ must be even")
    data, fp = _spectral_peirce(J, x)
    ok, witness = _regularity_criterion(J, x)
    if not ok:
        raise AlgebraError(f"ξ is not regular: λ_i + λ_j = 0 for {witness}")
    return x, data.lambdas, fp


def _metric_value(J, beta, lam, fp, eta, etap):
    a = sharp(beta, eta)
    b = sharp(beta, etap)
    ca, cb = fp.components(a), fp.components(b)
    total = ZERO
    for (i, j), block in fp.blocks.items():
        if block.dim == 0:
            continue
        tangent = lam[i] != 0 or lam[j] != 0
        if not tangent:
            for comp in (ca[(i, j)], cb[(i, j)]):
                if any(comp):
                    raise AlgebraError("η is not tangent to the orbit at ξ")
            continue
        total += Fraction(2) / (lam[i] + lam[j]) * beta(ca[(i, j)], cb[(i, j)])
    return total


def metric_at(J, beta, xi, eta, etap):
    """g_ξ(η, η') = Σ 2/(λ_i+λ_j) β(η♯_ij, η'♯_ij)."""
    x, lam, fp = _metric_setup(J, beta, xi)
    return _metric_value(J, beta, lam, fp, eta, etap)


def metric_gram(J, beta, xi):
    """Gram matrix of g_ξ on the flats of the tangent block bases."""
    x, lam, fp = _metric_setup(J, beta, xi)
    tangent = []
    for (i, j), block in sorted(fp.blocks.items()):
        if lam[i] != 0 or lam[j] != 0:
            tangent.extend(block.basis)
    even = [v for v in tangent if all(c == 0 for c in v[J.m:])]
    odd = [v for v in tangent if v not in even]
    basis = [flat(beta, v) for v in even + odd]
    G = tuple(tuple(_metric_value(J, beta, lam, fp, u, v) for v in basis) for u in basis)
    k = len(even)
    sig = linalg.symmetric_signature(tuple(r[:k] for r in G[:k]))[:2] if k else (0, 0)
    return MetricAtPoint(x, tuple(basis), G, sig)


def metric_oracle(J, beta, xi, a, b):
    """β(ξ♯, ab): the body of 𝑔(X_a, X_b) at ξ."""
    return beta(sharp(beta, xi), J.multiply(a, b))

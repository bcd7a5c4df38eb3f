"""Idempotents, Peirce decompositions, Jordan frames and spectral data."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
import sympy

from . import linalg
from .algebra import (
    AlgebraError,
    BilinearForm,
    CheckResult,
    SuperOperator,
    canonical_form_tau,
    check_form,
    check_super_jordan,
    find_unit,
    signature,
)
from .linalg import ZERO, Subspace

__all__ = [
    "PeirceDecomposition",
    "JordanFrame",
    "FramePeirce",
    "SpectralData",
    "FrameError",
    "SpectralError",
    "AmbiguityError",
    "peirce_of_idempotent",
    "check_peirce_rules",
    "check_frame",
    "frame_peirce",
    "check_frame_rules",
    "beta_orthogonality_check",
    "primitivity",
    "idempotent_rank",
    "minimal_polynomial",
    "spectral",
    "spectral_signature",
    "beta_irreducible_decomposition",
    "classify",
    "even_part_positive",
    "NUMERIC_TOL",
]

HALF = Fraction(1, 2)
NUMERIC_TOL = 1e-9


class FrameError(AlgebraError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class SpectralError(AlgebraError):
    pass


class AmbiguityError(SpectralError):
    """A numeric spectral value is too close to zero to decide its sign."""


def _is_even(J, v):
    return all(c == 0 for c in v[J.m:])


def _sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def _lin(coeffs, vecs, dim):
    out = [ZERO] * dim
    for c, v in zip(coeffs, vecs):
        if c != 0:
            for k, x in enumerate(v):
                if x != 0:
                    out[k] += c * x
    return tuple(out)


def _image(op):
    return Subspace.span(list(linalg.transpose(op.matrix)), op.dim)


def _poly_in(L, coeffs, even_dim):
    """Σ c_k L^k for a list of coefficients (constant term first)."""
    n = L.dim
    acc = [[ZERO] * n for _ in range(n)]
    power = linalg.identity(n)
    for k, c in enumerate(coeffs):
        if k:
            power = linalg.matmul(power, L.matrix)
        if c != 0:
            for i in range(n):
                for j in range(n):
                    if power[i][j] != 0:
                        acc[i][j] += c * power[i][j]
    return SuperOperator(tuple(tuple(r) for r in acc), 0, even_dim)


# ---------------------------------------------------------------------------
# single idempotent


@dataclass(frozen=True)
class PeirceDecomposition:
    idempotent: tuple
    projectors: dict
    subspaces: dict

    def projector(self, lam):
        return self.projectors[Fraction(lam)]

    def space(self, lam):
        return self.subspaces[Fraction(lam)]


def peirce_of_idempotent(J, e):
    """Projectors onto the 0, 1/2, 1 eigenspaces of L_e, as polynomials in L_e."""
    if not _is_even(J, e):
        raise AlgebraError("idempotent must be even")
    if J.multiply(e, e) != tuple(e):
        raise AlgebraError("element is not idempotent")
    L = J.left_mult(e)
    cubic = _poly_in(L, [0, 1, -3, 2], J.m)
    if not cubic.is_zero():
        raise AlgebraError("2L^3 - 3L^2 + L != 0: the algebra is not Jordan")
    P0 = _poly_in(L, [1, -3, 2], J.m)
    Ph = _poly_in(L, [0, 4, -4], J.m)
    P1 = _poly_in(L, [0, -1, 2], J.m)
    projs = {Fraction(0): P0, HALF: Ph, Fraction(1): P1}
    return PeirceDecomposition(tuple(e), projs, {k: _image(v) for k, v in projs.items()})


def _products_within(J, U, V, target):
    """First pair of basis vectors (u, v) of U x V with uv outside target."""
    for u in U.basis:
        for v in V.basis:
            w = J.multiply(u, v)
            if any(w) and not target.contains(w):
                return (u, v)
    return None


def check_peirce_rules(J, pd):
    """Multiplication rules for the Peirce spaces of one idempotent."""
    d = J.dim
    zero = Subspace(d, ())
    P0, Ph, P1 = pd.space(0), pd.space(HALF), pd.space(1)
    rules = [
        ("P0*P0 in P0", P0, P0, P0),
        ("P1*P1 in P1", P1, P1, P1),
        ("P0*P1 = 0", P0, P1, zero),
        ("P0*P1/2 in P1/2", P0, Ph, Ph),
        ("P1*P1/2 in P1/2", P1, Ph, Ph),
        ("P1/2*P1/2 in P0+P1", Ph, Ph, P0 + P1),
    ]
    for name, U, V, T in rules:
        bad = _products_within(J, U, V, T)
        if bad:
            return CheckResult(False, name, bad)
    return CheckResult(True, "peirce_rules")


def check_projector_algebra(pd):
    """P_λ² = P_λ, P_λ P_μ = 0 for λ != μ, and Σ P_λ = I."""
    lams = sorted(pd.projectors)
    n = pd.projectors[lams[0]].dim
    total = [[ZERO] * n for _ in range(n)]
    for a in lams:
        Pa = pd.projectors[a].matrix
        if linalg.matmul(Pa, Pa) != Pa:
            return CheckResult(False, "projector_idempotent", (a,))
        for b in lams:
            if a != b and any(x != 0 for r in linalg.matmul(Pa, pd.projectors[b].matrix) for x in r):
                return CheckResult(False, "projector_orthogonal", (a, b))
        for i in range(n):
            for j in range(n):
                total[i][j] += Pa[i][j]
    if tuple(tuple(r) for r in total) != linalg.identity(n):
        return CheckResult(False, "projector_sum")
    return CheckResult(True, "projector_algebra")


# ---------------------------------------------------------------------------
# frames


@dataclass(frozen=True)
class JordanFrame:
    idempotents: tuple
    primitive: tuple = ()  # "yes" / "no" / "unknown" per idempotent

    def __len__(self):
        return len(self.idempotents)


def minimal_polynomial(J, x, unit):
    """Monic minimal polynomial of x relative to ``unit`` (power-associative).

    Returns the coefficient list (constant term first) and the list of powers.
    """
    powers = [tuple(unit), tuple(x)]
    while True:
        cur = powers[-1]
        sol = linalg.solve(linalg.transpose(powers[:-1]), cur)
        if sol is not None:
            return [-c for c in sol] + [Fraction(1)], powers[:-1]
        if len(powers) > J.dim + 1:
            raise SpectralError("powers of x never became dependent")
        powers.append(J.multiply(x, cur))


def _peirce1_even(J, e):
    pd = peirce_of_idempotent(J, e)
    ev = Subspace.span([J.basis_vector(i) for i in range(J.m)], J.dim)
    return pd.space(1).intersect(ev)


def _trial_elements(space, count=4, seed=0):
    rng = random.Random(seed)
    out = list(space.basis)
    for _ in range(count):
        coeffs = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in space.basis]
        out.append(_lin(coeffs, space.basis, space.ambient_dim))
    return out


def idempotent_rank(J, e):
    """Number of primitive idempotents in e (degree of a generic element of P1(e)_0)."""
    space = _peirce1_even(J, e)
    best = 1
    for v in _trial_elements(space):
        coeffs, _ = minimal_polynomial(J, v, e)
        best = max(best, len(coeffs) - 1)
    return best


def _real_factor_count(coeffs):
    """Number of distinct irreducible real factors of a rational polynomial."""
    s = sympy.Symbol("s")
    poly = sympy.Poly(
        list(reversed([sympy.Rational(c.numerator, c.denominator) for c in coeffs])), s, domain="QQ"
    ).sqf_part()
    real = poly.count_roots()
    return real + (poly.degree() - real) // 2


def primitivity(J, e):
    """'yes', 'no' or 'unknown' (best effort, exact when dim P1(e)_0 <= 2)."""
    space = _peirce1_even(J, e)
    if space.dim == 1:
        return "yes"
    if space.dim == 2:
        other = next(v for v in space.basis if not Subspace.span([e], J.dim).contains(v))
        coeffs, _ = minimal_polynomial(J, other, e)
        # J' = span{e, v} = R[s]/(mu) splits iff mu has two coprime factors
        return "no" if _real_factor_count(coeffs) >= 2 else "yes"
    for v in _trial_elements(space):
        coeffs, _ = minimal_polynomial(J, v, e)
        if _real_factor_count(coeffs) >= 2:
            return "no"
    return "unknown"


def check_frame(J, idempotents, require_primitive=False):
    """Validate a (possibly coarse) Jordan frame; raise FrameError with a witness."""
    es = [tuple(e) for e in idempotents]
    if not es:
        raise FrameError("empty frame")
    for k, e in enumerate(es):
        if len(e) != J.dim:
            raise linalg.DimensionError("frame vector of wrong length")
        if not _is_even(J, e):
            raise FrameError("frame element is not even", (k,))
        if J.multiply(e, e) != e:
            raise FrameError("frame element is not idempotent", (k,))
    for a in range(len(es)):
        for b in range(a + 1, len(es)):
            if any(J.multiply(es[a], es[b])):
                raise FrameError("frame elements are not orthogonal", (a, b))
    unit = find_unit(J)
    total = _lin([1] * len(es), es, J.dim)
    if unit is None or total != tuple(unit):
        raise FrameError("frame does not sum to the unit", (total,))
    Ls = [J.left_mult(e) for e in es]
    for a in range(len(es)):
        for b in range(a + 1, len(es)):
            if not Ls[a].bracket(Ls[b]).is_zero():
                raise FrameError("[L_ei, L_ej] != 0", (a, b))
    prim = tuple(primitivity(J, e) for e in es)
    if require_primitive and any(p != "yes" for p in prim):
        k = next(i for i, p in enumerate(prim) if p != "yes")
        raise FrameError("frame element not certified primitive", (k,))
    return JordanFrame(tuple(es), prim)


@dataclass(frozen=True)
class FramePeirce:
    frame: JordanFrame
    blocks: dict  # (i, j) with i <= j -> Subspace

    def block(self, i, j):
        return self.blocks[(min(i, j), max(i, j))]

    def components(self, v):
        """Split v into its block components (dict (i, j) -> vector)."""
        keys = sorted(self.blocks)
        vecs, owner = [], []
        for k in keys:
            for b in self.blocks[k].basis:
                vecs.append(b)
                owner.append(k)
        coeffs = linalg.solve(linalg.transpose(vecs), tuple(v)) if vecs else ()
        if coeffs is None:
            raise AlgebraError("blocks do not span the algebra")
        dim = len(v)
        out = {k: tuple([ZERO] * dim) for k in keys}
        for c, b, k in zip(coeffs, vecs, owner):
            if c != 0:
                out[k] = tuple(x + c * y for x, y in zip(out[k], b))
        return out


def frame_peirce(J, frame):
    """P_ii = im P1(e_i); P_ij = im P_{1/2}(e_i) ∩ im P_{1/2}(e_j)."""
    if not isinstance(frame, JordanFrame):
        frame = check_frame(J, frame)
    pds = [peirce_of_idempotent(J, e) for e in frame.idempotents]
    r = len(pds)
    blocks = {}
    for i in range(r):
        blocks[(i, i)] = pds[i].space(1)
        for j in range(i + 1, r):
            blocks[(i, j)] = pds[i].space(HALF).intersect(pds[j].space(HALF))
    total = sum(b.dim for b in blocks.values())
    span = Subspace(J.dim, ())
    for b in blocks.values():
        span = span + b
    if total != J.dim or span.dim != J.dim:
        raise FrameError("Peirce blocks do not decompose the algebra", (total, span.dim))
    return FramePeirce(frame, blocks)


def check_frame_rules(J, fp):
    """Every multiplication clause for the blocks of a frame decomposition."""
    r = len(fp.frame)
    d = J.dim
    zero = Subspace(d, ())
    B = fp.block
    for i in range(r):
        bad = _products_within(J, B(i, i), B(i, i), B(i, i))
        if bad:
            return CheckResult(False, "P_ii subalgebra", bad)
        for j in range(r):
            if j == i:
                continue
            bad = _products_within(J, B(i, i), B(j, j), zero)
            if bad:
                return CheckResult(False, "{P_ii,P_jj} = 0", bad)
            bad = _products_within(J, B(i, i), B(i, j), B(i, j))
            if bad:
                return CheckResult(False, "{P_ii,P_ij} in P_ij", bad)
            bad = _products_within(J, B(i, j), B(i, j), B(i, i) + B(j, j))
            if bad:
                return CheckResult(False, "{P_ij,P_ij} in P_ii+P_jj", bad)
            for k in range(r):
                if k in (i, j):
                    continue
                bad = _products_within(J, B(i, i), B(j, k), zero)
                if bad:
                    return CheckResult(False, "{P_ii,P_jk} = 0", bad)
                bad = _products_within(J, B(i, j), B(j, k), B(i, k))
                if bad:
                    return CheckResult(False, "{P_ij,P_jk} in P_ik", bad)
                for l in range(r):
                    if l in (i, j, k):
                        continue
                    bad = _products_within(J, B(i, j), B(k, l), zero)
                    if bad:
                        return CheckResult(False, "{P_ij,P_kl} = 0", bad)
    return CheckResult(True, "frame_rules")


def beta_orthogonality_check(J, beta, decomposition):
    """β(P_λ, P_μ) = 0 for λ != μ, or β(P_ij, P_kl) = 0 unless {i,j} = {k,l}."""
    if isinstance(decomposition, PeirceDecomposition):
        spaces = list(decomposition.subspaces.values())
    else:
        spaces = list(decomposition.blocks.values())
    for a in range(len(spaces)):
        for b in range(len(spaces)):
            if a == b:
                continue
            for u in spaces[a].basis:
                for v in spaces[b].basis:
                    if beta(u, v) != 0:
                        return False
    return True


# ---------------------------------------------------------------------------
# spectral decomposition


@dataclass(frozen=True)
class SpectralData:
    element: tuple
    frame: JordanFrame
    lambdas: tuple
    multiplicities: tuple
    exact: bool = True

    def reconstruct(self):
        d = len(self.element)
        if self.exact:
            return _lin(self.lambdas, self.frame.idempotents, d)
        return tuple(
            sum(l * float(e[k]) for l, e in zip(self.lambdas, self.frame.idempotents)) for k in range(d)
        )


def _rational_roots(coeffs):
    s = sympy.Symbol("s")
    poly = sympy.Poly(
        list(reversed([sympy.Rational(c.numerator, c.denominator) for c in coeffs])), s, domain="QQ"
    )
    roots = []
    rest = []
    for fac, mult in poly.factor_list()[1]:
        if mult > 1:
            raise SpectralError("minimal polynomial has a repeated root (even part not positive?)")
        if fac.degree() == 1:
            a, b = fac.all_coeffs()
            r = -b / a
            roots.append(Fraction(int(r.p), int(r.q)))
        else:
            rest.append(fac)
    return roots, rest


def spectral(J, x, beta=None):
    """Coarse spectral decomposition x = Σ λ_i e_i with distinct λ_i."""
    x = tuple(x)
    if not _is_even(J, x):
        raise AlgebraError("spectral decomposition needs an even element")
    unit = find_unit(J)
    if unit is None:
        raise AlgebraError("algebra is not unital")
    coeffs, powers = minimal_polynomial(J, x, unit)
    deg = len(coeffs) - 1
    roots, rest = _rational_roots(coeffs)
    if not rest:
        roots.sort()
        idems = []
        for i, li in enumerate(roots):
            # Lagrange basis polynomial for root i, expanded in powers of x
            poly = [Fraction(1)]
            for j, lj in enumerate(roots):
                if j == i:
                    continue
                inv = 1 / (li - lj)
                nxt = [ZERO] * (len(poly) + 1)
                for k, c in enumerate(poly):
                    nxt[k + 1] += c * inv
                    nxt[k] -= c * lj * inv
                poly = nxt
            idems.append(_lin(poly, powers, J.dim))
        data_lams = tuple(roots)
        for e in idems:
            if J.multiply(e, e) != e:
                raise SpectralError("Lagrange idempotent is not idempotent")
        if _lin(data_lams, idems, J.dim) != x:
            raise SpectralError("x != Σ λ_i e_i (even part not positive?)")
        frame = JordanFrame(tuple(idems), tuple("unknown" for _ in idems))
        mults = tuple(idempotent_rank(J, e) for e in idems)
        return SpectralData(x, frame, data_lams, mults, True)
    return _numeric_spectral(J, x, coeffs, powers, deg)


def _numeric_spectral(J, x, coeffs, powers, deg):
    c = np.array([float(v) for v in reversed(coeffs)])
    r = np.roots(c)
    if np.any(np.abs(r.imag) > NUMERIC_TOL):
        raise SpectralError("minimal polynomial has non-real roots")
    lams = np.sort(r.real)
    if np.any(np.diff(lams) < NUMERIC_TOL):
        raise SpectralError("numeric roots are not separated")
    P = np.array([[float(v) for v in p] for p in powers]).T  # dim x deg
    idems = []
    for i, li in enumerate(lams):
        poly = np.array([1.0])
        for j, lj in enumerate(lams):
            if j != i:
                poly = np.convolve(poly, np.array([-lj, 1.0])) / (li - lj)
        idems.append(tuple(P @ poly))
    recon = sum(l * np.array(e) for l, e in zip(lams, idems))
    if np.max(np.abs(recon - np.array([float(v) for v in x]))) > 1e-7:
        raise SpectralError("numeric reconstruction failed")
    frame = JordanFrame(tuple(idems), tuple("unknown" for _ in idems))
    # multiplicities are only known when every root is simple in the rank count
    mults = tuple(1 for _ in idems) if deg == idempotent_rank(J, find_unit(J)) else None
    return SpectralData(x, frame, tuple(float(v) for v in lams), mults, False)


def spectral_signature(data):
    """(n_plus, n_zero, n_minus) counted with multiplicity."""
    if data.multiplicities is None:
        raise AmbiguityError("multiplicities of irrational eigenvalues are not determined")
    pos = zero = neg = 0
    for lam, mult in zip(data.lambdas, data.multiplicities):
        if not data.exact and abs(lam) < NUMERIC_TOL:
            raise AmbiguityError(f"λ = {lam!r} is within tolerance of zero")
        if lam > 0:
            pos += mult
        elif lam < 0:
            neg += mult
        else:
            zero += mult
    return pos, zero, neg


# ---------------------------------------------------------------------------
# classification


def even_part_positive(J):
    """True iff the even part J_0 is a formally real Jordan algebra.

    Decided by positive definiteness of the trace form tr(L_{ab}) of J_0.
    """
    m = J.m
    if m == 0:
        return True
    mats = []
    for k in range(m):
        mats.append(tuple(tuple(J._table.get((k, j), {}).get(i, ZERO) for j in range(m)) for i in range(m)))
    traces = [sum((M[i][i] for i in range(m)), ZERO) for M in mats]
    T = tuple(
        tuple(sum((c * traces[k] for k, c in J._table.get((i, j), {}).items() if k < m), ZERO) for j in range(m))
        for i in range(m)
    )
    if any(T[i][j] != T[j][i] for i in range(m) for j in range(m)):
        return False
    pos, _, _ = linalg.symmetric_signature(T)
    return pos == m


def classify(J, beta=None):
    """Semisimple / positive / Euclidean / pseudo-Euclidean / unital flags."""
    tau = canonical_form_tau(J, verify=False)
    trep = check_form(J, tau)
    semisimple = trep.associative and trep.nondegenerate
    tau0 = tau.block(range(J.m))
    positive = trep.associative and J.m > 0 and linalg.symmetric_signature(tau0)[0] == J.m
    unital = find_unit(J) is not None
    report = {
        "semisimple": semisimple,
        "positive": positive,
        "unital": unital,
        "jordan": check_super_jordan(J).ok,
        "euclidean": None,
        "pseudo_euclidean": None,
        "signature": None,
    }
    if beta is not None:
        rep = check_form(J, beta)
        report["pseudo_euclidean"] = rep.valid
        if rep.valid:
            try:
                r, s = signature(J, beta)
            except AlgebraError:
                report["pseudo_euclidean"] = False
                report["euclidean"] = False
            else:
                report["signature"] = (r, s)
                report["euclidean"] = s == 0
        else:
            report["euclidean"] = False
    if positive and not unital:
        raise AssertionError("a positive Jordan superalgebra must be unital")
    return report


# ---------------------------------------------------------------------------
# β-irreducible decomposition


@dataclass(frozen=True)
class Summand:
    ideal: Subspace
    form: BilinearForm
    certified: bool = False


def _closure_in(J, W, seeds):
    space = Subspace.span(list(seeds), J.dim)
    while True:
        new = [J.multiply(w, v) for v in space.basis for w in W.basis]
        new += [J.multiply(v, w) for v in space.basis for w in W.basis]
        grown = space + Subspace.span(new, J.dim)
        if grown.dim == space.dim:
            return space
        space = grown


def _restricted(beta, U):
    return BilinearForm(tuple(tuple(beta(u, v) for v in U.basis) for u in U.basis))


def _nondegenerate_on(beta, U):
    return U.dim > 0 and linalg.rank(_restricted(beta, U).matrix) == U.dim


def _orthogonal_in(J, beta, W, I):
    # v = Σ c_k w_k with β(v, u) = 0 for all u in I
    rows = [tuple(beta(w, u) for w in W.basis) for u in I.basis]
    ker = linalg.kernel(rows, W.dim)
    return Subspace.span([_lin(c, W.basis, J.dim) for c in ker.basis], J.dim)


def beta_irreducible_decomposition(J, beta):
    """Split J into pairwise β-orthogonal β-irreducible ideals."""
    rep = check_form(J, beta)
    if not rep.valid:
        raise AlgebraError(f"β must be even, supersymmetric, associative and nondegenerate: {rep.as_dict()}")
    out = []
    stack = [Subspace.full(J.dim)]
    while stack:
        W = stack.pop()
        best = None
        for seed in W.basis:
            I = _closure_in(J, W, [seed])
            if 0 < I.dim < W.dim and _nondegenerate_on(beta, I):
                if best is None or I.dim < best.dim:
                    best = I
        if best is None:
            out.append(Summand(W, _restricted(beta, W), certified=W.dim == 1))
            continue
        comp = _orthogonal_in(J, beta, W, best)
        stack.append(comp)
        stack.append(best)
    out.sort(key=lambda s: s.ideal.basis)
    return out

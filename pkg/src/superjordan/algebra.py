"""Superalgebras given by structure constants.

A superalgebra of dimension (m|n) is stored as a sparse structure tensor
``x_i x_j = sum_k c[i][j][k] x_k`` over a basis whose first ``m`` vectors are
even and last ``n`` odd.  Operators on the algebra are matrices whose column
``j`` is the image of ``x_j``.
"""

from __future__ import annotations

import json
import re
from math import gcd
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from pathlib import Path

import numpy as np

from . import linalg
from .linalg import ZERO, DimensionError, Subspace, as_scalar, format_scalar

__all__ = [
    "SuperBasis",
    "SuperAlgebra",
    "SuperOperator",
    "BilinearForm",
    "FormReport",
    "CheckResult",
    "AlgebraError",
    "supertrace",
    "check_commutative",
    "check_super_jordan",
    "check_kac_formula",
    "associator",
    "canonical_form_tau",
    "check_form",
    "signature",
    "annihilator",
    "find_unit",
    "verify_homomorphism",
    "direct_sum",
    "flat",
    "sharp",
    "dual_action",
    "subalgebra_on",
    "ideal_closure",
    "load_algebra_spec",
    "algebra_spec_dict",
]


class AlgebraError(ValueError):
    """Raised for inputs that violate a structural precondition."""


@dataclass(frozen=True)
class CheckResult:
    """Outcome of an exhaustive identity check.

    ``witness`` holds the first failing basis tuple (labels or vectors) and is
    ``None`` when the check passed.
    """

    ok: bool
    name: str = ""
    witness: tuple | None = None
    detail: str = ""

    def __bool__(self):
        return self.ok


# ---------------------------------------------------------------------------
# basis and vectors


@dataclass(frozen=True)
class SuperBasis:
    even_labels: tuple
    odd_labels: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "even_labels", tuple(self.even_labels))
        object.__setattr__(self, "odd_labels", tuple(self.odd_labels))
        labels = self.labels
        if len(set(labels)) != len(labels):
            raise AlgebraError(f"duplicate basis labels in {labels}")

    @property
    def m(self):
        return len(self.even_labels)

    @property
    def n(self):
        return len(self.odd_labels)

    @property
    def dim(self):
        return self.m + self.n

    @property
    def labels(self):
        return self.even_labels + self.odd_labels

    def parity(self, i):
        return 0 if i < self.m else 1

    def index(self, label):
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"unknown basis label {label!r}") from None


def _zero_vec(n):
    return (ZERO,) * n


def _add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def _scale(c, v):
    return tuple(c * a for a in v)


# ---------------------------------------------------------------------------
# operators


@dataclass(frozen=True)
class SuperOperator:
    """Homogeneous linear operator on an (m|n)-graded space."""

    matrix: tuple
    parity: int
    even_dim: int

    def __post_init__(self):
        M = tuple(tuple(r) for r in self.matrix)
        object.__setattr__(self, "matrix", M)
        n = len(M)
        if any(len(r) != n for r in M):
            raise DimensionError("operator matrix must be square")
        if self.parity not in (0, 1):
            raise AlgebraError(f"parity must be 0 or 1, got {self.parity!r}")
        m = self.even_dim
        for k, j in product(range(n), range(n)):
            if M[k][j] != 0 and ((k >= m) != (j >= m)) != bool(self.parity):
                raise AlgebraError(
                    f"entry ({k}, {j}) violates declared parity {self.parity}"
                )

    @classmethod
    def from_matrix(cls, matrix, even_dim):
        """Wrap a matrix, inferring its parity (zero counts as even)."""
        n = len(matrix)
        odd = any(
            matrix[k][j] != 0 for k in range(n) for j in range(n) if (k >= even_dim) != (j >= even_dim)
        )
        even = any(
            matrix[k][j] != 0 for k in range(n) for j in range(n) if (k >= even_dim) == (j >= even_dim)
        )
        if odd and even:
            raise AlgebraError("matrix is not homogeneous")
        return cls(matrix, 1 if odd else 0, even_dim)

    @classmethod
    def identity(cls, dim, even_dim):
        return cls(linalg.identity(dim), 0, even_dim)

    @property
    def dim(self):
        return len(self.matrix)

    def __call__(self, v):
        return linalg.matvec(self.matrix, v)

    def __matmul__(self, other):
        return SuperOperator(
            linalg.matmul(self.matrix, other.matrix), (self.parity + other.parity) % 2, self.even_dim
        )

    def __add__(self, other):
        if self.parity != other.parity and not (self.is_zero() or other.is_zero()):
            raise AlgebraError("sum of operators of different parity is not homogeneous")
        par = other.parity if self.is_zero() else self.parity
        M = tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.matrix, other.matrix))
        return SuperOperator(M, par, self.even_dim)

    def __neg__(self):
        return self.scaled(-1)

    def __sub__(self, other):
        return self + (-other)

    def scaled(self, c):
        return SuperOperator(
            tuple(tuple(c * a for a in r) for r in self.matrix), self.parity, self.even_dim
        )

    def bracket(self, other):
        """Super commutator [f, g] = fg - (-1)^{|f||g|} gf."""
        sign = -1 if self.parity * other.parity else 1
        fg = linalg.matmul(self.matrix, other.matrix)
        gf = linalg.matmul(other.matrix, self.matrix)
        M = tuple(tuple(a + sign * -b for a, b in zip(r, s)) for r, s in zip(fg, gf))
        return SuperOperator(M, (self.parity + other.parity) % 2, self.even_dim)

    def is_zero(self):
        return all(a == 0 for r in self.matrix for a in r)

    def flatten(self):
        return tuple(a for r in self.matrix for a in r)

    def supertrace(self):
        return supertrace(self)


def supertrace(op):
    """tr(l_00) - tr(l_11)."""
    M, m = op.matrix, op.even_dim
    return sum((M[i][i] for i in range(m)), ZERO) - sum((M[i][i] for i in range(m, len(M))), ZERO)


# ---------------------------------------------------------------------------
# the algebra


class SuperAlgebra:
    """Finite-dimensional superalgebra given by graded structure constants.

    ``table`` maps ``(i, j)`` to a dict ``{k: c_ijk}`` of nonzero constants.
    Grading violations are rejected at construction.
    """

    def __init__(self, basis, table, name=""):
        self.basis = basis
        self.name = name
        dim = basis.dim
        clean = {}
        for (i, j), out in table.items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise DimensionError(f"product index ({i}, {j}) out of range")
            row = {}
            for k, c in out.items():
                c = as_scalar(c)
                if c == 0:
                    continue
                if not 0 <= k < dim:
                    raise DimensionError(f"result index {k} out of range")
                if basis.parity(k) != (basis.parity(i) + basis.parity(j)) % 2:
                    labels = basis.labels
                    raise AlgebraError(
                        f"grading violated: {labels[i]}*{labels[j]} has a "
                        f"{labels[k]} component"
                    )
                row[k] = c
            if row:
                clean[(i, j)] = row
        self._table = clean
        self._lmats = None

    # -- construction helpers ------------------------------------------------

    @classmethod
    def from_products(cls, even_labels, odd_labels, products, name=""):
        """Build from ``{(left_label, right_label): {label: coeff}}``."""
        basis = SuperBasis(even_labels, odd_labels)
        table = {}
        for (a, b), res in products.items():
            i, j = basis.index(a), basis.index(b)
            table[(i, j)] = {basis.index(k): v for k, v in res.items()}
        return cls(basis, table, name)

    @classmethod
    def from_bilinear(cls, basis, mult, name=""):
        """Build from a function computing ``x_i x_j`` as a coordinate vector."""
        table = {}
        for i in range(basis.dim):
            for j in range(basis.dim):
                v = mult(i, j)
                table[(i, j)] = {k: c for k, c in enumerate(v) if c != 0}
        return cls(basis, table, name)

    # -- basics ----------------------------------------------------------------

    @property
    def dim(self):
        return self.basis.dim

    @property
    def m(self):
        return self.basis.m

    @property
    def n(self):
        return self.basis.n

    @property
    def labels(self):
        return self.basis.labels

    def parity(self, i):
        return self.basis.parity(i)

    def __repr__(self):
        return f"SuperAlgebra({self.name or '?'}, dim {self.m}|{self.n})"

    @property
    def structure_constants(self):
        """Dense tensor c[i][j][k]."""
        d = self.dim
        return tuple(
            tuple(self.basis_product(i, j) for j in range(d)) for i in range(d)
        )

    def nonzero_products(self):
        return dict(self._table)

    def basis_product(self, i, j):
        v = [ZERO] * self.dim
        for k, c in self._table.get((i, j), {}).items():
            v[k] = c
        return tuple(v)

    def basis_vector(self, i):
        if isinstance(i, str):
            i = self.basis.index(i)
        v = [ZERO] * self.dim
        v[i] = Fraction(1)
        return tuple(v)

    def zero(self):
        return _zero_vec(self.dim)

    def vector(self, coeffs):
        """Vector from ``{label: coeff}``."""
        v = [ZERO] * self.dim
        for lab, c in coeffs.items():
            v[self.basis.index(lab)] += as_scalar(c)
        return tuple(v)

    def element(self, text):
        """Parse ``"2e1+3e2"``, ``"1/2*x - y"`` and similar into a vector."""
        return self.vector(parse_linear_combination(text, self.labels))

    def format_vector(self, v):
        return format_linear_combination(v, self.labels)

    def _check_vec(self, v):
        if len(v) != self.dim:
            raise DimensionError(f"vector of length {len(v)} in algebra of dimension {self.dim}")

    def vector_parity(self, v):
        """0 or 1 for homogeneous vectors (zero counts as even), None if mixed."""
        self._check_vec(v)
        ev = any(v[i] != 0 for i in range(self.m))
        od = any(v[i] != 0 for i in range(self.m, self.dim))
        if ev and od:
            return None
        return 1 if od else 0

    def split_parity(self, v):
        m = self.m
        even = tuple(c if i < m else ZERO for i, c in enumerate(v))
        odd = tuple(ZERO if i < m else c for i, c in enumerate(v))
        return even, odd

    # -- multiplication --------------------------------------------------------

    def multiply(self, a, b):
        self._check_vec(a)
        self._check_vec(b)
        out = [ZERO] * self.dim
        a_nz = [(i, x) for i, x in enumerate(a) if x != 0]
        b_nz = [(j, y) for j, y in enumerate(b) if y != 0]
        tab = self._table
        for i, x in a_nz:
            for j, y in b_nz:
                row = tab.get((i, j))
                if row:
                    xy = x * y
                    for k, c in row.items():
                        out[k] += xy * c
        return tuple(out)

    def _basis_left_matrices(self):
        if self._lmats is None:
            d = self.dim
            mats = []
            for i in range(d):
                M = [[ZERO] * d for _ in range(d)]
                for j in range(d):
                    for k, c in self._table.get((i, j), {}).items():
                        M[k][j] = c
                mats.append(tuple(tuple(r) for r in M))
            self._lmats = tuple(mats)
        return self._lmats

    def left_mult(self, a):
        """L_a as a SuperOperator; ``a`` must be homogeneous."""
        par = self.vector_parity(a)
        if par is None:
            raise AlgebraError("left_mult needs a homogeneous element; split it first")
        d = self.dim
        mats = self._basis_left_matrices()
        M = [[ZERO] * d for _ in range(d)]
        for i, x in enumerate(a):
            if x != 0:
                Li = mats[i]
                for r in range(d):
                    row = Li[r]
                    Mr = M[r]
                    for c in range(d):
                        if row[c] != 0:
                            Mr[c] += x * row[c]
        return SuperOperator(tuple(tuple(r) for r in M), par, self.m)

    def right_mult(self, a):
        par = self.vector_parity(a)
        if par is None:
            raise AlgebraError("right_mult needs a homogeneous element")
        d = self.dim
        cols = [self.multiply(self.basis_vector(j), a) for j in range(d)]
        return SuperOperator(linalg.transpose(cols), par, self.m)

    def basis_left_mult(self, i):
        return SuperOperator(self._basis_left_matrices()[i], self.parity(i), self.m)

    def is_commutative(self):
        return check_commutative(self).ok


# ---------------------------------------------------------------------------
# parsing of linear combinations

_TERM_RE = re.compile(
    r"\s*([+-])?\s*(\d+(?:\s*/\s*\d+)?)?\s*\*?\s*([A-Za-z_][A-Za-z0-9_.']*)?\s*"
)


def parse_linear_combination(text, labels=None):
    """Parse ``"2e1 + 3/2*x - y"`` into ``{label: Fraction}``.

    A bare number term (no label) is rejected.  If ``labels`` is given,
    unknown labels raise KeyError.
    """
    s = text.strip()
    if not s:
        raise ValueError("empty linear combination")
    out = {}
    pos = 0
    first = True
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if m is None or m.end() == pos:
            raise ValueError(f"cannot parse {text!r} at position {pos}")
        sign, coeff, label = m.groups()
        if sign is None and not first:
            raise ValueError(f"missing '+' or '-' in {text!r} at position {pos}")
        if label is None:
            raise ValueError(f"term without a basis label in {text!r}")
        if labels is not None and label not in labels:
            raise KeyError(f"unknown basis label {label!r}")
        c = linalg.parse_scalar(coeff.replace(" ", "")) if coeff else Fraction(1)
        if sign == "-":
            c = -c
        out[label] = out.get(label, Fraction(0)) + c
        pos = m.end()
        first = False
    return out


def format_linear_combination(v, labels):
    parts = []
    for c, lab in zip(v, labels):
        if c == 0:
            continue
        if isinstance(c, (int, Fraction)):
            c = Fraction(c)
            neg = c < 0
            mag = -c if neg else c
            coef = "" if mag == 1 else format_scalar(mag) + "*"
            parts.append(("-" if neg else "+", coef + lab))
        else:
            parts.append(("+", f"({c})*{lab}"))
    if not parts:
        return "0"
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sgn, t in parts[1:]:
        out += f" {sgn} {t}"
    return out


# ---------------------------------------------------------------------------
# identities


def check_commutative(A):
    """ab = (-1)^{|a||b|} ba on all basis pairs."""
    for i in range(A.dim):
        for j in range(i, A.dim):
            sign = -1 if A.parity(i) * A.parity(j) else 1
            ab = A.basis_product(i, j)
            ba = A.basis_product(j, i)
            if any(x != sign * y for x, y in zip(ab, ba)):
                return CheckResult(False, "commutative", (A.labels[i], A.labels[j]))
    return CheckResult(True, "commutative")


def _sign(p):
    return -1 if p % 2 else 1


def check_super_jordan(A, fast=True):
    """Exhaustive super Jordan check.

    Order of the sweep: super-commutativity; then the power identity
    ``{a,{b,{a,a}}} = {{a,b},{a,a}}`` for even basis ``a`` (witness
    ``(a, b, {a,a})``); then the operator identity
    ``[L_a, L_{bc}] = [L_{ab}, L_c] - (-1)^{|a||b|} [L_b, L_{ac}]`` on all basis
    triples, evaluated on every basis vector.
    """
    comm = check_commutative(A)
    if not comm:
        return CheckResult(False, "super_jordan", comm.witness, "not supercommutative")
    d = A.dim
    e = A.basis_vector
    mul = A.multiply
    for i in range(A.m):
        a = e(i)
        aa = mul(a, a)
        for j in range(d):
            b = e(j)
            lhs = mul(a, mul(b, aa))
            rhs = mul(mul(a, b), aa)
            if lhs != rhs:
                return CheckResult(
                    False,
                    "super_jordan",
                    (a, b, aa),
                    f"{{{A.labels[i]},{{{A.labels[j]},a^2}}}} != {{{{{A.labels[i]},{A.labels[j]}}},a^2}}",
                )
    tensor = _integer_tensor(A) if fast else None
    if tensor is not None:
        bad = _jordan_operator_defect(*tensor)
        if bad is None:
            return CheckResult(True, "super_jordan")
        ia, ib, ic = bad
        return CheckResult(
            False, "super_jordan", (A.labels[ia], A.labels[ib], A.labels[ic]), "operator identity fails"
        )
    for ia, ib, ic in product(range(d), repeat=3):
        pa, pb, pc = A.parity(ia), A.parity(ib), A.parity(ic)
        a, b, c = e(ia), e(ib), e(ic)
        bc, ab, ac = mul(b, c), mul(a, b), mul(a, c)
        for iz in range(d):
            z = e(iz)
            # [L_a, L_bc] z
            t1 = _sub(mul(a, mul(bc, z)), _scale(_sign(pa * (pb + pc)), mul(bc, mul(a, z))))
            # [L_ab, L_c] z
            t2 = _sub(mul(ab, mul(c, z)), _scale(_sign((pa + pb) * pc), mul(c, mul(ab, z))))
            # [L_b, L_ac] z
            t3 = _sub(mul(b, mul(ac, z)), _scale(_sign(pb * (pa + pc)), mul(ac, mul(b, z))))
            rhs = _sub(t2, _scale(_sign(pa * pb), t3))
            if t1 != rhs:
                return CheckResult(
                    False,
                    "super_jordan",
                    (A.labels[ia], A.labels[ib], A.labels[ic]),
                    f"operator identity fails on {A.labels[iz]}",
                )
    return CheckResult(True, "super_jordan")


# ---------------------------------------------------------------------------
# exact integer fast path for the cubic identities
#
# Both operator identities are homogeneous of degree 3 in the structure
# constants, so they hold for c iff they hold for D*c with D a common
# denominator.  The scaled tensor is integral and numpy evaluates it exactly.


def _integer_tensor(A):
    d = A.dim
    vals = [c for row in A._table.values() for c in row.values()]
    if not all(isinstance(c, Fraction) for c in vals):
        return None
    den = 1
    for c in vals:
        den = den * c.denominator // gcd(den, c.denominator)
    big = max((abs(c) * den for c in vals), default=0)
    # each entry of the identity sums at most 6 d^2 products of three constants
    dtype = np.int64 if 6 * d * d * int(big) ** 3 < 2**62 else object
    C = np.zeros((d, d, d), dtype=dtype)
    for (i, j), row in A._table.items():
        for k, c in row.items():
            C[i, j, k] = int(c * den)
    par = np.array([A.parity(i) for i in range(d)], dtype=np.int64)
    return C, par


def _sign_array(p):
    return 1 - 2 * (p % 2)


def _first_bad(defect):
    """Lexicographically first (a, b, c) with a nonzero defect block."""
    nz = np.argwhere(defect.reshape(defect.shape[0], defect.shape[1], defect.shape[2], -1).any(axis=3))
    if len(nz) == 0:
        return None
    return tuple(int(i) for i in nz[0])


def _jordan_operator_defect(C, par):
    d = C.shape[0]
    if d == 0:
        return None
    L = C.transpose(0, 2, 1)  # L[a][k][j] = c[a][j][k]
    LL = np.einsum("bck,kij->bcij", C, L)  # L_{x_b x_c} (scaled)
    pa = par[:, None, None]
    pb = par[None, :, None]
    pc = par[None, None, :]
    # [L_a, L_bc]
    s1 = _sign_array(pa * (pb + pc))
    t1 = np.einsum("aij,bcjk->abcik", L, LL) - s1[..., None, None] * np.einsum("bcij,ajk->abcik", LL, L)
    # [L_ab, L_c]
    s2 = _sign_array((pa + pb) * pc)
    t2 = np.einsum("abij,cjk->abcik", LL, L) - s2[..., None, None] * np.einsum("cij,abjk->abcik", L, LL)
    # [L_b, L_ac]
    s3 = _sign_array(pb * (pa + pc))
    t3 = np.einsum("bij,acjk->abcik", L, LL) - s3[..., None, None] * np.einsum("acij,bjk->abcik", LL, L)
    s4 = _sign_array(pa * pb) * np.ones((1, 1, d), dtype=np.int64)
    defect = t1 - t2 + s4[..., None, None] * t3
    return _first_bad(defect)


def _kac_defect(C, par):
    d = C.shape[0]
    if d == 0:
        return None
    L = C.transpose(0, 2, 1)
    pa = par[:, None, None]
    pb = par[None, :, None]
    pc = par[None, None, :]
    # [L_a, L_b]
    sab = _sign_array(par[:, None] * par[None, :])
    LaLb = np.einsum("aij,bjk->abik", L, L) - sab[..., None, None] * np.einsum("bij,ajk->abik", L, L)
    lhs = np.einsum("abij,cjk->abcik", LaLb, L) - _sign_array((pa + pb) * pc)[..., None, None] * np.einsum(
        "cij,abjk->abcik", L, LaLb
    )
    # associator [a, c, b] = a(cb) - (ac)b, as a tensor indexed (a, c, b, k)
    cb = C  # C[c, b, k]
    a_cb = np.einsum("cbk,akl->acbl", cb, C)
    ac_b = np.einsum("ack,kbl->acbl", C, C)
    assoc = a_cb - ac_b
    L_assoc = np.einsum("acbk,kij->acbij", assoc, L)
    rhs = _sign_array(pb * pc)[..., None, None] * L_assoc.transpose(0, 2, 1, 3, 4)
    return _first_bad(lhs - rhs)


def _sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def associator(A, a, b, c):
    """[a, b, c] = {a,{b,c}} - {{a,b},c}."""
    return _sub(A.multiply(a, A.multiply(b, c)), A.multiply(A.multiply(a, b), c))


def check_kac_formula(A, fast=True):
    """[[L_a, L_b], L_c] = (-1)^{|b||c|} L_{[a,c,b]} on all basis triples."""
    tensor = _integer_tensor(A) if fast else None
    if tensor is not None:
        bad = _kac_defect(*tensor)
        if bad is None:
            return CheckResult(True, "kac_formula")
        return CheckResult(False, "kac_formula", tuple(A.labels[i] for i in bad))
    d = A.dim
    e = A.basis_vector
    mul = A.multiply
    for ia, ib, ic in product(range(d), repeat=3):
        pa, pb, pc = A.parity(ia), A.parity(ib), A.parity(ic)
        a, b, c = e(ia), e(ib), e(ic)
        acb = associator(A, a, c, b)
        s = _sign(pb * pc)
        for iz in range(d):
            z = e(iz)

            def lab(w, a=a, b=b):
                return _sub(mul(a, mul(b, w)), _scale(_sign(pa * pb), mul(b, mul(a, w))))

            lhs = _sub(lab(mul(c, z)), _scale(_sign((pa + pb) * pc), mul(c, lab(z))))
            rhs = _scale(s, mul(acb, z))
            if lhs != rhs:
                return CheckResult(
                    False, "kac_formula", (A.labels[ia], A.labels[ib], A.labels[ic])
                )
    return CheckResult(True, "kac_formula")


# ---------------------------------------------------------------------------
# bilinear forms


@dataclass
class BilinearForm:
    """β given by its Gram matrix B[i][j] = β(x_i, x_j).

    ``flags`` caches results of :func:`check_form`; a key is only present once
    the corresponding check has run.
    """

    matrix: tuple
    flags: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        self.matrix = tuple(tuple(as_scalar(x) for x in r) for r in self.matrix)
        n = len(self.matrix)
        if any(len(r) != n for r in self.matrix):
            raise DimensionError("form matrix must be square")

    @classmethod
    def from_values(cls, A, values):
        """From ``{(label_a, label_b): value}``; unlisted entries are zero."""
        d = A.dim
        B = [[ZERO] * d for _ in range(d)]
        for (a, b), v in values.items():
            B[A.basis.index(a)][A.basis.index(b)] = as_scalar(v)
        return cls(tuple(tuple(r) for r in B))

    @property
    def dim(self):
        return len(self.matrix)

    def __call__(self, u, v):
        B = self.matrix
        return sum(
            (u[i] * B[i][j] * v[j] for i in range(len(u)) if u[i] != 0 for j in range(len(v)) if v[j] != 0 and B[i][j] != 0),
            ZERO,
        )

    def is_zero(self):
        return all(x == 0 for r in self.matrix for x in r)

    def block(self, indices):
        return tuple(tuple(self.matrix[i][j] for j in indices) for i in indices)


@dataclass(frozen=True)
class FormReport:
    even: bool
    supersymmetric: bool
    associative: bool
    nondegenerate: bool
    witnesses: dict = field(default_factory=dict, compare=False)

    @property
    def valid(self):
        return self.even and self.supersymmetric and self.associative and self.nondegenerate

    def as_dict(self):
        return {
            "even": self.even,
            "supersymmetric": self.supersymmetric,
            "associative": self.associative,
            "nondegenerate": self.nondegenerate,
        }


def canonical_form_tau(A, verify=True):
    """τ(x_i, x_j) = str(L_{x_i x_j}) for a commutative superalgebra."""
    comm = check_commutative(A)
    if not comm:
        raise AlgebraError(f"τ is defined for commutative algebras; witness {comm.witness}")
    d = A.dim
    mats = A._basis_left_matrices()
    strs = [supertrace(SuperOperator(mats[k], A.parity(k), A.m)) for k in range(d)]
    T = tuple(
        tuple(sum((c * strs[k] for k, c in A._table.get((i, j), {}).items()), ZERO) for j in range(d))
        for i in range(d)
    )
    tau = BilinearForm(T)
    if verify and check_super_jordan(A):
        rep = check_form(A, tau)
        if not rep.associative:
            raise AssertionError(
                f"τ of a Jordan superalgebra must be associative; witness {rep.witnesses['associative']}"
            )
    return tau


def check_form(A, beta):
    """Evenness, supersymmetry, associativity and nondegeneracy of β."""
    d = A.dim
    if beta.dim != d:
        raise DimensionError("form and algebra dimensions differ")
    B = beta.matrix
    wit = {}
    even = True
    for i in range(d):
        for j in range(d):
            if A.parity(i) != A.parity(j) and B[i][j] != 0:
                even = False
                wit["even"] = (A.labels[i], A.labels[j])
                break
        if not even:
            break
    sym = True
    for i in range(d):
        for j in range(i, d):
            if B[i][j] != _sign(A.parity(i) * A.parity(j)) * B[j][i]:
                sym = False
                wit["supersymmetric"] = (A.labels[i], A.labels[j])
                break
        if not sym:
            break
    assoc = True
    e = A.basis_vector
    for i, j, k in product(range(d), repeat=3):
        a, b, c = e(i), e(j), e(k)
        if beta(A.multiply(a, b), c) != beta(a, A.multiply(b, c)):
            assoc = False
            wit["associative"] = (A.labels[i], A.labels[j], A.labels[k])
            break
    nondeg = d == 0 or linalg.rank(B) == d
    rep = FormReport(even, sym, assoc, nondeg, wit)
    beta.flags.update(rep.as_dict())
    return rep


def signature(A, beta):
    """(r, s): inertia of the even block of a valid β."""
    rep = check_form(A, beta)
    if not rep.valid:
        bad = [k for k, v in rep.as_dict().items() if not v]
        raise AlgebraError(f"β is not a valid pseudo-Euclidean form (fails: {', '.join(bad)})")
    if A.n % 2:
        raise AlgebraError("a nondegenerate even form needs an even odd dimension")
    odd = list(range(A.m, A.dim))
    B1 = beta.block(odd)
    if any(B1[i][j] != -B1[j][i] for i in range(len(odd)) for j in range(len(odd))):
        raise AlgebraError("odd block of β is not antisymmetric")
    if odd and linalg.rank(B1) != len(odd):
        raise AlgebraError("odd block of β is degenerate")
    r, s, z = linalg.symmetric_signature(beta.block(range(A.m)))
    if z:
        raise AlgebraError("even block of β is degenerate")
    return r, s


# ---------------------------------------------------------------------------
# derived subspaces


def annihilator(A):
    """{a : ab = ba = 0 for all b}, as a Subspace."""
    d = A.dim
    # column i of the stacked matrix is (L_{x_i}, R_{x_i}) flattened
    rows = []
    for j in range(d):
        for k in range(d):
            rows.append(tuple(A._table.get((i, j), {}).get(k, ZERO) for i in range(d)))
            rows.append(tuple(A._table.get((j, i), {}).get(k, ZERO) for i in range(d)))
    return linalg.kernel(rows, d)


def find_unit(A):
    """Two-sided unit element, or None."""
    d = A.dim
    rows, rhs = [], []
    for i in range(d):
        for k in range(d):
            rows.append(tuple(A._table.get((u, i), {}).get(k, ZERO) for u in range(d)))
            rhs.append(Fraction(1) if k == i else ZERO)
            rows.append(tuple(A._table.get((i, u), {}).get(k, ZERO) for u in range(d)))
            rhs.append(Fraction(1) if k == i else ZERO)
    if d == 0:
        return None
    return linalg.solve(rows, rhs)


def verify_homomorphism(phi, A, B, require_iso=False):
    """Check that the matrix ``phi`` (columns = images of A's basis) is an even
    algebra homomorphism A -> B; with ``require_iso`` also check invertibility."""
    phi = tuple(tuple(as_scalar(x) for x in r) for r in phi)
    if len(phi) != B.dim or any(len(r) != A.dim for r in phi):
        raise DimensionError(f"φ must be {B.dim}x{A.dim}")
    for k in range(B.dim):
        for i in range(A.dim):
            if phi[k][i] != 0 and B.parity(k) != A.parity(i):
                return CheckResult(False, "homomorphism", (A.labels[i],), "φ is not even")
    imgs = [tuple(phi[k][i] for k in range(B.dim)) for i in range(A.dim)]
    for i in range(A.dim):
        for j in range(A.dim):
            lhs = linalg.matvec(phi, A.basis_product(i, j))
            rhs = B.multiply(imgs[i], imgs[j])
            if lhs != rhs:
                return CheckResult(False, "homomorphism", (A.labels[i], A.labels[j]))
    if require_iso:
        if A.dim != B.dim or (A.dim and linalg.rank(phi) != A.dim):
            return CheckResult(False, "isomorphism", None, "φ is not invertible")
    return CheckResult(True, "isomorphism" if require_iso else "homomorphism")


def direct_sum(*summands, name=""):
    """Direct sum of ``(algebra, form_or_None)`` pairs.

    Even sectors are concatenated, then odd sectors.  Labels get a ``_k``
    suffix (k = 1-based summand index) whenever any label would clash.
    Returns ``(algebra, form)``; form is None unless every summand has one.
    """
    algs = [s[0] for s in summands]
    forms = [s[1] for s in summands]
    all_labels = [lab for A in algs for lab in A.labels]
    clash = len(set(all_labels)) != len(all_labels)

    def relabel(lab, k):
        return f"{lab}_{k + 1}" if clash else lab

    even = [relabel(lab, k) for k, A in enumerate(algs) for lab in A.basis.even_labels]
    odd = [relabel(lab, k) for k, A in enumerate(algs) for lab in A.basis.odd_labels]
    basis = SuperBasis(even, odd)
    # old index -> new index per summand
    maps = []
    eo, oo = 0, len(even)
    for A in algs:
        mp = {}
        for i in range(A.m):
            mp[i] = eo + i
        for i in range(A.n):
            mp[A.m + i] = oo + i
        eo += A.m
        oo += A.n
        maps.append(mp)
    table = {}
    for A, mp in zip(algs, maps):
        for (i, j), row in A._table.items():
            table[(mp[i], mp[j])] = {mp[k]: c for k, c in row.items()}
    S = SuperAlgebra(basis, table, name or " ⊕ ".join(A.name or "?" for A in algs))
    form = None
    if all(f is not None for f in forms):
        d = basis.dim
        Bm = [[ZERO] * d for _ in range(d)]
        for f, mp in zip(forms, maps):
            for i, r in enumerate(f.matrix):
                for j, x in enumerate(r):
                    Bm[mp[i]][mp[j]] = x
        form = BilinearForm(tuple(tuple(r) for r in Bm))
    return S, form


def subalgebra_on(A, subspace, name="", beta=None):
    """Restrict A to a graded subspace closed under multiplication.

    The subspace's echelon basis (homogeneous, evens first) becomes the new
    basis.  Returns ``(algebra, restricted_form_or_None)``.
    """
    vecs = list(subspace.basis)
    pars = [A.vector_parity(v) for v in vecs]
    if any(p is None for p in pars):
        raise AlgebraError("subspace is not graded")
    order = [i for i, p in enumerate(pars) if p == 0] + [i for i, p in enumerate(pars) if p == 1]
    vecs = [vecs[i] for i in order]
    m = sum(1 for p in pars if p == 0)
    lab_of = {}
    for v in vecs:
        nz = [i for i, c in enumerate(v) if c != 0]
        lab_of[v] = A.labels[nz[0]] if len(nz) == 1 and v[nz[0]] == 1 else None
    labels = [lab_of[v] or f"v{k + 1}" for k, v in enumerate(vecs)]
    if len(set(labels)) != len(labels):
        labels = [f"v{k + 1}" for k in range(len(vecs))]
    basis = SuperBasis(labels[:m], labels[m:])
    cols = linalg.transpose(vecs)
    table = {}
    for i, u in enumerate(vecs):
        for j, w in enumerate(vecs):
            prod = A.multiply(u, w)
            coords = linalg.solve(cols, prod)
            if coords is None:
                raise AlgebraError("subspace is not closed under multiplication")
            table[(i, j)] = {k: c for k, c in enumerate(coords) if c != 0}
    sub = SuperAlgebra(basis, table, name)
    form = None
    if beta is not None:
        form = BilinearForm(tuple(tuple(beta(u, w) for w in vecs) for u in vecs))
    return sub, form, tuple(vecs)


def ideal_closure(A, seeds):
    """Smallest two-sided ideal containing ``seeds``."""
    space = Subspace.span(list(seeds), A.dim)
    frontier = list(space.basis)
    e = [A.basis_vector(i) for i in range(A.dim)]
    while frontier:
        new = []
        for v in frontier:
            for b in e:
                new.append(A.multiply(b, v))
                new.append(A.multiply(v, b))
        grown = space + Subspace.span(new, A.dim)
        if grown.dim == space.dim:
            break
        frontier = list(grown.basis)
        space = grown
    return space


# ---------------------------------------------------------------------------
# flat, sharp and the dual action


def _require_nondegenerate(beta):
    if beta.dim and linalg.rank(beta.matrix) != beta.dim:
        raise AlgebraError("β is degenerate")


def flat(beta, x):
    """Coordinates of x♭ = β(x, ·) in the dual basis."""
    _require_nondegenerate(beta)
    B = beta.matrix
    return tuple(
        sum((x[i] * B[i][j] for i in range(len(x)) if x[i] != 0), ZERO) for j in range(len(B))
    )


def sharp(beta, xi):
    """Inverse of :func:`flat`."""
    _require_nondegenerate(beta)
    sol = linalg.solve(linalg.transpose(beta.matrix), tuple(xi))
    if sol is None:
        raise AlgebraError("β is degenerate")
    return sol


def dual_action(A, beta, x):
    """L_x^* on dual coordinates, fixed by <L_x^* ξ, y> = ξ(L_x y)."""
    _require_nondegenerate(beta)
    L = A.left_mult(x)
    return SuperOperator(linalg.transpose(L.matrix), L.parity, A.m)


# ---------------------------------------------------------------------------
# JSON algebra files


def load_algebra_spec(source, name=""):
    """Read the algebra-spec JSON (path, JSON text or already-parsed dict).

    Returns ``(algebra, forms)`` with ``forms`` a dict name -> BilinearForm.
    Unlisted products and form entries are zero; nothing is symmetrized.
    """
    if isinstance(source, dict):
        data = source
    else:
        p = Path(source)
        if p.exists():
            data = json.loads(p.read_text())
            name = name or p.stem
        else:
            data = json.loads(source)
    try:
        even = list(data["even_labels"])
        odd = list(data.get("odd_labels", []))
        products = {}
        for entry in data.get("products", []):
            key = (entry["left"], entry["right"])
            if key in products:
                raise AlgebraError(f"product {key} listed twice")
            products[key] = {lab: as_scalar(v) for lab, v in entry["result"].items()}
    except (KeyError, TypeError) as exc:
        raise AlgebraError(f"malformed algebra spec: {exc}") from exc
    A = SuperAlgebra.from_products(even, odd, products, name=data.get("name", name))
    forms = {}
    for fname, entries in data.get("forms", {}).items():
        vals = {}
        for ent in entries:
            vals[(ent["a"], ent["b"])] = ent["value"]
        forms[fname] = BilinearForm.from_values(A, vals)
    return A, forms


def algebra_spec_dict(A, forms=None):
    """Inverse of :func:`load_algebra_spec` (every nonzero product listed)."""
    labs = A.labels
    products = []
    for (i, j) in sorted(A._table):
        row = A._table[(i, j)]
        products.append(
            {
                "left": labs[i],
                "right": labs[j],
                "result": {labs[k]: format_scalar(c) for k, c in sorted(row.items())},
            }
        )
    out = {
        "name": A.name,
        "even_labels": list(A.basis.even_labels),
        "odd_labels": list(A.basis.odd_labels),
        "products": products,
    }
    if forms:
        out["forms"] = {
            fname: [
                {"a": labs[i], "b": labs[j], "value": format_scalar(x)}
                for i, r in enumerate(f.matrix)
                for j, x in enumerate(r)
                if x != 0
            ]
            for fname, f in forms.items()
        }
    return out

"""Builtin Jordan superalgebras with their invariant forms.

Matrix families (gl+, Josp, UJosp) are built from explicit matrix bases: the
Jordan product of two basis matrices is computed and re-expanded in the basis.
Complex matrices are stored realified, as pairs (real part, imaginary part).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .algebra import (
    AlgebraError,
    BilinearForm,
    SuperAlgebra,
    SuperBasis,
    check_form,
    direct_sum,
)
from .linalg import ZERO, as_scalar, format_scalar

__all__ = [
    "CatalogEntry",
    "make_gl_plus",
    "make_josp",
    "make_ujosp",
    "make_spin",
    "make_dt",
    "make_k3",
    "make_dns",
    "make_st_rd",
    "from_name",
    "catalog_names",
    "sweep_entries",
    "josp_involution",
    "ujosp_involution",
    "change_basis",
]

HALF = Fraction(1, 2)
ONE = Fraction(1)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    parameters: dict
    algebra: SuperAlgebra
    beta: BilinearForm | None
    notes: str = ""
    frame: tuple = ()
    jordan: bool = True
    matrices: tuple = field(default=(), repr=False)

    @property
    def frame_vectors(self):
        return tuple(self.algebra.element(f) for f in self.frame)


# ---------------------------------------------------------------------------
# sparse (possibly complex) matrices: dict (row, col) -> (re, im)


def _unit(r, c, w=(ONE, ZERO)):
    return {(r, c): w}


def _madd(*terms):
    out = {}
    for coef, M in terms:
        for key, (a, b) in M.items():
            ra, rb = out.get(key, (ZERO, ZERO))
            out[key] = (ra + coef * a, rb + coef * b)
    return {k: v for k, v in out.items() if v != (0, 0)}


def _mmul(X, Y):
    out = {}
    by_row = {}
    for (r, c), v in Y.items():
        by_row.setdefault(r, []).append((c, v))
    for (i, k), (a, b) in X.items():
        for j, (c, d) in by_row.get(k, ()):
            ra, rb = out.get((i, j), (ZERO, ZERO))
            out[(i, j)] = (ra + a * c - b * d, rb + a * d + b * c)
    return {k: v for k, v in out.items() if v != (0, 0)}


def _mparity(X, even_size):
    pars = {(r < even_size) != (c < even_size) for (r, c) in X}
    if len(pars) > 1:
        raise AlgebraError("basis matrix is not homogeneous")
    return int(pars.pop()) if pars else 0


def _supertrace_re(X, even_size):
    return sum(
        ((v[0] if r < even_size else -v[0]) for (r, c), v in X.items() if r == c), ZERO
    )


def _jordan(X, Y, px, py):
    sign = -1 if px * py else 1
    return _madd((HALF, _mmul(X, Y)), (HALF * sign, _mmul(Y, X)))


def _matrix_algebra(mats, labels, even_size, name, odd_scale2=False):
    """Jordan superalgebra on span(mats) with β(a, b) = Re str(ab).

    With ``odd_scale2`` every odd basis matrix is implicitly multiplied by
    sqrt(2); the resulting structure constants stay rational because the
    factor s_i s_j / s_k is 1 or 2.
    """
    pars = [_mparity(X, even_size) for X in mats]
    order = [i for i, p in enumerate(pars) if p == 0] + [i for i, p in enumerate(pars) if p == 1]
    mats = [mats[i] for i in order]
    labels = [labels[i] for i in order]
    pars = [pars[i] for i in order]
    m = pars.count(0)
    keys = sorted({(r, c, part) for X in mats for (r, c) in X for part in (0, 1)})
    pos = {k: i for i, k in enumerate(keys)}

    def flat(X):
        v = [ZERO] * len(keys)
        for (r, c), (a, b) in X.items():
            if (r, c, 0) not in pos:
                raise AlgebraError("product leaves the span of the basis")
            v[pos[(r, c, 0)]] = a
            v[pos[(r, c, 1)]] = b
        return tuple(v)

    Bcols = [flat(X) for X in mats]
    G = tuple(tuple(sum((a * b for a, b in zip(u, w)), ZERO) for w in Bcols) for u in Bcols)
    Ginv = linalg.inverse(G)
    # left inverse P = G^{-1} B^T
    P = linalg.matmul(Ginv, tuple(Bcols))

    def coords(X):
        v = flat(X)
        c = linalg.matvec(P, v)
        back = tuple(sum((ci * col[k] for ci, col in zip(c, Bcols) if ci != 0), ZERO) for k in range(len(v)))
        if back != v:
            raise AlgebraError("product leaves the span of the basis")
        return c

    def scale(i, j, k):
        if not odd_scale2:
            return ONE
        return Fraction(2) if (pars[i] + pars[j] - pars[k]) == 2 else ONE

    d = len(mats)
    table = {}
    for i in range(d):
        for j in range(d):
            prod = _jordan(mats[i], mats[j], pars[i], pars[j])
            if not prod:
                continue
            c = coords(prod)
            table[(i, j)] = {k: ck * scale(i, j, k) for k, ck in enumerate(c) if ck != 0}
    basis = SuperBasis(labels[:m], labels[m:])
    A = SuperAlgebra(basis, table, name)
    B = []
    for i in range(d):
        row = []
        for j in range(d):
            val = _supertrace_re(_mmul(mats[i], mats[j]), even_size)
            if odd_scale2 and pars[i] and pars[j]:
                val *= 2
            row.append(val)
        B.append(tuple(row))
    return A, BilinearForm(tuple(B)), tuple(mats)


# ---------------------------------------------------------------------------
# gl(m|n)+


def make_gl_plus(m, n):
    """gl(m|n) with {a,b} = (ab + (-1)^{|a||b|} ba)/2 and β = str(ab).

    Odd matrix units carry a factor sqrt(2), folded into the constants.
    """
    if m < 0 or n < 0:
        raise ValueError("sizes must be nonnegative")
    N = m + n
    mats, labels = [], []
    for r in range(N):
        for c in range(N):
            mats.append(_unit(r, c))
            labels.append(f"E{r + 1}_{c + 1}")
    if (m, n) == (1, 1):
        labels = ["e1", "x", "y", "e2"]
    name = f"gl+({m}|{n})"
    A, beta, mats = _matrix_algebra(mats, labels, m, name, odd_scale2=True)
    frame = tuple(A.labels[i] for i in range(A.m) if _is_diag_unit(mats[i]))
    return CatalogEntry(
        name,
        {"m": m, "n": n},
        A,
        beta,
        "matrix units; odd units scaled by sqrt(2)",
        frame=frame,
        matrices=mats,
    )


def _is_diag_unit(X):
    return len(X) == 1 and next(iter(X))[0] == next(iter(X))[1]


# ---------------------------------------------------------------------------
# Josp and UJosp


def josp_involution(X, m, n, conjugate=False):
    """The superinvolution on gl(m|2n) whose fixed points form Josp (UJosp
    when ``conjugate``): X* = D [[a^t, -c^t], [b^t, d^t]] D^{-1} with
    D = diag(I, U), U = [[0, -I], [I, 0]]."""
    T = {}
    for (r, c), (a, b) in X.items():
        sign = -ONE if (r >= m and c < m) else ONE
        T[(c, r)] = (sign * a, sign * (-b if conjugate else b))
    D, Dinv = {}, {}
    for i in range(m):
        D[(i, i)] = Dinv[(i, i)] = (ONE, ZERO)
    for p in range(n):
        D[(m + p, m + n + p)] = (-ONE, ZERO)
        D[(m + n + p, m + p)] = (ONE, ZERO)
        Dinv[(m + p, m + n + p)] = (ONE, ZERO)
        Dinv[(m + n + p, m + p)] = (-ONE, ZERO)
    return _mmul(_mmul(D, T), Dinv)


def ujosp_involution(X, m, n):
    return josp_involution(X, m, n, conjugate=True)


def _josp_basis(m, n, complex_=False):
    """Explicit basis of the fixed points of the (conjugate) superinvolution."""
    I = (ZERO, ONE)
    mats, labels = [], []

    def add(M, lab):
        mats.append(M)
        labels.append(lab)

    for i in range(m):
        add(_unit(i, i), f"A{i + 1}_{i + 1}")
    for i in range(m):
        for j in range(i + 1, m):
            add(_madd((ONE, _unit(i, j)), (ONE, _unit(j, i))), f"A{i + 1}_{j + 1}")
            if complex_:
                add(_madd((ONE, _unit(i, j, (ZERO, -ONE))), (ONE, _unit(j, i, I))), f"A{i + 1}_{j + 1}i")
    s, t = m, m + n  # row offsets of the two halves of the odd-index block
    for p in range(n):
        for q in range(n):
            add(_madd((ONE, _unit(s + p, s + q)), (ONE, _unit(t + q, t + p))), f"D{p + 1}_{q + 1}")
            if complex_:
                add(
                    _madd((ONE, _unit(s + p, s + q, I)), (ONE, _unit(t + q, t + p, (ZERO, -ONE)))),
                    f"D{p + 1}_{q + 1}i",
                )
    for off_r, off_c, tag in ((s, t, "P"), (t, s, "Q")):
        for p in range(n):
            if complex_:
                add(_unit(off_r + p, off_c + p, I), f"{tag}{p + 1}_{p + 1}i")
            for q in range(p + 1, n):
                add(
                    _madd((ONE, _unit(off_r + p, off_c + q)), (-ONE, _unit(off_r + q, off_c + p))),
                    f"{tag}{p + 1}_{q + 1}",
                )
                if complex_:
                    add(
                        _madd((ONE, _unit(off_r + p, off_c + q, I)), (ONE, _unit(off_r + q, off_c + p, I))),
                        f"{tag}{p + 1}_{q + 1}i",
                    )
    for i in range(m):
        for p in range(n):
            add(_madd((ONE, _unit(i, s + p)), (ONE, _unit(t + p, i))), f"B{i + 1}_{p + 1}")
            add(_madd((-ONE, _unit(i, t + p)), (ONE, _unit(s + p, i))), f"C{i + 1}_{p + 1}")
            if complex_:
                add(_madd((ONE, _unit(i, s + p, I)), (ONE, _unit(t + p, i, (ZERO, -ONE)))), f"B{i + 1}_{p + 1}i")
                add(_madd((-ONE, _unit(i, t + p, I)), (ONE, _unit(s + p, i, (ZERO, -ONE)))), f"C{i + 1}_{p + 1}i")
    return mats, labels


def _josp_frame(A, m, n):
    return tuple(f"A{i + 1}_{i + 1}" for i in range(m)) + tuple(f"D{p + 1}_{p + 1}" for p in range(n))


def make_josp(m, n):
    """Josp(m|2n): fixed points of the orthosymplectic superinvolution."""
    if m < 0 or n < 0:
        raise ValueError("sizes must be nonnegative")
    mats, labels = _josp_basis(m, n)
    rename = {}
    if (m, n) == (1, 1):
        rename = {"A1_1": "e1", "D1_1": "e2", "B1_1": "x", "C1_1": "y"}
        labels = [rename[lab] for lab in labels]
    A, beta, mats = _matrix_algebra(mats, labels, m, f"josp({m}|{2 * n})")
    frame = tuple(rename.get(lab, lab) for lab in _josp_frame(A, m, n))
    return CatalogEntry(
        f"josp({m}|{2 * n})", {"m": m, "n": n}, A, beta, "fixed points of the orthosymplectic superinvolution",
        frame=frame, matrices=mats,
    )


def make_ujosp(m, n):
    """UJosp(m, 2n): the conjugate-transpose version, realified.

    β is Re str(ab), chosen by analogy with Josp.
    """
    if m < 0 or n < 0:
        raise ValueError("sizes must be nonnegative")
    mats, labels = _josp_basis(m, n, complex_=True)
    A, beta, mats = _matrix_algebra(mats, labels, m, f"ujosp({m},{2 * n})")
    return CatalogEntry(
        f"ujosp({m},{2 * n})", {"m": m, "n": n}, A, beta,
        "hermitian version, complex entries realified; β = Re str by analogy with Josp",
        frame=_josp_frame(A, m, n), matrices=mats,
    )


# ---------------------------------------------------------------------------
# change of basis


def change_basis(A, P, even_labels, odd_labels, name=None, beta=None):
    """Re-express A in the basis whose k-th vector is column k of P."""
    d = A.dim
    Pinv = linalg.inverse(P)
    cols = [tuple(P[r][k] for r in range(d)) for k in range(d)]
    table = {}
    for i in range(d):
        for j in range(d):
            c = linalg.matvec(Pinv, A.multiply(cols[i], cols[j]))
            table[(i, j)] = {k: v for k, v in enumerate(c) if v != 0}
    B = SuperAlgebra(SuperBasis(even_labels, odd_labels), table, name or A.name)
    form = None
    if beta is not None:
        form = BilinearForm(tuple(tuple(beta(u, w) for w in cols) for u in cols))
    return B, form


# ---------------------------------------------------------------------------
# Spin(p|q)


def make_spin(p, q, form=None):
    """K1 + V with {a1+u, b1+v} = (ab + <u,v>)1 + av + bu, β = 2(ab + <u,v>).

    ``form`` is an optional Gram matrix of <.,.> on V (even vectors first);
    the default is orthonormal on V_0 and the standard symplectic pairing on
    V_1.  For p >= 1 the basis is e1 = (1+e)/2, e2 = (1-e)/2, then the other
    vectors of V.
    """
    if p < 0 or q < 0:
        raise ValueError("dimensions must be nonnegative")
    if q % 2:
        raise ValueError("the odd part of V must have even dimension")
    dv = p + q
    if form is None:
        G = [[ZERO] * dv for _ in range(dv)]
        for i in range(p):
            G[i][i] = ONE
        for k in range(q // 2):
            a, b = p + 2 * k, p + 2 * k + 1
            G[a][b], G[b][a] = ONE, -ONE
        form = tuple(tuple(r) for r in G)
    form = tuple(tuple(as_scalar(x) for x in r) for r in form)
    if len(form) != dv or any(len(r) != dv for r in form):
        raise ValueError(f"form must be {dv}x{dv}")
    for i in range(dv):
        for j in range(dv):
            if (i < p) != (j < p) and form[i][j] != 0:
                raise AlgebraError("form on V must be even")
            sgn = -1 if (i >= p and j >= p) else 1
            if form[i][j] != sgn * form[j][i]:
                raise AlgebraError("form on V must be supersymmetric")
    if dv and linalg.rank(form) != dv:
        raise AlgebraError("form on V must be nondegenerate")
    # standard basis: 1, f_1..f_p, g_1..g_q
    d = 1 + dv
    std_table = {}
    for i in range(dv):
        std_table[(0, 1 + i)] = {1 + i: ONE}
        std_table[(1 + i, 0)] = {1 + i: ONE}
        for j in range(dv):
            if form[i][j] != 0:
                std_table[(1 + i, 1 + j)] = {0: form[i][j]}
    std_table[(0, 0)] = {0: ONE}
    odd_names = (
        ["x", "y"] if q == 2 else [f"{c}{k + 1}" for k in range(q // 2) for c in ("x", "y")]
    )
    if p == 3 and q == 0:
        extra = ["x", "y"]
    else:
        extra = [f"v{k}" for k in range(2, p + 1)]
    std = SuperAlgebra(
        SuperBasis(["1"] + [f"f{k}" for k in range(1, p + 1)], [f"g{k}" for k in range(1, q + 1)]),
        std_table,
    )
    Bstd = [[ZERO] * d for _ in range(d)]
    Bstd[0][0] = Fraction(2)
    for i in range(dv):
        for j in range(dv):
            Bstd[1 + i][1 + j] = 2 * form[i][j]
    beta_std = BilinearForm(tuple(tuple(r) for r in Bstd))
    P = [list(r) for r in linalg.identity(d)]
    if p >= 1:
        # e1 = (1 + f1)/2, e2 = (1 - f1)/2
        P[0][0], P[1][0] = HALF, HALF
        P[0][1], P[1][1] = HALF, -HALF
        even_labels = ["e1", "e2"] + extra
        frame = ("e1", "e2")
    else:
        even_labels = ["u"]
        frame = ("u",)
    A, beta = change_basis(
        std, tuple(tuple(r) for r in P), even_labels, odd_names, name=f"spin({p}|{q})", beta=beta_std
    )
    return CatalogEntry(f"spin({p}|{q})", {"p": p, "q": q}, A, beta, "spin factor K1 + V", frame=frame)


# ---------------------------------------------------------------------------
# D(t), K3, D_ns(t), S_t R^d


def _dt_table(t):
    return {
        ("e1", "e1"): {"e1": 1},
        ("e2", "e2"): {"e2": 1},
        ("e1", "x"): {"x": HALF},
        ("x", "e1"): {"x": HALF},
        ("e2", "x"): {"x": HALF},
        ("x", "e2"): {"x": HALF},
        ("e1", "y"): {"y": HALF},
        ("y", "e1"): {"y": HALF},
        ("e2", "y"): {"y": HALF},
        ("y", "e2"): {"y": HALF},
        ("x", "y"): {"e1": 1, "e2": t},
        ("y", "x"): {"e1": -1, "e2": -t},
    }


def make_dt(t):
    """D(t); β(e1,e1)=1, β(e2,e2)=1/t, β(x,y)=2 (no form for t = 0).

    ``t`` may be rational or an element of a rational-function field.
    """
    t = as_scalar(t)
    A = SuperAlgebra.from_products(["e1", "e2"], ["x", "y"], _dt_table(t), name=f"dt({format_scalar(t)})")
    beta = None
    if t != 0:
        beta = BilinearForm.from_values(
            A, {("e1", "e1"): 1, ("e2", "e2"): 1 / t, ("x", "y"): 2, ("y", "x"): -2}
        )
    return CatalogEntry(
        A.name, {"t": t}, A, beta, "D(t)" + ("" if beta else "; β undefined at t = 0"), frame=("e1", "e2")
    )


def dt_form(t):
    t = as_scalar(t)
    if t == 0:
        raise ZeroDivisionError("the D(t) form needs t != 0")
    return make_dt(t).beta


def make_k3():
    """Kaplansky superalgebra K3: {e,e}=e, {e,x}=x/2, {e,y}=y/2, {x,y}=e."""
    products = {
        ("e", "e"): {"e": 1},
        ("e", "x"): {"x": HALF},
        ("x", "e"): {"x": HALF},
        ("e", "y"): {"y": HALF},
        ("y", "e"): {"y": HALF},
        ("x", "y"): {"e": 1},
        ("y", "x"): {"e": -1},
    }
    A = SuperAlgebra.from_products(["e"], ["x", "y"], products, name="k3")
    beta = BilinearForm.from_values(A, {("e", "e"): 1, ("x", "y"): 2, ("y", "x"): -2})
    return CatalogEntry("k3", {}, A, beta, "Kaplansky superalgebra (not unital)")


def make_dns(t):
    """Purely even D_ns(t): {x,x} = {y,y} = e1 + t e2, {x,y} = 0.  Jordan iff t = 1."""
    t = as_scalar(t)
    products = {k: v for k, v in _dt_table(t).items() if set(k) != {"x", "y"}}
    products[("x", "x")] = {"e1": 1, "e2": t}
    products[("y", "y")] = {"e1": 1, "e2": t}
    A = SuperAlgebra.from_products(["e1", "e2", "x", "y"], [], products, name=f"dns({format_scalar(t)})")
    return CatalogEntry(
        A.name, {"t": t}, A, None, "purely even deformation; not Jordan unless t = 1",
        frame=("e1", "e2"), jordan=(t == 1),
    )


def make_st_rd(t, d):
    """S_t R^d: d-fold direct sum of D(t) with the block form."""
    if d < 1:
        raise ValueError("d must be at least 1")
    t = as_scalar(t)
    parts = [make_dt(t) for _ in range(d)]
    A, beta = direct_sum(*[(e.algebra, e.beta) for e in parts], name=f"st_rd({format_scalar(t)},{d})")
    if d == 1:
        frame = ("e1", "e2")
    else:
        frame = tuple(f"e{j}_{k}" for k in range(1, d + 1) for j in (1, 2))
    return CatalogEntry(A.name, {"t": t, "d": d}, A, beta, "direct sum of copies of D(t)", frame=frame)


# ---------------------------------------------------------------------------
# names

_NUM = r"\s*([+-]?\d+(?:/\d+)?)\s*"
_INT = r"\s*(\d+)\s*"
_PATTERNS = [
    (re.compile(rf"^gl\+\({_INT}\|{_INT}\)$"), lambda a, b: make_gl_plus(int(a), int(b))),
    (re.compile(rf"^josp\({_INT}\|{_INT}\)$"), lambda a, b: make_josp(int(a), _half(b))),
    (re.compile(rf"^ujosp\({_INT},{_INT}\)$"), lambda a, b: make_ujosp(int(a), _half(b))),
    (re.compile(rf"^spin\({_INT}\|{_INT}\)$"), lambda a, b: make_spin(int(a), int(b))),
    (re.compile(rf"^dt\({_NUM}\)$"), lambda a: make_dt(linalg.parse_scalar(a))),
    (re.compile(r"^k3$"), lambda: make_k3()),
    (re.compile(rf"^dns\({_NUM}\)$"), lambda a: make_dns(linalg.parse_scalar(a))),
    (re.compile(rf"^st_rd\({_NUM},{_INT}\)$"), lambda a, b: make_st_rd(linalg.parse_scalar(a), int(b))),
]


def _half(s):
    k = int(s)
    if k % 2:
        raise ValueError(f"symplectic size must be even, got {k}")
    return k // 2


def from_name(name):
    """Build a catalog entry from its CLI name, e.g. ``"dt(-1/2)"``."""
    key = name.strip().lower().replace(" ", "")
    for pat, ctor in _PATTERNS:
        mt = pat.match(key)
        if mt:
            return ctor(*mt.groups())
    raise ValueError(f"unknown algebra name {name!r}")


def catalog_names():
    return ["gl+(m|n)", "josp(m|2n)", "ujosp(m,2n)", "spin(p|q)", "dt(t)", "k3", "dns(t)", "st_rd(t,d)"]


def sweep_entries():
    """Small representatives of every Jordan family, used by property sweeps."""
    names = [
        "gl+(1|1)",
        "gl+(2|1)",
        "josp(1|2)",
        "josp(2|2)",
        "ujosp(2,0)",
        "ujosp(1,2)",
        "spin(1|2)",
        "spin(3|0)",
        "spin(2|2)",
        "dt(-1)",
        "dt(-1/2)",
        "dt(1)",
        "dt(2)",
        "dt(-3)",
        "k3",
        "st_rd(2,2)",
    ]
    return [from_name(n) for n in names]


def validated(entry):
    """Raise unless the entry's β passes every form check."""
    if entry.beta is not None:
        rep = check_form(entry.algebra, entry.beta)
        if not rep.valid:
            raise AlgebraError(f"{entry.name}: invalid β {rep.as_dict()}")
    return entry

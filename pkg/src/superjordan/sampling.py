"""Random exact test data: rotated Jordan frames and points built on them.

The catalog frames are coordinate-aligned, so sampling only along them would
miss any bug that depends on the frame being "generic".  Where a family has
an obvious rational rotation (an orthogonal or unitary Cayley transform, or a
rational unit vector for spin factors) we use it; every frame produced here goes
through :func:`check_frame` before it is returned.
"""

import random
from fractions import Fraction

import sympy

from . import linalg
from .decomposition import check_frame
from .linalg import ZERO

__all__ = [
    "rational_unit_vector",
    "cayley",
    "rotated_frame",
    "random_lambdas",
    "point_on_frame",
    "random_vector",
    "random_even_point",
]


def _rand_q(rng, lo=-3, hi=3, dens=(1, 2)):
    return Fraction(rng.randint(lo, hi), rng.choice(dens))


def rational_unit_vector(rng, n):
    """Point of the rational unit sphere S^{n-1} (inverse stereographic map)."""
    if n == 1:
        return (Fraction(rng.choice((-1, 1))),)
    u = [_rand_q(rng) for _ in range(n - 1)]
    s = sum(c * c for c in u)
    return tuple([2 * c / (s + 1) for c in u] + [(s - 1) / (s + 1)])


def cayley(rng, n, hermitian=False):
    """Orthogonal (or unitary) rational matrix (I - S)(I + S)^{-1}, S skew."""
    S = sympy.zeros(n, n)
    for i in range(n):
        for j in range(i + 1, n):
            a = sympy.Rational(rng.randint(-2, 2), rng.choice((1, 2)))
            if hermitian:
                b = sympy.Rational(rng.randint(-2, 2), rng.choice((1, 2)))
                S[i, j] = a + sympy.I * b
                S[j, i] = -a + sympy.I * b
            else:
                S[i, j], S[j, i] = a, -a
        if hermitian:
            S[i, i] = sympy.I * sympy.Rational(rng.randint(-2, 2), 2)
    eye = sympy.eye(n)
    return ((eye - S) * (eye + S).inv()).applyfunc(sympy.expand)


def _matrix_coordinates(entry, target):
    """Coordinates of a sparse complex matrix in the entry's matrix basis."""
    keys = sorted({k for M in entry.matrices for k in M} | set(target))
    cols = []
    for M in entry.matrices:
        col = []
        for k in keys:
            re, im = M.get(k, (ZERO, ZERO))
            col += [re, im]
        cols.append(col)
    rhs = []
    for k in keys:
        re, im = target.get(k, (ZERO, ZERO))
        rhs += [re, im]
    A = linalg.transpose(cols)
    return linalg.solve(A, rhs)


def _to_sparse(X, offset=0):
    out = {}
    for i in range(X.rows):
        for j in range(X.cols):
            v = sympy.expand(X[i, j])
            if v != 0:
                re, im = sympy.Rational(sympy.re(v)), sympy.Rational(sympy.im(v))
                out[(offset + i, offset + j)] = (
                    Fraction(int(re.p), int(re.q)),
                    Fraction(int(im.p), int(im.q)),
                )
    return out


def _spin_frame(entry, rng):
    J = entry.algebra
    p = J.m - 1
    v = rational_unit_vector(rng, p)
    frame = []
    for s in (1, -1):
        vec = [ZERO] * J.dim
        vec[0] = (1 + s * v[0]) / 2
        vec[1] = (1 - s * v[0]) / 2
        for k in range(1, p):
            vec[1 + k] = s * v[k] / 2
        frame.append(tuple(vec))
    return frame


def _conjugated_frame(entry, rng, hermitian):
    J = entry.algebra
    labels = J.basis.labels
    a_labels = [lab for lab in entry.frame if lab.startswith("A")]
    m = len(a_labels)
    Q = cayley(rng, m, hermitian=hermitian)
    frame = []
    for i in range(m):
        col = Q[:, i]
        P = col * col.H if hermitian else col * col.T
        frame.append(_matrix_coordinates(entry, _to_sparse(P)))
    for lab in entry.frame:
        if lab not in a_labels:
            frame.append(J.basis_vector(labels.index(lab)))
    return frame


def rotated_frame(entry, rng=None):
    """A Jordan frame of ``entry``, rotated away from the coordinate axes
    when the family allows it (spin with p >= 2, josp, ujosp)."""
    rng = rng or random.Random(0)
    J = entry.algebra
    frame = None
    name = entry.name
    if name.startswith("spin") and J.m >= 3:
        frame = _spin_frame(entry, rng)
    elif name.startswith("josp") and entry.matrices and len([l for l in entry.frame if l.startswith("A")]) >= 2:
        frame = _conjugated_frame(entry, rng, hermitian=False)
    elif name.startswith("ujosp") and entry.matrices and len([l for l in entry.frame if l.startswith("A")]) >= 2:
        frame = _conjugated_frame(entry, rng, hermitian=True)
    if frame is None:
        return list(entry.frame_vectors)
    check_frame(J, frame)
    return frame


def random_lambdas(rng, k, engineered=False):
    """Spectral coefficients; ``engineered`` forces a zero or a cancelling pair."""
    lam = [Fraction(rng.randint(-4, 4), rng.choice((1, 2, 3))) for _ in range(k)]
    if engineered and k >= 2:
        i, j = rng.sample(range(k), 2)
        if rng.random() < 0.75:
            lam[j] = -lam[i] if lam[i] else Fraction(1)
            if lam[i] == 0:
                lam[i] = Fraction(-1)
        else:
            lam[i] = ZERO
    return lam


def point_on_frame(frame, lam):
    dim = len(frame[0])
    return tuple(sum((l * v[k] for l, v in zip(lam, frame)), ZERO) for k in range(dim))


def random_even_point(entry, rng, engineered=False):
    frame = rotated_frame(entry, rng)
    lam = random_lambdas(rng, len(frame), engineered)
    return point_on_frame(frame, lam), lam


def random_vector(J, rng, parity=None):
    out = []
    for i in range(J.dim):
        if parity is not None and J.parity(i) != parity:
            out.append(ZERO)
        else:
            out.append(_rand_q(rng, -2, 2))
    return tuple(out)

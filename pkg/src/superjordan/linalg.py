"""Exact linear algebra over rationals and rational-function fields.

Matrices are tuples of row tuples, vectors are tuples.  Entries can be
:class:`fractions.Fraction` or elements of a sympy fraction field; all
routines only use ``+ - * /`` and comparison with zero, so either works.
Nothing here ever rounds.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

__all__ = [
    "Subspace",
    "as_scalar",
    "format_scalar",
    "parse_scalar",
    "rref",
    "rank",
    "rank_and_basis",
    "solve",
    "kernel",
    "inverse",
    "symmetric_signature",
    "matmul",
    "matvec",
    "transpose",
    "identity",
    "zeros",
    "is_zero_vector",
    "DimensionError",
]

ZERO = Fraction(0)
ONE = Fraction(1)

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


class DimensionError(ValueError):
    """Operands do not have compatible shapes."""


def parse_scalar(text):
    """Parse ``"p/q"`` or ``"p"`` into a Fraction."""
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise ValueError(f"not a rational literal: {text!r}")
    num, den = m.groups()
    if den is not None and int(den) == 0:
        raise ZeroDivisionError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den else 1)


def as_scalar(value):
    """Coerce ``value`` to an exact scalar.

    Integers, Fractions and ``"p/q"`` strings become Fractions.  Field
    elements that already know how to do exact arithmetic (sympy fraction
    field elements) pass through.  Floats are rejected: there is no exact
    rational that a float "means".
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, str):
        return parse_scalar(value)
    if isinstance(value, float):
        raise TypeError(f"refusing to approximate float {value!r}; pass a Fraction or 'p/q'")
    if hasattr(value, "field") and hasattr(value, "numer"):
        return value
    raise TypeError(f"unsupported scalar type {type(value).__name__}")


def format_scalar(value):
    """Serialize a scalar as ``"p/q"`` (or ``"p"`` when q = 1)."""
    if isinstance(value, (int, Fraction)):
        value = Fraction(value)
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"
    return str(value)


# ---------------------------------------------------------------------------
# small matrix helpers


def zeros(rows, cols):
    return tuple(tuple(ZERO for _ in range(cols)) for _ in range(rows))


def identity(n):
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def transpose(M):
    if not M:
        return ()
    return tuple(zip(*M))


def _cols(M):
    return len(M[0]) if M else 0


def matmul(A, B):
    if A and _cols(A) != len(B):
        raise DimensionError(f"cannot multiply {len(A)}x{_cols(A)} by {len(B)}x{_cols(B)}")
    n = _cols(B)
    nonzero = [[(j, b) for j, b in enumerate(r) if b] for r in B]
    out = []
    for row in A:
        acc = [ZERO] * n
        for k, a in enumerate(row):
            if a:
                for j, b in nonzero[k]:
                    acc[j] += a * b
        out.append(tuple(acc))
    return tuple(out)


def matvec(M, v):
    if M and _cols(M) != len(v):
        raise DimensionError(f"matrix has {_cols(M)} columns, vector has length {len(v)}")
    return tuple(sum((a * b for a, b in zip(row, v) if a != 0 and b != 0), ZERO) for row in M)


def is_zero_vector(v):
    return all(x == 0 for x in v)


# ---------------------------------------------------------------------------
# elimination


def rref(rows, ncols=None):
    """Reduced row echelon form.

    Returns ``(nonzero_rows, pivot_columns)``.  Pivots are chosen as the
    leftmost nonzero entry, so the result is canonical for the row space.
    """
    rows = [list(r) for r in rows]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    for r in rows:
        if len(r) != ncols:
            raise DimensionError("rows of unequal length")
    pivots = []
    prow = 0
    nrows = len(rows)
    for col in range(ncols):
        if prow == nrows:
            break
        sel = None
        for r in range(prow, nrows):
            if rows[r][col] != 0:
                sel = r
                break
        if sel is None:
            continue
        rows[prow], rows[sel] = rows[sel], rows[prow]
        piv = rows[prow][col]
        if piv != 1:
            inv = 1 / piv
            rows[prow] = [x * inv if x != 0 else x for x in rows[prow]]
        pr = rows[prow]
        for r in range(nrows):
            if r != prow:
                f = rows[r][col]
                if f != 0:
                    rows[r] = [a - f * b if b != 0 else a for a, b in zip(rows[r], pr)]
        pivots.append(col)
        prow += 1
    return [tuple(r) for r in rows[:prow]], pivots


def rank(vectors):
    return len(rref(vectors)[1]) if vectors else 0


@dataclass(frozen=True)
class Subspace:
    """A subspace of K^ambient_dim stored by its reduced echelon basis."""

    ambient_dim: int
    basis: tuple = ()

    @classmethod
    def span(cls, vectors, ambient_dim=None):
        vectors = [tuple(v) for v in vectors]
        if ambient_dim is None:
            if not vectors:
                raise DimensionError("ambient dimension of an empty span is unknown")
            ambient_dim = len(vectors[0])
        for v in vectors:
            if len(v) != ambient_dim:
                raise DimensionError(
                    f"vector of length {len(v)} in a span of dimension {ambient_dim}"
                )
        if not vectors:
            return cls(ambient_dim, ())
        rows, _ = rref(vectors, ambient_dim)
        return cls(ambient_dim, tuple(rows))

    @classmethod
    def full(cls, n):
        return cls(n, identity(n))

    @property
    def dim(self):
        return len(self.basis)

    def __len__(self):
        return self.dim

    def __contains__(self, v):
        return self.contains(v)

    def contains(self, v):
        if len(v) != self.ambient_dim:
            raise DimensionError("vector length does not match ambient dimension")
        return Subspace.span(list(self.basis) + [tuple(v)], self.ambient_dim).dim == self.dim

    def contains_space(self, other):
        return (self + other).dim == self.dim

    def coordinates(self, v):
        """Coordinates of ``v`` in ``self.basis``, or None if v is outside."""
        return solve(transpose(self.basis), tuple(v)) if self.basis else (
            () if is_zero_vector(v) else None
        )

    def __add__(self, other):
        if self.ambient_dim != other.ambient_dim:
            raise DimensionError("subspaces live in different spaces")
        return Subspace.span(list(self.basis) + list(other.basis), self.ambient_dim)

    def intersect(self, other):
        if self.ambient_dim != other.ambient_dim:
            raise DimensionError("subspaces live in different spaces")
        if not self.basis or not other.basis:
            return Subspace(self.ambient_dim, ())
        # a.basis * s = b.basis * t  <=>  [A | -B] (s, t) = 0
        cols = [tuple(v) for v in self.basis] + [tuple(-x for x in v) for v in other.basis]
        ker = kernel(transpose(cols))
        k = self.dim
        vecs = []
        for coeffs in ker.basis:
            vecs.append(
                tuple(
                    sum((c * b[i] for c, b in zip(coeffs[:k], self.basis) if c != 0), ZERO)
                    for i in range(self.ambient_dim)
                )
            )
        return Subspace.span(vecs, self.ambient_dim)

    def is_zero(self):
        return self.dim == 0


def rank_and_basis(vectors, ambient_dim=None):
    """Canonical echelon basis of span(vectors)."""
    return Subspace.span(vectors, ambient_dim)


def solve(M, b):
    """One exact solution of M x = b, or None if the system is inconsistent."""
    nrows = len(M)
    if nrows != len(b):
        raise DimensionError(f"matrix has {nrows} rows, right-hand side has {len(b)}")
    ncols = _cols(M)
    if nrows == 0:
        return ()
    aug = [tuple(row) + (rhs,) for row, rhs in zip(M, b)]
    rows, pivots = rref(aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    x = [ZERO] * ncols
    for row, p in zip(rows, pivots):
        x[p] = row[-1]
    return tuple(x)


def kernel(M, ncols=None):
    """Basis of the null space of M (as a Subspace of K^cols)."""
    if ncols is None:
        ncols = _cols(M)
    if not M:
        return Subspace.full(ncols)
    rows, pivots = rref(M, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    vecs = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for row, p in zip(rows, pivots):
            v[p] = -row[f]
        vecs.append(tuple(v))
    return Subspace.span(vecs, ncols)


def inverse(M):
    n = len(M)
    if any(len(r) != n for r in M):
        raise DimensionError("only square matrices have inverses")
    aug = [tuple(r) + e for r, e in zip(M, identity(n))]
    rows, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(rows) < n:
        raise ZeroDivisionError("matrix is singular")
    return tuple(tuple(r[n:]) for r in rows[:n])


def symmetric_signature(S):
    """Sylvester inertia ``(positives, negatives, zeros)`` of a symmetric matrix.

    Uses congruence diagonalization, so no eigenvalues are ever computed.
    """
    n = len(S)
    if any(len(r) != n for r in S):
        raise DimensionError("signature needs a square matrix")
    for i in range(n):
        for j in range(i):
            if S[i][j] != S[j][i]:
                raise ValueError(f"matrix is not symmetric at ({i}, {j})")
    A = [list(r) for r in S]
    pos = neg = 0
    k = 0
    while k < n:
        piv = next((i for i in range(k, n) if A[i][i] != 0), None)
        if piv is None:
            hit = next(
                ((i, j) for i in range(k, n) for j in range(i + 1, n) if A[i][j] != 0), None
            )
            if hit is None:
                break
            i, j = hit
            # row_i += row_j, col_i += col_j makes A[i][i] = 2 A[i][j] != 0
            for c in range(n):
                A[i][c] += A[j][c]
            for r in range(n):
                A[r][i] += A[r][j]
            piv = i
        if piv != k:
            A[k], A[piv] = A[piv], A[k]
            for r in A:
                r[k], r[piv] = r[piv], r[k]
        d = A[k][k]
        if d > 0:
            pos += 1
        else:
            neg += 1
        # Schur complement; column k is read before it is cleared
        for r in range(k + 1, n):
            f = A[r][k] / d
            if f != 0:
                for c in range(k + 1, n):
                    A[r][c] -= f * A[k][c]
        for r in range(k + 1, n):
            A[r][k] = A[k][r] = ZERO
        k += 1
    return pos, neg, n - pos - neg

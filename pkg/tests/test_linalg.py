from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from superjordan import linalg
from superjordan.linalg import Subspace

fractions = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def matrices(rows=st.integers(1, 5), cols=st.integers(1, 5)):
    return st.tuples(rows, cols).flatmap(
        lambda rc: st.lists(st.lists(fractions, min_size=rc[1], max_size=rc[1]), min_size=rc[0], max_size=rc[0])
    )


def as_sympy(M):
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in r] for r in M])


def test_parse_and_format_roundtrip():
    assert linalg.parse_scalar("-3/6") == Fraction(-1, 2)
    assert linalg.format_scalar(Fraction(4, 2)) == "2"
    assert linalg.format_scalar(Fraction(-1, 3)) == "-1/3"
    with pytest.raises(ValueError):
        linalg.parse_scalar("0.5")
    with pytest.raises(ZeroDivisionError):
        linalg.parse_scalar("1/0")


def test_floats_are_refused():
    with pytest.raises(TypeError):
        linalg.as_scalar(0.5)


@given(matrices())
def test_rank_matches_sympy(M):
    assert linalg.rank(M) == as_sympy(M).rank()


@given(matrices())
def test_kernel_is_annihilated_and_complementary(M):
    ncols = len(M[0])
    ker = linalg.kernel(M, ncols)
    for v in ker.basis:
        assert all(x == 0 for x in linalg.matvec(M, v))
    assert ker.dim + linalg.rank(M) == ncols


@given(st.integers(1, 5).flatmap(lambda n: st.lists(st.lists(fractions, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_inverse_or_singular(M):
    S = as_sympy(M)
    if S.det() == 0:
        with pytest.raises(ZeroDivisionError):
            linalg.inverse(M)
    else:
        inv = linalg.inverse(M)
        assert linalg.matmul(M, inv) == linalg.identity(len(M))


@given(matrices(), st.data())
def test_solve_consistent_systems(M, data):
    x = data.draw(st.lists(fractions, min_size=len(M[0]), max_size=len(M[0])))
    b = linalg.matvec(M, x)
    sol = linalg.solve(M, b)
    assert sol is not None
    assert linalg.matvec(M, sol) == b


def test_solve_inconsistent():
    assert linalg.solve(((1, 0), (1, 0)), (Fraction(1), Fraction(2))) is None


@given(st.integers(1, 5).flatmap(lambda n: st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n), min_size=n, max_size=n)))
@settings(max_examples=60)
def test_inertia_matches_eigenvalue_signs(R):
    n = len(R)
    S = tuple(tuple(Fraction(R[i][j] + R[j][i]) for j in range(n)) for i in range(n))
    ev = np.linalg.eigvalsh(np.array(S, dtype=float))
    want = (int((ev > 1e-9).sum()), int((ev < -1e-9).sum()), int((abs(ev) <= 1e-9).sum()))
    assert linalg.symmetric_signature(S) == want


def test_signature_of_hyperbolic_plane():
    assert linalg.symmetric_signature(((0, 1), (1, 0))) == (1, 1, 0)


@given(matrices(cols=st.just(4)), matrices(cols=st.just(4)))
def test_subspace_dimension_formula(A, B):
    U, V = Subspace.span(A, 4), Subspace.span(B, 4)
    assert (U + V).dim + U.intersect(V).dim == U.dim + V.dim
    for v in U.intersect(V).basis:
        assert U.contains(v) and V.contains(v)


def test_subspace_coordinates():
    U = Subspace.span([(1, 1, 0), (0, 1, 1)], 3)
    v = (Fraction(2), Fraction(3), Fraction(1))
    c = U.coordinates(v)
    assert tuple(sum(ci * b[k] for ci, b in zip(c, U.basis)) for k in range(3)) == v
    assert U.coordinates((1, 0, 0)) is None


def test_dimension_errors():
    with pytest.raises(linalg.DimensionError):
        linalg.matmul(((1, 2),), ((1, 2),))
    with pytest.raises(linalg.DimensionError):
        Subspace.span([(1, 2), (1, 2, 3)])

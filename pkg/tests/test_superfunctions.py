import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from superjordan.algebra import SuperAlgebra, SuperBasis, flat
from superjordan.catalog import from_name, make_dt
from superjordan.structure import metric_oracle
from superjordan.superfunctions import (
    LocalizationError,
    SuperFunctionRing,
    UnsupportedError,
    kernel_is_constants,
    symbolic_parameter,
)

from conftest import POSITIVE_UNITAL, SWEEP, entry_ids


@pytest.fixture(scope="module")
def symbolic():
    t = symbolic_parameter("t")
    E = make_dt(t)
    return E, SuperFunctionRing(E.algebra)


def random_function(R, rng, parity):
    """Homogeneous superfunction with small polynomial coefficients."""
    n = len(R.odd_names)
    terms = {}
    for k in range(parity, n + 1, 2):
        for mono in itertools.combinations(range(n), k):
            if rng.random() < 0.6:
                coeff = " + ".join(
                    f"({rng.randint(-3, 3)})*{g}" for g in R.even_names
                ) + f" + ({rng.randint(-3, 3)})"
                terms[mono] = coeff
    return R.from_terms(terms)


def test_odd_derivative_sign(symbolic):
    _, R = symbolic
    xy = R.from_terms({("x", "y"): 1})
    assert R.partial(xy, "x") == R.coordinate("y")
    assert R.partial(xy, "y") == R.coordinate("x").scaled(-1)


def test_grassmann_rules(symbolic):
    _, R = symbolic
    x, y = R.coordinate("x"), R.coordinate("y")
    assert x * x == 0
    assert x * y == (y * x).scaled(-1)
    assert R.from_terms({("y", "x"): 1}) == (x * y).scaled(-1)


@pytest.mark.parametrize("entry", SWEEP, ids=entry_ids(SWEEP))
def test_embedding_is_a_monomorphism(entry):
    J = entry.algebra
    R = SuperFunctionRing(J)
    for i in range(J.dim):
        for j in range(J.dim):
            a, b = J.basis_vector(i), J.basis_vector(j)
            assert R.bracket(R.embed(a), R.embed(b)) == R.embed(J.multiply(a, b))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(["dt(2)", "josp(1|2)", "spin(2|2)", "k3"]))
def test_bracket_supercommutative_and_leibniz(seed, name):
    rng = random.Random(seed)
    R = SuperFunctionRing(from_name(name).algebra)
    pf, pg, ph = (rng.randint(0, 1) for _ in range(3))
    f, g, h = random_function(R, rng, pf), random_function(R, rng, pg), random_function(R, rng, ph)
    s = -1 if pf * pg else 1
    assert R.bracket(g, f) == R.bracket(f, g).scaled(s)
    assert R.bracket(f, g * h) == R.bracket(f, g) * h + (g * R.bracket(f, h)).scaled(s)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_field_applies_the_bracket(seed):
    rng = random.Random(seed)
    R = SuperFunctionRing(from_name("dt(-1/2)").algebra)
    f = random_function(R, rng, rng.randint(0, 1))
    g = random_function(R, rng, rng.randint(0, 1))
    assert R.field_of(f)(g) == R.bracket(f, g)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_product_is_associative(seed):
    rng = random.Random(seed)
    R = SuperFunctionRing(from_name("josp(2|2)").algebra)
    f, g, h = (random_function(R, rng, rng.randint(0, 1)) for _ in range(3))
    assert (f * g) * h == f * (g * h)


def test_fields_of_dt(symbolic):
    E, R = symbolic
    c = R.coordinate
    half = Fraction(1, 2)
    et = R.from_terms({(): "e1 + t*e2"})
    assert R.field_of(c("e1")).components == (c("e1"), R.zero(), c("x").scaled(half), c("y").scaled(half))
    assert R.field_of(c("e2")).components == (R.zero(), c("e2"), c("x").scaled(half), c("y").scaled(half))
    assert R.field_of(c("x")).components == (c("x").scaled(half), c("x").scaled(half), R.zero(), et)
    assert R.field_of(c("y")).components == (c("y").scaled(half), c("y").scaled(half), et.scaled(-1), R.zero())


def test_pairings_of_dt(symbolic):
    _, R = symbolic
    c = R.coordinate
    assert R.pairing(c("x"), c("y")) == R.from_terms({(): "e1 + t*e2"})
    assert R.pairing(c("e1"), c("e1")) == c("e1")


def test_induced_action_matches_field(symbolic):
    E, R = symbolic
    J = E.algebra
    for i in range(J.dim):
        a = J.basis_vector(i)
        induced = R.induced_action_field(J.left_mult(a))
        X = R.field_of(R.embed(a))
        for g in (R.coordinate(k) for k in range(J.dim)):
            assert induced(g) == X(g)


def test_kernel_is_constants():
    assert kernel_is_constants(from_name("dt(2)").algebra)
    assert kernel_is_constants(from_name("k3").algebra)
    trivial = SuperAlgebra(SuperBasis(["a"], ["b", "c"]), {})
    assert not kernel_is_constants(trivial)
    R = SuperFunctionRing(trivial)
    quad = R.coordinate("b") * R.coordinate("c")
    with pytest.raises(UnsupportedError):
        R.pairing(quad, quad)


def test_structure_matrix_inverse(symbolic):
    _, R = symbolic
    M = R.structure_matrix()
    inv = R.structure_matrix_inverse(["e1", "e2", "e1 + t*e2"])
    d = R.dim
    for i in range(d):
        for j in range(d):
            acc = R.zero()
            for k in range(d):
                acc = acc + M[i][k] * inv[k][j]
            assert acc == (R.constant(1) if i == j else R.zero())


def test_localization_is_enforced(symbolic):
    _, R = symbolic
    with pytest.raises(LocalizationError):
        R.coordinate_metric(0, 0, ["e1", "e2"])


def test_coordinate_metric(symbolic):
    _, R = symbolic
    loc = ["e1", "e2", "e1 + t*e2"]
    g11 = R.coordinate_metric("e1", "e1", loc)
    assert g11.terms == R.from_terms({(): "1/e1", ("x", "y"): "1/(2*e1**2*(e1 + t*e2))"}).terms
    g12 = R.coordinate_metric("e1", "e2", loc)
    assert g12.terms == R.from_terms({("x", "y"): "1/(2*e1*e2*(e1 + t*e2))"}).terms
    # the graded extension only flips the sign of the xy term
    graded = R.coordinate_metric("e1", "e1", loc, convention="graded")
    assert graded.terms == R.from_terms({(): "1/e1", ("x", "y"): "-1/(2*e1**2*(e1 + t*e2))"}).terms


def test_coordinate_metric_body_is_g_xi(symbolic):
    """At an even point the body of g(d/de_i, d/de_i) is the orbit metric on e_i^*."""
    _, R = symbolic
    g22 = R.coordinate_metric("e2", "e2", ["e1", "e2", "e1 + t*e2"])
    val = R.evaluate_body(g22, {"e1": Fraction(3), "e2": Fraction(5)}, {"t": Fraction(2)})
    assert val == Fraction(1, 5)


@pytest.mark.parametrize("entry", POSITIVE_UNITAL, ids=entry_ids(POSITIVE_UNITAL))
def test_pairing_body_is_the_oracle(entry):
    J, B = entry.algebra, entry.beta
    R = SuperFunctionRing(J)
    rng = random.Random(7)
    for _ in range(5):
        v = tuple(Fraction(rng.randint(-3, 3)) if J.parity(i) == 0 else Fraction(0) for i in range(J.dim))
        xi = flat(B, v)
        i, j = rng.randrange(J.dim), rng.randrange(J.dim)
        a, b = J.basis_vector(i), J.basis_vector(j)
        body = R.evaluate_body(R.pairing(R.embed(a), R.embed(b)), xi)
        assert body == metric_oracle(J, B, xi, a, b)


def test_superfunction_json(symbolic):
    _, R = symbolic
    f = R.from_terms({(): "e1", ("x", "y"): "1/e2"})
    doc = f.to_json()
    assert doc["terms"][0] == {"monomial": [], "coefficient": "e1"}
    assert doc["terms"][1]["monomial"] == ["x", "y"]

import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from superjordan import linalg
from superjordan.algebra import (
    AlgebraError,
    BilinearForm,
    SuperAlgebra,
    SuperBasis,
    SuperOperator,
    algebra_spec_dict,
    annihilator,
    associator,
    canonical_form_tau,
    check_commutative,
    check_form,
    check_kac_formula,
    check_super_jordan,
    direct_sum,
    dual_action,
    find_unit,
    flat,
    ideal_closure,
    load_algebra_spec,
    sharp,
    signature,
    subalgebra_on,
    supertrace,
    verify_homomorphism,
)
from superjordan.catalog import from_name, make_dt, sweep_entries

from conftest import SWEEP, entry_ids

Q = Fraction


def homogeneous(J, rng, parity, lo=-2, hi=2):
    return tuple(Q(rng.randint(lo, hi), rng.randint(1, 2)) if J.parity(i) == parity else Q(0) for i in range(J.dim))


# -- products --------------------------------------------------------------------


def test_dt_products(dt2):
    J = dt2.algebra
    assert J.multiply(J.element("x"), J.element("y")) == J.element("e1 + 2*e2")
    assert J.multiply(J.element("e1"), J.element("x")) == J.element("1/2*x")
    L = J.left_mult(J.element("e1"))
    assert L(J.element("e1")) == J.element("e1")
    assert L(J.element("e2")) == J.zero()
    assert L(J.element("y")) == J.element("1/2*y")


def test_k3_left_multiplication_sends_y_to_e():
    J = from_name("k3").algebra
    assert J.left_mult(J.element("x"))(J.element("y")) == J.element("e")


def test_grading_violation_rejected():
    with pytest.raises(AlgebraError):
        SuperAlgebra.from_products(["e"], ["x"], {("e", "e"): {"x": 1}})


def test_unknown_label_rejected(dt2):
    with pytest.raises(KeyError):
        dt2.algebra.element("e3")


@pytest.mark.parametrize("entry", SWEEP, ids=entry_ids(SWEEP))
def test_catalog_identities(entry):
    J = entry.algebra
    assert check_commutative(J).ok
    assert check_super_jordan(J).ok
    assert check_kac_formula(J).ok


@pytest.mark.parametrize("entry", SWEEP, ids=entry_ids(SWEEP))
def test_supercommutativity_on_random_elements(entry):
    J = entry.algebra
    rng = random.Random(entry.name)
    for _ in range(10):
        pa, pb = rng.randint(0, 1), rng.randint(0, 1)
        a, b = homogeneous(J, rng, pa), homogeneous(J, rng, pb)
        s = -1 if pa * pb else 1
        assert J.multiply(a, b) == tuple(s * c for c in J.multiply(b, a))


def test_dns_fails_with_witness():
    J = from_name("dns(2)").algebra
    res = check_super_jordan(J)
    assert not res.ok
    assert res.witness == (J.element("x"), J.element("e1"), J.element("e1 + 2*e2"))
    # replaying the witness reproduces the failure
    a, b, aa = res.witness
    lhs = J.multiply(a, J.multiply(b, aa))
    rhs = J.multiply(J.multiply(a, b), aa)
    assert lhs != rhs


def test_dns_one_is_jordan():
    assert check_super_jordan(from_name("dns(1)").algebra).ok


def _random_supercommutative(rng, m, n):
    basis = SuperBasis([f"a{i}" for i in range(m)], [f"b{i}" for i in range(n)])
    d = m + n
    table = {}
    for i in range(d):
        for j in range(i, d):
            pi, pj = basis.parity(i), basis.parity(j)
            if pi and pj and i == j:
                continue
            row = {}
            for k in range(d):
                if basis.parity(k) == (pi + pj) % 2 and rng.random() < 0.5:
                    row[k] = Q(rng.randint(-2, 2))
            table[(i, j)] = row
            s = -1 if pi * pj else 1
            table[(j, i)] = {k: s * c for k, c in row.items()}
    return SuperAlgebra(basis, table)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.integers(1, 2), st.integers(0, 2))
def test_fast_and_exhaustive_identity_checks_agree(seed, m, n):
    A = _random_supercommutative(random.Random(seed), m, n)
    assert check_super_jordan(A, fast=True).ok == check_super_jordan(A, fast=False).ok
    if check_super_jordan(A).ok:
        assert check_kac_formula(A, fast=True).ok == check_kac_formula(A, fast=False).ok


def test_fast_path_agrees_on_catalog():
    for name in ("dt(2)", "dns(3)", "josp(1|2)", "k3"):
        J = from_name(name).algebra
        assert check_super_jordan(J, fast=True).ok == check_super_jordan(J, fast=False).ok


def test_kac_formula_on_josp_by_hand():
    J = from_name("josp(1|2)").algebra
    L = J.basis_left_mult
    for a in range(J.dim):
        for b in range(J.dim):
            for c in range(J.dim):
                lhs = L(a).bracket(L(b)).bracket(L(c))
                s = -1 if J.parity(b) * J.parity(c) else 1
                assoc = associator(J, J.basis_vector(a), J.basis_vector(c), J.basis_vector(b))
                rhs = J.left_mult(assoc).scaled(s)
                assert lhs.matrix == rhs.matrix


# -- operators -------------------------------------------------------------------


@pytest.mark.parametrize("entry", SWEEP, ids=entry_ids(SWEEP))
def test_supertrace_of_brackets_vanishes(entry):
    J = entry.algebra
    rng = random.Random(1)
    for _ in range(5):
        f = J.left_mult(homogeneous(J, rng, rng.randint(0, 1)))
        g = J.left_mult(homogeneous(J, rng, rng.randint(0, 1)))
        assert supertrace(f.bracket(g)) == 0


def test_supertrace_sign():
    op = SuperOperator.from_matrix(((2, 0), (0, 5)), 1)
    assert supertrace(op) == -3


def test_mixed_operator_rejected():
    with pytest.raises(AlgebraError):
        SuperOperator.from_matrix(((1, 1), (0, 1)), 1)


# -- forms -----------------------------------------------------------------------


@pytest.mark.parametrize("name", ["dt(-1)", "dt(2)", "k3", "gl+(1|1)", "josp(1|2)", "spin(1|2)"])
def test_tau_vanishes_on_small_examples(name):
    tau = canonical_form_tau(from_name(name).algebra)
    assert tau.is_zero()


def test_tau_of_dt_is_associative_and_degenerate(dt2):
    rep = check_form(dt2.algebra, canonical_form_tau(dt2.algebra))
    assert rep.associative and not rep.nondegenerate


@pytest.mark.parametrize("entry", [e for e in SWEEP if e.beta is not None], ids=lambda e: e.name)
def test_catalog_forms_valid(entry):
    assert check_form(entry.algebra, entry.beta).valid


@pytest.mark.parametrize("entry", [e for e in SWEEP if e.beta is not None], ids=lambda e: e.name)
def test_beta_associative_on_random_triples(entry):
    J, B = entry.algebra, entry.beta
    rng = random.Random(2)
    for _ in range(10):
        a, b, c = (homogeneous(J, rng, rng.randint(0, 1)) for _ in range(3))
        assert B(J.multiply(a, b), c) == B(a, J.multiply(b, c))


def test_josp_beta_values():
    E = from_name("josp(1|2)")
    J, B = E.algebra, E.beta
    assert B(J.element("e1"), J.element("e1")) == 1
    assert B(J.element("e2"), J.element("e2")) == -2
    assert B(J.element("x"), J.element("y")) == 2


@pytest.mark.parametrize(
    "name,sig",
    [("gl+(1|1)", (1, 1)), ("josp(1|2)", (1, 1)), ("spin(1|2)", (2, 0)), ("dt(-3)", (1, 1)), ("dt(2)", (2, 0)), ("spin(3|0)", (4, 0))],
)
def test_signatures(name, sig):
    E = from_name(name)
    assert signature(E.algebra, E.beta) == sig


def test_gl_even_block_signature():
    assert linalg.symmetric_signature(((1, 0), (0, -1))) == (1, 1, 0)


def test_signature_refuses_invalid_form(dt2):
    with pytest.raises(AlgebraError):
        signature(dt2.algebra, canonical_form_tau(dt2.algebra))


def test_form_defects_are_reported(dt2):
    J = dt2.algebra
    bad = BilinearForm.from_values(J, {("e1", "x"): 1, ("x", "e1"): 1})
    rep = check_form(J, bad)
    assert not rep.even
    asym = BilinearForm.from_values(J, {("e1", "e2"): 1})
    assert not check_form(J, asym).supersymmetric


# -- flat, sharp and the dual action --------------------------------------------


def test_dt_flats(dt2):
    J, B = dt2.algebra, dt2.beta
    assert flat(B, J.element("e2")) == (0, Q(1, 2), 0, 0)
    assert flat(B, J.element("x")) == (0, 0, 0, 2)
    assert flat(B, J.element("y")) == (0, 0, -2, 0)


@pytest.mark.parametrize("entry", [e for e in SWEEP if e.beta is not None], ids=lambda e: e.name)
def test_flat_sharp_inverse_and_dual_action(entry):
    J, B = entry.algebra, entry.beta
    rng = random.Random(3)
    for _ in range(8):
        px, pv = rng.randint(0, 1), rng.randint(0, 1)
        x, v, y = homogeneous(J, rng, px), homogeneous(J, rng, pv), homogeneous(J, rng, rng.randint(0, 1))
        xi = flat(B, v)
        assert sharp(B, xi) == v
        Lstar = dual_action(J, B, x)
        pair = lambda f, w: sum((a * b for a, b in zip(f, w)), Q(0))  # noqa: E731
        assert pair(Lstar(xi), y) == pair(xi, J.multiply(x, y))
        s = -1 if px * pv else 1
        assert Lstar(xi) == tuple(s * c for c in flat(B, J.multiply(x, v)))


def test_orthonormal_flat_is_identity():
    J = from_name("spin(3|0)").algebra
    I = BilinearForm(linalg.identity(4))
    v = (Q(1), Q(2), Q(-3), Q(1, 2))
    assert flat(I, v) == v
    del J


# -- units, annihilators, sums, ideals ------------------------------------------


def test_units_and_annihilator():
    J = from_name("dt(2)").algebra
    assert find_unit(J) == J.element("e1 + e2")
    assert find_unit(from_name("k3").algebra) is None
    assert annihilator(J).dim == 0
    assert annihilator(from_name("dt(0)").algebra).dim == 0


def test_direct_sum_dimensions_and_form():
    A = make_dt(Q(2))
    S, form = direct_sum((A.algebra, A.beta), (A.algebra, A.beta))
    assert (S.m, S.n) == (4, 4)
    assert check_form(S, form).valid
    assert check_super_jordan(S).ok


def test_ideal_closure_of_dt0():
    E = from_name("dt(0)")
    J = E.algebra
    I = ideal_closure(J, [J.element("x")])
    assert [J.format_vector(v) for v in I.basis] == ["e1", "x", "y"]
    sub, _, _ = subalgebra_on(J, I)
    K3 = from_name("k3").algebra
    phi = linalg.identity(3)
    assert verify_homomorphism(phi, K3, sub, require_iso=True).ok


def test_homomorphism_rejects_odd_map():
    A = from_name("dt(1)").algebra
    phi = [[Q(0)] * 4 for _ in range(4)]
    phi[2][0] = Q(1)
    assert not verify_homomorphism(phi, A, A).ok


# -- serialization ---------------------------------------------------------------


@pytest.mark.parametrize("entry", sweep_entries()[:6], ids=lambda e: e.name)
def test_spec_roundtrip(entry, tmp_path):
    doc = algebra_spec_dict(entry.algebra, {"beta": entry.beta} if entry.beta else None)
    path = tmp_path / "alg.json"
    path.write_text(json.dumps(doc))
    B, forms = load_algebra_spec(str(path))
    assert B.labels == entry.algebra.labels
    assert B.structure_constants == entry.algebra.structure_constants
    if entry.beta is not None:
        assert forms["beta"].matrix == entry.beta.matrix


def test_loader_does_not_symmetrize():
    doc = {"even_labels": ["e"], "odd_labels": ["x", "y"], "products": [{"left": "x", "right": "y", "result": {"e": 1}}]}
    A, _ = load_algebra_spec(doc)
    assert not check_commutative(A).ok


def test_malformed_spec():
    with pytest.raises(AlgebraError):
        load_algebra_spec({"odd_labels": []})

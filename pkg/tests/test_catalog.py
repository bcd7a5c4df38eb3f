from fractions import Fraction

import pytest

from superjordan import linalg
from superjordan.algebra import check_form, check_super_jordan, find_unit
from superjordan.catalog import (
    catalog_names,
    from_name,
    josp_involution,
    make_dt,
    make_spin,
    sweep_entries,
    ujosp_involution,
)
from superjordan.superfunctions import symbolic_parameter


@pytest.mark.parametrize(
    "name,dims",
    [
        ("gl+(1|1)", (2, 2)),
        ("gl+(2|1)", (5, 4)),
        ("josp(1|2)", (2, 2)),
        ("josp(2|2)", (4, 4)),
        ("josp(1|4)", (7, 4)),
        ("ujosp(2,0)", (4, 0)),
        ("spin(1|2)", (2, 2)),
        ("spin(3|0)", (4, 0)),
        ("spin(2|4)", (3, 4)),
        ("dt(5/3)", (2, 2)),
        ("k3", (1, 2)),
        ("dns(2)", (4, 0)),
        ("st_rd(2,3)", (6, 6)),
    ],
)
def test_dimensions(name, dims):
    J = from_name(name).algebra
    assert (J.m, J.n) == dims


@pytest.mark.parametrize("bad", ["gl(1|1)", "josp(1|3)", "dt(0.5)", "spin(1|1)", "st_rd(2,0)", ""])
def test_bad_names(bad):
    with pytest.raises(ValueError):
        from_name(bad)


def test_family_list():
    assert "dt(t)" in catalog_names() and len(catalog_names()) == 8


def _fixed_dimension(involution, size, m, n, complex_):
    """Real dimension of {X : X* = X} inside gl(m|2n) (complexified if asked),
    computed by brute force from the involution alone."""
    coords = [(r, c, part) for r in range(size) for c in range(size) for part in ((0, 1) if complex_ else (0,))]
    rows = []
    cols = []
    for r, c, part in coords:
        w = (Fraction(1), Fraction(0)) if part == 0 else (Fraction(0), Fraction(1))
        image = involution({(r, c): w}, m, n)
        col = []
        for rr, cc, pp in coords:
            v = image.get((rr, cc), (Fraction(0), Fraction(0)))[pp]
            col.append(v - (1 if (rr, cc, pp) == (r, c, part) else 0))
        cols.append(col)
    rows = linalg.transpose(cols)
    return len(coords) - linalg.rank(rows)


@pytest.mark.parametrize("m,n", [(1, 1), (2, 1), (1, 2)])
def test_josp_basis_spans_fixed_points(m, n):
    E = from_name(f"josp({m}|{2 * n})")
    for M in E.matrices:
        assert josp_involution(M, m, n) == {k: v for k, v in M.items() if v != (0, 0)}
    assert _fixed_dimension(josp_involution, m + 2 * n, m, n, False) == E.algebra.dim


@pytest.mark.parametrize("m,n", [(2, 0), (1, 1)])
def test_ujosp_basis_spans_fixed_points(m, n):
    E = from_name(f"ujosp({m},{2 * n})")
    for M in E.matrices:
        assert ujosp_involution(M, m, n) == {k: v for k, v in M.items() if v != (0, 0)}
    assert _fixed_dimension(ujosp_involution, m + 2 * n, m, n, True) == E.algebra.dim


@pytest.mark.parametrize("entry", sweep_entries(), ids=lambda e: e.name)
def test_entries_are_jordan_with_valid_forms(entry):
    assert check_super_jordan(entry.algebra).ok
    if entry.beta is not None:
        assert check_form(entry.algebra, entry.beta).valid


@pytest.mark.parametrize("entry", sweep_entries(), ids=lambda e: e.name)
def test_frames_sum_to_unit(entry):
    J = entry.algebra
    unit = find_unit(J)
    if not entry.frame:
        assert unit is None
        return
    total = tuple(sum(c) for c in zip(*entry.frame_vectors))
    assert total == unit


def test_displayed_products():
    cases = [
        ("gl+(1|1)", "e1 - e2"),
        ("josp(1|2)", "e1 - 1/2*e2"),
        ("spin(1|2)", "e1 + e2"),
        ("k3", "e"),
    ]
    for name, want in cases:
        J = from_name(name).algebra
        assert J.multiply(J.element("x"), J.element("y")) == J.element(want), name
    S = from_name("spin(3|0)").algebra
    assert S.multiply(S.element("x"), S.element("y")) == S.zero()
    assert S.multiply(S.element("x"), S.element("x")) == S.element("e1 + e2")
    gl = from_name("gl+(1|1)")
    assert gl.beta(gl.algebra.element("x"), gl.algebra.element("y")) == 2


def test_spin_beta_associativity_formula():
    E = make_spin(2, 2)
    J, B = E.algebra, E.beta
    one = J.element("e1 + e2")
    f1 = J.element("e1 - e2")
    # expanding β((ab + <u,v>)1 + av + bu, c1 + w) with β = 2(ab + <u,v>) gives
    # 2(abc + a<v,w> + b<u,w> + c<u,v>); a constant of 4 would double-count
    a, b, c = Fraction(2), Fraction(-1), Fraction(3)
    u = tuple(Fraction(1, 2) * x for x in f1)
    v = J.element("v2")
    w = tuple(x + y for x, y in zip(f1, J.element("v2")))
    ip = {("u", "v"): 0, ("u", "w"): Fraction(1, 2), ("v", "w"): 1}
    lhs_a = tuple(a * o + x for o, x in zip(one, u))
    lhs_b = tuple(b * o + x for o, x in zip(one, v))
    rhs_c = tuple(c * o + x for o, x in zip(one, w))
    got = B(J.multiply(lhs_a, lhs_b), rhs_c)
    assert got == B(lhs_a, J.multiply(lhs_b, rhs_c))
    want = 2 * (a * b * c + a * ip[("v", "w")] + b * ip[("u", "w")] + c * ip[("u", "v")])
    assert got == want


def test_symbolic_dt():
    t = symbolic_parameter("t")
    E = make_dt(t)
    J = E.algebra
    xy = J.multiply(J.element("x"), J.element("y"))
    assert xy[0] == 1 and xy[1] == t


def test_dt_zero_has_no_form():
    assert from_name("dt(0)").beta is None

"""Acceptance criteria 1-8, each run exactly and reported as one line.

Run directly (``python tests/test_acceptance.py``) to see the table without
pytest, or through pytest where the lines appear in the terminal summary.
"""

import random
import sys
import time
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from superjordan import worked  # noqa: E402
from superjordan.algebra import flat  # noqa: E402
from superjordan.catalog import from_name, make_dt, make_st_rd  # noqa: E402
from superjordan.decomposition import beta_irreducible_decomposition  # noqa: E402
from superjordan.sampling import point_on_frame, random_lambdas, random_vector, rotated_frame  # noqa: E402
from superjordan.structure import (  # noqa: E402
    is_m_regular,
    metric_at,
    metric_oracle,
    rank_at,
    mult_space,
    structure_algebra,
    tangent_spaces,
)

from conftest import ACCEPTANCE_LINES, POSITIVE_UNITAL  # noqa: E402

SAMPLES = 100
WITH_FORM = [e for e in POSITIVE_UNITAL if e.beta is not None]


def record(number, title, ok, detail=""):
    line = f"criterion {number} ({title}): {'PASS' if ok else 'FAIL'}"
    if detail:
        line += f"  [{detail}]"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def _timed(fn):
    start = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - start


def _group(number, title, fn, budget):
    checks, secs = _timed(fn)
    bad = [c.name for c in checks if not c.ok]
    ok = not bad and (budget is None or secs < budget)
    detail = f"{len(checks)} checks, {secs:.2f}s"
    if budget is not None:
        detail += f" (budget {budget:g}s)"
    if bad:
        detail += f", failing: {bad[:3]}"
    assert record(number, title, ok, detail), detail


def test_criterion_1_worked_examples():
    _group(1, "worked examples", worked.worked_examples, 1.0)


def test_criterion_2_metric_formulas():
    _group(2, "metric formulas", worked.metric_formulas, 5.0)


def test_criterion_3_superfunction_metric():
    _group(3, "superfunction metric on D(t)*", worked.superfunction_metric, 5.0)


def _oracle_sweep(entry, rng):
    J, beta = entry.algebra, entry.beta
    done = 0
    while done < SAMPLES:
        frame = rotated_frame(entry, rng)
        x = point_on_frame(frame, random_lambdas(rng, len(frame)))
        xi = flat(beta, x)
        if not is_m_regular(J, beta, xi)[0]:
            continue
        parity = rng.choice((None, 0, 1))
        a = random_vector(J, rng, parity)
        b = random_vector(J, rng, parity)
        # tangent vectors carried by X_a, X_b at ξ
        ta, tb = flat(beta, J.multiply(a, x)), flat(beta, J.multiply(b, x))
        got = metric_at(J, beta, xi, ta, tb)
        want = metric_oracle(J, beta, xi, a, b)
        if got != want:
            return (x, a, b, got, want)
        done += 1
    return None


def test_criterion_4_oracle_equivalence():
    rng = random.Random(4)
    start = time.perf_counter()
    failures = {}
    for entry in WITH_FORM:
        bad = _oracle_sweep(entry, rng)
        if bad is not None:
            failures[entry.name] = bad
    secs = time.perf_counter() - start
    ok = not failures and secs < 30
    detail = f"{SAMPLES} regular triples x {len(WITH_FORM)} algebras, {secs:.2f}s"
    if failures:
        detail += f", failing: {sorted(failures)}"
    assert record(4, "metric formula = oracle", ok, detail), failures


def _tangent_sweep(entry, rng):
    J, beta = entry.algebra, entry.beta
    m, g = mult_space(J), structure_algebra(J)
    cancelling = 0
    for k in range(SAMPLES):
        frame = rotated_frame(entry, rng)
        lam = random_lambdas(rng, len(frame), engineered=k % 2 == 0)
        if any(lam[i] != 0 and lam[i] + lam[j] == 0 for i in range(len(lam)) for j in range(len(lam))):
            cancelling += 1
        x = point_on_frame(frame, lam)
        rep = tangent_spaces(J, x)
        if not all(rep.matches.values()):
            return ("prediction", x, rep.matches), cancelling
        rank_equal = rank_at(J, m, x) == rank_at(J, g, x)
        if beta is not None:
            criterion, _ = is_m_regular(J, beta, flat(beta, x))
            if criterion != rank_equal:
                return ("regularity", x), cancelling
        if rep.regular != rank_equal:
            return ("regular flag", x), cancelling
    return None, cancelling


def test_criterion_5_tangent_spaces():
    rng = random.Random(5)
    failures = {}
    cancelling = 0
    for entry in POSITIVE_UNITAL:
        bad, c = _tangent_sweep(entry, rng)
        cancelling += c
        if bad is not None:
            failures[entry.name] = bad
    ok = not failures and cancelling > 0
    detail = f"{SAMPLES} points x {len(POSITIVE_UNITAL)} algebras, {cancelling} with a cancelling pair"
    if failures:
        detail += f", failing: {sorted(failures)}"
    assert record(5, "tangent spaces and regularity", ok, detail), failures


def test_criterion_6_identity_suite():
    _group(6, "identity suite", worked.identity_suite, None)


def test_criterion_7_isomorphisms():
    _group(7, "isomorphisms", worked.isomorphisms, None)


def test_criterion_8_decomposition():
    t = Fraction(2)
    S = make_st_rd(t, 3)
    parts = beta_irreducible_decomposition(S.algebra, S.beta)
    iso, why = worked.st_rd_decomposition(t, 3)
    gs = len(structure_algebra(S.algebra))
    gd = len(structure_algebra(make_dt(t).algebra))
    ok = len(parts) == 3 and iso and gs == 3 * gd
    detail = f"{len(parts)} summands, each ~ D(2): {iso}, dim g = {gs} = 3 x {gd}"
    assert record(8, "decomposition of S_t R^3", ok, detail), why


if __name__ == "__main__":
    results = []
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
                results.append(True)
            except AssertionError:
                results.append(False)
    sys.exit(0 if all(results) else 1)

"""Command-line front end.

Exit codes: 0 when every check passes, 1 when a mathematical check fails
(the report carries a witness), 2 for unusable input.
"""

import argparse
import json
import sys
from fractions import Fraction

from . import worked
from .algebra import (
    AlgebraError,
    check_commutative,
    check_form,
    check_kac_formula,
    check_super_jordan,
    flat,
    load_algebra_spec,
    parse_linear_combination,
)
from .catalog import catalog_names, from_name
from .decomposition import (
    FrameError,
    SpectralError,
    check_frame,
    check_frame_rules,
    check_peirce_rules,
    check_projector_algebra,
    classify,
    frame_peirce,
    peirce_of_idempotent,
    spectral,
    spectral_signature,
)
from .linalg import DimensionError, format_scalar
from .structure import (
    _bracket_space,
    inner_derivations,
    is_m_regular,
    metric_at,
    metric_gram,
    mult_space,
    structure_algebra,
    tangent_spaces,
)

COMMANDS = (
    "verify",
    "classify",
    "peirce",
    "frame",
    "spectral",
    "structure",
    "orbit",
    "metric",
    "catalog",
    "reproduce-paper",
)


class InputError(Exception):
    pass


class Report:
    def __init__(self, algebra, seed):
        self.algebra = algebra
        self.seed = seed
        self.checks = []
        self.values = {}

    def check(self, name, ok, witness=None):
        entry = {"name": name, "status": "PASS" if ok else "FAIL"}
        if witness is not None and not ok:
            entry["witness"] = witness
        self.checks.append(entry)
        return ok

    @property
    def ok(self):
        return all(c["status"] == "PASS" for c in self.checks)

    def as_dict(self):
        return {
            "algebra": self.algebra,
            "checks": sorted(self.checks, key=lambda c: c["name"]),
            "values": self.values,
            "seed": self.seed,
        }


def export_report(report):
    return json.dumps(_plain(report.as_dict()), sort_keys=True, indent=2, ensure_ascii=False)


def _plain(obj):
    if isinstance(obj, Fraction):
        return format_scalar(obj)
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, (bool, int, str)) or obj is None:
        return obj
    return str(obj)


def _human(report, out):
    print(f"algebra: {report.algebra}", file=out)
    for c in sorted(report.checks, key=lambda c: c["name"]):
        line = f"{c['name']}: {c['status']}"
        if "witness" in c:
            line += f"  witness: {_plain(c['witness'])}"
        print(line, file=out)
    for k in sorted(report.values):
        v = _plain(report.values[k])
        if isinstance(v, (dict, list)):
            v = json.dumps(v, sort_keys=True, ensure_ascii=False)
        print(f"{k}: {v}", file=out)


# ---------------------------------------------------------------------------
# input


def _load(args):
    if bool(args.algebra) == bool(args.file):
        raise InputError("give exactly one of --algebra or --file")
    if args.algebra:
        try:
            entry = from_name(args.algebra)
        except (ValueError, AlgebraError) as exc:
            raise InputError(str(exc)) from exc
        return entry.name, entry.algebra, entry.beta, entry
    try:
        J, forms = load_algebra_spec(args.file)
    except (OSError, ValueError, AlgebraError) as exc:
        raise InputError(f"cannot read {args.file}: {exc}") from exc
    beta = forms.get("beta") or (next(iter(forms.values())) if forms else None)
    return J.name or args.file, J, beta, None


def _vector(J, text, what):
    if not text:
        raise InputError(f"{what} is required")
    try:
        return J.element(text)
    except (ValueError, KeyError) as exc:
        raise InputError(f"bad {what} {text!r}: {exc}") from exc


def _dual(J, beta, text, what):
    """Dual vector from a combination of labels, each optionally suffixed
    with 'b' for the flat: both "x" and "xb" denote x♭ = β(x, ·)."""
    if not text:
        raise InputError(f"{what} is required")
    if beta is None:
        raise InputError("this algebra has no form β")
    try:
        terms = parse_linear_combination(text)
    except ValueError as exc:
        raise InputError(f"bad {what} {text!r}: {exc}") from exc
    labels = J.labels
    coords = {}
    for lab, c in terms.items():
        if lab in labels:
            key = lab
        elif lab.endswith("b") and lab[:-1] in labels:
            key = lab[:-1]
        else:
            raise InputError(f"unknown basis label {lab!r} in {what}")
        coords[key] = coords.get(key, Fraction(0)) + c
    return flat(beta, J.vector(coords))


def _space(J, S):
    return [J.format_vector(v) for v in S.basis]


# ---------------------------------------------------------------------------
# commands


def cmd_verify(J, beta, args, rep):
    res = check_commutative(J)
    rep.check("supercommutativity", res.ok, _wit(J, res))
    res = check_super_jordan(J)
    rep.check("super Jordan identity", res.ok, _wit(J, res))
    if res.ok:
        res = check_kac_formula(J)
        rep.check("associator formula", res.ok, _wit(J, res))
    if beta is not None:
        f = check_form(J, beta)
        for k, v in f.as_dict().items():
            rep.check(f"beta {k}", v, _plain(f.witnesses.get(k)))


def _wit(J, res):
    if res.witness is None:
        return None
    out = []
    for w in res.witness:
        out.append(J.format_vector(w) if isinstance(w, tuple) else str(w))
    return out


def cmd_classify(J, beta, args, rep):
    r = classify(J, beta)
    rep.values.update({k: (list(v) if isinstance(v, tuple) else v) for k, v in r.items()})


def cmd_peirce(J, beta, args, rep):
    e = _vector(J, args.idempotent, "--idempotent")
    try:
        pd = peirce_of_idempotent(J, e)
    except AlgebraError as exc:
        raise InputError(str(exc)) from exc
    for lam in sorted(pd.subspaces):
        rep.values[f"P_{format_scalar(lam)}"] = _space(J, pd.subspaces[lam])
    res = check_peirce_rules(J, pd)
    rep.check("Peirce multiplication rules", res.ok, _wit(J, res))
    res = check_projector_algebra(pd)
    rep.check("projector algebra", res.ok, _wit(J, res))


def cmd_frame(J, beta, args, rep, entry=None):
    if args.frame:
        es = [_vector(J, part, "--frame") for part in args.frame.split(";") if part.strip()]
    elif entry is not None and entry.frame:
        es = list(entry.frame_vectors)
    else:
        raise InputError("--frame is required (idempotents separated by ';')")
    try:
        frame = check_frame(J, es)
    except FrameError as exc:
        rep.check("Jordan frame", False, [str(exc)] + [_plain(w) for w in (exc.witness or ())])
        return
    rep.check("Jordan frame", True)
    fp = frame_peirce(J, frame)
    res = check_frame_rules(J, fp)
    rep.check("frame multiplication rules", res.ok, _wit(J, res))
    rep.values["primitive"] = list(frame.primitive)
    rep.values["blocks"] = {f"P{i + 1}{j + 1}": _space(J, b) for (i, j), b in sorted(fp.blocks.items())}


def cmd_spectral(J, beta, args, rep):
    x = _vector(J, args.point, "--point")
    try:
        data = spectral(J, x, beta)
    except SpectralError as exc:
        raise InputError(str(exc)) from exc
    rep.values["lambdas"] = list(data.lambdas)
    rep.values["frame"] = [J.format_vector(e) for e in data.frame.idempotents]
    rep.values["signature"] = list(spectral_signature(data))
    rep.values["exact"] = data.exact
    rep.check("x = sum lambda_i e_i", data.reconstruct() == tuple(x))


def cmd_structure(J, beta, args, rep):
    m = mult_space(J)
    b = _bracket_space(J)
    try:
        g = structure_algebra(J)
    except AlgebraError as exc:
        rep.check("g(J) bracket closed", False, [str(exc)])
        return
    rep.check("g(J) bracket closed", True)
    rep.values["dim m_J"] = len(m)
    rep.values["dim [m_J,m_J]"] = len(b)
    rep.values["dim g(J)"] = len(g)
    rep.values["dim g(J) (even|odd)"] = [sum(1 for op in g.basis if op.parity == p) for p in (0, 1)]
    rep.values["dim Der_0(J)"] = len(inner_derivations(J))


def cmd_orbit(J, beta, args, rep):
    x = _vector(J, args.point, "--point")
    try:
        r = tangent_spaces(J, x)
    except (AlgebraError, SpectralError) as exc:
        raise InputError(str(exc)) from exc
    d = r.as_dict(J)
    rep.values.update(d)
    for k, v in sorted(r.matches.items()):
        rep.check(f"{k} equals Peirce prediction", v, d["bases"][k])
    if beta is not None:
        ok, witness = is_m_regular(J, beta, flat(beta, x))
        rep.values["m_regular"] = ok
        if witness is not None:
            rep.values["cancelling pair"] = list(witness)


def cmd_metric(J, beta, args, rep):
    xi = _dual(J, beta, args.xi, "--xi")
    try:
        if args.eta or args.etap:
            eta = _dual(J, beta, args.eta, "--eta")
            etap = _dual(J, beta, args.etap, "--etap")
            rep.values["g_xi"] = metric_at(J, beta, xi, eta, etap)
        else:
            G = metric_gram(J, beta, xi)
            rep.values["gram"] = [list(r) for r in G.gram]
            rep.values["tangent_basis"] = [list(v) for v in G.tangent_basis]
            rep.values["signature"] = list(G.signature)
    except AlgebraError as exc:
        raise InputError(str(exc)) from exc


def cmd_catalog(args, rep):
    if args.algebra:
        name, J, beta, entry = _load(args)
        rep.algebra = name
        rep.values["labels"] = list(J.labels)
        rep.values["dimension"] = [J.m, J.n]
        rep.values["frame"] = list(entry.frame)
        rep.values["notes"] = entry.notes
        rep.values["products"] = {
            f"{{{J.labels[i]},{J.labels[j]}}}": J.format_vector(J.basis_product(i, j))
            for i in range(J.dim)
            for j in range(i, J.dim)
            if any(J.basis_product(i, j))
        }
        if beta is not None:
            rep.values["beta"] = [list(r) for r in beta.matrix]
    else:
        rep.values["families"] = catalog_names()


def cmd_reproduce(args, rep):
    for group, checks in worked.run_all(args.seed):
        for c in checks:
            rep.check(f"{group} / {c.name}", c.ok, _plain(c.witness))


def build_parser():
    p = argparse.ArgumentParser(prog="superjordan", description="Exact computations with Jordan superalgebras.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--algebra", help="catalog name, e.g. dt(-1/2), josp(2|2), spin(3|0)")
    p.add_argument("--file", help="algebra spec JSON file")
    p.add_argument("--point", help='even element, e.g. "2e1 + 3e2"')
    p.add_argument("--xi", help="dual point; labels may carry the flat suffix b")
    p.add_argument("--eta", help="first tangent vector (dual)")
    p.add_argument("--etap", help="second tangent vector (dual)")
    p.add_argument("--idempotent", help="idempotent for the Peirce decomposition")
    p.add_argument("--frame", help="idempotents separated by ';'")
    p.add_argument("--json", action="store_true", help="print the JSON report")
    p.add_argument("--seed", type=int, default=0)
    return p


def run(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    rep = Report(args.algebra or args.file, args.seed)
    try:
        if args.command == "catalog":
            cmd_catalog(args, rep)
        elif args.command == "reproduce-paper":
            rep.algebra = None
            cmd_reproduce(args, rep)
        else:
            name, J, beta, entry = _load(args)
            rep.algebra = name
            handler = {
                "verify": cmd_verify,
                "classify": cmd_classify,
                "peirce": cmd_peirce,
                "spectral": cmd_spectral,
                "structure": cmd_structure,
                "orbit": cmd_orbit,
                "metric": cmd_metric,
            }.get(args.command)
            if handler is None:
                cmd_frame(J, beta, args, rep, entry)
            else:
                handler(J, beta, args, rep)
    except (InputError, DimensionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.json:
        print(export_report(rep), file=out)
    else:
        _human(rep, out)
    return 0 if rep.ok else 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()

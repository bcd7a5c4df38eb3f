import io
import json

import pytest

from superjordan.algebra import algebra_spec_dict
from superjordan.catalog import from_name
from superjordan.cli import Report, export_report, run


def call(*argv):
    buf = io.StringIO()
    code = run(list(argv), out=buf)
    return code, buf.getvalue()


def call_json(*argv):
    code, text = call(*argv, "--json")
    return code, json.loads(text), text


def test_verify_dt_passes():
    code, text = call("verify", "--algebra", "dt(-1/2)")
    assert code == 0
    assert "super Jordan identity: PASS" in text


def test_verify_dns_fails_with_replayable_witness():
    code, rep, _ = call_json("verify", "--algebra", "dns(2)")
    assert code == 1
    bad = [c for c in rep["checks"] if c["status"] == "FAIL"]
    assert [c["name"] for c in bad] == ["super Jordan identity"]
    J = from_name("dns(2)").algebra
    a, b, aa = (J.element(s) for s in bad[0]["witness"])
    assert J.multiply(a, a) == aa
    assert J.multiply(a, J.multiply(b, aa)) != J.multiply(J.multiply(a, b), aa)
    assert bad[0]["witness"][:2] == ["x", "e1"]


def test_input_errors():
    assert call("verify")[0] == 2
    assert call("verify", "--algebra", "nonsense(3)")[0] == 2
    assert call("verify", "--algebra", "dt(2)", "--file", "x.json")[0] == 2
    assert call("spectral", "--algebra", "dt(2)")[0] == 2
    assert call("spectral", "--algebra", "dt(2)", "--point", "zz")[0] == 2
    assert call("bogus")[0] == 2


def test_unreadable_file(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{ not json")
    assert call("verify", "--file", str(p))[0] == 2


def test_file_round_trip(tmp_path):
    E = from_name("dt(2)")
    p = tmp_path / "dt2.json"
    p.write_text(json.dumps(algebra_spec_dict(E.algebra, {"beta": E.beta})))
    code, rep, _ = call_json("verify", "--file", str(p))
    assert code == 0
    assert {c["name"] for c in rep["checks"]} >= {"super Jordan identity", "beta nondegenerate"}


def test_metric_value():
    code, rep, _ = call_json("metric", "--algebra", "dt(2)", "--xi", "2e1+3e2", "--eta", "xb", "--etap", "yb")
    assert code == 0
    assert rep["values"]["g_xi"] == "4/5"


def test_metric_gram_and_refusal():
    code, rep, _ = call_json("metric", "--algebra", "dt(2)", "--xi", "3e1b+5e2b")
    assert code == 0 and len(rep["values"]["gram"]) == 4
    assert call("metric", "--algebra", "dt(2)", "--xi", "e1-e2", "--eta", "xb", "--etap", "yb")[0] == 2


def test_classify_k3():
    code, rep, _ = call_json("classify", "--algebra", "k3")
    assert code == 0
    assert rep["values"]["euclidean"] is True
    assert rep["values"]["positive"] is False


def test_orbit_report():
    code, rep, _ = call_json("orbit", "--algebra", "dt(-1/2)", "--point", "1e1+2e2")
    assert code == 0
    assert rep["values"]["regular"] is True
    assert rep["values"]["dims"]["m_x"] == rep["values"]["dims"]["g_x"] == 4
    code, rep, _ = call_json("orbit", "--algebra", "dt(2)", "--point", "e1-e2")
    assert code == 0
    assert rep["values"]["m_regular"] is False


@pytest.mark.parametrize(
    "argv",
    [
        ("peirce", "--algebra", "dt(2)", "--idempotent", "e1"),
        ("frame", "--algebra", "josp(2|2)"),
        ("spectral", "--algebra", "spin(3|0)", "--point", "2e1+x"),
        ("structure", "--algebra", "st_rd(2,2)"),
        ("catalog",),
        ("catalog", "--algebra", "k3"),
    ],
)
def test_commands_succeed(argv):
    assert call(*argv)[0] == 0


def test_frame_error_is_a_failed_check():
    code, rep, _ = call_json("frame", "--algebra", "dt(2)", "--frame", "e1;e1")
    assert code == 1
    assert rep["checks"][0]["status"] == "FAIL"


def test_structure_dimensions():
    code, rep, _ = call_json("structure", "--algebra", "dt(2)")
    assert rep["values"]["dim g(J)"] == 9
    assert rep["values"]["dim m_J"] == 4


def test_json_is_deterministic():
    argv = ("reproduce-paper", "--seed", "7")
    a = call_json(*argv)
    b = call_json(*argv)
    assert a[0] == 0
    assert a[2] == b[2]
    assert a[1]["seed"] == 7


def test_empty_report():
    rep = json.loads(export_report(Report("k3", 0)))
    assert rep == {"algebra": "k3", "checks": [], "seed": 0, "values": {}}

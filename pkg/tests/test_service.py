import json

from click.testing import CliRunner
from fastapi.testclient import TestClient

from hopfalg.cli import main
from hopfalg.service import app

client = TestClient(app)


def test_health():
    assert client.get("/health").json() == {"status": "ok"}


def test_enumerate_endpoint():
    response = client.post("/enumerate", json={"family": "pbt", "n": 4})
    assert response.status_code == 200
    data = response.json()
    assert data["count"] == 5 and len(data["items"]) == 5
    response = client.post("/enumerate",
                           json={"family": "sp-poset", "n": 3,
                                 "connected": True})
    assert response.json()["count"] == 12
    assert client.post("/enumerate",
                       json={"family": "bogus", "n": 2}).status_code == 400
    assert client.post("/enumerate",
                       json={"family": "pt", "n": 0}).status_code == 422


def test_eval_endpoint_examples():
    response = client.post("/eval", json={
        "algebra": "mr", "expression": "product 12 1"})
    assert response.status_code == 200
    assert response.json()["result"] == "123 + 132 + 312"

    response = client.post("/eval", json={
        "algebra": "qsym", "expression": "product x[1] x[1]"})
    assert response.json()["result"] == "2*x[1,1] + x[2]"
    assert response.json()["terms"] == [
        {"coeff": "2", "key": "x[1,1]"}, {"coeff": "1", "key": "x[2]"}]

    response = client.post("/eval", json={
        "algebra": "ck", "expression": "coproduct {[[]]}"})
    assert response.json()["result"] == \
        "{[[]]} (x) {} + {[]} (x) {[]} + {} (x) {[[]]}"
    # a bare tree is accepted as a one-tree forest
    bare = client.post("/eval", json={
        "algebra": "ck", "expression": "coproduct [[]]"})
    assert bare.json()["result"] == response.json()["result"]

    response = client.post("/eval", json={
        "algebra": "brace-operad",
        "expression": "compose [[]] x 12 o1 [[]] x 12"})
    assert response.json()["result"] == \
        "[[[]]] x 123 + [[] []] x 123 + [[] []] x 132"
    assert response.json()["arity"] == 3


def test_eval_errors():
    assert client.post("/eval", json={
        "algebra": "qsym", "expression": "product x[0]"}).status_code == 400
    assert client.post("/eval", json={
        "algebra": "nope", "expression": "product 1 2"}).status_code == 400
    assert client.post("/eval", json={
        "algebra": "mr", "expression": "product 11 1"}).status_code == 400
    response = client.post("/eval", json={
        "algebra": "dipt", "expression": "product . . . . , . . . .",
        "maxdeg": 4})
    assert response.status_code == 400
    assert "degree" in response.json()["detail"]


def test_check_endpoint():
    response = client.post("/check", json={"suite": "sr111"})
    assert response.status_code == 200
    data = response.json()
    assert data["passed"] and data["checks"][0]["status"] == "pass"
    assert client.post("/check",
                       json={"suite": "wat"}).status_code == 400


def test_table_endpoint():
    response = client.post("/table", json={"name": "series-parallel"})
    data = response.json()
    assert data["passed"]
    assert data["rows"][0]["values"] == [1, 3, 19, 195, 2791]
    assert data["rows"][1]["values"] == [1, 2, 12, 122, 1740]
    assert client.post("/table", json={"name": "wat"}).status_code == 400


# -- the command line is a thin client of the same service ---------------------


def run_cli(*args):
    return CliRunner().invoke(main, list(args))


def test_cli_eval_and_exit_codes():
    result = run_cli("eval", "mr", "product 12 1")
    assert result.exit_code == 0
    assert result.output.strip() == "123 + 132 + 312"

    result = run_cli("eval", "qsym", "product x[1] x[1]")
    assert result.output.strip() == "2*x[1,1] + x[2]"

    result = run_cli("eval", "qsym", "product x[zz]")
    assert result.exit_code == 2


def test_cli_enumerate():
    result = run_cli("enumerate", "pt", "1")
    assert result.exit_code == 0
    assert result.output.splitlines() == ["pt n=1: 1 elements", "."]
    result = run_cli("enumerate", "sp-poset", "3", "--connected")
    assert "12 elements" in result.output


def test_cli_check_and_table():
    result = run_cli("check", "sr111")
    assert result.exit_code == 0
    assert "suite sr111: pass" in result.output
    result = run_cli("table", "catalan")
    assert result.exit_code == 0
    assert "1 2 5 14 42" in result.output
    result = run_cli("table", "supercatalan")
    assert "1 3 11 45 197" in result.output
    assert "note:" in result.output


def test_cli_json_mode_mirrors_text():
    plain = run_cli("eval", "qsym", "product x[1] x[2]")
    as_json = run_cli("--json", "eval", "qsym", "product x[1] x[2]")
    data = json.loads(as_json.output)
    assert data["result"] == plain.output.strip()
    rebuilt = " + ".join(
        t["key"] if t["coeff"] == "1" else f"{t['coeff']}*{t['key']}"
        for t in data["terms"])
    assert rebuilt == data["result"]


def test_cli_determinism():
    first = run_cli("eval", "gl", "product {[]} {[],[]}")
    second = run_cli("eval", "gl", "product {[]} {[],[]}")
    assert first.exit_code == second.exit_code == 0
    assert first.output == second.output
    assert "+" in first.output


def test_cli_exit_code_on_failing_check(monkeypatch):
    from hopfalg import checks

    def failing_suite(name, maxdeg=None, seed=0):
        report = checks.Report(name)
        report.add(("doomed", False, "constructed failure"))
        return report

    monkeypatch.setattr(checks, "run_suite", failing_suite)
    result = run_cli("check", "series")
    assert result.exit_code == 1
    assert "doomed: fail" in result.output
    assert "suite series: FAIL" in result.output


def test_cli_lie_file(tmp_path):
    path = tmp_path / "heisenberg.json"
    path.write_text(json.dumps({
        "basis": ["p", "q", "z"], "weights": [1, 1, 2],
        "brackets": [{"left": 0, "right": 1, "value": [[2, "1"]]}]}))
    result = run_cli("eval", "lie", "smb11 x1 x2", "--lie-file", str(path))
    assert result.exit_code == 0
    assert result.output.strip() == "1/2*z"


def test_eval_outputs_reparse():
    from hopfalg import grammar
    from hopfalg.core import LinComb
    from hopfalg.zoo import mr_product
    from hopfalg.trees import Permutation
    response = client.post("/eval", json={
        "algebra": "mr", "expression": "product 21 1"})
    terms = response.json()["terms"]
    rebuilt = LinComb.from_terms(
        (grammar.parse_permutation(t["key"]), int(t["coeff"])) for t in terms)
    direct = mr_product(LinComb.of(Permutation((2, 1))),
                        LinComb.of(Permutation((1,))))
    assert rebuilt == direct

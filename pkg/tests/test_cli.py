import json
from pathlib import Path

from app.services.trees import generator
from app.services.verify import CHAIN_EXAMPLE


def test_eval_prints_the_tree_pair(invoke, y0):
    result = invoke("eval", "y0")
    assert result.exit_code == 0
    assert json.loads(result.stdout) == y0.to_json()


def test_eval_json(invoke):
    result = invoke("eval", "y1<>y0", "--json")
    assert result.exit_code == 0
    body = json.loads(result.stdout)
    assert body["central_leaf"] == "111"
    assert body["internal_vertices"] == 4


def test_parse_error_exits_with_status_2(invoke):
    result = invoke("eval", "y0 *")
    assert result.exit_code == 2

    result = invoke("eval", "y0 *", "--json")
    assert result.exit_code == 2
    assert json.loads(result.stdout)["error"]["type"] == "parse_error"


def test_factorize(invoke):
    result = invoke("factorize", "y1<>y0")
    assert result.exit_code == 0
    lines = result.stdout.strip().splitlines()
    assert [json.loads(line) for line in lines] == [generator(1).to_json(), generator(0).to_json()]


def test_link(invoke):
    result = invoke("link", "y0")
    assert result.exit_code == 0
    assert "components: 1" in result.stdout
    assert "crossings: 4" in result.stdout
    assert result.stdout.count("X(") == 4


def test_invariants(invoke):
    result = invoke("invariants", "H(1)")
    assert result.exit_code == 0
    assert "components: 2" in result.stdout
    assert "V: -t^1/2 - t^5/2" in result.stdout
    assert "V up to units: 1 + t^2" in result.stdout
    assert "V(marked): 1" in result.stdout

    result = invoke("invariants", "H(1)", "--max-crossings", "0", "--json")
    assert result.exit_code == 2
    assert json.loads(result.stdout)["error"]["type"] == "resource_error"


def test_treelink(invoke, tmp_path):
    path = tmp_path / "chain.json"
    path.write_text(json.dumps(CHAIN_EXAMPLE))
    result = invoke("treelink", str(path))
    assert result.exit_code == 0
    assert "lk(v1,v2) = 1" in result.stdout
    assert "lk(v1,v3) = -1" in result.stdout
    assert "components: 3" in result.stdout


def test_treelink_rejects_bad_payloads(invoke, tmp_path):
    path = tmp_path / "broken.json"
    path.write_text(json.dumps({"vertices": [{"name": "a"}]}))
    result = invoke("treelink", str(path), "--json")
    assert result.exit_code == 2
    assert json.loads(result.stdout)["error"]["type"] == "invalid_payload"


def test_verify(invoke):
    result = invoke("verify", "relations", "--cases", "0")
    assert result.exit_code == 0
    assert result.stdout.startswith("relations: PASS")

    assert invoke("verify", "nope").exit_code == 2


def test_render_to_file(invoke, tmp_path):
    out = tmp_path / "y0.svg"
    result = invoke("render", "y0", "-o", str(out))
    assert result.exit_code == 0
    assert out.read_text().startswith("<?xml")


def test_search_without_a_match(invoke):
    result = invoke("search", "trefoil", "--max-vertices", "1")
    assert result.exit_code == 1
    assert "no element" in result.stdout


def test_treelink_fixture(invoke):
    fixture = Path(__file__).parent / "fixtures" / "chain.json"
    result = invoke("treelink", str(fixture), "--json")
    assert result.exit_code == 0
    assert '"v2,v3": 0' in result.stdout


def test_invariants_of_the_identity(invoke):
    result = invoke("invariants", "1")
    assert result.exit_code == 0
    assert "components: 1" in result.stdout
    assert "V: 1" in result.stdout

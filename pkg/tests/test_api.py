from app.services.verify import CHAIN_EXAMPLE

API = "/api/v1"


def test_health(client):
    response = client.get("/health")
    assert response.status_code == 200
    assert response.json()["status"] == "healthy"
    assert "relations" in client.get("/info").json()["suites"]


def test_eval(client):
    response = client.post(f"{API}/elements/eval", json={"expression": "y0"})
    assert response.status_code == 200
    body = response.json()
    assert body["element"] == {"plus": [["L", "L", "L"], "L", "L"], "minus": ["L", "L", ["L", "L", "L"]]}
    assert body["leaves"] == 5
    assert body["internal_vertices"] == 2
    assert body["central_leaf"] == "1"


def test_bad_expression_is_a_400(client):
    response = client.post(f"{API}/elements/eval", json={"expression": "y0 *"})
    assert response.status_code == 400
    assert response.json()["detail"]["type"] == "parse_error"


def test_factorize(client):
    response = client.post(f"{API}/elements/factorize", json={"expression": "y1<>y0"})
    assert response.status_code == 200
    assert len(response.json()["factors"]) == 2


def test_diagram(client):
    response = client.post(f"{API}/links/diagram", json={"expression": "y0"})
    assert response.status_code == 200
    body = response.json()
    assert body["crossings"] == 4
    assert body["components"] == 1
    assert len(body["pd"]) == 4
    assert body["leaf_components"] == [0] * 5


def test_retarget(client):
    response = client.post(f"{API}/links/retarget", json={"expression": "H(1)", "leaf": "0"})
    assert response.status_code == 200

    response = client.post(f"{API}/links/retarget", json={"expression": "y0", "leaf": "0"})
    assert response.status_code == 400
    assert response.json()["detail"]["type"] == "invalid_address"


def test_invariants(client):
    response = client.post(f"{API}/invariants", json={"expression": "H(1)"})
    assert response.status_code == 200
    assert response.json() == {
        "components": 2,
        "linking_matrix": [[0, 1], [1, 0]],
        "jones": "-t^1/2 - t^5/2",
        "unoriented_jones": "1 + t^2",
        "marked_jones": "1",
        "crossings": 6,
    }


def test_treelinks(client):
    response = client.post(f"{API}/treelinks", json=CHAIN_EXAMPLE)
    assert response.status_code == 200
    assert response.json()["linking"] == {"v1,v2": 1, "v1,v3": -1, "v2,v3": 0}

    cycle = {
        "vertices": [{"name": n, "element": "y0"} for n in ("a", "b", "c")],
        "edges": [{"a": "a", "b": "b", "label": 1}, {"a": "b", "b": "c", "label": 1},
                  {"a": "c", "b": "a", "label": 1}],
    }
    response = client.post(f"{API}/treelinks", json=cycle)
    assert response.status_code == 400
    assert response.json()["detail"]["type"] == "structure_error"


def test_verify(client):
    response = client.get(f"{API}/verify/relations", params={"cases": 0})
    assert response.status_code == 200
    assert response.json()["passed"] is True
    assert client.get(f"{API}/verify/nope").status_code == 404


def test_render(client):
    response = client.post(f"{API}/render", json={"expression": "y1"})
    assert response.status_code == 200
    assert response.headers["content-type"].startswith("image/svg+xml")
    assert response.text.startswith("<?xml")

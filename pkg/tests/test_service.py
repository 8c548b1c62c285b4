from __future__ import annotations

import json

import pytest
from fastapi.testclient import TestClient

from cogen.emitter import emit_flat
from cogen.model import ComponentIntent, ComponentKind, StyleTheme
from cogen.service import create_app


@pytest.fixture(scope="module")
def client() -> TestClient:
    return TestClient(create_app())


def test_health(client: TestClient) -> None:
    response = client.get("/health")
    assert response.status_code == 200
    assert response.json() == {"status": "ok"}


def test_generate_returns_json_and_instructions(client: TestClient) -> None:
    response = client.post(
        "/generate",
        json={"prompt": "Generate a Professional Button with a border radius of 10.0"},
    )
    assert response.status_code == 200
    body = response.json()
    assert body["json"]["name"] == "Professional/Button/Default"
    assert body["json"]["border_radius"] == 10.0
    assert body["instructions"][0]["op"] == "create_frame"
    assert body["instructions"][1]["op"] == "create_text"
    assert body["instructions"][1]["parent"] == 0


def test_generate_nested_schema_in_body(client: TestClient) -> None:
    response = client.post(
        "/generate", json={"prompt": "create a menu list", "schema": "nested"}
    )
    assert response.status_code == 200
    body = response.json()
    assert body["json"]["kind"] == "AutoLayout"
    assert len(body["json"]["children"]) == 3
    assert len(body["instructions"]) == 7


def test_generate_bad_bodies_are_400(client: TestClient) -> None:
    assert client.post("/generate", json={}).status_code == 400
    assert client.post("/generate", json={"prompt": "  "}).status_code == 400
    assert client.post("/generate", json={"prompt": 7}).status_code == 400
    assert (
        client.post("/generate", json={"prompt": "create a button", "schema": "deep"}).status_code
        == 400
    )
    response = client.post(
        "/generate", content=b"not json", headers={"content-type": "application/json"}
    )
    assert response.status_code == 400
    assert "error" in response.json()


def test_generate_unknown_kind_is_422(client: TestClient) -> None:
    response = client.post("/generate", json={"prompt": "hello world"})
    assert response.status_code == 422
    assert "error" in response.json()


def test_describe_accepts_object_and_string(client: TestClient) -> None:
    document = emit_flat(
        ComponentIntent(kind=ComponentKind.BUTTON, style=StyleTheme.TRENDY)
    ).to_json_dict()
    as_object = client.post("/describe", json={"json": document})
    assert as_object.status_code == 200
    prompt = as_object.json()["prompt"]
    assert "Button" in prompt and "Trendy" in prompt

    as_string = client.post("/describe", json={"json": json.dumps(document)})
    assert as_string.status_code == 200
    assert "Button" in as_string.json()["prompt"]


def test_describe_bad_bodies_are_400(client: TestClient) -> None:
    assert client.post("/describe", json={}).status_code == 400
    assert client.post("/describe", json={"json": ""}).status_code == 400
    response = client.post(
        "/describe", content=b"{", headers={"content-type": "application/json"}
    )
    assert response.status_code == 400


def test_describe_non_component_json_is_422(client: TestClient) -> None:
    response = client.post("/describe", json={"json": {"height": 4}})
    assert response.status_code == 422
    assert "error" in response.json()


def test_cors_header_present(client: TestClient) -> None:
    response = client.post(
        "/generate",
        json={"prompt": "create a button"},
        headers={"origin": "null"},
    )
    assert response.headers["access-control-allow-origin"] == "*"


def test_create_app_rejects_bad_schema() -> None:
    with pytest.raises(ValueError):
        create_app(schema="deep")


def test_app_schema_default_applies() -> None:
    nested_client = TestClient(create_app(schema="nested"))
    body = nested_client.post("/generate", json={"prompt": "create a label"}).json()
    assert body["json"]["kind"] == "Text"
    assert body["json"]["children"] == []

import math

import pytest
from fastapi.testclient import TestClient

from api.main import app


@pytest.fixture
def client():
    return TestClient(app)


def test_health(client):
    response = client.get("/health")
    assert response.status_code == 200
    assert response.json()["status"] == "healthy"


def test_weight_of_overlapping_reads(client):
    body = {
        "a": {"id": 0, "left": 0.0, "length": 200.0},
        "b": {"id": 1, "left": 104.5, "length": 215.0},
    }
    response = client.post("/weight", json=body)
    assert response.status_code == 200
    data = response.json()
    assert data["overlapping"]
    assert data["weight"] == pytest.approx(math.log(math.erfc(0.5)) - math.log(0.4))


def test_weight_of_disjoint_reads(client):
    body = {
        "a": {"id": 0, "left": 0.0, "length": 100.0},
        "b": {"id": 1, "left": 100.0, "length": 100.0},
    }
    data = client.post("/weight", json=body).json()
    assert data == {"overlapping": False, "weight": None}


def test_weight_of_a_read_with_itself(client):
    read = {"id": 3, "left": 0.0, "length": 100.0}
    assert client.post("/weight", json={"a": read, "b": read}).status_code == 422


def test_cluster_partitions_the_reads(client):
    reads = [
        {"id": 10 + i, "left": float(400 - 10 * i), "length": 112.0} for i in range(20)
    ]
    reads += [{"id": 100 + i, "left": 1000.0 + 7 * i, "length": 180.0} for i in range(6)]
    response = client.post("/cluster", json={"reads": reads, "algo": "h2"})
    assert response.status_code == 200

    data = response.json()
    assert data["n"] == 26
    members = [read_id for cluster in data["clusters"] for read_id in cluster]
    assert sorted(members) == sorted(r["id"] for r in reads)
    assert data["cost"] >= 0.0


def test_cluster_rejects_duplicate_ids(client):
    reads = [
        {"id": 1, "left": 0.0, "length": 112.0},
        {"id": 1, "left": 5.0, "length": 112.0},
    ]
    assert client.post("/cluster", json={"reads": reads}).status_code == 422


def test_cluster_rejects_bad_lengths(client):
    reads = [{"id": 1, "left": 0.0, "length": -4.0}]
    assert client.post("/cluster", json={"reads": reads}).status_code == 422


def test_fdr(client):
    response = client.post("/fdr", json={"pvalues": [0.001, 0.02, 0.5], "rate": 0.1})
    assert response.status_code == 200
    assert response.json() == {"selected": [0, 1]}


def test_fdr_rejects_bad_rates(client):
    response = client.post("/fdr", json={"pvalues": [0.1], "rate": 0.0})
    assert response.status_code == 422

import argparse
import json
import sys
from typing import Any

import requests

from cluster_editing import tsv_io


def query_cluster(
    reads: list[dict[str, float]],
    algo: str = "adaptive",
    base_url: str = "http://localhost:8000",
) -> dict[str, Any]:
    """
    Send reads to the /cluster endpoint.

    Args:
        reads: dicts with id, left and length
        algo: exact, h1, h2 or adaptive
        base_url: Base URL of the API server

    Returns:
        Decoded response body
    """
    response = requests.post(
        f"{base_url}/cluster", json={"reads": reads, "algo": algo}, timeout=300
    )
    response.raise_for_status()
    return response.json()


def main() -> int:
    parser = argparse.ArgumentParser(description="Client for the cluster editing API")
    parser.add_argument("reads", help="Reads TSV (id, left, length)")
    parser.add_argument(
        "--algo", default="adaptive", choices=["exact", "h1", "h2", "adaptive"]
    )
    parser.add_argument(
        "--url",
        default="http://localhost:8000",
        help="Base URL of the API server (default: http://localhost:8000)",
    )
    parser.add_argument(
        "--pretty", action="store_true", help="Pretty print the JSON response"
    )
    args = parser.parse_args()

    reads = [
        {"id": r.id, "left": r.left, "length": r.length}
        for r in tsv_io.read_reads(args.reads)
    ]
    result = query_cluster(reads, args.algo, args.url)
    print(json.dumps(result, indent=2) if args.pretty else result)
    return 0


if __name__ == "__main__":
    sys.exit(main())

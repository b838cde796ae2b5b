#!/usr/bin/env python
"""Run the claim table over every lattice with at most seven elements.

Writes results/harness.json with one status per claim and the hex
canonical code of each counterexample.
"""

from __future__ import annotations

import json
import os

from lattice_workbench.corpus import enumerate_lattices
from lattice_workbench.harness import run_harness

MAX_SIZE = 7
WORKERS = 4


def main() -> None:
    corpus = enumerate_lattices(MAX_SIZE)
    results = run_harness(corpus, workers=WORKERS)

    payload = {
        "bound": MAX_SIZE,
        "counts": corpus.counts(),
        "claims": {
            r.claim_id: {
                "status": r.status,
                "instances": r.instances,
                "counterexamples": [code.hex() for code, _ in r.witnesses],
                "note": r.note,
            }
            for r in results
        },
    }

    out_dir = os.path.join(os.path.dirname(__file__), "..", "results")
    os.makedirs(out_dir, exist_ok=True)
    out_path = os.path.join(out_dir, "harness.json")

    with open(out_path, "w") as f:
        json.dump(payload, f, indent=2)
        f.write("\n")

    print(f"Wrote {out_path}")
    for r in results:
        print(f"  {r.line()}")


if __name__ == "__main__":
    main()

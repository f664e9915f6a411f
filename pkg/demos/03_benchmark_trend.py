"""Comparing solver variants with the benchmark harness.

Runs a scaled-down version of the variant comparison (random Max-2SAT at a
high clause/variable ratio), collects the CSV the harness emits, and
summarizes branch counts per variant. The full-scale run lives in the
acceptance suite (tests/test_acceptance.py).
"""

import csv
import io
import statistics
import tempfile

from maxsat.cli import parse_manifest, run_bench, CSV_COLUMNS

SEEDS = range(1, 16)
manifest = "".join(f"gen ksat n=20 m=300 k=2 seed={s}\n" for s in SEEDS)

entries = parse_manifest(manifest)
rows = run_bench(entries, variants=["12", "1234", "z"], jobs=2)

buffer = io.StringIO()
writer = csv.DictWriter(buffer, fieldnames=CSV_COLUMNS)
writer.writeheader()
writer.writerows(rows)
with tempfile.NamedTemporaryFile("w", suffix=".csv", delete=False) as fh:
    fh.write(buffer.getvalue())
    print(f"CSV written to {fh.name}\n")

branches = {"12": [], "1234": [], "z": []}
optima = {}
for row in rows:
    assert row["status"] == "optimal"
    branches[row["variant"]].append(int(row["branches"]))
    optima.setdefault(row["instance"], set()).add(row["optimum"])

print(f"{'variant':>8} {'median branches':>16} {'rule firings (r3..r6)':>24}")
for variant in ("12", "1234", "z"):
    fired = sum(int(r["r3"]) + int(r["r4"]) + int(r["r5"]) + int(r["r6"])
                for r in rows if r["variant"] == variant)
    print(f"{variant:>8} {statistics.median(branches[variant]):>16} {fired:>24}")

assert all(len(v) == 1 for v in optima.values()), "variants must agree"
print("\nEvery variant proved the same optimum on every instance.")

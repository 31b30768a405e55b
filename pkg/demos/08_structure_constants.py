"""Structure constants and the command-line interface.

Computes the g2 table, prints a few nonzero constants, checks Jacobi on all
basis triples, then calls the same code through the ``zornlie`` CLI.
"""
import json

from zornlie import structure, verify
from zornlie.cli import main

sc = verify.structure_constants("g2")
print("g2:", sc.dim, "basis elements,", sc.nnz, "nonzero constants")
for e, (i, j, k) in enumerate(sc.idx.tolist()[:5]):
    print(f"  [{sc.labels[i]}, {sc.labels[j]}] has {sc.value(e)} {sc.labels[k]}")
n, bad = structure.jacobi_exhaustive(sc)
print("Jacobi on", n, "basis triples, failures:", len(bad))

print("round trip through JSON:", sc.from_json(json.loads(json.dumps(sc.to_json()))).to_json() == sc.to_json())

print("\n$ zornlie dims")
code = main(["dims"])
print("exit code", code)

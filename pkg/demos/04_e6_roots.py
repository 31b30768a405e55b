"""e6 roots and the weights of Table 1.

Lists the 72 roots in the orthonormal k-basis and recomputes every Table 1
row by bracketing generators against the Cartan elements of a2+ and a2-.
"""
from zornlie import algebras, roots

alg = algebras.get("e6")
print("dim e6 =", alg.dim, "branching:", alg.branching())

rs = roots.e6_root_list()
print(len(rs), "roots; first integral:", rs[0], " first half-integral:", rs[40])

print(f"{'generator':10s} {'a2+ weight':28s} {'a2- weight':28s} ok")
for row in roots.table1_audit():
    w = {s: "(" + ", ".join(str(c) for c in row.weights[s]) + ")" for s in "+-"}
    blank = "".join(s for s, p in row.printed.items() if p is None)
    note = f"  (blank cell {blank} computed)" if blank else ""
    print(f"{row.generator:10s} {w['+']:28s} {w['-']:28s} {row.ok}{note}")

classes = roots.outer_weight_classes()
for k, v in sorted(classes.items()):
    print(f"outer slot {k}: weight (" + ", ".join(str(c) for c in next(iter(v))) + ")")

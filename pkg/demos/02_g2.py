"""g2 as 14 Zorn-type matrices acting on the octonions.

Each generator is a derivation of the octonions; the matrix bracket matches
the commutator of the actions, and the Cartan pair (H1, H2) reads off the
weights.
"""
from zornlie import g2, roots, suites
from zornlie.composition import SplitOctonion

print("generators:", ", ".join(g2.LABELS))

h1, gp = g2.generator("H1"), g2.generator("g1+")
print("[H1, g1+] coordinates:", [str(c) for c in g2.coords(g2.g2_bracket(h1, gp)).to_scalars() if str(c) != "0"])

# the action is a derivation: D(ab) = D(a) b + a D(b)
a, b = SplitOctonion.basis(2), SplitOctonion.basis(6)
d = g2.generator("d3+")
lhs = g2.act_on_octonion(d, a * b)
rhs = g2.act_on_octonion(d, a) * b + a * g2.act_on_octonion(d, b)
print("derivation rule on (e1+, e2-):", lhs == rhs)

print("weights under (H1, H2):")
for label, w in roots.g2_weights().items():
    print(f"  {label:4s} ({w[0]}, {w[1]})")

for c in suites.g2_suite():
    print(f"{c.name}: {'pass' if c.passed else 'FAIL'} ({c.count})")

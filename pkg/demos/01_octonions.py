"""Split octonions as Zorn vector matrices.

Walks through the split basis, a few products, conjugation and the
associator, then checks the full 8x8 table and alternativity.
"""
from zornlie import suites
from zornlie.composition import LABELS, SplitOctonion, associator, classical_units, oct_conj

b = {name: SplitOctonion.basis(k) for k, name in enumerate(LABELS)}

print("basis:", ", ".join(LABELS))
print("e1+ e2+ =", b["e1+"] * b["e2+"])
print("e1+ e1- =", b["e1+"] * b["e1-"])
print("rho+ rho+ =", b["rho+"] * b["rho+"])
print("conj(rho+) =", oct_conj(b["rho+"]))

# octonions are not associative, but they are alternative
x, y, z = b["e1+"], b["e2+"], b["e3+"] + b["rho-"]
print("(x, y, z) =", associator(x, y, z))
print("(x, x, y) =", associator(x, x, y))

u = classical_units()
print("u7 =", u["u7"], " u7^2 =", u["u7"] * u["u7"])

for check in (suites.octonion_table(), suites.alternativity()):
    print(f"{check.name}: {'pass' if check.passed else 'FAIL'} ({check.count})", check.info or "")

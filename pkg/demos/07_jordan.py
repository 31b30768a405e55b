"""The cubic Jordan algebras J3^n for n = 1, 2, 4, 8.

Shows the sharp map and the cubic identity on a small example, then runs
the identity suite and finds an instance of non-associativity in J3^8.
"""
import numpy as np

from zornlie import jordan, suites
from zornlie.jordan import JordanElement

x = JordanElement(8, [1, 2, 3])
print("x =", x)
print("x# =", jordan.sharp_of(x))
print("t(x#, x) / 3 =", jordan.trace_form(jordan.sharp_of(x), x) / 3, "(det of diag(1, 2, 3))")

y = JordanElement.random(8, np.random.default_rng(0))
print("J3^8 has dimension", jordan.dim(8), "; a random element has trace", jordan.trace(y))

for c in suites.jordan_suite((1, 2, 4, 8), seed=0, count=100):
    print(f"{c.name}: {'pass' if c.passed else 'FAIL'} ({c.count})")

"""e7 over J3^4 and the 27 of e6 + C inside it.

Splits a random e7 element into e6, the central lambda, the 27 and the
27bar, and shows lambda acting as +2 lambda and -2 lambda.
"""
import numpy as np

from zornlie import algebras, exc
from zornlie.scalar import ExactScalar

alg = algebras.get("e7")
print("dim e7 =", alg.dim, "branching:", alg.branching())

rng = np.random.default_rng(1)
f = alg.random(rng)
e6, lam, plus, minus = exc.e7_decompose(f)
print("lambda of a random element:", lam.item())
print("round trip:", exc.e7_recompose(e6, lam, plus, minus) == f)

one = ExactScalar((1,))
zero_e6 = exc.ExcElement.zero(2)
for sign in "+-":
    v = exc.Fund27.basis(sign)[3]
    out = exc.e6_act_on_27(zero_e6, one, v)
    factor = 2 if sign == "+" else -2
    print(f"lambda on the 27{'' if sign == '+' else 'bar'} acts as {factor:+d}:", out.flatten() == v.flatten() * factor)

g = algebras.get("e6").random(rng)
w = exc.e6_act_on_27(g, 0, exc.Fund27.basis("+")[10])
print("an e6 element maps a 27 vector back into the 27 with skew zeta, xi:", w.validate() is w)

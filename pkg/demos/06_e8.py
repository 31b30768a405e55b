"""e8 over J3^8: the 248-dimensional block algebra.

The inner block is e6 realized as operators on the 27-dimensional J3^8, with
the derivation part spanned by [L_a, L_b] (rank 52). A few dense exact
Jacobi checks close the demo.
"""
import numpy as np

from zornlie import e8

alg = e8.algebra()
print("dim e8 =", alg.dim, "blocks:", alg.blocks)
print("rank of the derivation span:", e8.derivation_rank())

rng = np.random.default_rng(2)
x, y, z = (alg.random(rng, (3,)) for _ in range(3))


def br(p, q):
    return e8.e8_bracket(p, q, check_c22=True)


jac = br(x, br(y, z)) + br(y, br(z, x)) + br(z, br(x, y))
print("Jacobi on 3 dense exact triples vanishes:", jac.is_zero())
print("bracket is antisymmetric:", (br(x, y) + br(y, x)).is_zero())
print("bracket re-expands in the 248 basis:", alg.coords(br(x, y)).shape)

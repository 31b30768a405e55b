"""Tits model ``f4 = Der(C) + C0 (x) J0 + Der(J)`` for J = J3^1, used as an
independent oracle for the n=1 block bracket.

A :class:`TitsElement` stores

* ``d``  a g2 matrix element (the Der(C) part),
* ``t``  the tensor part as an array ``(..., 8, 3, 3)``: row ``a`` is the
  symmetric matrix multiplying octonion basis vector ``a``,
* ``e``  an antisymmetric 3x3 matrix A standing for the derivation
  ``x -> [A, x]`` of J.

The bracket is bilinear in the octonion and Jordan factors, so it is
evaluated on the coordinate expansion of the tensor directly.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import g2
from .composition import OCT, UNIT, real_unit
from .exc import ExcElement, exc_bracket
from .field import FieldArray, concatenate, einsum
from .linalg import CoordinateSystem
from .scalar import ExactScalar

EYE3 = np.eye(3, dtype=np.int64)
# t(e_a e_b), the octonion trace form on basis vectors
OCT_TFORM = OCT[:, :, 0] + OCT[:, :, 1]
# e_a * e_b = e_a e_b - (1/2) t(e_a e_b) 1, scaled by 2 to stay integral
OCT_STAR2 = 2 * OCT - OCT_TFORM[:, :, None] * UNIT[None, None, :]

# scales of the c (x) x and Der(J) images; with the bracket written as above
# the unit choice is the only one in {+-1/2, +-1, +-2} x {+-1/4, +-1/2, +-1, +-2}
# that intertwines all basis pairs
CORR_TENSOR = ExactScalar((1,))
CORR_DER = ExactScalar((1,))


@dataclass(frozen=True, eq=False)
class TitsElement:
    d: g2.G2Element
    t: FieldArray
    e: FieldArray

    @property
    def batch_shape(self) -> tuple:
        return self.e.shape[:-2]

    def flatten(self) -> FieldArray:
        b = self.batch_shape
        return concatenate([self.d.flatten(), self.t.reshape(b + (72,)), self.e.reshape(b + (9,))], axis=-1)

    @classmethod
    def unflatten(cls, v: FieldArray) -> "TitsElement":
        b = v.shape[:-1]
        return cls(g2.G2Element.unflatten(v[..., :15]), v[..., 15:87].reshape(b + (8, 3, 3)),
                   v[..., 87:96].reshape(b + (3, 3)))

    def __getitem__(self, k):
        return TitsElement(self.d[k], self.t[k], self.e[k])

    def __add__(self, o):
        return TitsElement(self.d + o.d, self.t + o.t, self.e + o.e)

    def __sub__(self, o):
        return TitsElement(self.d - o.d, self.t - o.t, self.e - o.e)

    def __mul__(self, s):
        return TitsElement(self.d * s, self.t * s, self.e * s)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.flatten().is_zero()


def _sym_star(x: FieldArray, y: FieldArray) -> FieldArray:
    """``x * y = (xy + yx)/2 - t(xy)/3 I`` for scalar symmetric matrices."""
    p = x @ y
    q = y @ x
    tr = p.trace(-2, -1)
    return (p + q) / 2 - tr.expand(2) * FieldArray.from_int(EYE3) / 3


@lru_cache(maxsize=None)
def _dcd_basis() -> FieldArray:
    """Flattened g2 elements ``D_{e_a, e_b}`` for all octonion basis pairs, ``(8, 8, 15)``."""
    eye = FieldArray.eye(8)
    return g2.dcd_matrix(eye.reshape(8, 1, 8), eye.reshape(1, 8, 8)).flatten()


def tits_bracket(u: TitsElement, v: TitsElement) -> TitsElement:
    x, y = u.t, v.t
    b = u.batch_shape
    # cross terms between the tensor parts
    xa = x.reshape(b + (8, 1, 3, 3))
    yb = y.reshape(b + (1, 8, 3, 3))
    txy = (xa @ yb).trace(-2, -1)  # (..., 8, 8)
    d_tt = g2.G2Element.unflatten(einsum("...ab,abk->...k", txy, _dcd_basis()))
    star = _sym_star(xa, yb)  # (..., 8, 8, 3, 3)
    t_tt = einsum("...abrs,abc->...crs", star, OCT_STAR2)
    comm = xa @ yb - yb @ xa
    e_tt = einsum("...abrs,ab->...rs", comm, OCT_TFORM) / 2
    # derivations acting on tensors
    mu = g2.action_matrix(u.d)
    mv = g2.action_matrix(v.d)
    t_dv = einsum("...ca,...ars->...crs", mu, y) - einsum("...ca,...ars->...crs", mv, x)
    t_ev = (u.e.reshape(b + (1, 3, 3)) @ y - y @ u.e.reshape(b + (1, 3, 3))
            - v.e.reshape(b + (1, 3, 3)) @ x + x @ v.e.reshape(b + (1, 3, 3)))
    return TitsElement(
        g2.g2_bracket(u.d, v.d) + d_tt,
        t_tt + t_dv + t_ev,
        u.e @ v.e - v.e @ u.e + e_tt,
    )


# ----------------------------------------------------------------- basis
C_BASIS = [("rho+-rho-", [1, -1, 0, 0, 0, 0, 0, 0])] + [
    (f"e{k + 1}{s}", list(np.eye(8, dtype=np.int64)[o + k])) for s, o in (("+", 2), ("-", 5)) for k in range(3)
]


def _j0_basis():
    m = []
    m.append(np.diag([1, -1, 0]))
    m.append(np.diag([0, 1, -1]))
    for i, j in ((0, 1), (1, 2), (2, 0)):
        s = np.zeros((3, 3), dtype=np.int64)
        s[i, j] = s[j, i] = 1
        m.append(s)
    return ["E11-E22", "E22-E33", "E12+E21", "E23+E32", "E31+E13"], np.array(m, dtype=np.int64)


def _anti_basis():
    m = []
    for i, j in ((0, 1), (1, 2), (2, 0)):
        s = np.zeros((3, 3), dtype=np.int64)
        s[i, j], s[j, i] = 1, -1
        m.append(s)
    return ["A12", "A23", "A31"], np.array(m, dtype=np.int64)


@lru_cache(maxsize=None)
def basis() -> tuple[TitsElement, list[str]]:
    """52 Tits basis elements (batched) and their labels."""
    gens = g2.generators()
    jl, jm = _j0_basis()
    al, am = _anti_basis()
    labels = list(g2.LABELS)
    t = np.zeros((52, 8, 3, 3), dtype=np.int64)
    e = np.zeros((52, 3, 3), dtype=np.int64)
    k = 14
    for cl, cv in C_BASIS:
        for xl, xm in zip(jl, jm):
            t[k] = np.einsum("a,rs->ars", np.array(cv), xm)
            labels.append(f"{cl}(x){xl}")
            k += 1
    for l, m in zip(al, am):
        e[k] = m
        labels.append(f"E:{l}")
        k += 1
    zero_d = g2.G2Element(FieldArray.zeros((38, 3, 3)), FieldArray.zeros((38, 3)), FieldArray.zeros((38, 3)))
    d = g2.G2Element(concatenate([gens.a, zero_d.a]), concatenate([gens.vp, zero_d.vp]),
                     concatenate([gens.vm, zero_d.vm]))
    return TitsElement(d, FieldArray.from_int(t), FieldArray.from_int(e)), labels


@lru_cache(maxsize=None)
def coordinate_system() -> CoordinateSystem:
    return CoordinateSystem(basis()[0].flatten())


def corr_map(u: TitsElement, tensor_scale=None, der_scale=None) -> ExcElement:
    """Linear map from the Tits model onto the n=1 block realization."""
    s = CORR_TENSOR if tensor_scale is None else tensor_scale
    k = CORR_DER if der_scale is None else der_scale
    eye = FieldArray.from_int(EYE3)
    t = u.t
    # traceless tensors have t[rho-] = -t[rho+]; the rho part is (rho+ - rho-) (x) t[0]
    if not (t[..., 0, :, :] + t[..., 1, :, :]).is_zero():
        raise ValueError("tensor part is not in C0 (x) J0")
    a1 = real_unit(t[..., 0, :, :] * s + u.e * k)
    xp = real_unit(u.d.vp.expand(2) * eye + t[..., 2:5, :, :] * s)
    xm = real_unit(u.d.vm.expand(2) * eye + t[..., 5:8, :, :] * s)
    return ExcElement(1, u.d.a, a1, xp, xm)


def pair_batches(flat: FieldArray) -> tuple[FieldArray, FieldArray]:
    """All ordered pairs of the rows of ``flat`` as two stacked batches."""
    k = flat.shape[0]
    return (FieldArray(np.repeat(flat.num, k, axis=1), flat.den),
            FieldArray(np.tile(flat.num, (1, k, 1)), flat.den))


def intertwining_failures() -> list[tuple[int, int]]:
    """Basis pairs (i, j) where corr_map fails to carry the Tits bracket to the block bracket."""
    b, _ = basis()
    fu, fv = pair_batches(b.flatten())
    u, v = TitsElement.unflatten(fu), TitsElement.unflatten(fv)
    diff = (corr_map(tits_bracket(u, v)) - exc_bracket(corr_map(u), corr_map(v))).flatten()
    bad = np.flatnonzero((diff.num != 0).any(axis=(0, 2)))
    k = b.e.shape[0]
    return [(int(i) // k, int(i) % k) for i in bad]

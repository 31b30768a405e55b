"""e8 as block matrices over left multiplications on J3^8.

Jordan elements live in the 27 coordinates of :func:`jordan.basis_matrices`
(n=8).  An e6 element is stored as a pair ``(z, F)``: a traceless Jordan
element acting through ``L_z`` and a derivation given as a 27x27 matrix.
Its dagger is ``(z, -F)``.

The e8 element is ``(a (x) Id + I (x) a1, L_{x+} ; L_{x-}, -I (x) a1^dagger)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .composition import LEVI
from .field import FieldArray, concatenate, einsum
from .jordan import jordan_coords
from .linalg import CoordinateSystem, independent_rows_mod_p
from .scalar import ExactScalar

N = 27
EYE3 = np.eye(3, dtype=np.int64)
OUTER_OFF = ((0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1))


def J():
    return jordan_coords(8)


def left(x: FieldArray) -> FieldArray:
    """``L_x`` as ``(..., 27, 27)`` matrices."""
    return J().left(x)


def matvec(m: FieldArray, v: FieldArray) -> FieldArray:
    return einsum("...cb,...b->...c", m, v)


def opcomm(p: FieldArray, q: FieldArray) -> FieldArray:
    return p @ q - q @ p


def is_derivation(f: FieldArray) -> bool:
    """Leibniz rule on all basis pairs, ``F(I) = 0`` and ``t(F(x)) = 0``."""
    jc = J()
    mul = jc.mul  # (a, b, c)
    # F(b_a . b_b) = F(b_a) . b_b + b_a . F(b_b)
    lhs = einsum("abc,...dc->...abd", mul, f)
    rhs = einsum("...ca,cbd->...abd", f, mul) + einsum("...cb,acd->...abd", f, mul)
    if not (lhs - rhs).is_zero():
        return False
    if not matvec(f, jc.one).is_zero():
        return False
    return einsum("...cb,c->...b", f, jc.trace).is_zero()


@dataclass(frozen=True, eq=False)
class E6Operator:
    z: FieldArray
    f: FieldArray

    @property
    def batch_shape(self) -> tuple:
        return self.z.shape[:-1]

    def matrix(self) -> FieldArray:
        return left(self.z) + self.f

    def dagger(self) -> "E6Operator":
        return E6Operator(self.z, -self.f)

    def __add__(self, o):
        return E6Operator(self.z + o.z, self.f + o.f)

    def __sub__(self, o):
        return E6Operator(self.z - o.z, self.f - o.f)

    def __neg__(self):
        return E6Operator(-self.z, -self.f)

    def __mul__(self, s):
        return E6Operator(self.z * s, self.f * s)

    __rmul__ = __mul__

    def validate(self) -> "E6Operator":
        if not J().jtrace(self.z).is_zero():
            raise ValueError("z is not traceless")
        if not is_derivation(self.f):
            raise ValueError("f is not a derivation of J3^8")
        return self


def apply(a1: E6Operator, x: FieldArray) -> FieldArray:
    return J().jmul(a1.z, x) + matvec(a1.f, x)


def apply_dagger(a1: E6Operator, x: FieldArray) -> FieldArray:
    return J().jmul(a1.z, x) - matvec(a1.f, x)


def e6_commutator(a1: E6Operator, b1: E6Operator) -> E6Operator:
    """``(z, F), (w, G) -> (F(w) - G(z), [L_z, L_w] + [F, G])``."""
    return E6Operator(matvec(a1.f, b1.z) - matvec(b1.f, a1.z),
                      opcomm(left(a1.z), left(b1.z)) + opcomm(a1.f, b1.f))


def _pair_terms(x: FieldArray, y: FieldArray):
    """``t(x_i, y_j)``, ``sum_i x_i . y_i`` and ``sum_i [L_{x_i}, L_{y_i}]``."""
    jc = J()
    b = x.shape[:-2]
    t = jc.tform(x.reshape(b + (3, 1, N)), y.reshape(b + (1, 3, N)))
    prod = jc.jmul(x, y).sum(-2)
    lc = opcomm(left(x), left(y)).sum(-3)
    return t, prod, lc


def diamond_e8(xp: FieldArray, ym: FieldArray) -> tuple[FieldArray, E6Operator]:
    """``L_{x+} <> L_{y-}`` as (outer scalar matrix, e6 operator)."""
    t, prod, lc = _pair_terms(xp, ym)
    s = t.trace(-2, -1)
    outer = (s / 3).expand(2) * FieldArray.from_int(EYE3) - t
    z = (s / 3).expand(1) * J().one - prod
    return outer, E6Operator(z, -lc)


def bullet_e8(xm: FieldArray, yp: FieldArray) -> E6Operator:
    """``L_{x-} . L_{y+}``, the lower-right companion of the diamond."""
    return diamond_e8(xm, yp)[1]


def cross_e8(x: FieldArray, y: FieldArray) -> FieldArray:
    jc = J()
    b = x.shape[:-2]
    s = jc.sharp_lin(x.reshape(b + (3, 1, N)), y.reshape(b + (1, 3, N)))
    return einsum("ijk,...jkc->...ic", LEVI, s)


@dataclass(frozen=True, eq=False)
class E8Element:
    a: FieldArray
    a1: E6Operator
    xp: FieldArray
    xm: FieldArray

    algebra = "e8"

    @property
    def batch_shape(self) -> tuple:
        return self.a.shape[:-2]

    def flatten(self) -> FieldArray:
        b = self.batch_shape
        return concatenate([self.a.reshape(b + (9,)), self.a1.z, self.a1.f.reshape(b + (N * N,)),
                            self.xp.reshape(b + (81,)), self.xm.reshape(b + (81,))], axis=-1)

    @classmethod
    def unflatten(cls, v: FieldArray) -> "E8Element":
        b = v.shape[:-1]
        o = 9 + N + N * N
        return cls(v[..., :9].reshape(b + (3, 3)),
                   E6Operator(v[..., 9:9 + N], v[..., 9 + N:o].reshape(b + (N, N))),
                   v[..., o:o + 81].reshape(b + (3, N)), v[..., o + 81:o + 162].reshape(b + (3, N)))

    @classmethod
    def zero(cls, batch=()) -> "E8Element":
        b = tuple(batch)
        return cls(FieldArray.zeros(b + (3, 3)), E6Operator(FieldArray.zeros(b + (N,)), FieldArray.zeros(b + (N, N))),
                   FieldArray.zeros(b + (3, N)), FieldArray.zeros(b + (3, N)))

    def __getitem__(self, k) -> "E8Element":
        return E8Element(self.a[k], E6Operator(self.a1.z[k], self.a1.f[k]), self.xp[k], self.xm[k])

    def __add__(self, o):
        return E8Element(self.a + o.a, self.a1 + o.a1, self.xp + o.xp, self.xm + o.xm)

    def __sub__(self, o):
        return E8Element(self.a - o.a, self.a1 - o.a1, self.xp - o.xp, self.xm - o.xm)

    def __neg__(self):
        return E8Element(-self.a, -self.a1, -self.xp, -self.xm)

    def __mul__(self, s):
        return E8Element(self.a * s, self.a1 * s, self.xp * s, self.xm * s)

    __rmul__ = __mul__

    def __eq__(self, o):
        return self.flatten() == o.flatten()

    __hash__ = None

    def is_zero(self) -> bool:
        return self.flatten().is_zero()

    def validate(self) -> "E8Element":
        if not self.a.trace(-2, -1).is_zero():
            raise ValueError("outer block a is not traceless")
        self.a1.validate()
        return self

    def to_json(self) -> dict:
        from .jordan import JordanElement, from_coords

        def jel(c):
            return JordanElement.from_matrix(8, from_coords(c, 8)).to_json()

        def mat(m):
            return [[s.to_json() for s in row] for row in m.to_scalars()]

        return {"algebra": "e8", "a": mat(self.a),
                "a1": {"z": jel(self.a1.z), "f": mat(self.a1.f)},
                "xp": [jel(self.xp[i]) for i in range(3)],
                "xm": [jel(self.xm[i]) for i in range(3)]}

    @classmethod
    def from_json(cls, data: dict) -> "E8Element":
        from .field import stack
        from .jordan import JordanElement, to_coords

        def jel(d):
            return to_coords(JordanElement.from_json(8, d).matrix, 8)

        def mat(m):
            return FieldArray.from_scalars([[ExactScalar.from_json(c) for c in row] for row in m])

        try:
            if data.get("algebra", "e8") != "e8":
                raise ValueError("element JSON is not an e8 element")
            a = mat(data["a"])
            a1 = E6Operator(jel(data["a1"]["z"]), mat(data["a1"]["f"]))
            xp = stack([jel(d) for d in data["xp"]])
            xm = stack([jel(d) for d in data["xm"]])
        except KeyError as exc:
            raise ValueError(f"element JSON is missing field {exc}") from None
        if a.shape != (3, 3) or a1.f.shape != (N, N) or xp.shape != (3, N) or xm.shape != (3, N):
            raise ValueError("e8 element JSON has wrong block shapes")
        return cls(a, a1, xp, xm).validate()


def e8_bracket(f: E8Element, g: E8Element, check_c22: bool = False) -> E8Element:
    a, a1, xp, xm = f.a, f.a1, f.xp, f.xm
    b, b1, yp, ym = g.a, g.a1, g.xp, g.xm
    o1, i1 = diamond_e8(xp, ym)
    o2, i2 = diamond_e8(yp, xm)
    c_a = a @ b - b @ a + o1 - o2
    c_a1 = e6_commutator(a1, b1) * 2 + i1 - i2

    def on(op, apply_fn, v):
        bs = op.batch_shape
        return apply_fn(E6Operator(op.z.reshape(bs + (1, N)), op.f.reshape(bs + (1, N, N))), v)

    c_xp = (einsum("...ij,...jc->...ic", a, yp) - einsum("...ij,...jc->...ic", b, xp)
            + on(a1, apply, yp) * 2 - on(b1, apply, xp) * 2 + cross_e8(xm, ym))
    c_xm = (-einsum("...ic,...ij->...jc", ym, a) + einsum("...ic,...ij->...jc", xm, b)
            - on(a1, apply_dagger, ym) * 2 + on(b1, apply_dagger, xm) * 2 + cross_e8(xp, yp))
    if check_c22:
        c22 = (e6_commutator(a1.dagger(), b1.dagger()) * 2
               + bullet_e8(xm, yp) - bullet_e8(ym, xp))
        target = -c_a1.dagger()
        if not ((c22.z - target.z).is_zero() and (c22.f - target.f).is_zero()):
            raise ArithmeticError("lower-right block is not -dagger of the inner block")
    return E8Element(c_a, c_a1, c_xp, c_xm)


# ------------------------------------------------------------------ basis
@lru_cache(maxsize=None)
def derivation_span() -> tuple[FieldArray, CoordinateSystem]:
    """Basis of span{[L_bi, L_bj]} (exact rank) and its coordinate system."""
    eye = FieldArray.eye(N)
    ls = left(eye)
    iu, ju = np.triu_indices(N, 1)
    comms = opcomm(ls[iu], ls[ju]).reshape(len(iu), N * N)
    basis = comms[independent_rows_mod_p(comms)]
    cs = CoordinateSystem(basis)
    if not cs.residual(comms).is_zero():
        raise ArithmeticError("modular elimination understated the derivation rank")
    return basis, cs


def derivation_rank() -> int:
    return derivation_span()[1].dim


def _z_basis():
    m = np.zeros((26, N), dtype=np.int64)
    m[0, 0], m[0, 1] = 1, -1
    m[1, 1], m[1, 2] = 1, -1
    for k in range(24):
        m[2 + k, 3 + k] = 1
    return m


class E8Algebra:
    name = "e8"

    def __init__(self):
        from .exc import jordan_labels

        jl = jordan_labels(8)
        fb, _ = derivation_span()
        nf = fb.shape[0]
        labels = []
        rows = []
        width = 9 + N + N * N + 162

        def blank(k):
            return FieldArray.zeros((k, width))

        # outer a
        outer = np.zeros((8, 3, 3), dtype=np.int64)
        for k, (i, j) in enumerate(OUTER_OFF):
            outer[k, i, j] = 1
            labels.append(f"a:E{i + 1}{j + 1}")
        outer[6] = np.diag([1, -1, 0])
        outer[7] = np.diag([0, 1, -1])
        labels += ["a:E11-E22", "a:E22-E33"]
        part = blank(8)
        part[:, :9] = FieldArray.from_int(outer.reshape(8, 9))
        rows.append(part)
        part = blank(26)
        part[:, 9:9 + N] = FieldArray.from_int(_z_basis())
        rows.append(part)
        labels += ["z:E11-E22", "z:E22-E33"] + [f"z:{s}" for s in jl[3:]]
        part = blank(nf)
        part[:, 9 + N:9 + N + N * N] = fb
        rows.append(part)
        labels += [f"F:{k}" for k in range(nf)]
        o = 9 + N + N * N
        for slot, off in (("xp", o), ("xm", o + 81)):
            part = blank(81)
            part[:, off:off + 81] = FieldArray.eye(81)
            rows.append(part)
            labels += [f"{slot}{i + 1}:{s}" for i in range(3) for s in jl]
        self.basis_flat = concatenate(rows, axis=0)
        self.basis = E8Element.unflatten(self.basis_flat)
        self.labels = labels
        self.dim = len(labels)
        self.blocks = {"a": 8, "a1": 26 + nf, "xp": 81, "xm": 81}
        self.coords_system = CoordinateSystem(self.basis_flat)

    def bracket(self, x: E8Element, y: E8Element) -> E8Element:
        return e8_bracket(x, y)

    def coords(self, x: E8Element) -> FieldArray:
        return self.coords_system.solve(x.flatten())

    def element(self, c) -> E8Element:
        return E8Element.unflatten(einsum("...k,kn->...n", FieldArray.coerce(c), self.basis_flat))

    def random(self, rng: np.random.Generator, batch=()) -> E8Element:
        batch = (batch,) if isinstance(batch, int) else tuple(batch)
        return self.element(FieldArray.from_int(rng.integers(-2, 3, size=batch + (self.dim,))))


@lru_cache(maxsize=None)
def algebra() -> E8Algebra:
    return E8Algebra()

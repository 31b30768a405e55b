"""Rank-3 Jordan algebras J3^n of Hermitian 3x3 matrices over composition algebras.

Array-level functions take full matrices of shape ``(..., 3, 3, 8)`` (the
last axis holds octonion coordinates) and broadcast over leading axes.  The
raw matrix product is not symmetrized; the Jordan product is
``x.y = (xy + yx)/2``.

:class:`JordanElement` stores the diagonal and the strict upper triangle,
so Hermiticity holds by construction.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .composition import (
    OCT,
    PAIR_A,
    PAIR_B,
    PAIR_GATHER,
    UNIT,
    CompositionTag,
    SplitOctonion,
    oct_conj_array,
    real_unit,
    scalar_part,
)
from .field import FieldArray, einsum, stack
from .linalg import CoordinateSystem
from .scalar import ExactScalar

OFF_POSITIONS = ((0, 1), (1, 2), (2, 0))


# ---------------------------------------------------------------- arrays
def identity() -> FieldArray:
    m = np.zeros((3, 3, 8), dtype=np.int64)
    for i in range(3):
        m[i, i] = UNIT
    return FieldArray.from_int(m)


def hermitian(diag: FieldArray, off: FieldArray) -> FieldArray:
    """Assemble matrices from ``diag (..., 3)`` and ``off (..., 3, 8)``."""
    batch = diag.shape[:-1]
    m = FieldArray.zeros(batch + (3, 3, 8))
    for i in range(3):
        m[..., i, i, :] = real_unit(diag[..., i])
    for k, (i, j) in enumerate(OFF_POSITIONS):
        m[..., i, j, :] = off[..., k, :]
        m[..., j, i, :] = oct_conj_array(off[..., k, :])
    return m


def upper(m: FieldArray) -> tuple[FieldArray, FieldArray]:
    diag = stack([m[..., i, i, 0] for i in range(3)], axis=-1)
    off = stack([m[..., i, j, :] for i, j in OFF_POSITIONS], axis=-2)
    return diag, off


def hermitian_defect(m: FieldArray) -> FieldArray:
    return m - oct_conj_array(m).swapaxes(-3, -2)


def is_hermitian(m: FieldArray) -> bool:
    # conj(m_ii) = m_ii already forces diagonal entries into span{1}
    return hermitian_defect(m).is_zero()


def mat_mul(x, y) -> FieldArray:
    """Raw matrix product with octonion entries."""
    xa = x[..., PAIR_A].moveaxis(-1, -3)
    yb = y[..., PAIR_B].moveaxis(-1, -3)
    prods = (xa @ yb).moveaxis(-3, -1)  # (..., 3, 3, pairs)
    return einsum("...n,nc->...c", prods, PAIR_GATHER)


def jmul(x, y) -> FieldArray:
    return (mat_mul(x, y) + mat_mul(y, x)) / 2


def jtrace(x) -> FieldArray:
    return scalar_part(x.diagonal(-3, -2).sum(-1))


def tform(x, y) -> FieldArray:
    """Trace form ``t(x, y) = t(x.y)``, computed as the scalar part of tr(xy)."""
    prods = einsum("...rsn,...srn->...n", x[..., PAIR_A], y[..., PAIR_B])
    return scalar_part(einsum("...n,nc->...c", prods, PAIR_GATHER))


def scale(s: FieldArray, x: FieldArray) -> FieldArray:
    """Multiply matrices ``x`` by scalars ``s`` of the batch shape."""
    return s.expand(3) * x


def sharp(x) -> FieldArray:
    t = jtrace(x)
    x2 = mat_mul(x, x)
    return x2 - scale(t, x) - scale((jtrace(x2) - t * t) / 2, identity())


def sharp_lin(x, y) -> FieldArray:
    tx, ty = jtrace(x), jtrace(y)
    return (
        mat_mul(x, y) + mat_mul(y, x)
        - scale(ty, x) - scale(tx, y)
        - scale(tform(x, y) - tx * ty, identity())
    )


def triple_V(x, y, z) -> FieldArray:
    """``V_{x,y} z = t(x,y) z + t(z,y) x - (x # z) # y``."""
    return scale(tform(x, y), z) + scale(tform(z, y), x) - sharp_lin(sharp_lin(x, z), y)


def triple_V_alt(x, y, z) -> FieldArray:
    """Second expression ``2[(x.y).z + (y.z).x - (z.x).y]``."""
    return (jmul(jmul(x, y), z) + jmul(jmul(y, z), x) - jmul(jmul(z, x), y)) * 2


def quad_U(x, y) -> FieldArray:
    return scale(tform(x, y), x) - sharp_lin(sharp(x), y)


def quad_U_alt(x, y) -> FieldArray:
    return jmul(jmul(x, y), x) * 2 - jmul(jmul(x, x), y)


def jordan_star(x, y) -> FieldArray:
    return jmul(x, y) - scale(tform(x, y) / 3, identity())


# ------------------------------------------------------------ coordinates
@lru_cache(maxsize=None)
def basis_matrices(n: int) -> FieldArray:
    """Basis of J3^n: E11, E22, E33, then u E_ij + conj(u) E_ji per position."""
    units = CompositionTag(n).units()
    mats = []
    for i in range(3):
        m = np.zeros((3, 3, 8), dtype=np.int64)
        m[i, i] = UNIT
        mats.append(m)
    conj = oct_conj_array(FieldArray.from_int(units)).num[0]
    for i, j in OFF_POSITIONS:
        for u, ub in zip(units, conj):
            m = np.zeros((3, 3, 8), dtype=np.int64)
            m[i, j] = u
            m[j, i] = ub
            mats.append(m)
    return FieldArray.from_int(np.array(mats))


def dim(n: int) -> int:
    return 3 + 3 * n


@lru_cache(maxsize=None)
def coordinate_system(n: int) -> CoordinateSystem:
    b = basis_matrices(n)
    return CoordinateSystem(b.reshape(b.shape[0], 72))


def to_coords(m: FieldArray, n: int) -> FieldArray:
    """Coordinates of Hermitian matrices in the J3^n basis (checked)."""
    flat = m.reshape(m.shape[:-3] + (72,))
    return coordinate_system(n).solve(flat)


def from_coords(c, n: int) -> FieldArray:
    return einsum("...k,kija->...ija", c, basis_matrices(n))


def operator_matrix(f, n: int) -> FieldArray:
    """Matrix of a linear map on J3^n: column k holds the coordinates of f(b_k)."""
    return to_coords(f(basis_matrices(n)), n).T


def random_coords(rng: np.random.Generator, n: int, batch=()) -> FieldArray:
    batch = (batch,) if isinstance(batch, int) else tuple(batch)
    return FieldArray.from_int(rng.integers(-2, 3, size=batch + (dim(n),)))


def random_matrices(rng: np.random.Generator, n: int, batch=()) -> FieldArray:
    return from_coords(random_coords(rng, n, batch), n)


class JordanCoords:
    """J3^n in coordinates: product tensor, trace vector and derived maps."""

    def __init__(self, n: int):
        self.n = n
        self.dim = dim(n)
        b = basis_matrices(n)
        d = self.dim
        prods = jmul(b.reshape(d, 1, 3, 3, 8), b.reshape(1, d, 3, 3, 8))
        self.mul = to_coords(prods, n)  # (a, b, c)
        nz = (self.mul.num != 0).any(axis=(0, 3))
        self._pa, self._pb = np.nonzero(nz)
        self._gather = self.mul[self._pa, self._pb]  # (pairs, c)
        self._left = self.mul.transpose(0, 2, 1).reshape(d, d * d)
        self.trace = jtrace(b)  # (d,)
        one = np.zeros(d, dtype=np.int64)
        one[:3] = 1
        self.one = FieldArray.from_int(one)

    def jmul(self, x, y) -> FieldArray:
        return einsum("...n,nc->...c", x[..., self._pa] * y[..., self._pb], self._gather)

    def jtrace(self, x) -> FieldArray:
        return einsum("...a,a->...", x, self.trace)

    def tform(self, x, y) -> FieldArray:
        return self.jtrace(self.jmul(x, y))

    def left(self, x) -> FieldArray:
        """Matrix of L_x: ``(L_x y)_c = sum_b L[c, b] y_b``."""
        return einsum("...a,an->...n", x, self._left).reshape(x.shape[:-1] + (self.dim, self.dim))

    def sharp_lin(self, x, y) -> FieldArray:
        tx, ty = self.jtrace(x), self.jtrace(y)
        return (
            self.jmul(x, y) * 2
            - ty.expand(1) * x - tx.expand(1) * y
            - (self.tform(x, y) - tx * ty).expand(1) * self.one
        )

    def triple_V(self, x, y, z) -> FieldArray:
        return (
            self.tform(x, y).expand(1) * z + self.tform(z, y).expand(1) * x
            - self.sharp_lin(self.sharp_lin(x, z), y)
        )


@lru_cache(maxsize=None)
def jordan_coords(n: int) -> JordanCoords:
    return JordanCoords(n)


# ------------------------------------------------------------ value types
class JordanElement:
    """Element of J3^n stored as diagonal plus strict upper triangle."""

    __slots__ = ("n", "diag", "off")

    def __init__(self, n: int, diag, off=None):
        tag = CompositionTag(n)
        diag = FieldArray.coerce(diag if not isinstance(diag, (list, tuple)) else FieldArray.from_scalars(diag))
        if diag.shape != (3,):
            raise ValueError("diagonal must have 3 entries")
        if off is None:
            off = FieldArray.zeros((3, 8))
        elif isinstance(off, (list, tuple)):
            off = stack([o.coords if isinstance(o, SplitOctonion) else FieldArray.coerce(o) for o in off])
        if off.shape != (3, 8):
            raise ValueError("off-diagonal part must be 3 octonions")
        if not tag.contains(off):
            raise ValueError(f"off-diagonal entries leave the rank-{n} composition algebra")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "diag", diag)
        object.__setattr__(self, "off", off)

    def __setattr__(self, *_):
        raise AttributeError("JordanElement is immutable")

    @classmethod
    def from_matrix(cls, n: int, m: FieldArray) -> "JordanElement":
        if m.shape != (3, 3, 8):
            raise ValueError("expected a 3x3 octonion matrix")
        if not is_hermitian(m):
            raise ValueError("matrix is not Hermitian")
        d, o = upper(m)
        return cls(n, d, o)

    @classmethod
    def from_coords(cls, n: int, c) -> "JordanElement":
        return cls.from_matrix(n, from_coords(FieldArray.coerce(c), n))

    @classmethod
    def identity(cls, n: int) -> "JordanElement":
        return cls.from_matrix(n, identity())

    @classmethod
    def basis(cls, n: int) -> list:
        b = basis_matrices(n)
        return [cls.from_matrix(n, b[k]) for k in range(b.shape[0])]

    @classmethod
    def random(cls, n: int, rng: np.random.Generator) -> "JordanElement":
        return cls.from_matrix(n, random_matrices(rng, n))

    @property
    def matrix(self) -> FieldArray:
        return hermitian(self.diag, self.off)

    def coords(self) -> FieldArray:
        return to_coords(self.matrix, self.n)

    def _wrap(self, m) -> "JordanElement":
        return JordanElement.from_matrix(self.n, m)

    def __add__(self, other):
        return JordanElement(self.n, self.diag + other.diag, self.off + other.off)

    def __sub__(self, other):
        return JordanElement(self.n, self.diag - other.diag, self.off - other.off)

    def __neg__(self):
        return JordanElement(self.n, -self.diag, -self.off)

    def __mul__(self, s):
        return JordanElement(self.n, self.diag * s, self.off * s)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, JordanElement):
            return NotImplemented
        return self.diag == other.diag and self.off == other.off

    __hash__ = None

    def is_zero(self) -> bool:
        return self.diag.is_zero() and self.off.is_zero()

    def to_json(self) -> dict:
        return {
            "diag": [s.to_json() for s in self.diag.to_scalars()],
            "o12": SplitOctonion.from_coords(self.off[0]).to_json(),
            "o23": SplitOctonion.from_coords(self.off[1]).to_json(),
            "o31": SplitOctonion.from_coords(self.off[2]).to_json(),
        }

    @classmethod
    def from_json(cls, n: int, data: dict) -> "JordanElement":
        try:
            diag = FieldArray.from_scalars([ExactScalar.from_json(v) for v in data["diag"]])
            off = [SplitOctonion.from_json(data[k]) for k in ("o12", "o23", "o31")]
        except KeyError as exc:
            raise ValueError(f"Jordan JSON is missing field {exc}") from None
        return cls(n, diag, off)

    def __repr__(self):
        return f"JordanElement(n={self.n}, diag={list(map(str, self.diag.to_scalars()))})"


def _same_n(*xs):
    ns = {x.n for x in xs}
    if len(ns) != 1:
        raise ValueError("Jordan elements come from different algebras")
    return ns.pop()


def jordan_mul(x: JordanElement, y: JordanElement) -> JordanElement:
    _same_n(x, y)
    return x._wrap(jmul(x.matrix, y.matrix))


def trace(x: JordanElement) -> ExactScalar:
    return jtrace(x.matrix).item()


def trace_form(x: JordanElement, y: JordanElement) -> ExactScalar:
    _same_n(x, y)
    return tform(x.matrix, y.matrix).item()


def sharp_of(x: JordanElement) -> JordanElement:
    return x._wrap(sharp(x.matrix))


def sharp_product(x: JordanElement, y: JordanElement) -> JordanElement:
    _same_n(x, y)
    return x._wrap(sharp_lin(x.matrix, y.matrix))


def triple(x: JordanElement, y: JordanElement, z: JordanElement) -> JordanElement:
    _same_n(x, y, z)
    return x._wrap(triple_V(x.matrix, y.matrix, z.matrix))


def quadratic(x: JordanElement, y: JordanElement) -> JordanElement:
    _same_n(x, y)
    return x._wrap(quad_U(x.matrix, y.matrix))


def star(x: JordanElement, y: JordanElement) -> JordanElement:
    _same_n(x, y)
    return x._wrap(jordan_star(x.matrix, y.matrix))


@dataclass(frozen=True)
class PairElement:
    """Element of the Jordan pair module V^sign."""

    value: JordanElement
    sign: str

    def __post_init__(self):
        if self.sign not in ("+", "-"):
            raise ValueError("sign must be '+' or '-'")


@dataclass(frozen=True)
class PairOperator:
    """Pair of operator matrices acting on (V+, V-) in J3^n coordinates."""

    plus: FieldArray
    minus: FieldArray

    def commutator(self, other: "PairOperator") -> "PairOperator":
        return PairOperator(
            self.plus @ other.plus - other.plus @ self.plus,
            self.minus @ other.minus - other.minus @ self.minus,
        )

    def __add__(self, other):
        return PairOperator(self.plus + other.plus, self.minus + other.minus)

    def __sub__(self, other):
        return PairOperator(self.plus - other.plus, self.minus - other.minus)

    def __eq__(self, other):
        return self.plus == other.plus and self.minus == other.minus

    __hash__ = None

    def is_zero(self) -> bool:
        return self.plus.is_zero() and self.minus.is_zero()


def v_operator(x: FieldArray, y: FieldArray, n: int) -> FieldArray:
    """Matrix of ``z -> V_{x,y} z`` on J3^n coordinates."""
    return operator_matrix(lambda z: triple_V(x, y, z), n)


def pair_beta(x: PairElement, y: PairElement) -> PairOperator:
    """``beta(x, y) = (V_{x,y}, -V_{y,x})`` for x in V+ and y in V-."""
    if x.sign != "+" or y.sign != "-":
        raise ValueError("pair_beta needs x in V+ and y in V-")
    n = _same_n(x.value, y.value)
    xm, ym = x.value.matrix, y.value.matrix
    return PairOperator(v_operator(xm, ym, n), -v_operator(ym, xm, n))

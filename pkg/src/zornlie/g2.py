"""g2 as derivations of the split octonions and as traceless 4x4 Zorn-type matrices.

A :class:`G2Element` is ``[[a, A+], [A-, 0]]`` with ``a`` a traceless 3x3
matrix, ``A+`` a column and ``A-`` a row.  Arrays may carry leading batch
axes; every operation broadcasts over them.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .composition import AM, AP, LEVI, VM, VP, SplitOctonion, oct_mul_array, wedge
from .field import FieldArray, concatenate, einsum, stack
from .linalg import CoordinateSystem
from .scalar import SQRT2, SQRT6, ExactScalar

LABELS = ("d1+", "d2+", "d3+", "d1-", "d2-", "d3-", "H1", "H2",
          "g1+", "g2+", "g3+", "g1-", "g2-", "g3-")
INDEX = {name: k for k, name in enumerate(LABELS)}

EYE3 = np.eye(3, dtype=np.int64)


def _e(i, j) -> np.ndarray:
    m = np.zeros((3, 3), dtype=np.int64)
    m[i, j] = 1
    return m


@dataclass(frozen=True, eq=False)
class G2Element:
    a: FieldArray   # (..., 3, 3), traceless
    vp: FieldArray  # (..., 3) column A+
    vm: FieldArray  # (..., 3) row A-

    @classmethod
    def make(cls, a=None, vp=None, vm=None, check: bool = True) -> "G2Element":
        a = FieldArray.zeros((3, 3)) if a is None else FieldArray.coerce(a)
        vp = FieldArray.zeros(3) if vp is None else FieldArray.coerce(vp)
        vm = FieldArray.zeros(3) if vm is None else FieldArray.coerce(vm)
        if check and not a.trace(-2, -1).is_zero():
            raise ValueError("g2 element needs a traceless a block")
        return cls(a, vp, vm)

    @property
    def batch_shape(self) -> tuple:
        return self.a.shape[:-2]

    def flatten(self) -> FieldArray:
        return concatenate([self.a.reshape(self.batch_shape + (9,)), self.vp, self.vm], axis=-1)

    @classmethod
    def unflatten(cls, v: FieldArray) -> "G2Element":
        b = v.shape[:-1]
        return cls(v[..., :9].reshape(b + (3, 3)), v[..., 9:12], v[..., 12:15])

    def __getitem__(self, k) -> "G2Element":
        return G2Element(self.a[k], self.vp[k], self.vm[k])

    def __add__(self, o):
        return G2Element(self.a + o.a, self.vp + o.vp, self.vm + o.vm)

    def __sub__(self, o):
        return G2Element(self.a - o.a, self.vp - o.vp, self.vm - o.vm)

    def __neg__(self):
        return G2Element(-self.a, -self.vp, -self.vm)

    def __mul__(self, s):
        return G2Element(self.a * s, self.vp * s, self.vm * s)

    __rmul__ = __mul__

    def scale(self, s: FieldArray) -> "G2Element":
        """Multiply by a batch of scalars."""
        return G2Element(s.expand(2) * self.a, s.expand(1) * self.vp, s.expand(1) * self.vm)

    def __eq__(self, o):
        return self.a == o.a and self.vp == o.vp and self.vm == o.vm

    __hash__ = None

    def is_zero(self) -> bool:
        return self.a.is_zero() and self.vp.is_zero() and self.vm.is_zero()

    def to_json(self) -> dict:
        s = lambda arr: [x.to_json() for x in arr]
        return {
            "a": [s(row) for row in self.a.to_scalars()],
            "vp": s(self.vp.to_scalars()),
            "vm": s(self.vm.to_scalars()),
        }

    @classmethod
    def from_json(cls, data: dict) -> "G2Element":
        try:
            a = FieldArray.from_scalars([[ExactScalar.from_json(c) for c in row] for row in data["a"]])
            vp = FieldArray.from_scalars([ExactScalar.from_json(c) for c in data["vp"]])
            vm = FieldArray.from_scalars([ExactScalar.from_json(c) for c in data["vm"]])
        except KeyError as exc:
            raise ValueError(f"g2 JSON is missing field {exc}") from None
        if a.shape != (3, 3) or vp.shape != (3,) or vm.shape != (3,):
            raise ValueError("g2 JSON has wrong block shapes")
        return cls.make(a, vp, vm)


@dataclass(frozen=True, eq=False)
class Zorn4Element:
    """Element of the 4x4 algebra; the (2,2) slot is t(a) and never stored."""

    a: FieldArray
    vp: FieldArray
    vm: FieldArray


def circ(ap: FieldArray, bm: FieldArray) -> FieldArray:
    """``A+ o B- = t(A+ B-) I - 3 A+ B-`` (outer product of column and row)."""
    outer = einsum("...i,...j->...ij", ap, bm)
    return outer.trace(-2, -1).expand(2) * FieldArray.from_int(EYE3) - outer * 3


def _rowmat(v, m) -> FieldArray:
    return einsum("...i,...ij->...j", v, m)


def _matcol(m, v) -> FieldArray:
    return einsum("...ij,...j->...i", m, v)


def zorn4_mul(x: Zorn4Element, y: Zorn4Element) -> Zorn4Element:
    return Zorn4Element(
        x.a @ y.a + circ(x.vp, y.vm),
        _matcol(x.a, y.vp) + wedge(x.vm, y.vm),
        _rowmat(x.vm, y.a) + wedge(x.vp, y.vp),
    )


def g2_bracket(x: G2Element, y: G2Element) -> G2Element:
    a = x.a @ y.a - y.a @ x.a + circ(x.vp, y.vm) - circ(y.vp, x.vm)
    vp = _matcol(x.a, y.vp) - _matcol(y.a, x.vp) + wedge(x.vm, y.vm) * 2
    vm = _rowmat(x.vm, y.a) - _rowmat(y.vm, x.a) + wedge(x.vp, y.vp) * 2
    return G2Element(a, vp, vm)


def act_array(x: G2Element, o: FieldArray) -> FieldArray:
    """Action of the matrix element on octonion coordinates ``(..., 8)``."""
    ap, am, vp, vm = o[..., AP], o[..., AM], o[..., VP], o[..., VM]
    s = (x.vm * vp).sum(-1) - (vm * x.vp).sum(-1)
    dif = (am - ap).expand(1)
    new_vp = _matcol(x.a, vp) + dif * x.vp - wedge(x.vm, vm)
    new_vm = -_rowmat(vm, x.a) - dif * x.vm - wedge(x.vp, vp)
    return concatenate([s.expand(1), (-s).expand(1), new_vp, new_vm], axis=-1)


def act_on_octonion(x: G2Element, o: SplitOctonion) -> SplitOctonion:
    return SplitOctonion.from_coords(act_array(x, o.coords))


def action_matrix(x: G2Element) -> FieldArray:
    """8x8 matrix of the action (column k is the image of basis k); batches allowed."""
    eye = FieldArray.eye(8)
    b = x.batch_shape
    xb = G2Element(x.a.reshape(b + (1, 3, 3)), x.vp.reshape(b + (1, 3)), x.vm.reshape(b + (1, 3)))
    return act_array(xb, eye).swapaxes(-2, -1)


# ------------------------------------------------------------ derivations
def derivation_array(a, b, c) -> FieldArray:
    """``D_{a,b} c = (1/3)[[a,b],c] - (a,b,c)`` on coordinate arrays."""
    m = oct_mul_array
    ab = m(a, b) - m(b, a)
    comm = m(ab, c) - m(c, ab)
    assoc = m(m(a, b), c) - m(a, m(b, c))
    return comm / 3 - assoc


def derivation_D(a: SplitOctonion, b: SplitOctonion, c: SplitOctonion) -> SplitOctonion:
    return SplitOctonion.from_coords(derivation_array(a.coords, b.coords, c.coords))


def derivation_matrix(a: FieldArray, b: FieldArray) -> FieldArray:
    """8x8 matrix of ``D_{a,b}`` (column k is the image of basis k)."""
    eye = FieldArray.eye(8)
    return derivation_array(a.reshape(a.shape[:-1] + (1, 8)),
                            b.reshape(b.shape[:-1] + (1, 8)), eye).swapaxes(-2, -1)


def _unit(k: int) -> FieldArray:
    v = np.zeros(8, dtype=np.int64)
    v[k] = 1
    return FieldArray.from_int(v)


def rho(s: str) -> FieldArray:
    return _unit(0 if s == "+" else 1)


def eps(k: int, s: str) -> FieldArray:
    """Split unit e_k^s for k in 1..3 (indices taken mod 3)."""
    k = (k - 1) % 3
    return _unit(2 + k if s == "+" else 5 + k)


def _flip(s: str) -> str:
    return "-" if s == "+" else "+"


@lru_cache(maxsize=None)
def generator_derivations() -> FieldArray:
    """The 14 generators as 8x8 derivation matrices, built from D_{a,b}."""
    mats = []
    for s in "+-":
        sign = -1 if s == "+" else 1
        for k in (1, 2, 3):
            mats.append(derivation_matrix(eps(k + 1, s), eps(k + 2, _flip(s))) * sign)
    dk = [derivation_matrix(eps(k, "-"), eps(k, "+")) for k in (1, 2, 3)]
    mats.append((dk[0] - dk[1]) * (SQRT2 / 2))
    mats.append((dk[0] + dk[1] - dk[2] * 2) * (SQRT6 / 6))
    for s in "+-":
        for k in (1, 2, 3):
            mats.append(derivation_matrix(rho(s), eps(k, s)) * 3)
    return stack(mats)


@lru_cache(maxsize=None)
def generators() -> G2Element:
    """Batched G2Element of the 14 generators in the export order."""
    a = np.zeros((14, 3, 3), dtype=object)
    a.fill(0)
    vp = np.zeros((14, 3), dtype=object)
    vp.fill(0)
    vm = vp.copy()
    for k in range(3):
        a[k] = _e((k + 1) % 3, (k + 2) % 3)       # d_k^+ = E_{k+1, k+2}
        a[3 + k] = _e((k + 2) % 3, (k + 1) % 3)   # d_k^- = E_{k-1, k-2}
        vp[8 + k, k] = 1
        vm[11 + k, k] = 1
    h1 = FieldArray.from_int(_e(0, 0) - _e(1, 1)) * (SQRT2 / 2)
    h2 = FieldArray.from_int(_e(0, 0) + _e(1, 1) - 2 * _e(2, 2)) * (SQRT6 / 6)
    A = FieldArray.from_scalars(a)
    A[6] = h1
    A[7] = h2
    return G2Element(A, FieldArray.from_scalars(vp), FieldArray.from_scalars(vm))


def generator(label: str) -> G2Element:
    return generators()[INDEX[label]]


@lru_cache(maxsize=None)
def coordinate_system() -> CoordinateSystem:
    return CoordinateSystem(generators().flatten())


def coords(x: G2Element) -> FieldArray:
    """Coordinates in the generator basis (raises if outside the span)."""
    return coordinate_system().solve(x.flatten())


def from_coords(c: FieldArray) -> G2Element:
    return G2Element.unflatten(einsum("...k,kn->...n", c, generators().flatten()))


@lru_cache(maxsize=None)
def _action_system() -> CoordinateSystem:
    return CoordinateSystem(action_matrix(generators()).reshape(14, 64))


def element_of_derivation(mat: FieldArray) -> G2Element:
    """Matrix element whose action equals the given 8x8 derivation matrix."""
    c = _action_system().solve(mat.reshape(mat.shape[:-2] + (64,)))
    return from_coords(c)


def e_jk(j: int, k: int) -> FieldArray:
    """Derivation matrix of ``e_jk = D_{e_k-, e_j+}``."""
    return derivation_matrix(eps(k, "-"), eps(j, "+"))


def dcd_matrix(c: FieldArray, d: FieldArray) -> G2Element:
    """Closed-form matrix element of ``D_{c,d}``."""
    a0p, a0m, vp, vm = c[..., AP], c[..., AM], c[..., VP], c[..., VM]
    b0p, b0m, wp, wm = d[..., AP], d[..., AM], d[..., VP], d[..., VM]
    eye = FieldArray.from_int(EYE3)
    tr = (vm * wp).sum(-1) - (vp * wm).sum(-1)
    # (v-_j w+_i - v+_i w-_j) E_ij
    outer = einsum("...j,...i->...ij", vm, wp) - einsum("...i,...j->...ij", vp, wm)
    d11 = outer - tr.expand(2) * eye / 3
    d12 = ((a0p - a0m).expand(1) * wp - (b0p - b0m).expand(1) * vp - wedge(vm, wm)) / 3
    d21 = ((a0m - a0p).expand(1) * wm - (b0m - b0p).expand(1) * vm - wedge(vp, wp)) / 3
    return G2Element(d11, d12, d21)


def eij_expansion(c: FieldArray, d: FieldArray) -> FieldArray:
    """Derivation matrix of D_{c,d} assembled from the g_k / e_jk expansion."""
    gens = generator_derivations()
    a0p, a0m, vp, vm = c[AP], c[AM], c[VP], c[VM]
    b0p, b0m, wp, wm = d[AP], d[AM], d[VP], d[VM]
    cp = ((a0p - a0m).expand(1) * wp - (b0p - b0m).expand(1) * vp - wedge(vm, wm)) / 3
    cm = ((a0m - a0p).expand(1) * wm - (b0m - b0p).expand(1) * vm - wedge(vp, wp)) / 3
    out = einsum("k,kab->ab", cp, gens[8:11]) + einsum("k,kab->ab", cm, gens[11:14])
    for j in (1, 2, 3):
        for k in (1, 2, 3):
            coef = vm[k - 1] * wp[j - 1] - vp[j - 1] * wm[k - 1]
            out = out + coef * e_jk(j, k)
    return out


# ---------------------------------------------------------- printed table
def _vec(**terms) -> dict:
    return {k.replace("p", "+").replace("m", "-"): ExactScalar.coerce(v) for k, v in terms.items()}


def _idx(kind: str, k: int, s: str) -> str:
    return f"{kind}{(k - 1) % 3 + 1}{s}"


@lru_cache(maxsize=None)
def commutation_table() -> dict:
    """Nonzero brackets of generator pairs as ``{(X, Y): {Z: coefficient}}``.

    Encodes the eigenvalue relations and the remaining nonvanishing relations
    with indices mod 3; the rest of the 196 pairs follow by antisymmetry or
    vanish.
    """
    r2, r6 = SQRT2, SQRT6
    t: dict = {}

    def put(x, y, combo):
        t[(x, y)] = combo
        t[(y, x)] = {k: -v for k, v in combo.items()}

    eig = {  # (H1, H2) eigenvalues for the + member; the - member is negated
        "g1": (r2 / 2, r6 / 6), "g2": (-r2 / 2, r6 / 6), "g3": (0, -r6 / 3),
        "d1": (-r2 / 2, r6 / 2), "d2": (-r2 / 2, -r6 / 2), "d3": (r2, 0),
    }
    for base, (e1, e2) in eig.items():
        for s, sg in (("+", 1), ("-", -1)):
            x = base + s
            if e1:
                put("H1", x, {x: ExactScalar.coerce(e1) * sg})
            if e2:
                put("H2", x, {x: ExactScalar.coerce(e2) * sg})
    for s, sg in (("+", 1), ("-", -1)):
        f = _flip(s)
        for k in (1, 2, 3):
            put(_idx("d", k, s), _idx("d", k + 1, s), {_idx("d", k + 2, f): ExactScalar.coerce(sg)})
            put(_idx("d", k, s), _idx("g", k + 1, f), {_idx("g", k + 2, f): ExactScalar.coerce(-sg)})
            put(_idx("d", k + 1, s), _idx("g", k, s), {_idx("g", k + 2, s): ExactScalar.coerce(sg)})
            put(_idx("g", k, s), _idx("g", k + 1, f), {_idx("d", k + 2, s): ExactScalar.coerce(-3 * sg)})
            put(_idx("g", k, s), _idx("g", k + 1, s), {_idx("g", k + 2, f): ExactScalar.coerce(2)})
    half = ExactScalar.coerce(1) / 2
    put("d1+", "d1-", {"H1": -half * r2, "H2": half * r6})
    put("d2+", "d2-", {"H1": -half * r2, "H2": -half * r6})
    put("d3+", "d3-", {"H1": r2})
    put("g1+", "g1-", {"H1": -half * 3 * r2, "H2": -half * r6})
    put("g2+", "g2-", {"H1": half * 3 * r2, "H2": -half * r6})
    put("g3+", "g3-", {"H2": r6})
    return t


def table_bracket(x: str, y: str) -> FieldArray:
    """Coordinate vector of [x, y] according to the printed table."""
    out = np.zeros(14, dtype=object)
    out.fill(0)
    for z, c in commutation_table().get((x, y), {}).items():
        out[INDEX[z]] = c
    return FieldArray.from_scalars(out)


def random_element(rng: np.random.Generator, batch=()) -> G2Element:
    batch = (batch,) if isinstance(batch, int) else tuple(batch)
    return from_coords(FieldArray.from_int(rng.integers(-2, 3, size=batch + (14,))))

"""Zorn-type block realization of f4 (n=1), e6 (n=2) and e7 (n=4).

An element is ``(a (x) I + I (x) a1, x+ ; x-, -I (x) a1^dagger)`` with

* ``a``   traceless 3x3 scalar matrix, shape ``(..., 3, 3)``
* ``a1``  3x3 matrix over the rank-n composition algebra, ``(..., 3, 3, 8)``
* ``xp``  three J3^n elements (column), ``(..., 3, 3, 3, 8)``
* ``xm``  three J3^n elements (row), same shape.

The inner constraint on ``a1`` depends on n: for n=1 and n=2 the full
trace vanishes, for n=4 only the coefficient of 1 in the trace does.
Leading batch axes broadcast through every operation.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import jordan
from .composition import LABELS, LEVI, UNIT, CompositionTag, SplitOctonion, oct_conj_array, real_unit, scalar_part
from .field import FieldArray, concatenate, einsum, stack
from .jordan import OFF_POSITIONS, jtrace, mat_mul, sharp_lin, tform
from .linalg import CoordinateSystem
from .scalar import ExactScalar

ALGEBRA_OF = {1: "f4", 2: "e6", 4: "e7"}
RANK_OF = {"f4": 1, "e6": 2, "e7": 4}
EYE3 = np.eye(3, dtype=np.int64)
OUTER_OFF = ((0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1))
UNIT_NAMES = dict(enumerate(LABELS))


def _ident8() -> FieldArray:
    """3x3 identity with octonion entries, shape (3, 3, 8)."""
    return jordan.identity()


def dagger(m: FieldArray) -> FieldArray:
    """Conjugate transpose over the composition algebra (transpose for n=1)."""
    return oct_conj_array(m).swapaxes(-3, -2)


def inner_trace(m: FieldArray) -> FieldArray:
    """Trace of a1 as an octonion, shape ``(..., 8)``."""
    return m.diagonal(-3, -2).sum(-1)


def inner_constraint_defect(m: FieldArray, n: int) -> FieldArray:
    """Zero exactly when a1 satisfies the trace constraint for rank n."""
    t = inner_trace(m)
    if n == 4:
        return scalar_part(t)
    return t


def _batch_expand(m: FieldArray, k: int) -> FieldArray:
    """Insert a unit axis before the last ``k`` axes."""
    s = m.shape
    return m.reshape(s[:-k] + (1,) + s[-k:])


def diamond(xp: FieldArray, ym: FieldArray) -> tuple[FieldArray, FieldArray]:
    """``x+ <> y-`` split into the outer scalar matrix and the inner part."""
    t = tform(xp.reshape(xp.shape[:-4] + (3, 1, 3, 3, 8)), ym.reshape(ym.shape[:-4] + (1, 3, 3, 3, 8)))
    s = t.trace(-2, -1)
    outer = (s / 3).expand(2) * FieldArray.from_int(EYE3) - t
    inner = (s / 3).expand(3) * _ident8() - mat_mul(xp, ym).sum(-4)
    return outer, inner


def bullet(xm: FieldArray, yp: FieldArray) -> FieldArray:
    """``x- . y+`` (inner part only)."""
    s = tform(xm, yp).sum(-1)
    return (s / 3).expand(3) * _ident8() - mat_mul(xm, yp).sum(-4)


def cross(x: FieldArray, y: FieldArray) -> FieldArray:
    """``(x x y)_i = eps_ijk x_j # y_k`` for J-vectors of shape ``(..., 3, 3, 3, 8)``."""
    b = x.shape[:-4]
    s = sharp_lin(x.reshape(b + (3, 1, 3, 3, 8)), y.reshape(b + (1, 3, 3, 3, 8)))
    return einsum("ijk,...jkrsa->...irsa", LEVI, s)


def _outer_on_vec(a: FieldArray, y: FieldArray) -> FieldArray:
    """``(a (x) I) y``: sum_j a_ij y_j."""
    return einsum("...ij,...jrsa->...irsa", a, y)


def _vec_on_outer(y: FieldArray, a: FieldArray) -> FieldArray:
    """``y (a (x) I)``: sum_i y_i a_ij."""
    return einsum("...irsa,...ij->...jrsa", y, a)


def _left(a1: FieldArray, y: FieldArray) -> FieldArray:
    return mat_mul(_batch_expand(a1, 3), y)


def _right(y: FieldArray, a1: FieldArray) -> FieldArray:
    return mat_mul(y, _batch_expand(a1, 3))


@dataclass(frozen=True, eq=False)
class ExcElement:
    n: int
    a: FieldArray
    a1: FieldArray
    xp: FieldArray
    xm: FieldArray

    @property
    def algebra(self) -> str:
        return ALGEBRA_OF[self.n]

    @property
    def batch_shape(self) -> tuple:
        return self.a.shape[:-2]

    def flatten(self) -> FieldArray:
        b = self.batch_shape
        return concatenate([
            self.a.reshape(b + (9,)), self.a1.reshape(b + (72,)),
            self.xp.reshape(b + (216,)), self.xm.reshape(b + (216,)),
        ], axis=-1)

    @classmethod
    def unflatten(cls, n: int, v: FieldArray) -> "ExcElement":
        b = v.shape[:-1]
        return cls(n, v[..., :9].reshape(b + (3, 3)), v[..., 9:81].reshape(b + (3, 3, 8)),
                   v[..., 81:297].reshape(b + (3, 3, 3, 8)), v[..., 297:513].reshape(b + (3, 3, 3, 8)))

    @classmethod
    def zero(cls, n: int, batch=()) -> "ExcElement":
        b = tuple(batch)
        return cls(n, FieldArray.zeros(b + (3, 3)), FieldArray.zeros(b + (3, 3, 8)),
                   FieldArray.zeros(b + (3, 3, 3, 8)), FieldArray.zeros(b + (3, 3, 3, 8)))

    def __getitem__(self, k) -> "ExcElement":
        return ExcElement(self.n, self.a[k], self.a1[k], self.xp[k], self.xm[k])

    def _zip(self, o, f):
        if o.n != self.n:
            raise ValueError("elements belong to different algebras")
        return ExcElement(self.n, f(self.a, o.a), f(self.a1, o.a1), f(self.xp, o.xp), f(self.xm, o.xm))

    def __add__(self, o):
        return self._zip(o, lambda p, q: p + q)

    def __sub__(self, o):
        return self._zip(o, lambda p, q: p - q)

    def __neg__(self):
        return ExcElement(self.n, -self.a, -self.a1, -self.xp, -self.xm)

    def __mul__(self, s):
        return ExcElement(self.n, self.a * s, self.a1 * s, self.xp * s, self.xm * s)

    __rmul__ = __mul__

    def __eq__(self, o):
        return self.n == o.n and self.flatten() == o.flatten()

    __hash__ = None

    def is_zero(self) -> bool:
        return self.flatten().is_zero()

    def validate(self):
        """Raise ValueError naming the first violated invariant."""
        tag = CompositionTag(self.n)
        if not self.a.trace(-2, -1).is_zero():
            raise ValueError("outer block a is not traceless")
        if not tag.contains(self.a1):
            raise ValueError(f"a1 entries leave the rank-{self.n} composition algebra")
        if not inner_constraint_defect(self.a1, self.n).is_zero():
            raise ValueError("a1 violates the inner trace constraint")
        for name, v in (("xp", self.xp), ("xm", self.xm)):
            if not tag.contains(v):
                raise ValueError(f"{name} entries leave the rank-{self.n} composition algebra")
            if not jordan.hermitian_defect(v).is_zero():
                raise ValueError(f"{name} components are not Hermitian")
        return self

    # JSON -------------------------------------------------------------
    def to_json(self) -> dict:
        def jvec(v):
            return [jordan.JordanElement.from_matrix(self.n, v[i]).to_json() for i in range(3)]

        return {
            "algebra": self.algebra,
            "a": [[s.to_json() for s in row] for row in self.a.to_scalars()],
            "a1": [[SplitOctonion.from_coords(self.a1[i, j]).to_json() for j in range(3)] for i in range(3)],
            "xp": jvec(self.xp),
            "xm": jvec(self.xm),
        }

    @classmethod
    def from_json(cls, data: dict) -> "ExcElement":
        try:
            n = RANK_OF[data["algebra"]]
            a = FieldArray.from_scalars([[ExactScalar.from_json(c) for c in row] for row in data["a"]])
            a1 = FieldArray.zeros((3, 3, 8))
            for i in range(3):
                for j in range(3):
                    a1[i, j] = SplitOctonion.from_json(data["a1"][i][j]).coords
            vecs = []
            for key in ("xp", "xm"):
                v = FieldArray.zeros((3, 3, 3, 8))
                for i in range(3):
                    v[i] = jordan.JordanElement.from_json(n, data[key][i]).matrix
                vecs.append(v)
        except KeyError as exc:
            raise ValueError(f"element JSON is missing field {exc}") from None
        except (IndexError, TypeError):
            raise ValueError("element JSON has wrong block shapes") from None
        if a.shape != (3, 3):
            raise ValueError("outer block a must be 3x3")
        return cls(n, a, a1, vecs[0], vecs[1]).validate()


def exc_bracket(f: ExcElement, g: ExcElement, check_c22: bool = False) -> ExcElement:
    """Block commutator; with ``check_c22`` the lower-right block is computed
    independently and compared with ``-dagger`` of the new a1."""
    if f.n != g.n:
        raise ValueError("elements belong to different algebras")
    a, a1, xp, xm = f.a, f.a1, f.xp, f.xm
    b, b1, yp, ym = g.a, g.a1, g.xp, g.xm
    o1, i1 = diamond(xp, ym)
    o2, i2 = diamond(yp, xm)
    c_a = a @ b - b @ a + o1 - o2
    c_a1 = mat_mul(a1, b1) - mat_mul(b1, a1) + i1 - i2
    a1d, b1d = dagger(a1), dagger(b1)
    c_xp = (_outer_on_vec(a, yp) - _outer_on_vec(b, xp)
            + _left(a1, yp) + _right(yp, a1d) - _left(b1, xp) - _right(xp, b1d)
            + cross(xm, ym))
    c_xm = (-_vec_on_outer(ym, a) + _vec_on_outer(xm, b)
            - _left(a1d, ym) - _right(ym, a1) + _left(b1d, xm) + _right(xm, b1)
            + cross(xp, yp))
    if check_c22:
        c22 = mat_mul(a1d, b1d) - mat_mul(b1d, a1d) + bullet(xm, yp) - bullet(ym, xp)
        if not (c22 + dagger(c_a1)).is_zero():
            raise ArithmeticError("lower-right block is not -dagger of the inner block")
    return ExcElement(f.n, c_a, c_a1, c_xp, c_xm)


# ------------------------------------------------------------------ basis
def _outer_basis():
    mats, labels = [], []
    for i, j in OUTER_OFF:
        m = np.zeros((3, 3), dtype=np.int64)
        m[i, j] = 1
        mats.append(m)
        labels.append(f"E{i + 1}{j + 1}")
    mats.append(np.diag([1, -1, 0]))
    labels.append("E11-E22")
    mats.append(np.diag([0, 1, -1]))
    labels.append("E22-E33")
    return np.array(mats, dtype=np.int64), labels


def inner_basis(n: int):
    """Basis of the inner algebra as integer arrays ``(k, 3, 3, 8)`` plus labels."""
    units = CompositionTag(n).units()
    mats, labels = [], []

    def unit_name(u):
        if n == 1:
            return "1"
        return UNIT_NAMES[int(np.flatnonzero(u)[0])]

    def put(entries, label):
        m = np.zeros((3, 3, 8), dtype=np.int64)
        for (i, j), vec in entries:
            m[i, j] += vec
        mats.append(m)
        labels.append(label)

    for i, j in OUTER_OFF:
        for u in units:
            put([((i, j), u)], f"E{i + 1}{j + 1}*{unit_name(u)}")
    if n == 4:
        for u in units[2:]:  # e2+/- on the diagonal
            for i in range(3):
                put([((i, i), u)], f"E{i + 1}{i + 1}*{unit_name(u)}")
        rm = units[0] - units[1]
        for i in range(3):
            put([((i, i), rm)], f"E{i + 1}{i + 1}*(rho+-rho-)")
        for i in range(2):
            put([((i, i), UNIT), ((i + 1, i + 1), -UNIT)], f"(E{i + 1}{i + 1}-E{i + 2}{i + 2})*1")
    else:
        for u in units:
            for i in range(2):
                put([((i, i), u), ((i + 1, i + 1), -u)], f"(E{i + 1}{i + 1}-E{i + 2}{i + 2})*{unit_name(u)}")
    return np.array(mats, dtype=np.int64), labels


def jordan_labels(n: int) -> list[str]:
    units = CompositionTag(n).units()
    labels = ["E11", "E22", "E33"]
    for i, j in OFF_POSITIONS:
        for u in units:
            name = "1" if n == 1 else UNIT_NAMES[int(np.flatnonzero(u)[0])]
            labels.append(f"({i + 1}{j + 1}){name}")
    return labels


class ExcAlgebra:
    """Basis, coordinates and bracket of f4 / e6 / e7."""

    def __init__(self, n: int):
        if n not in ALGEBRA_OF:
            raise ValueError("exc algebras exist for n = 1, 2, 4")
        self.n = n
        self.name = ALGEBRA_OF[n]
        outer, olab = _outer_basis()
        inner, ilab = inner_basis(n)
        jb = jordan.basis_matrices(n)
        jl = jordan_labels(n)
        dj = jb.shape[0]
        parts = []
        labels = []
        z = ExcElement.zero(n, (len(outer),))
        parts.append(ExcElement(n, FieldArray.from_int(outer), z.a1, z.xp, z.xm))
        labels += [f"a:{s}" for s in olab]
        z = ExcElement.zero(n, (len(inner),))
        parts.append(ExcElement(n, z.a, FieldArray.from_int(inner), z.xp, z.xm))
        labels += [f"a1:{s}" for s in ilab]
        for slot in ("xp", "xm"):
            z = ExcElement.zero(n, (3 * dj,))
            vec = FieldArray.zeros((3 * dj, 3, 3, 3, 8))
            for i in range(3):
                vec[i * dj:(i + 1) * dj, i] = jb
            parts.append(ExcElement(n, z.a, z.a1, vec if slot == "xp" else z.xp, vec if slot == "xm" else z.xm))
            labels += [f"{slot}{i + 1}:{s}" for i in range(3) for s in jl]
        flat = concatenate([p.flatten() for p in parts], axis=0)
        self.basis_flat = flat
        self.basis = ExcElement.unflatten(n, flat)
        self.labels = labels
        self.dim = len(labels)
        self.blocks = {"a": len(olab), "a1": len(ilab), "xp": 3 * dj, "xm": 3 * dj}
        self.coords_system = CoordinateSystem(flat)

    def bracket(self, x: ExcElement, y: ExcElement) -> ExcElement:
        return exc_bracket(x, y)

    def coords(self, x: ExcElement) -> FieldArray:
        return self.coords_system.solve(x.flatten())

    def element(self, c) -> ExcElement:
        return ExcElement.unflatten(self.n, einsum("...k,kn->...n", FieldArray.coerce(c), self.basis_flat))

    def random(self, rng: np.random.Generator, batch=()) -> ExcElement:
        batch = (batch,) if isinstance(batch, int) else tuple(batch)
        return self.element(FieldArray.from_int(rng.integers(-2, 3, size=batch + (self.dim,))))


@lru_cache(maxsize=None)
def algebra(n: int) -> ExcAlgebra:
    return ExcAlgebra(n)


def branching(n: int) -> dict:
    """Block dimensions read off from the slot grading of the basis."""
    return dict(algebra(n).blocks)


# ------------------------------------------------------- e7 = e6 + C + 27 + 27bar
EPS_INDEX = {"+": 3, "-": 6}
RHO_MASK = FieldArray.from_int(np.array([1, 1, 0, 0, 0, 0, 0, 0], dtype=np.int64))
RHO_DIFF = np.array([1, -1, 0, 0, 0, 0, 0, 0], dtype=np.int64)


def _unit_vec(k: int) -> FieldArray:
    v = np.zeros(8, dtype=np.int64)
    v[k] = 1
    return FieldArray.from_int(v)


def _skew_defect(m: FieldArray) -> FieldArray:
    return m + m.swapaxes(-2, -1)


@dataclass(frozen=True, eq=False)
class Fund27:
    """``eps (x) (eta; zeta; xi)`` with eps = e2+ for the 27 and e2- for the 27bar."""

    eta: FieldArray
    zeta: FieldArray
    xi: FieldArray
    sign: str = "+"

    def __post_init__(self):
        if self.sign not in EPS_INDEX:
            raise ValueError("Fund27 sign must be '+' or '-'")

    def validate(self) -> "Fund27":
        if not _skew_defect(self.zeta).is_zero() or not _skew_defect(self.xi).is_zero():
            raise ValueError("zeta and xi components must be skew-symmetric")
        return self

    def __getitem__(self, k) -> "Fund27":
        return Fund27(self.eta[k], self.zeta[k], self.xi[k], self.sign)

    def flatten(self) -> FieldArray:
        b = self.eta.shape[:-2]
        return concatenate([self.eta.reshape(b + (9,)), self.zeta.reshape(b + (27,)),
                            self.xi.reshape(b + (27,))], axis=-1)

    def __eq__(self, o):
        return self.sign == o.sign and self.flatten() == o.flatten()

    __hash__ = None

    def is_zero(self) -> bool:
        return self.flatten().is_zero()

    @classmethod
    def zero(cls, sign: str = "+", batch=()) -> "Fund27":
        b = tuple(batch)
        return cls(FieldArray.zeros(b + (3, 3)), FieldArray.zeros(b + (3, 3, 3)), FieldArray.zeros(b + (3, 3, 3)), sign)

    @classmethod
    def basis(cls, sign: str = "+") -> "Fund27":
        """27 basis vectors (batched): 9 E_ij in eta, then skew E_rs - E_sr per slot of zeta and xi."""
        eta = np.zeros((27, 3, 3), dtype=np.int64)
        zeta = np.zeros((27, 3, 3, 3), dtype=np.int64)
        xi = np.zeros((27, 3, 3, 3), dtype=np.int64)
        for k in range(9):
            eta[k, k // 3, k % 3] = 1
        k = 9
        for target in (zeta, xi):
            for i in range(3):
                for r, s in ((0, 1), (1, 2), (2, 0)):
                    target[k, i, r, s], target[k, i, s, r] = 1, -1
                    k += 1
        return cls(FieldArray.from_int(eta), FieldArray.from_int(zeta), FieldArray.from_int(xi), sign)

    def embed(self) -> ExcElement:
        """The e7 element carrying this vector (all other slots zero)."""
        e = _unit_vec(EPS_INDEX[self.sign])
        return ExcElement(4, FieldArray.zeros(self.eta.shape[:-2] + (3, 3)),
                          self.eta.expand(1) * e, self.zeta.expand(1) * e, self.xi.expand(1) * e)

    def to_json(self) -> dict:
        def enc(m):
            return [[s.to_json() for s in row] for row in m.to_scalars()]

        return {"eta": enc(self.eta), "zeta": [enc(self.zeta[i]) for i in range(3)],
                "xi": [enc(self.xi[i]) for i in range(3)], "sign": self.sign}

    @classmethod
    def from_json(cls, data: dict) -> "Fund27":
        def dec(m):
            return FieldArray.from_scalars([[ExactScalar.from_json(c) for c in row] for row in m])

        try:
            return cls(dec(data["eta"]), stack_(dec(m) for m in data["zeta"]),
                       stack_(dec(m) for m in data["xi"]), data.get("sign", "+")).validate()
        except KeyError as exc:
            raise ValueError(f"Fund27 JSON is missing field {exc}") from None


def stack_(items) -> FieldArray:
    return stack(list(items))


@dataclass(frozen=True)
class LambdaGenerator:
    """Central summand ``lam (rho+ - rho-) I`` of e6 + C inside e7."""

    lam: ExactScalar

    def element(self) -> ExcElement:
        z = ExcElement.zero(4)
        a1 = FieldArray.scalar(self.lam) * FieldArray.from_int(np.einsum("ij,a->ija", EYE3, RHO_DIFF))
        return ExcElement(4, z.a, a1, z.xp, z.xm)


def e7_decompose(f: ExcElement):
    """Split an e7 element into (e6 part, lambda, 27 part, 27bar part)."""
    if f.n != 4:
        raise ValueError("e7_decompose needs an n=4 element")
    a1r = f.a1 * RHO_MASK
    tr = inner_trace(a1r)
    lam = tr[..., 0] / 3
    lam_block = lam.expand(3) * FieldArray.from_int(np.einsum("ij,a->ija", EYE3, RHO_DIFF))
    e6 = ExcElement(2, f.a, a1r - lam_block, f.xp * RHO_MASK, f.xm * RHO_MASK)
    parts = []
    for sign, k in EPS_INDEX.items():
        parts.append(Fund27(f.a1[..., k], f.xp[..., k], f.xm[..., k], sign))
    return e6, lam, parts[0], parts[1]


def e7_recompose(e6: ExcElement, lam, plus: Fund27, minus: Fund27) -> ExcElement:
    lam = FieldArray.coerce(lam)
    lam_block = lam.expand(3) * FieldArray.from_int(np.einsum("ij,a->ija", EYE3, RHO_DIFF))
    base = ExcElement(4, e6.a, e6.a1 + lam_block, e6.xp, e6.xm)
    return base + plus.embed() + minus.embed()


def e6_act_on_27(g: ExcElement, lam, v: Fund27) -> Fund27:
    """Action of ``g + lam (rho+ - rho-) I`` on a 27 or 27bar vector, read off the e7 bracket.

    Raises ArithmeticError if the bracket leaves the representation (lower-right
    block not ``-dagger`` of the inner block, or non-skew vector blocks).
    """
    b = v.eta.shape[:-2]
    f = e7_recompose(g, lam, Fund27.zero("+", b), Fund27.zero("-", b))
    r = exc_bracket(f, v.embed(), check_c22=True)
    e6, mu, plus, minus = e7_decompose(r)
    out, other = (plus, minus) if v.sign == "+" else (minus, plus)
    if not (e6.is_zero() and mu.is_zero() and other.is_zero()):
        raise ArithmeticError("bracket leaves the 27 summand")
    try:
        out.validate()
    except ValueError as exc:
        raise ArithmeticError(str(exc)) from None
    return out


def rho_components(m: FieldArray) -> tuple[FieldArray, FieldArray]:
    """``m = m+ rho+ + m- rho-`` for bicomplex data; returns (m+, m-)."""
    return m[..., 0], m[..., 1]


def e6_explicit_eta(g: ExcElement, v: Fund27) -> FieldArray:
    """eta-component of the 27 action from the closed formula (sign '+')::

        a1+ eta - eta a1- - sum_i (x_{i+} xi_i - zeta_i z_{i-})
    """
    if v.sign != "+":
        raise ValueError("closed formula is written for the 27")
    ap, am = rho_components(g.a1)
    xpp, _ = rho_components(g.xp)
    _, zmm = rho_components(g.xm)
    return ap @ v.eta - v.eta @ am - (xpp @ v.xi).sum(-3) + (v.zeta @ zmm).sum(-3)

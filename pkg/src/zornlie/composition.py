"""Split octonions in Zorn form and their composition subalgebras.

Coordinates are ordered ``[rho+, rho-, e1+, e2+, e3+, e1-, e2-, e3-]``;
the Zorn matrix is ``[[alpha+, A+], [A-, alpha-]]`` and the unit is
``rho+ + rho-``.  Array-level functions accept :class:`FieldArray` data of
shape ``(..., 8)`` and broadcast over the leading axes.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .field import FieldArray, concatenate, einsum, stack
from .scalar import ExactScalar, as_scalar

LABELS = ("rho+", "rho-", "e1+", "e2+", "e3+", "e1-", "e2-", "e3-")
AP, AM = 0, 1
VP = slice(2, 5)
VM = slice(5, 8)

LEVI = np.zeros((3, 3, 3), dtype=np.int64)
for _i in range(3):
    LEVI[_i, (_i + 1) % 3, (_i + 2) % 3] = 1
    LEVI[_i, (_i + 2) % 3, (_i + 1) % 3] = -1

CONJ_MATRIX = np.zeros((8, 8), dtype=np.int64)
CONJ_MATRIX[0, 1] = CONJ_MATRIX[1, 0] = 1
for _k in range(2, 8):
    CONJ_MATRIX[_k, _k] = -1

UNIT = np.array([1, 1, 0, 0, 0, 0, 0, 0], dtype=np.int64)


def wedge(a: FieldArray, b: FieldArray) -> FieldArray:
    """Vector product over the last axis (length 3)."""
    return einsum("...j,...k,ijk->...i", a, b, LEVI)


def zorn_mul(x: FieldArray, y: FieldArray) -> FieldArray:
    """Zorn product of octonion arrays, straight from the block formula."""
    xp, xm, yp, ym = x[..., VP], x[..., VM], y[..., VP], y[..., VM]
    x0, x1, y0, y1 = x[..., AP], x[..., AM], y[..., AP], y[..., AM]
    ap = x0 * y0 - (xp * ym).sum(-1)
    am = x1 * y1 - (xm * yp).sum(-1)
    vp = x0.expand(1) * yp + y1.expand(1) * xp + wedge(xm, ym)
    vm = x1.expand(1) * ym + y0.expand(1) * xm + wedge(xp, yp)
    return concatenate([ap.expand(1), am.expand(1), vp, vm], axis=-1)


def _structure_tensor() -> np.ndarray:
    eye = FieldArray.eye(8)
    t = zorn_mul(eye.reshape(8, 1, 8), eye.reshape(1, 8, 8))
    assert t.is_rational() and t.den == 1
    return t.num[0].copy()


# OCT[a, b, c]: coefficient of basis c in (basis a)(basis b)
OCT = _structure_tensor()


# the nonzero basis products e_a e_b = s e_c, listed as pairs n with a gather matrix
PAIR_A, PAIR_B = np.nonzero(OCT.any(axis=2))
PAIR_GATHER = OCT[PAIR_A, PAIR_B]  # (pairs, 8), one signed entry per row


def oct_mul_array(x, y) -> FieldArray:
    """Same product as :func:`zorn_mul`, through the structure tensor (faster)."""
    return einsum("...n,nc->...c", x[..., PAIR_A] * y[..., PAIR_B], PAIR_GATHER)


def oct_conj_array(x) -> FieldArray:
    return einsum("...a,ab->...b", x, CONJ_MATRIX)


def oct_trace_array(x) -> FieldArray:
    return x[..., AP] + x[..., AM]


def scalar_part(x) -> FieldArray:
    """Coefficient of 1 in the decomposition ``x = s*1 + (traceless)``."""
    return oct_trace_array(x) * ExactScalar((1,)) / 2


def real_unit(s: FieldArray) -> FieldArray:
    """Embed scalars (shape ``(...)``) as multiples of the unit, shape ``(..., 8)``."""
    return s.expand(1) * FieldArray.from_int(UNIT)


def associator_array(a, b, c) -> FieldArray:
    return oct_mul_array(oct_mul_array(a, b), c) - oct_mul_array(a, oct_mul_array(b, c))


@dataclass(frozen=True)
class CompositionTag:
    """Rank-n composition subalgebra of the split octonions.

    n=1 scalars, n=2 span{rho+, rho-}, n=4 span{rho+, rho-, e2+, e2-},
    n=8 everything.
    """

    n: int

    def __post_init__(self):
        if self.n not in (1, 2, 4, 8):
            raise ValueError(f"composition rank must be 1, 2, 4 or 8, not {self.n}")

    def units(self) -> np.ndarray:
        """Rows are the coordinate vectors of a basis of the subalgebra."""
        if self.n == 1:
            return UNIT.reshape(1, 8).copy()
        idx = {2: [0, 1], 4: [0, 1, 3, 6], 8: list(range(8))}[self.n]
        return np.eye(8, dtype=np.int64)[idx]

    def residual(self, x: FieldArray) -> FieldArray:
        """Part of ``x`` (shape ``(..., 8)``) outside the subalgebra."""
        u = self.units()
        if self.n == 1:
            return x - real_unit(x[..., AP])
        mask = np.zeros(8, dtype=np.int64)
        mask[np.flatnonzero(u.sum(axis=0))] = 1
        return x * FieldArray.from_int(1 - mask)

    def contains(self, x) -> bool:
        x = x.coords if isinstance(x, SplitOctonion) else x
        return self.residual(x).is_zero()


def _vec3(v) -> tuple:
    v = tuple(as_scalar(c) for c in v)
    if len(v) != 3:
        raise ValueError("vector parts need exactly 3 entries")
    return v


class SplitOctonion:
    """Octonion ``[[alpha+, A+], [A-, alpha-]]`` with exact coordinates."""

    __slots__ = ("coords",)

    def __init__(self, alpha_plus=0, alpha_minus=0, a_plus=(0, 0, 0), a_minus=(0, 0, 0)):
        vals = [as_scalar(alpha_plus), as_scalar(alpha_minus), *_vec3(a_plus), *_vec3(a_minus)]
        object.__setattr__(self, "coords", FieldArray.from_scalars(vals))

    @classmethod
    def from_coords(cls, coords) -> "SplitOctonion":
        coords = FieldArray.coerce(coords)
        if coords.shape != (8,):
            raise ValueError("an octonion has 8 coordinates")
        o = cls.__new__(cls)
        object.__setattr__(o, "coords", coords)
        return o

    @classmethod
    def basis(cls, k: int) -> "SplitOctonion":
        v = np.zeros(8, dtype=np.int64)
        v[k] = 1
        return cls.from_coords(FieldArray.from_int(v))

    @classmethod
    def one(cls) -> "SplitOctonion":
        return cls.from_coords(FieldArray.from_int(UNIT))

    def __setattr__(self, *_):
        raise AttributeError("SplitOctonion is immutable")

    @property
    def alpha_plus(self) -> ExactScalar:
        return self.coords[AP].item()

    @property
    def alpha_minus(self) -> ExactScalar:
        return self.coords[AM].item()

    @property
    def a_plus(self) -> tuple:
        return tuple(self.coords[VP].to_scalars())

    @property
    def a_minus(self) -> tuple:
        return tuple(self.coords[VM].to_scalars())

    def __add__(self, other):
        return SplitOctonion.from_coords(self.coords + other.coords)

    def __sub__(self, other):
        return SplitOctonion.from_coords(self.coords - other.coords)

    def __neg__(self):
        return SplitOctonion.from_coords(-self.coords)

    def __mul__(self, other):
        if isinstance(other, SplitOctonion):
            return oct_mul(self, other)
        return SplitOctonion.from_coords(self.coords * as_scalar(other))

    def __rmul__(self, other):
        return SplitOctonion.from_coords(self.coords * as_scalar(other))

    def __eq__(self, other):
        if not isinstance(other, SplitOctonion):
            return NotImplemented
        return self.coords == other.coords

    __hash__ = None

    def is_zero(self) -> bool:
        return self.coords.is_zero()

    def to_json(self) -> dict:
        s = self.coords.to_scalars()
        return {
            "ap": s[0].to_json(),
            "am": s[1].to_json(),
            "vp": [c.to_json() for c in s[2:5]],
            "vm": [c.to_json() for c in s[5:8]],
        }

    @classmethod
    def from_json(cls, data: dict) -> "SplitOctonion":
        try:
            return cls(
                ExactScalar.from_json(data["ap"]),
                ExactScalar.from_json(data["am"]),
                [ExactScalar.from_json(v) for v in data["vp"]],
                [ExactScalar.from_json(v) for v in data["vm"]],
            )
        except KeyError as exc:
            raise ValueError(f"octonion JSON is missing field {exc}") from None

    def __repr__(self):
        terms = [f"({s})*{name}" for s, name in zip(self.coords.to_scalars(), LABELS) if s]
        return "SplitOctonion(" + (" + ".join(terms) or "0") + ")"


def oct_mul(a: SplitOctonion, b: SplitOctonion) -> SplitOctonion:
    return SplitOctonion.from_coords(zorn_mul(a.coords, b.coords))


def oct_conj(a: SplitOctonion) -> SplitOctonion:
    return SplitOctonion.from_coords(oct_conj_array(a.coords))


def oct_trace(a: SplitOctonion) -> ExactScalar:
    return oct_trace_array(a.coords).item()


def associator(a: SplitOctonion, b: SplitOctonion, c: SplitOctonion) -> SplitOctonion:
    return (a * b) * c - a * (b * c)


def oct_star(c: SplitOctonion, d: SplitOctonion) -> SplitOctonion:
    """Traceless part of ``cd`` for traceless ``c, d``."""
    if oct_trace(c) or oct_trace(d):
        raise ValueError("oct_star needs traceless arguments")
    cd = c * d
    return cd - SplitOctonion.one() * (oct_trace(cd) / 2)


def commutator(a: SplitOctonion, b: SplitOctonion) -> SplitOctonion:
    return a * b - b * a


def classical_units() -> dict:
    """Classical units expressible from the split basis.

    ``u_k = e_k+ + e_k-`` for k = 1, 2, 3 and ``u7 = i(rho- - rho+)`` follow
    from ``rho(+/-) = (1 +/- i u7)/2`` and ``e_k(+/-) = rho(+/-) u_k``.  The
    remaining units ``u7 u_k`` are derived products, so their naming does not
    depend on any Fano-plane orientation.
    """
    i = ExactScalar.unit(1)
    one = SplitOctonion.one()
    u = {"1": one}
    for k in range(3):
        u[f"u{k + 1}"] = SplitOctonion.basis(2 + k) + SplitOctonion.basis(5 + k)
    u["u7"] = (SplitOctonion.basis(1) - SplitOctonion.basis(0)) * i
    for k in range(3):
        u[f"u7u{k + 1}"] = u["u7"] * u[f"u{k + 1}"]
    return u


def stack_octonions(items: Sequence[SplitOctonion]) -> FieldArray:
    return stack([o.coords for o in items])

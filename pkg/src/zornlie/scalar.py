"""Exact scalars in K = Q(i, sqrt2, sqrt3).

An element is stored as eight rational coordinates over the basis

    1, i, sqrt2, i*sqrt2, sqrt3, i*sqrt3, sqrt6, i*sqrt6

Index ``p`` encodes ``p = 2*r + e`` where ``e`` is the power of ``i`` and
``r`` selects the radical (0 -> 1, 1 -> sqrt2, 2 -> sqrt3, 3 -> sqrt6).
Two radicals multiply by xor of their indices, with a factor 2 when both
carry sqrt2 and a factor 3 when both carry sqrt3.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Union

import numpy as np

NAMES = ("1", "i", "sqrt2", "i*sqrt2", "sqrt3", "i*sqrt3", "sqrt6", "i*sqrt6")


def basis_product(p: int, q: int) -> tuple[int, int]:
    """Return ``(coef, m)`` with ``b_p * b_q = coef * b_m``."""
    ep, rp = p & 1, p >> 1
    eq, rq = q & 1, q >> 1
    coef = -1 if (ep and eq) else 1
    if rp & 1 and rq & 1:
        coef *= 2
    if rp & 2 and rq & 2:
        coef *= 3
    return coef, ((rp ^ rq) << 1) | (ep ^ eq)


# MUL[p, q] = (coef, m)
MUL = [[basis_product(p, q) for q in range(8)] for p in range(8)]

# dense integer tensor: b_p b_q = sum_m MUL_TENSOR[p, q, m] b_m
MUL_TENSOR = np.zeros((8, 8, 8), dtype=np.int64)
for _p in range(8):
    for _q in range(8):
        _c, _m = MUL[_p][_q]
        MUL_TENSOR[_p, _q, _m] = _c

CONJ_SIGN = (1, -1, 1, -1, 1, -1, 1, -1)

ScalarLike = Union["ExactScalar", int, Fraction]


def _solve(mat: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Gaussian elimination over Q for a square nonsingular system."""
    n = len(rhs)
    a = [row[:] + [rhs[i]] for i, row in enumerate(mat)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular system")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [v * inv for v in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[r][n] for r in range(n)]


class ExactScalar:
    """Element of Q(i, sqrt2, sqrt3) with eight canonical rational coordinates."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = (0,)):
        c = [Fraction(v) for v in coeffs]
        if len(c) > 8:
            raise ValueError("at most 8 coordinates")
        c += [Fraction(0)] * (8 - len(c))
        self.coeffs = tuple(c)

    @classmethod
    def coerce(cls, v) -> "ExactScalar":
        if isinstance(v, ExactScalar):
            return v
        if isinstance(v, (int, Rational, np.integer)):
            return cls((Fraction(int(v)) if isinstance(v, np.integer) else Fraction(v),))
        if isinstance(v, str):
            return cls.parse(v)
        raise TypeError(f"cannot interpret {type(v).__name__} as an exact scalar")

    @classmethod
    def unit(cls, p: int) -> "ExactScalar":
        c = [0] * 8
        c[p] = 1
        return cls(c)

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        try:
            o = ExactScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return ExactScalar(a + b for a, b in zip(self.coeffs, o.coeffs))

    __radd__ = __add__

    def __neg__(self):
        return ExactScalar(-a for a in self.coeffs)

    def __pos__(self):
        return self

    def __sub__(self, other):
        try:
            o = ExactScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return ExactScalar(a - b for a, b in zip(self.coeffs, o.coeffs))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            o = ExactScalar.coerce(other)
        except TypeError:
            return NotImplemented
        out = [Fraction(0)] * 8
        for p, a in enumerate(self.coeffs):
            if not a:
                continue
            for q, b in enumerate(o.coeffs):
                if b:
                    c, m = MUL[p][q]
                    out[m] += c * a * b
        return ExactScalar(out)

    __rmul__ = __mul__

    def _mult_matrix(self) -> list[list[Fraction]]:
        # column q holds the coordinates of self * b_q
        mat = [[Fraction(0)] * 8 for _ in range(8)]
        for p, a in enumerate(self.coeffs):
            if a:
                for q in range(8):
                    c, m = MUL[p][q]
                    mat[m][q] += c * a
        return mat

    def inverse(self) -> "ExactScalar":
        if not self:
            raise ZeroDivisionError("inverse of zero")
        return ExactScalar(_solve(self._mult_matrix(), [Fraction(1)] + [Fraction(0)] * 7))

    def __truediv__(self, other):
        try:
            o = ExactScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return ExactScalar.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out, base = ExactScalar((1,)), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conj(self) -> "ExactScalar":
        """Complex conjugation i -> -i."""
        return ExactScalar(s * a for s, a in zip(CONJ_SIGN, self.coeffs))

    # predicates -------------------------------------------------------
    def __eq__(self, other):
        try:
            o = ExactScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash(self.coeffs)

    def __bool__(self):
        return any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def __complex__(self):
        s2, s3 = 2 ** 0.5, 3 ** 0.5
        rad = (1.0, s2, s3, s2 * s3)
        z = 0j
        for p, a in enumerate(self.coeffs):
            z += float(a) * rad[p >> 1] * (1j if p & 1 else 1)
        return z

    # text and JSON ----------------------------------------------------
    def to_json(self) -> list[str]:
        return [f"{a.numerator}/{a.denominator}" for a in self.coeffs]

    @classmethod
    def from_json(cls, data) -> "ExactScalar":
        if isinstance(data, (list, tuple)):
            if len(data) != 8:
                raise ValueError("scalar JSON must hold 8 coordinates")
            return cls(Fraction(str(v)) for v in data)
        return cls.coerce(data)

    @classmethod
    def parse(cls, text: str) -> "ExactScalar":
        """Parse sums like ``1/2*sqrt2 - i*sqrt6 + 3``."""
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty scalar")
        terms, cur = [], ""
        for ch in s:
            if ch in "+-" and cur and cur[-1] not in "*/":
                terms.append(cur)
                cur = ch
            else:
                cur += ch
        terms.append(cur)
        out = [Fraction(0)] * 8
        for t in terms:
            sign = 1
            while t and t[0] in "+-":
                sign = -sign if t[0] == "-" else sign
                t = t[1:]
            coef, has_i, r = Fraction(1), 0, 0
            for fac in t.split("*"):
                if fac == "i":
                    has_i ^= 1
                    if not has_i:
                        coef = -coef
                elif fac in ("sqrt2", "sqrt3", "sqrt6"):
                    bits = {"sqrt2": 1, "sqrt3": 2, "sqrt6": 3}[fac]
                    c, m = basis_product(2 * r, 2 * bits)
                    coef *= c
                    r = m >> 1
                elif fac:
                    coef *= Fraction(fac)
                else:
                    raise ValueError(f"malformed scalar {text!r}")
            out[2 * r + has_i] += sign * coef
        return cls(out)

    def __str__(self):
        parts = []
        for p, a in enumerate(self.coeffs):
            if not a:
                continue
            if p == 0:
                parts.append(str(a))
            elif a == 1:
                parts.append(NAMES[p])
            elif a == -1:
                parts.append("-" + NAMES[p])
            else:
                parts.append(f"{a}*{NAMES[p]}")
        if not parts:
            return "0"
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"ExactScalar({str(self)!r})"


ZERO = ExactScalar()
ONE = ExactScalar((1,))
I = ExactScalar.unit(1)
SQRT2 = ExactScalar.unit(2)
SQRT3 = ExactScalar.unit(4)
SQRT6 = ExactScalar.unit(6)


def as_scalar(v) -> ExactScalar:
    return ExactScalar.coerce(v)

"""Exact linear algebra used for coordinates, closure and rank checks."""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from .field import FieldArray, einsum
from .scalar import ExactScalar

PRIME = 2_147_483_647  # 2**31 - 1, products stay inside int64


def _rows_as_dicts(mat: FieldArray) -> list[dict]:
    """Sparse exact rows.  Entries are Fractions for rational data."""
    rational = mat.is_rational()
    k = mat.shape[0]
    flat = mat.num.reshape(8, k, -1)
    nz = flat.astype(bool).any(axis=0)
    rows = []
    for r in range(k):
        cols = np.flatnonzero(nz[r])
        if rational:
            rows.append({int(c): Fraction(int(flat[0, r, c]), mat.den) for c in cols})
        else:
            rows.append({int(c): ExactScalar(Fraction(int(flat[p, r, c]), mat.den) for p in range(8)) for c in cols})
    return rows


def _axpy(row: dict, f, other: dict):
    """row -= f * other, in place."""
    for c, v in other.items():
        w = row.get(c, 0) - f * v
        if w:
            row[c] = w
        else:
            row.pop(c, None)


def independent_rows_mod_p(mat: FieldArray, p: int = PRIME) -> list[int]:
    """Greedy list of row indices independent over F_p (hence over Q).

    Only meaningful for rational matrices.
    """
    if not mat.is_rational():
        raise ValueError("modular rank needs rational data")
    a = np.mod(mat.num[0].reshape(mat.shape[0], -1).astype(object), p).astype(np.int64)
    basis: list[tuple[int, np.ndarray]] = []  # (pivot col, normalized row)
    chosen = []
    for r in range(a.shape[0]):
        v = a[r].copy()
        for col, b in basis:
            if v[col]:
                v = (v - v[col] * b) % p
        nz = np.flatnonzero(v)
        if nz.size:
            col = int(nz[0])
            inv = pow(int(v[col]), p - 2, p)
            basis.append((col, (v * inv) % p))
            chosen.append(r)
    return chosen


def rank(mat: FieldArray) -> int:
    """Exact rank of a rational matrix (rows x columns)."""
    cs = CoordinateSystem(mat[independent_rows_mod_p(mat)])
    res = cs.residual(mat)
    if not res.is_zero():
        raise ArithmeticError("modular rank understated the rational rank")
    return cs.dim


class CoordinateSystem:
    """Coordinates with respect to the rows of an independent matrix.

    Gauss-Jordan gives pivot columns ``P`` and ``T`` with ``T @ B`` the
    reduced row echelon form, so ``c = v[P] @ T`` for any ``v`` in the row
    span.  The residual ``v - c @ B`` is the closure certificate.
    """

    def __init__(self, basis: FieldArray):
        if basis.ndim != 2:
            raise ValueError("basis must be a matrix")
        self.basis = basis
        self.dim = basis.shape[0]
        rows = _rows_as_dicts(basis)
        one = Fraction(1) if basis.is_rational() else ExactScalar((1,))
        trans = [{r: one} for r in range(self.dim)]
        piv_rows: list[int] = []
        pivots: list[int] = []
        for r in range(self.dim):
            row, t = rows[r], trans[r]
            for pr, pc in zip(piv_rows, pivots):
                f = row.get(pc)
                if f:
                    _axpy(row, f, rows[pr])
                    _axpy(t, f, trans[pr])
            if not row:
                raise ValueError(f"basis row {r} is dependent on earlier rows")
            pc = min(row)
            inv = 1 / row[pc]
            for d in (row, t):
                for c in d:
                    d[c] = d[c] * inv
            for pr in piv_rows:
                f = rows[pr].get(pc)
                if f:
                    _axpy(rows[pr], f, row)
                    _axpy(trans[pr], f, t)
            piv_rows.append(r)
            pivots.append(pc)
        order = np.argsort(pivots)
        self.pivots = np.array(pivots, dtype=np.int64)[order]
        tmat = np.empty((self.dim, self.dim), dtype=object)
        tmat.fill(0)
        for new, old in enumerate(order):
            for c, v in trans[piv_rows[old]].items():
                tmat[new, c] = v
        self.transform = FieldArray.from_scalars(tmat)

    def coords(self, vecs: FieldArray) -> FieldArray:
        """Coordinates of ``vecs`` (shape ``(..., N)``) without a residual check."""
        return einsum("...p,pk->...k", vecs[..., self.pivots], self.transform)

    def combine(self, coords: FieldArray) -> FieldArray:
        return einsum("...k,kn->...n", coords, self.basis)

    def residual(self, vecs: FieldArray) -> FieldArray:
        return vecs - self.combine(self.coords(vecs))

    def solve(self, vecs: FieldArray) -> FieldArray:
        """Coordinates, raising if ``vecs`` leaves the span."""
        c = self.coords(vecs)
        if not (vecs - self.combine(c)).is_zero():
            raise ArithmeticError("vector is not in the span of the basis")
        return c

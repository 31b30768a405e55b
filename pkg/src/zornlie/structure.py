"""Sparse exact structure constants and the exhaustive Jacobi scan.

Constants are stored as COO triples ``(i, j, k)`` with K-valued numerators
over one common denominator, so ``[b_i, b_j] = sum_k c_ij^k b_k``.

The Jacobi scan compares ``ad([b_i, b_j])`` with ``[ad b_i, ad b_j]`` for
every ordered pair, which covers every basis triple at once (the third
index runs over the matrix columns).  Matrices are integer scipy.sparse
arrays, one per field component, after clearing the denominator.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

import numpy as np
import scipy.sparse as sp

from .field import FieldArray
from .scalar import MUL, ExactScalar

LIMIT = 1 << 62


@dataclass
class StructureConstants:
    algebra: str
    labels: list
    idx: np.ndarray  # (nnz, 3) rows (i, j, k)
    num: np.ndarray  # (8, nnz) integer numerators
    den: int

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def nnz(self) -> int:
        return self.idx.shape[0]

    def components(self) -> list[int]:
        return [p for p in range(8) if np.any(self.num[p] != 0)]

    def value(self, e: int) -> ExactScalar:
        return ExactScalar(tuple(Fraction(int(self.num[p, e]), self.den) for p in range(8)))

    def dense(self) -> FieldArray:
        """Full ``(dim, dim, dim)`` tensor (small algebras only)."""
        d = self.dim
        num = np.zeros((8, d, d, d), dtype=self.num.dtype)
        i, j, k = self.idx.T
        num[:, i, j, k] = self.num
        return FieldArray(num, self.den)

    def bracket_coords(self, x: FieldArray, y: FieldArray) -> FieldArray:
        """Bracket of coordinate vectors through the table (``(..., dim)`` each)."""
        i, j, k = self.idx.T
        vals = FieldArray(self.num, self.den)
        w = x[..., i] * y[..., j] * vals  # (..., nnz)
        out = np.zeros((8,) + w.shape[:-1] + (self.dim,), dtype=object)
        np.add.at(np.moveaxis(out, -1, 0), k, np.moveaxis(w.num.astype(object), -1, 0))
        return FieldArray(out, w.den)

    def antisymmetry_failures(self) -> list[tuple[int, int]]:
        table = {}
        for e, (i, j, k) in enumerate(self.idx.tolist()):
            table[(i, j, k)] = tuple(int(v) for v in self.num[:, e])
        bad = set()
        for (i, j, k), v in table.items():
            w = table.get((j, i, k))
            if w is None or any(a + b for a, b in zip(v, w)):
                bad.add((min(i, j), max(i, j)))
        return sorted(bad)

    def to_json(self) -> dict:
        rows: dict = {}
        for e, (i, j, k) in enumerate(self.idx.tolist()):
            rows.setdefault((i, j), []).append([k, str(self.value(e))])
        return {
            "algebra": self.algebra,
            "dim": self.dim,
            "labels": list(self.labels),
            "brackets": [{"i": i, "j": j, "terms": terms} for (i, j), terms in sorted(rows.items())],
        }

    @classmethod
    def from_json(cls, data: dict) -> "StructureConstants":
        idx, vals = [], []
        for row in data["brackets"]:
            for k, s in row["terms"]:
                idx.append((row["i"], row["j"], k))
                vals.append(ExactScalar.parse(s))
        den = 1
        for v in vals:
            for c in v.coeffs:
                den = lcm(den, c.denominator)
        num = np.array([[int(c * den) for c in v.coeffs] for v in vals], dtype=object).T.reshape(8, len(vals))
        return cls(data["algebra"], list(data["labels"]), np.array(idx, dtype=np.int64).reshape(-1, 3),
                   _shrink(num), den)


def _shrink(num: np.ndarray) -> np.ndarray:
    if num.size == 0 or max(abs(int(v)) for v in num.flat) < LIMIT:
        return num.astype(np.int64)
    return num


def _row_pairs(flat: FieldArray, i: int) -> FieldArray:
    """Row ``i`` repeated once per basis element, matching ``flat``."""
    num = np.broadcast_to(flat.num[:, i:i + 1, :], flat.num.shape).copy()
    return FieldArray(num, flat.den, normalize=False)


def compute(alg, hook=None) -> StructureConstants:
    """Structure constants from live brackets; every bracket is re-expanded
    with zero residual (``coords`` raises otherwise).

    ``hook(i, row)`` sees the flattened brackets ``[b_i, b_j]`` for all j
    before they are expanded.
    """
    flat = alg.basis_flat
    d = alg.dim
    idx_parts, num_parts, dens = [], [], []
    for i in range(d):
        row = alg.bracket_flat(_row_pairs(flat, i), flat)
        if hook is not None:
            hook(i, row)
        c = alg.coords_system.solve(row)  # (d, d)
        nz = np.argwhere((c.num != 0).any(axis=0))
        if nz.size == 0:
            continue
        idx_parts.append(np.column_stack([np.full(len(nz), i), nz]))
        num_parts.append(c.num[:, nz[:, 0], nz[:, 1]].astype(object))
        dens.append(c.den)
    if not idx_parts:
        return StructureConstants(alg.name, list(alg.labels), np.zeros((0, 3), np.int64),
                                  np.zeros((8, 0), np.int64), 1)
    den = 1
    for v in dens:
        den = lcm(den, v)
    num = np.concatenate([n * (den // v) for n, v in zip(num_parts, dens)], axis=1)
    return StructureConstants(alg.name, list(alg.labels), np.concatenate(idx_parts).astype(np.int64),
                              _shrink(num), den)


# ------------------------------------------------------------------ Jacobi
def _kmul(x: dict, y: dict) -> dict:
    """Product of K-valued sparse matrices stored as {component: matrix}."""
    out: dict = {}
    for p, a in x.items():
        for q, b in y.items():
            coef, r = MUL[p][q]
            m = (a @ b) * coef
            out[r] = out[r] + m if r in out else m
    return out


def _ksub(x: dict, y: dict) -> dict:
    out = dict(x)
    for r, m in y.items():
        out[r] = out[r] - m if r in out else -m
    return out


def _regroup(m, d: int, horizontal: bool):
    """Move the block index of a stacked product into the row position.

    horizontal: ``(r, j*d + c) -> (j, r*d + c)``; vertical: ``(j*d + r, c) -> (j, r*d + c)``.
    """
    m = m.tocoo()
    if horizontal:
        j, c = np.divmod(m.col, d)
        r = m.row
    else:
        j, r = np.divmod(m.row, d)
        c = m.col
    return sp.csr_array((m.data, (j, r * d + c)), shape=(d, d * d))


def jacobi_exhaustive(sc: StructureConstants, max_failures: int = 20) -> tuple[int, list[tuple[int, int, int]]]:
    """Exhaustive basis Jacobi check; returns (triples checked, failing triples)."""
    d = sc.dim
    if sc.num.dtype == object:
        raise ArithmeticError("structure constants exceed the int64 range of the sparse scan")
    comps = sc.components()
    i_, j_, k_ = sc.idx.T
    big = int(np.abs(sc.num).max()) if sc.nnz else 0
    if big * big * d * 6 * max(1, len(comps)) ** 2 >= LIMIT:
        raise ArithmeticError("sparse Jacobi scan would overflow int64")
    # ad_i[k, j] = c_ij^k (times den), per component
    ad = [{} for _ in range(d)]
    aflat, hst, vst = {}, {}, {}
    for p in comps:
        vals = sc.num[p]
        mask = vals != 0
        for i in range(d):
            sel = mask & (i_ == i)
            ad[i][p] = sp.csr_array((vals[sel], (k_[sel], j_[sel])), shape=(d, d), dtype=np.int64)
        # row k of aflat is ad_k flattened row-major
        aflat[p] = sp.csr_array((vals[mask], (i_[mask], k_[mask] * d + j_[mask])), shape=(d, d * d), dtype=np.int64)
        hst[p] = sp.csr_array((vals[mask], (k_[mask], i_[mask] * d + j_[mask])), shape=(d, d * d), dtype=np.int64)
        vst[p] = sp.csr_array((vals[mask], (i_[mask] * d + k_[mask], j_[mask])), shape=(d * d, d), dtype=np.int64)
    failures = []
    for i in range(d):
        cmat = {}
        for p in comps:
            sel = (i_ == i) & (sc.num[p] != 0)
            cmat[p] = sp.csr_array((sc.num[p][sel], (j_[sel], k_[sel])), shape=(d, d), dtype=np.int64)
        lhs = _kmul(cmat, aflat)
        right = {r: _regroup(m, d, True) for r, m in _kmul(ad[i], hst).items()}
        left_ = {r: _regroup(m, d, False) for r, m in _kmul(vst, ad[i]).items()}
        diff = _ksub(lhs, _ksub(right, left_))
        for m in diff.values():
            m = m.tocoo()
            nz = m.data != 0
            for j, col in zip(m.row[nz], m.col[nz]):
                trip = (i, int(j), int(col) % d)
                if trip not in failures:
                    failures.append(trip)
        if len(failures) >= max_failures:
            break
    return d ** 3, failures[:max_failures]

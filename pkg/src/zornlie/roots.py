"""Roots and weights: the e6 root list, weight extraction, Table 1 audit.

Roots are tuples of ExactScalar coordinates on an orthonormal basis
k_1..k_6.  Weights are read off by bracketing with Cartan elements and
dividing out the eigenvalue exactly.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import exc, g2
from .field import FieldArray
from .scalar import SQRT2, SQRT3, SQRT6, ExactScalar

HALF = ExactScalar((1,)) / 2
ZERO = ExactScalar()


@dataclass(frozen=True)
class RootVector:
    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(ExactScalar.coerce(c) for c in self.coords))

    def __neg__(self):
        return RootVector(tuple(-c for c in self.coords))

    def dot(self, other: "RootVector") -> ExactScalar:
        out = ZERO
        for a, b in zip(self.coords, other.coords):
            out = out + a * b
        return out

    def norm2(self) -> ExactScalar:
        return self.dot(self)

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


def _root(*coords) -> RootVector:
    return RootVector(coords)


def _half_root(signs) -> RootVector:
    """``1/2 (s1 k1 + ... + s5 k5 + s6 sqrt3 k6)``."""
    return RootVector(tuple(HALF * s for s in signs[:5]) + (HALF * SQRT3 * signs[5],))


def e6_root_list() -> list[RootVector]:
    """The 72 roots: 40 of type +-k_i +- k_j (i < j <= 5), then 32 half-integral
    ones with an odd number of plus signs."""
    roots = []
    for i, j in itertools.combinations(range(5), 2):
        for si, sj in itertools.product((1, -1), repeat=2):
            c = [0] * 6
            c[i], c[j] = si, sj
            roots.append(RootVector(tuple(c)))
    for signs in itertools.product((1, -1), repeat=6):
        if sum(s > 0 for s in signs) % 2 == 1:
            roots.append(_half_root(signs))
    return roots


# unit vectors of the a2+ and a2- Cartan axes
AXES = {
    "+": (RootVector((0, 0, 0, SQRT2 / 2, SQRT2 / 2, 0)),
          RootVector((-SQRT6 / 6, -SQRT6 / 6, -SQRT6 / 6, 0, 0, SQRT2 / 2))),
    "-": (RootVector((0, 0, 0, SQRT2 / 2, -SQRT2 / 2, 0)),
          RootVector((-SQRT6 / 6, -SQRT6 / 6, -SQRT6 / 6, 0, 0, -SQRT2 / 2))),
}


def project(r: RootVector, sign: str) -> tuple:
    """Components of a root along the a2^sign Cartan axes."""
    return tuple(r.dot(ax) for ax in AXES[sign])


# --------------------------------------------------------------- weights
def weight_of(x, cartans, bracket) -> tuple:
    """Exact eigenvalues of ``x`` under ``ad h`` for each Cartan element ``h``.

    Raises ValueError when some ``[h, x]`` is not proportional to ``x``.
    """
    v = x.flatten()
    nz = np.flatnonzero((v.num != 0).any(axis=0))
    if nz.size == 0:
        raise ValueError("zero vector has no weight")
    k = int(nz[0])
    out = []
    for h in cartans:
        r = bracket(h, x).flatten()
        lam = r[k].item() / v[k].item()
        if not (r - v * lam).is_zero():
            raise ValueError("element is not an eigenvector of the Cartan element")
        out.append(lam)
    return tuple(out)


def g2_cartans():
    return [g2.generator("H1"), g2.generator("H2")]


def g2_weights() -> dict:
    """(H1, H2) weights of the twelve root generators of g2."""
    h = g2_cartans()
    return {lab: weight_of(g2.generator(lab), h, g2.g2_bracket)
            for lab in g2.LABELS if lab not in ("H1", "H2")}


# ------------------------------------------------------------ e6 / Table 1
RHO = {"+": 0, "-": 1}
H_DIAG = {
    1: [SQRT2 / 2, -SQRT2 / 2, ZERO],
    2: [SQRT6 / 6, SQRT6 / 6, -SQRT6 / 3],
}


def _e6(a=None, a1=None, xp=None) -> exc.ExcElement:
    z = exc.ExcElement.zero(2)
    return exc.ExcElement(2, z.a if a is None else a, z.a1 if a1 is None else a1,
                          z.xp if xp is None else xp, z.xm)


def e6_inner_cartans(sign: str) -> list:
    """``H^sign_{1,2} = rho^sign H_{1,2}`` placed in the a1 block."""
    out = []
    for k in (1, 2):
        m = np.zeros((3, 3, 8), dtype=object)
        m.fill(0)
        for i, h in enumerate(H_DIAG[k]):
            m[i, i, RHO[sign]] = h
        out.append(_e6(a1=FieldArray.from_scalars(m)))
    return out


def e6_outer_cartans() -> list:
    """``H_{1,2}`` placed in the outer a block (the a2^f Cartan)."""
    out = []
    for k in (1, 2):
        m = np.zeros((3, 3), dtype=object)
        m.fill(0)
        for i, h in enumerate(H_DIAG[k]):
            m[i, i] = h
        out.append(_e6(a=FieldArray.from_scalars(m)))
    return out


def table_generator(label: str, slot: int = 0) -> exc.ExcElement:
    """``X_i = E_ii`` or ``X^s_{i,i+1} = rho^s E_{i,i+1} + rho^-s E_{i+1,i}``
    as the x+ component in the given slot."""
    m = np.zeros((3, 3, 8), dtype=np.int64)
    if label.startswith("X") and len(label) == 2:
        i = int(label[1]) - 1
        m[i, i, 0] = m[i, i, 1] = 1
    else:
        s, ij = label[1], label[2:]
        i, j = int(ij[0]) - 1, int(ij[1]) - 1
        m[i, j, RHO[s]] = 1
        m[j, i, 1 - RHO[s]] = 1
    xp = np.zeros((3, 3, 3, 8), dtype=np.int64)
    xp[slot] = m
    return _e6(xp=FieldArray.from_int(xp)).validate()


W_A = (SQRT2 / 2, SQRT6 / 6)
W_B = (ZERO, -SQRT6 / 3)
W_C = (-SQRT2 / 2, SQRT6 / 6)

# (root, generator, printed a2+ cell, printed a2- cell); None marks a blank cell
TABLE1 = [
    (_root(-1, 0, 0, 1, 0, 0), "X1", W_A, None),
    (_half_root((-1, 1, 1, 1, -1, -1)), "X+31", W_B, W_A),
    (_root(-1, 0, 0, 0, -1, 0), "X-12", W_C, None),
    (_half_root((-1, 1, 1, 1, 1, 1)), "X-31", W_A, None),
    (_root(0, 1, 1, 0, 0, 0), "X3", W_B, W_B),
    (_half_root((-1, 1, 1, -1, -1, 1)), "X+23", W_C, None),
    (_root(-1, 0, 0, 0, 1, 0), "X+12", W_A, None),
    (_half_root((-1, 1, 1, -1, 1, -1)), "X-23", W_B, W_C),
    (_root(-1, 0, 0, -1, 0, 0), "X2", W_C, None),
]


@dataclass
class Table1Row:
    generator: str
    root: RootVector
    weights: dict  # sign -> computed weight
    printed: dict  # sign -> printed weight or None
    root_in_list: bool
    projection_ok: dict = field(default_factory=dict)

    @property
    def printed_ok(self) -> bool:
        return all(p is None or tuple(p) == self.weights[s] for s, p in self.printed.items())

    @property
    def ok(self) -> bool:
        return self.printed_ok and self.root_in_list and all(self.projection_ok.values())

    def to_json(self) -> dict:
        def w(t):
            return None if t is None else [str(c) for c in t]

        return {
            "generator": self.generator,
            "root": [str(c) for c in self.root.coords],
            "a2+": w(self.weights["+"]),
            "a2-": w(self.weights["-"]),
            "printed a2+": w(self.printed["+"]),
            "printed a2-": w(self.printed["-"]),
            "blank cells": [s for s, p in self.printed.items() if p is None],
            "root listed": self.root_in_list,
            "projection matches": self.projection_ok,
            "ok": self.ok,
        }


@lru_cache(maxsize=None)
def table1_audit() -> list[Table1Row]:
    """Recompute the nine weight rows; blank cells are computed, not compared."""
    roots = set(e6_root_list())
    carts = {s: e6_inner_cartans(s) for s in "+-"}
    rows = []
    for root, gen, wp, wm in TABLE1:
        x = table_generator(gen)
        weights = {s: weight_of(x, carts[s], exc.exc_bracket) for s in "+-"}
        row = Table1Row(gen, root, weights, {"+": wp, "-": wm}, root in roots)
        row.projection_ok = {s: project(root, s) == weights[s] for s in "+-"}
        rows.append(row)
    return rows


def outer_weight_classes() -> dict:
    """Outer (a2^f) weights of every x+ and x- basis element of e6, grouped by
    slot; each slot of a Jordan pair block must carry a single weight."""
    alg = exc.algebra(2)
    h = e6_outer_cartans()
    out = {}
    for k, lab in enumerate(alg.labels):
        if not lab.startswith(("xp", "xm")):
            continue
        w = weight_of(alg.basis[k], h, exc.exc_bracket)
        out.setdefault(lab.split(":")[0], set()).add(w)
    return out


# --------------------------------------------------------------- export
def e6_root_rows() -> list[dict]:
    rows = []
    for r in e6_root_list():
        p, m = project(r, "+"), project(r, "-")
        rows.append({
            **{f"k{i + 1}": str(c) for i, c in enumerate(r.coords)},
            "H1+": str(p[0]), "H2+": str(p[1]), "H1-": str(m[0]), "H2-": str(m[1]),
        })
    return rows


def g2_root_rows() -> list[dict]:
    return [{"generator": lab, "H1": str(w[0]), "H2": str(w[1])} for lab, w in g2_weights().items()]

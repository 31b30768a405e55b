"""Uniform view of the five algebras: basis, flattening, bracket, coordinates."""
from __future__ import annotations

from functools import lru_cache

import numpy as np

from . import e8, exc, g2
from .field import FieldArray, einsum

NAMES = ("g2", "f4", "e6", "e7", "e8")

# block dimensions as displayed in the branching rules
EXPECTED_BRANCHING = {
    "g2": {"a": 8, "vp": 3, "vm": 3},
    "f4": {"a": 8, "a1": 8, "xp": 18, "xm": 18},
    "e6": {"a": 8, "a1+": 8, "a1-": 8, "xp": 27, "xm": 27},
    "e7": {"a": 8, "a1": 35, "xp": 45, "xm": 45},
    "e8": {"a": 8, "a1": 78, "xp": 81, "xm": 81},
}
EXPECTED_DIM = {"g2": 14, "f4": 52, "e6": 78, "e7": 133, "e8": 248}


class LieAlgebra:
    """Adapter exposing one algebra through flat coordinate vectors."""

    name: str
    labels: list[str]
    basis_flat: FieldArray

    @property
    def dim(self) -> int:
        return len(self.labels)

    def unflatten(self, v: FieldArray):
        raise NotImplementedError

    def flatten(self, x) -> FieldArray:
        return x.flatten()

    def bracket(self, x, y):
        raise NotImplementedError

    def coords(self, x) -> FieldArray:
        """Basis coordinates of (batched) elements; raises on a nonzero residual."""
        return self.coords_system.solve(self.flatten(x))

    def element(self, c):
        return self.unflatten(einsum("...k,kn->...n", FieldArray.coerce(c), self.basis_flat))

    def basis(self):
        return self.unflatten(self.basis_flat)

    def random(self, rng: np.random.Generator, batch=()):
        batch = (batch,) if isinstance(batch, int) else tuple(batch)
        return self.element(FieldArray.from_int(rng.integers(-2, 3, size=batch + (self.dim,))))

    def branching(self) -> dict:
        raise NotImplementedError

    def bracket_flat(self, u: FieldArray, v: FieldArray) -> FieldArray:
        return self.flatten(self.bracket(self.unflatten(u), self.unflatten(v)))


class G2Algebra(LieAlgebra):
    name = "g2"

    def __init__(self):
        self.labels = list(g2.LABELS)
        self.basis_flat = g2.generators().flatten()
        self.coords_system = g2.coordinate_system()

    def unflatten(self, v):
        return g2.G2Element.unflatten(v)

    def bracket(self, x, y):
        return g2.g2_bracket(x, y)

    def branching(self) -> dict:
        b = g2.generators()
        out = {}
        for slot, arr in (("a", b.a), ("vp", b.vp), ("vm", b.vm)):
            nz = (arr.num != 0).reshape(arr.num.shape[0], arr.shape[0], -1).any(axis=(0, 2))
            out[slot] = int(nz.sum())
        return out


class ExcLie(LieAlgebra):
    def __init__(self, n: int):
        self.inner = exc.algebra(n)
        self.n = n
        self.name = self.inner.name
        self.labels = self.inner.labels
        self.basis_flat = self.inner.basis_flat
        self.coords_system = self.inner.coords_system

    def unflatten(self, v):
        return exc.ExcElement.unflatten(self.n, v)

    def bracket(self, x, y):
        return exc.exc_bracket(x, y)

    def branching(self) -> dict:
        b = dict(self.inner.blocks)
        if self.n == 2:
            # the bicomplex inner algebra splits as rho+ sl3 + rho- sl3
            plus = sum(1 for s in self.labels if s.startswith("a1:") and s.endswith("rho+"))
            minus = sum(1 for s in self.labels if s.startswith("a1:") and s.endswith("rho-"))
            b = {"a": b["a"], "a1+": plus, "a1-": minus, "xp": b["xp"], "xm": b["xm"]}
        return b


class E8Lie(LieAlgebra):
    name = "e8"

    def __init__(self):
        self.inner = e8.algebra()
        self.labels = self.inner.labels
        self.basis_flat = self.inner.basis_flat
        self.coords_system = self.inner.coords_system

    def unflatten(self, v):
        return e8.E8Element.unflatten(v)

    def bracket(self, x, y):
        return e8.e8_bracket(x, y)

    def branching(self) -> dict:
        return dict(self.inner.blocks)


@lru_cache(maxsize=None)
def get(name: str) -> LieAlgebra:
    if name == "g2":
        return G2Algebra()
    if name in exc.RANK_OF:
        return ExcLie(exc.RANK_OF[name])
    if name == "e8":
        return E8Lie()
    raise KeyError(f"unknown algebra {name!r}; choose from {', '.join(NAMES)}")

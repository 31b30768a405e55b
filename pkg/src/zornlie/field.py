"""Exact arrays over K = Q(i, sqrt2, sqrt3).

A :class:`FieldArray` stores integer numerators of shape ``(8, *shape)``
(one slice per field coordinate, see :mod:`zornlie.scalar`) over a single
positive common denominator.  Numerators live in ``int64`` while a cheap
bound says no overflow can happen and fall back to Python ints
(``dtype=object``) otherwise, so results are always exact.

Products only loop over field coordinates that are actually nonzero, so
rational data costs one numpy call per operation.
"""
from __future__ import annotations

import functools
import itertools
import math
from fractions import Fraction
from functools import reduce

import numpy as np

from .scalar import CONJ_SIGN, MUL, ExactScalar

LIMIT = 2 ** 62
_CONJ = np.array(CONJ_SIGN, dtype=np.int64)


def _maxabs(a: np.ndarray, support=None) -> int:
    if a.size == 0:
        return 0
    if support is not None:
        if not support:
            return 0
        if len(support) == 1:
            a = a[support[0]]
    if a.dtype == object:
        return int(np.abs(a).max())
    return max(int(a.max()), -int(a.min()))


def _union(*sups):
    if any(x is None for x in sups):
        return None
    return tuple(sorted(set().union(*sups)))


@functools.lru_cache(maxsize=4096)
def _prime_factors(n: int) -> tuple[int, ...]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return tuple(out)


def _pad(num: np.ndarray, ndim: int) -> np.ndarray:
    """Insert unit axes after the component axis so trailing shapes align."""
    extra = ndim - (num.ndim - 1)
    if extra <= 0:
        return num
    return num.reshape((8,) + (1,) * extra + num.shape[1:])


def _scaled(num: np.ndarray, f: int, bound: int) -> np.ndarray:
    if f == 1:
        return num if (num.dtype == object or bound < LIMIT) else num.astype(object)
    if bound >= LIMIT and num.dtype != object:
        num = num.astype(object)
    return num * f


def _axis(a: int) -> int:
    return a + 1 if a >= 0 else a


class FieldArray:
    """Exact n-dimensional array with entries in K."""

    __slots__ = ("num", "den", "support")
    __array_priority__ = 1000

    def __init__(self, num, den: int = 1, normalize: bool = True, support=None):
        num = np.asarray(num)
        if num.dtype != object and num.dtype != np.int64:
            if not np.issubdtype(num.dtype, np.integer):
                raise TypeError(f"numerators must be integers, got {num.dtype}")
            num = num.astype(np.int64)
        if num.ndim == 0 or num.shape[0] != 8:
            raise ValueError("numerator array must have a leading axis of length 8")
        den = int(den)
        if den <= 0:
            raise ValueError("denominator must be positive")
        self.num = num
        self.den = den
        # field coordinates that may be nonzero (a superset; None = unknown)
        self.support = support
        if normalize:
            self._normalize()

    def _normalize(self):
        # only primes dividing den can cancel, so test those instead of a full gcd
        if self.den > 1:
            num, den = self.num, self.den
            sup = self.sup()
            for p in _prime_factors(den):
                while den % p == 0 and not any(np.any(num[q] % p) for q in sup):
                    num = num // p
                    den //= p
            self.num, self.den = num, den
        if self.num.dtype == object and _maxabs(self.num) < LIMIT:
            self.num = self.num.astype(np.int64)

    # constructors -----------------------------------------------------
    @classmethod
    def zeros(cls, shape) -> "FieldArray":
        shape = (shape,) if isinstance(shape, int) else tuple(shape)
        return cls(np.zeros((8,) + shape, dtype=np.int64), 1, normalize=False, support=())

    @classmethod
    def from_int(cls, arr, den: int = 1) -> "FieldArray":
        """Rational array ``arr / den`` from integer data."""
        arr = np.asarray(arr)
        num = np.zeros((8,) + arr.shape, dtype=arr.dtype if arr.dtype == object else np.int64)
        num[0] = arr
        return cls(num, den, support=(0,))

    @classmethod
    def eye(cls, n: int) -> "FieldArray":
        return cls.from_int(np.eye(n, dtype=np.int64))

    @classmethod
    def scalar(cls, v) -> "FieldArray":
        s = ExactScalar.coerce(v)
        den = reduce(math.lcm, (c.denominator for c in s.coeffs), 1)
        return cls(np.array([int(c * den) for c in s.coeffs], dtype=object), den)

    @classmethod
    def from_scalars(cls, data) -> "FieldArray":
        """Build from a nested sequence (or object array) of scalar-likes."""
        obj = np.asarray(data, dtype=object)
        flat = [ExactScalar.coerce(v) for v in obj.flat]
        den = 1
        for s in flat:
            for c in s.coeffs:
                den = math.lcm(den, c.denominator)
        num = np.empty((8, len(flat)), dtype=object)
        for k, s in enumerate(flat):
            for p in range(8):
                num[p, k] = int(s.coeffs[p] * den)
        return cls(num.reshape((8,) + obj.shape), den)

    @classmethod
    def coerce(cls, v) -> "FieldArray":
        if isinstance(v, FieldArray):
            return v
        if isinstance(v, np.ndarray):
            if v.dtype == object:
                return cls.from_scalars(v)
            return cls.from_int(v)
        if isinstance(v, (list, tuple)):
            return cls.from_scalars(v)
        return cls.scalar(v)

    # basic properties -------------------------------------------------
    @property
    def shape(self) -> tuple:
        return self.num.shape[1:]

    @property
    def ndim(self) -> int:
        return self.num.ndim - 1

    @property
    def size(self) -> int:
        return int(np.prod(self.shape, dtype=np.int64))

    def __len__(self):
        return self.shape[0]

    def sup(self) -> tuple:
        """Possibly-nonzero field coordinates (computed exactly when unknown)."""
        if self.support is None:
            flat = self.num.reshape(8, -1)
            self.support = tuple(p for p in range(8) if flat[p].any())
        return self.support

    def components(self) -> list[int]:
        """Field coordinates carrying a nonzero numerator somewhere."""
        return [p for p in self.sup() if np.any(self.num[p])]

    def is_rational(self) -> bool:
        return all(p == 0 for p in self.components())

    def is_zero(self) -> bool:
        return not self.num.any()

    def copy(self) -> "FieldArray":
        return FieldArray(self.num.copy(), self.den, normalize=False, support=self.support)

    # conversion -------------------------------------------------------
    def to_scalars(self) -> np.ndarray:
        out = np.empty(self.shape, dtype=object)
        flat = self.num.reshape(8, -1)
        view = out.reshape(-1)
        for k in range(flat.shape[1]):
            view[k] = ExactScalar(Fraction(int(flat[p, k]), self.den) for p in range(8))
        return out

    def item(self) -> ExactScalar:
        if self.shape != ():
            if self.size != 1:
                raise ValueError("item() needs a single entry")
            return self.reshape(()).item()
        return ExactScalar(Fraction(int(v), self.den) for v in self.num)

    def to_fractions(self) -> np.ndarray:
        if not self.is_rational():
            raise ValueError("array has irrational entries")
        out = np.empty(self.shape, dtype=object)
        view = out.reshape(-1)
        for k, v in enumerate(self.num[0].reshape(-1)):
            view[k] = Fraction(int(v), self.den)
        return out

    def to_complex(self) -> np.ndarray:
        s2, s3 = 2 ** 0.5, 3 ** 0.5
        w = np.array([1, 1j, s2, 1j * s2, s3, 1j * s3, s2 * s3, 1j * s2 * s3])
        return np.tensordot(w, self.num.astype(float), axes=(0, 0)) / self.den

    def __repr__(self):
        return f"FieldArray(shape={self.shape}, den={self.den}, comps={self.components()})"

    # shape manipulation ------------------------------------------------
    def __getitem__(self, key) -> "FieldArray":
        if not isinstance(key, tuple):
            key = (key,)
        return FieldArray(self.num[(slice(None),) + key], self.den, support=self.support)

    def __setitem__(self, key, value):
        v = FieldArray.coerce(value)
        if not isinstance(key, tuple):
            key = (key,)
        key = (slice(None),) + key
        target = self.num[key].shape
        lcm = math.lcm(self.den, v.den)
        fs, fv = lcm // self.den, lcm // v.den
        bound = max(_maxabs(self.num) * fs, _maxabs(v.num) * fv)
        self.num = _scaled(self.num, fs, bound)
        vnum = _scaled(v.num, fv, bound)
        if self.num.dtype != object and vnum.dtype == object:
            self.num = self.num.astype(object)
        self.num[key] = _pad(vnum, len(target) - 1)
        self.den = lcm
        self.support = _union(self.support, v.support)
        self._normalize()

    def reshape(self, *shape) -> "FieldArray":
        if len(shape) == 1 and isinstance(shape[0], (tuple, list)):
            shape = tuple(shape[0])
        return FieldArray(self.num.reshape((8,) + tuple(shape)), self.den, normalize=False, support=self.support)

    def transpose(self, *axes) -> "FieldArray":
        if not axes:
            axes = tuple(reversed(range(self.ndim)))
        elif len(axes) == 1 and isinstance(axes[0], (tuple, list)):
            axes = tuple(axes[0])
        axes = tuple(a % self.ndim for a in axes)
        return FieldArray(self.num.transpose((0,) + tuple(a + 1 for a in axes)), self.den, normalize=False, support=self.support)

    @property
    def T(self) -> "FieldArray":
        return self.transpose()

    def swapaxes(self, a: int, b: int) -> "FieldArray":
        return FieldArray(np.swapaxes(self.num, _axis(a), _axis(b)), self.den, normalize=False, support=self.support)

    def moveaxis(self, src: int, dst: int) -> "FieldArray":
        return FieldArray(np.moveaxis(self.num, _axis(src), _axis(dst)), self.den, normalize=False, support=self.support)

    def broadcast_to(self, shape) -> "FieldArray":
        shape = tuple(shape)
        num = _pad(self.num, len(shape))
        return FieldArray(np.broadcast_to(num, (8,) + shape).copy(), self.den, normalize=False, support=self.support)

    def expand(self, k: int) -> "FieldArray":
        """Append ``k`` trailing unit axes (for broadcasting scalars)."""
        return FieldArray(self.num.reshape(self.num.shape + (1,) * k), self.den, normalize=False, support=self.support)

    def sum(self, axis=None) -> "FieldArray":
        if axis is None:
            axis = tuple(range(self.ndim))
        axes = (axis,) if isinstance(axis, int) else tuple(axis)
        count = 1
        for a in axes:
            count *= self.shape[a]
        num = self.num
        if num.dtype != object and _maxabs(num, self.support) * count >= LIMIT:
            num = num.astype(object)
        return FieldArray(num.sum(axis=tuple(_axis(a) for a in axes)), self.den, support=self.support)

    def trace(self, axis1: int = 0, axis2: int = 1) -> "FieldArray":
        num = self.num
        n = min(self.shape[axis1], self.shape[axis2])
        if num.dtype != object and _maxabs(num, self.support) * n >= LIMIT:
            num = num.astype(object)
        return FieldArray(np.trace(num, axis1=_axis(axis1), axis2=_axis(axis2)), self.den, support=self.support)

    def diagonal(self, axis1: int = 0, axis2: int = 1) -> "FieldArray":
        return FieldArray(np.diagonal(self.num, axis1=_axis(axis1), axis2=_axis(axis2)).copy(), self.den, support=self.support)

    # arithmetic -------------------------------------------------------
    def conj(self) -> "FieldArray":
        return FieldArray(self.num * _CONJ.reshape((8,) + (1,) * self.ndim), self.den, normalize=False, support=self.support)

    def __neg__(self):
        return FieldArray(-self.num, self.den, normalize=False, support=self.support)

    def __pos__(self):
        return self

    def _addsub(self, other, sign: int):
        o = FieldArray.coerce(other)
        lcm = math.lcm(self.den, o.den)
        fa, fb = lcm // self.den, lcm // o.den
        bound = _maxabs(self.num, self.support) * fa + _maxabs(o.num, o.support) * fb
        a = _scaled(self.num, fa, bound)
        b = _scaled(o.num, fb, bound)
        nd = max(self.ndim, o.ndim)
        a, b = _pad(a, nd), _pad(b, nd)
        return FieldArray(a + b if sign > 0 else a - b, lcm, support=_union(self.support, o.support))

    def __add__(self, other):
        return self._addsub(other, 1)

    def __radd__(self, other):
        return self._addsub(other, 1)

    def __sub__(self, other):
        return self._addsub(other, -1)

    def __rsub__(self, other):
        return (-self)._addsub(other, 1)

    def _rational_factor(self, v):
        if isinstance(v, (int, np.integer)):
            return Fraction(int(v))
        if isinstance(v, Fraction):
            return v
        if isinstance(v, ExactScalar) and v.is_rational():
            return v.coeffs[0]
        return None

    def __mul__(self, other):
        f = self._rational_factor(other)
        if f is not None:
            p, q = f.numerator, f.denominator
            num = self.num
            if num.dtype != object and _maxabs(num, self.support) * abs(p) >= LIMIT:
                num = num.astype(object)
            return FieldArray(num * p, self.den * q, support=self.support)
        return einsum_broadcast_mul(self, FieldArray.coerce(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        f = self._rational_factor(other)
        if f is not None:
            return self * (1 / f)
        return self * ExactScalar.coerce(other).inverse()

    def __matmul__(self, other):
        return einsum("...ij,...jk->...ik", self, other)

    def __rmatmul__(self, other):
        return einsum("...ij,...jk->...ik", other, self)

    def __eq__(self, other):
        try:
            o = FieldArray.coerce(other)
        except TypeError:
            return NotImplemented
        if o.shape != self.shape:
            if o.ndim == 0:
                o = o.broadcast_to(self.shape)
            else:
                return False
        return self.den == o.den and np.array_equal(self.num, o.num)

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    __hash__ = None


def einsum_broadcast_mul(a: FieldArray, b: FieldArray) -> FieldArray:
    """Elementwise product with numpy broadcasting."""
    nd = max(a.ndim, b.ndim)
    an, bn = _pad(a.num, nd), _pad(b.num, nd)
    ca, cb = a.sup(), b.sup()
    bound = _maxabs(a.num, ca) * _maxabs(b.num, cb) * 6 * max(1, len(ca) * len(cb))
    if bound >= LIMIT:
        an, bn = an.astype(object), bn.astype(object)
    shape = np.broadcast_shapes(an.shape[1:], bn.shape[1:])
    out = np.zeros((8,) + shape, dtype=object if bound >= LIMIT else np.int64)
    touched = set()
    for p in ca:
        for q in cb:
            c, m = MUL[p][q]
            if m in touched:
                out[m] += c * (an[p] * bn[q])
            else:
                out[m] = c * (an[p] * bn[q]) if c != 1 else an[p] * bn[q]
                touched.add(m)
    return FieldArray(out, a.den * b.den, support=tuple(sorted(touched)))


def _letter_sizes(spec: str, shape: tuple, sizes: dict):
    if "..." in spec:
        pre, post = spec.split("...")
        for k, ch in enumerate(pre):
            sizes[ch] = shape[k]
        for k, ch in enumerate(post):
            sizes[ch] = shape[len(shape) - len(post) + k]
    else:
        for ch, n in zip(spec, shape):
            sizes[ch] = n


# contractions with a faster BLAS-free numpy equivalent
_FAST = {
    "...ij,...jk->...ik": np.matmul,
    "...n,nc->...c": np.matmul,
}


def einsum(subscripts: str, *operands) -> FieldArray:
    """Exact einsum over K.  Requires an explicit ``->`` output."""
    if "->" not in subscripts:
        raise ValueError("einsum needs an explicit output specification")
    ins, out_spec = subscripts.replace(" ", "").split("->")
    specs = ins.split(",")
    if len(specs) != len(operands):
        raise ValueError("operand count does not match subscripts")
    ops = [FieldArray.coerce(o) for o in operands]
    sizes: dict = {}
    for s, o in zip(specs, ops):
        _letter_sizes(s, o.shape, sizes)
    contracted = 1
    for ch in set("".join(specs)) - set(out_spec) - {"."}:
        contracted *= sizes[ch]
    comps = [o.sup() for o in ops]
    if any(not c for c in comps):
        # some operand is identically zero; let numpy work out the shape
        shape = np.einsum(subscripts, *[o.num[0] for o in ops]).shape
        return FieldArray.zeros(shape)
    combos = []
    coef_total = 0
    for combo in itertools.product(*comps):
        c, m = 1, 0
        for p in combo:
            cc, m = MUL[m][p]
            c *= cc
        combos.append((combo, c, m))
        coef_total += abs(c)
    bound = contracted * coef_total
    for o, c in zip(ops, comps):
        bound *= _maxabs(o.num, c)
    big = bound >= LIMIT
    nums = [o.num.astype(object) if big and o.num.dtype != object else o.num for o in ops]
    opt = "greedy" if len(ops) >= 3 else False
    fast = _FAST.get(subscripts.replace(" ", ""))
    out = None
    for combo, c, m in combos:
        args = [n[p] for n, p in zip(nums, combo)]
        if fast is not None and all(a.dtype != object for a in args):
            term = fast(*args)
        else:
            term = np.einsum(subscripts, *args, optimize=opt)
        if out is None:
            out = np.zeros((8,) + term.shape, dtype=object if big else np.int64)
        if c == 1:
            out[m] += term
        else:
            out[m] += c * term
    den = 1
    for o in ops:
        den *= o.den
    return FieldArray(out, den, support=tuple(sorted({m for _, _, m in combos})))


def _common(arrays):
    arrays = [FieldArray.coerce(a) for a in arrays]
    lcm = reduce(math.lcm, (a.den for a in arrays), 1)
    big = any(a.num.dtype == object or _maxabs(a.num, a.support) * (lcm // a.den) >= LIMIT for a in arrays)
    nums = []
    for a in arrays:
        n = a.num.astype(object) if big else a.num
        f = lcm // a.den
        nums.append(n * f if f != 1 else n)
    return nums, lcm, _union(*(a.support for a in arrays))


def concatenate(arrays, axis: int = 0) -> FieldArray:
    nums, den, sup = _common(arrays)
    return FieldArray(np.concatenate(nums, axis=_axis(axis)), den, support=sup)


def stack(arrays, axis: int = 0) -> FieldArray:
    nums, den, sup = _common(arrays)
    return FieldArray(np.stack(nums, axis=_axis(axis)), den, support=sup)


def where_zero(a: FieldArray) -> np.ndarray:
    """Boolean mask of entries that vanish."""
    return ~a.num.astype(bool).any(axis=0)

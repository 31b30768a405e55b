import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from zornlie import exc, g2, jordan, tits
from zornlie.composition import LEVI
from zornlie.exc import ExcElement, Fund27, LambdaGenerator, dagger, exc_bracket
from zornlie.field import FieldArray, einsum
from zornlie.jordan import identity

RANKS = (1, 2, 4)


def random_vec(rng, n, batch=()):
    """Random J-vector (..., 3, 3, 3, 8)."""
    return jordan.random_matrices(rng, n, tuple(batch) + (3,))


def random_a1(rng, n, batch=()):
    # inner blocks are read off brackets of random elements, which keeps every constraint
    alg = exc.algebra(n)
    return alg.random(rng, batch).a1


def test_dimensions_and_branching():
    assert {n: exc.algebra(n).basis_flat.shape[0] for n in RANKS} == {1: 52, 2: 78, 4: 133}
    assert exc.branching(1) == {"a": 8, "a1": 8, "xp": 18, "xm": 18}
    assert sum(exc.branching(2).values()) == 78
    assert sum(exc.branching(4).values()) == 133


def test_circ_example():
    e1 = FieldArray.from_int(np.array([1, 0, 0]))
    e2 = FieldArray.from_int(np.array([0, 1, 0]))
    m = np.zeros((3, 3), dtype=np.int64)
    m[0, 1] = -3
    assert g2.circ(e1, e2) == FieldArray.from_int(m)


@pytest.mark.parametrize("n", RANKS)
def test_diamond_outputs_are_traceless(n, rng):
    xp, ym = random_vec(rng, n, (20,)), random_vec(rng, n, (20,))
    outer, inner = exc.diamond(xp, ym)
    assert outer.trace(-2, -1).is_zero()
    assert exc.inner_constraint_defect(inner, n).is_zero()


def test_bullet_is_dagger_of_diamond_for_n4(rng):
    xp, ym = random_vec(rng, 4, (20,)), random_vec(rng, 4, (20,))
    _, inner = exc.diamond(xp, ym)
    assert exc.bullet(ym, xp) == dagger(inner)


def test_cross_examples(rng):
    a = FieldArray.from_int(rng.integers(-3, 4, size=3))
    b = FieldArray.from_int(rng.integers(-3, 4, size=3))
    v = FieldArray.from_int(rng.integers(-3, 4, size=3))
    one = identity()
    wedge = einsum("ijk,j,k->i", LEVI, a, b)
    lhs = exc.cross(einsum("i,rsa->irsa", a, one), einsum("i,rsa->irsa", b, one))
    assert lhs == einsum("i,rsa->irsa", wedge, one) * 2
    x = jordan.random_matrices(rng, 8)
    x = x - J0(x)
    lhs = exc.cross(einsum("i,rsa->irsa", a, one), einsum("i,rsa->irsa", v, x))
    assert lhs == -einsum("i,rsa->irsa", einsum("ijk,j,k->i", LEVI, a, v), x)


def J0(x):
    return jordan.scale(jordan.jtrace(x) / 3, identity())


@pytest.mark.parametrize("n", RANKS)
def test_inner_on_vector_is_hermitian(n, rng):
    alg = exc.algebra(n)
    f = alg.random(rng, (10,))
    g = ExcElement(n, FieldArray.zeros((10, 3, 3)), FieldArray.zeros((10, 3, 3, 8)), random_vec(rng, n, (10,)),
                   FieldArray.zeros((10, 3, 3, 3, 8)))
    a1only = ExcElement(n, FieldArray.zeros((10, 3, 3)), f.a1, FieldArray.zeros((10, 3, 3, 3, 8)),
                        FieldArray.zeros((10, 3, 3, 3, 8)))
    c = exc_bracket(a1only, g)
    want = exc._left(f.a1, g.xp) + exc._right(g.xp, dagger(f.a1))
    assert c.xp == want
    assert jordan.hermitian_defect(c.xp).is_zero()
    assert c.a.is_zero() and c.a1.is_zero() and c.xm.is_zero()


@pytest.mark.parametrize("n", RANKS)
def test_dagger_of_commutator(n, rng):
    a1, b1 = random_a1(rng, n, (20,)), random_a1(rng, n, (20,))
    lhs = jordan.mat_mul(dagger(a1), dagger(b1)) - jordan.mat_mul(dagger(b1), dagger(a1))
    assert lhs == -dagger(jordan.mat_mul(a1, b1) - jordan.mat_mul(b1, a1))


@settings(max_examples=6)
@given(st.sampled_from(RANKS), st.integers(0, 2 ** 32 - 1))
def test_jacobi_random_with_c22(n, seed):
    rng = np.random.default_rng(seed)
    alg = exc.algebra(n)
    x, y, z = (alg.random(rng, (3,)) for _ in range(3))

    def br(p, q):
        return exc_bracket(p, q, check_c22=True)

    assert (br(x, br(y, z)) + br(y, br(z, x)) + br(z, br(x, y))).is_zero()
    assert (br(x, y) + br(y, x)).is_zero()
    br(x, y).validate()


def test_validation_errors():
    z = ExcElement.zero(2)
    bad_a = ExcElement(2, FieldArray.eye(3), z.a1, z.xp, z.xm)
    with pytest.raises(ValueError, match="traceless"):
        bad_a.validate()
    a1 = np.zeros((3, 3, 8), dtype=np.int64)
    a1[0, 1, 2] = 1
    with pytest.raises(ValueError, match="composition"):
        ExcElement(2, z.a, FieldArray.from_int(a1), z.xp, z.xm).validate()
    with pytest.raises(ValueError):
        exc_bracket(ExcElement.zero(1), ExcElement.zero(2))


@pytest.mark.parametrize("n", RANKS)
def test_json_roundtrip(n, rng):
    x = exc.algebra(n).random(rng)
    assert ExcElement.from_json(x.to_json()) == x


def test_coordinates_roundtrip(rng):
    alg = exc.algebra(2)
    c = FieldArray.from_int(rng.integers(-2, 3, size=(4, 78)))
    assert alg.coords(alg.element(c)) == c


# ------------------------------------------------------------------ Tits model
def test_tits_bracket_rules(rng):
    b, labels = tits.basis()
    assert len(labels) == 52
    d = b[labels.index("g1+")]
    t = b[labels.index("e2+(x)E12+E21")]
    e = b[labels.index("E:A12")]
    r = tits.tits_bracket(d, t)
    assert r.e.is_zero() and r.d.flatten().is_zero()
    assert r.t == einsum("ca,ars->crs", g2.action_matrix(d.d), t.t)
    r = tits.tits_bracket(d, e)
    assert r.is_zero()
    r = tits.tits_bracket(e, t)
    assert r.t == e.e.reshape(1, 3, 3) @ t.t - t.t @ e.e.reshape(1, 3, 3)


def test_tits_intertwining_sample(rng):
    b, _ = tits.basis()
    idx = rng.integers(0, 52, size=(60, 2))
    u, v = b[idx[:, 0]], b[idx[:, 1]]
    lhs = tits.corr_map(tits.tits_bracket(u, v))
    assert lhs == exc_bracket(tits.corr_map(u), tits.corr_map(v))


def test_tits_rho_part_lands_in_diagonal_block():
    b, labels = tits.basis()
    f = tits.corr_map(b[labels.index("rho+-rho-(x)E12+E21")])
    assert f.xp.is_zero() and f.xm.is_zero() and f.a.is_zero()
    assert not f.a1.is_zero()


# ------------------------------------------------------------------ e7 and the 27
def test_lambda_acts_as_twice_lambda():
    lam = 3
    v = Fund27.basis("+")
    g0 = ExcElement.zero(2, (27,))
    assert exc.e6_act_on_27(g0, FieldArray.from_int(np.full(27, lam)), v).flatten() == v.flatten() * (2 * lam)
    w = Fund27.basis("-")
    assert exc.e6_act_on_27(g0, FieldArray.from_int(np.full(27, lam)), w).flatten() == w.flatten() * (-2 * lam)
    assert not LambdaGenerator(1).element().is_zero()


def test_representation_property(rng):
    e6 = exc.algebra(2)
    g, h = e6.random(rng, (10,)), e6.random(rng, (10,))
    basis = Fund27.basis("+")
    v = Fund27(*(einsum("bk,k...->b...", FieldArray.from_int(rng.integers(-2, 3, size=(10, 27))), arr)
                 for arr in (basis.eta, basis.zeta, basis.xi)), "+")
    zero = FieldArray.zeros((10,))

    def act(x, w):
        return exc.e6_act_on_27(x, zero, w)

    lhs = act(exc_bracket(g, h), v).flatten()
    rhs = act(g, act(h, v)).flatten() - act(h, act(g, v)).flatten()
    assert lhs == rhs


def test_decompose_roundtrip(rng):
    f = exc.algebra(4).random(rng, (5,))
    assert exc.e7_recompose(*exc.e7_decompose(f)) == f


def test_fund27_validation():
    v = Fund27.basis("+")[9]
    assert Fund27.from_json(v.to_json()) == v
    bad = Fund27(v.eta, v.eta.reshape(1, 3, 3).broadcast_to((3, 3, 3)) + FieldArray.eye(3), v.xi)
    with pytest.raises(ValueError):
        bad.validate()
    with pytest.raises(ValueError):
        Fund27.zero("x")

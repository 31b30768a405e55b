import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from zornlie import g2
from zornlie.composition import OCT, SplitOctonion
from zornlie.field import FieldArray
from zornlie.roots import g2_weights, weight_of, g2_cartans
from zornlie.scalar import SQRT2, SQRT6, ExactScalar
from zornlie.suites import g2_suite

HALF = ExactScalar((1,)) / 2


def br(x, y):
    return g2.g2_bracket(g2.generator(x), g2.generator(y))


def combo(**terms):
    out = g2.G2Element.make()
    for lab, c in terms.items():
        out = out + g2.generator(lab.replace("p", "+").replace("m", "-")) * c
    return out


def test_printed_brackets():
    assert br("H1", "H2").is_zero()
    assert br("d3+", "d3-") == combo(H1=SQRT2)
    assert br("g3+", "g3-") == combo(H2=SQRT6)
    assert br("g1+", "g1-") == combo(H1=-HALF * 3 * SQRT2, H2=-HALF * SQRT6)
    assert br("H1", "g1+") == combo(g1p=SQRT2 / 2)
    assert br("H1", "d3+") == combo(d3p=SQRT2)
    assert br("d1+", "d2+") == combo(d3m=1)


def test_suite_passes():
    checks = g2_suite()
    assert [c.name for c in checks if not c.passed] == []
    assert {c.count for c in checks} >= {196, 14 * 64 * 64}


def test_vanishing_derivations():
    rp, rm = g2.rho("+"), g2.rho("-")
    assert g2.derivation_matrix(rp, rm).is_zero()
    total = sum((g2.derivation_matrix(g2.eps(k, "-"), g2.eps(k, "+")) for k in (1, 2, 3)),
                FieldArray.zeros((8, 8)))
    assert total.is_zero()
    assert g2.dcd_matrix(rp, rm).flatten().is_zero()


def test_images_of_gl3_units():
    e = {(i, j): g2.element_of_derivation(g2.e_jk(i, j)) for i in (1, 2, 3) for j in (1, 2, 3)}
    unit = np.zeros((3, 3), dtype=np.int64)
    unit[0, 1] = 1
    assert e[1, 2].a == FieldArray.from_int(unit)
    diag = FieldArray.from_int(np.diag([2, -1, -1]), 3)
    assert e[1, 1].a == diag
    assert e[2, 2].a == FieldArray.from_int(np.diag([-1, 2, -1]), 3)


def test_closed_form_matches_expansion(rng):
    for _ in range(5):
        c, d = (FieldArray.from_int(rng.integers(-2, 3, size=8)) for _ in range(2))
        assert g2.action_matrix(g2.dcd_matrix(c, d)) == g2.eij_expansion(c, d)
        assert g2.action_matrix(g2.dcd_matrix(c, d)) == g2.derivation_matrix(c, d)


def test_float_oracle_derivation_algebra():
    # Der of the octonion table, from a float nullspace computation
    n = 8
    rows = []
    for a, b, c in itertools.product(range(n), repeat=3):
        # D(e_a e_b) - D(e_a) e_b - e_a D(e_b), component c; unknown D[j, i] at j * n + i
        r = np.zeros((n, n))
        r[c, :] += OCT[a, b, :]
        r[:, a] -= OCT[:, b, c]
        r[:, b] -= OCT[a, :, c]
        rows.append(r.reshape(-1))
    s = np.linalg.svd(np.vstack(rows), compute_uv=False)
    assert int((s < 1e-9).sum()) == 14
    # the generator actions are in that space and independent
    acts = g2.action_matrix(g2.generators()).to_complex()  # (14, 8, 8), acting on columns
    sys_ = np.vstack(rows)
    for k in range(14):
        assert np.allclose(sys_ @ acts[k].reshape(-1), 0)
    assert np.linalg.matrix_rank(acts.reshape(14, -1)) == 14


def test_weights_form_g2_root_system():
    w = g2_weights()
    assert w["g1+"] == (SQRT2 / 2, SQRT6 / 6)
    assert w["d3+"] == (SQRT2, 0)
    assert weight_of(g2.generator("H1"), g2_cartans(), g2.g2_bracket) == (0, 0)
    vecs = [np.array([complex(a).real, complex(b).real]) for a, b in w.values()]
    lens = sorted(round(v @ v, 9) for v in vecs)
    assert lens == [round(2 / 3, 9)] * 6 + [2.0] * 6
    for u, v in itertools.product(vecs, repeat=2):
        cartan = 2 * (u @ v) / (v @ v)
        assert abs(cartan - round(cartan)) < 1e-9 and abs(round(cartan)) <= 3


def test_weight_of_rejects_non_eigenvector():
    with pytest.raises(ValueError):
        weight_of(g2.generator("g1+") + g2.generator("d1+"), g2_cartans(), g2.g2_bracket)


@settings(max_examples=20)
@given(st.integers(0, 2 ** 32 - 1))
def test_jacobi_and_homomorphism_random(seed):
    rng = np.random.default_rng(seed)
    x, y, z = (g2.random_element(rng) for _ in range(3))
    jac = (g2.g2_bracket(x, g2.g2_bracket(y, z)) + g2.g2_bracket(y, g2.g2_bracket(z, x))
           + g2.g2_bracket(z, g2.g2_bracket(x, y)))
    assert jac.is_zero()
    mx, my = g2.action_matrix(x), g2.action_matrix(y)
    assert g2.action_matrix(g2.g2_bracket(x, y)) == mx @ my - my @ mx


def test_act_on_octonion_matches_matrix():
    x = g2.generator("g1+")
    o = SplitOctonion.basis(2)
    assert g2.act_on_octonion(x, o).coords == g2.action_matrix(x)[:, 2]


def test_make_rejects_trace():
    with pytest.raises(ValueError):
        g2.G2Element.make(a=np.eye(3, dtype=np.int64))


def test_json_roundtrip():
    x = combo(H1=SQRT2, g2p=3, d1m=HALF)
    assert g2.G2Element.from_json(x.to_json()) == x

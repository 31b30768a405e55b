"""Structure constants, checked against a floating-point Lie-theory oracle.

The oracle knows nothing about the block realization: from the table alone it
computes the Killing form (nondegenerate for semisimple algebras), the rank
(nullity of ad x for generic x) and the commutant
of the adjoint action (one-dimensional for simple algebras).
"""
import json

import numpy as np
import pytest
import scipy.sparse as sp

from zornlie import algebras, structure, verify
from zornlie.structure import StructureConstants

from conftest import COMPONENT_VALUES

RANK = {"g2": 2, "f4": 4, "e6": 6, "e7": 7, "e8": 8}


def complex_table(sc: StructureConstants):
    vals = COMPONENT_VALUES @ sc.num.astype(float) / sc.den
    return sc.idx, vals


def ad_matrix(sc, x):
    """Float matrix of ad x (x a coordinate vector): column j holds [x, b_j]."""
    (i, j, k), vals = complex_table(sc)[0].T, complex_table(sc)[1]
    m = np.zeros((sc.dim, sc.dim), dtype=complex)
    np.add.at(m, (k, j), x[i] * vals)
    return m


def killing_form(sc):
    idx, vals = complex_table(sc)
    i, j, k = idx.T
    d = sc.dim
    # A[i, (j, k)] = c_ij^k ; B[i, (k, j)] = c_ij^k ; K = A @ B^T gives sum c_aj^k c_bk^j
    a = sp.csr_matrix((vals, (i, j * d + k)), shape=(d, d * d))
    b = sp.csr_matrix((vals, (i, k * d + j)), shape=(d, d * d))
    return (a @ b.T).toarray()


@pytest.fixture(scope="module", params=["g2", "f4", "e6"])
def small_table(request):
    return verify.structure_constants(request.param)


def test_killing_form_is_nondegenerate(small_table):
    k = killing_form(small_table)
    assert np.allclose(k, k.T)
    assert np.linalg.matrix_rank(k) == small_table.dim


def test_rank_from_generic_centralizer(small_table):
    x = np.random.default_rng(0).normal(size=small_table.dim)
    ad = ad_matrix(small_table, x)
    assert small_table.dim - np.linalg.matrix_rank(ad, tol=1e-8) == RANK[small_table.algebra]


def commutant_dim(sc, seed=1) -> int:
    """Dimension of the operators commuting with ad x and ad y for generic x, y.

    In an eigenbasis of a generic ad x the root spaces are lines, so a
    commuting operator is diagonal there plus an r x r block on the Cartan.
    """
    rng = np.random.default_rng(seed)
    d = sc.dim
    w, p = np.linalg.eig(ad_matrix(sc, rng.normal(size=d)))
    m = np.linalg.solve(p, ad_matrix(sc, rng.normal(size=d)) @ p)
    zero = np.flatnonzero(np.abs(w) < 1e-8)
    params = [(a, a) for a in range(d) if a not in set(zero)] + [(a, b) for a in zero for b in zero]
    cols = []
    for a, b in params:
        # E_ab M - M E_ab, flattened
        c = np.zeros((d, d), dtype=complex)
        c[a, :] += m[b, :]
        c[:, b] -= m[:, a]
        cols.append(c.reshape(-1))
    s = np.linalg.svd(np.array(cols).T, compute_uv=False)
    return int((s < 1e-8 * s[0]).sum())


def test_adjoint_action_is_irreducible(small_table):
    assert commutant_dim(small_table) == 1


@pytest.mark.slow
@pytest.mark.parametrize("name", ["e7", "e8"])
def test_large_algebras_float_oracle(name):
    sc = verify.structure_constants(name)
    k = killing_form(sc)
    assert np.linalg.matrix_rank(k) == sc.dim
    x = np.random.default_rng(0).normal(size=sc.dim)
    assert sc.dim - np.linalg.matrix_rank(ad_matrix(sc, x), tol=1e-8) == RANK[name]
    assert commutant_dim(sc) == 1


def test_table_reproduces_live_bracket(small_table):
    chk = verify.bracket_roundtrip_check(small_table.algebra, count=20, seed=3)
    assert chk.passed


def test_antisymmetry_and_jacobi(small_table):
    assert small_table.antisymmetry_failures() == []
    n, bad = structure.jacobi_exhaustive(small_table)
    assert n == small_table.dim ** 3 and bad == []


def test_jacobi_scan_detects_a_corrupted_table():
    sc = verify.structure_constants("g2")
    num = sc.num.copy()
    num[:, 0] *= 2
    broken = StructureConstants(sc.algebra, sc.labels, sc.idx, num, sc.den)
    assert structure.jacobi_exhaustive(broken)[1]
    assert broken.antisymmetry_failures()


def test_json_roundtrip(small_table):
    text = json.dumps(small_table.to_json())
    back = StructureConstants.from_json(json.loads(text))
    assert back.to_json() == small_table.to_json()
    assert back.dense() == small_table.dense()


def test_g2_table_entry():
    sc = verify.structure_constants("g2")
    labels = sc.labels
    d = sc.dense()
    i, j, k = labels.index("H1"), labels.index("d3+"), labels.index("d3+")
    assert str(d[i, j, k].item()) == "sqrt2"


def test_hook_sees_every_row():
    seen = []
    alg = algebras.get("g2")
    structure.compute(alg, lambda i, row: seen.append((i, row.shape)))
    assert [i for i, _ in seen] == list(range(14))
    assert all(s[0] == 14 for _, s in seen)

"""Identity suites: octonion table, Jordan identities and per-algebra checks.

Every check returns a :class:`Check` with the number of instances tried and
the indices of failing instances.  Random instances come from a seeded
``numpy.random.Generator`` with coefficients in {-2, ..., 2}.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import e8, exc, g2, jordan, roots, tits
from .composition import OCT, associator_array
from .field import FieldArray, concatenate, einsum
from .jordan import identity, jmul, jtrace, mat_mul, quad_U, quad_U_alt, scale, sharp, sharp_lin, tform, triple_V, triple_V_alt


@dataclass
class Check:
    name: str
    count: int
    failures: list = field(default_factory=list)
    info: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        out = {"name": self.name, "count": self.count, "passed": self.passed,
               "failures": self.failures[:20]}
        if len(self.failures) > 20:
            out["failures_total"] = len(self.failures)
        if self.info:
            out["info"] = self.info
        return out


def bad_rows(res: FieldArray) -> list[int]:
    """Batch indices (axis 0) where a residual is nonzero."""
    num = res.num
    if num.ndim == 1:
        return [0] if num.any() else []
    nz = (num != 0).reshape(8, num.shape[1], -1).any(axis=(0, 2))
    return [int(i) for i in np.flatnonzero(nz)]


def residual_summary(v: FieldArray, limit: int = 4) -> list:
    """First few nonzero entries of a flat residual as ``[index, scalar]``."""
    flat = v.reshape(-1)
    nz = np.flatnonzero((flat.num != 0).any(axis=0))[:limit]
    return [[int(k), str(flat[int(k)].item())] for k in nz]


# ------------------------------------------------------------ octonions
def printed_relations() -> np.ndarray:
    """All 64 split-basis products from the relation list, as an (8, 8, 8) table."""
    t = np.zeros((8, 8, 8), dtype=np.int64)
    rho = {"+": 0, "-": 1}

    def eps(k, s):
        return (2 if s == "+" else 5) + (k - 1) % 3

    for s, f in (("+", "-"), ("-", "+")):
        t[rho[s], rho[s], rho[s]] = 1                  # (rho)^2 = rho
        for k in (1, 2, 3):
            e = eps(k, s)
            t[rho[s], e, e] = 1                          # rho^s e^s = e^s
            t[e, rho[f], e] = 1                          # e^s rho^-s = e^s
            t[e, eps(k + 1, s), eps(k + 2, f)] = 1       # e_k e_k+1 = e_k+2^-s
            t[eps(k + 1, s), e, eps(k + 2, f)] = -1
            t[e, eps(k, f), rho[s]] = -1                 # e_k^s e_k^-s = -rho^s
    return t


def octonion_table() -> Check:
    diff = OCT - printed_relations()
    bad = [[int(a), int(b)] for a, b in zip(*np.nonzero(diff.any(axis=2)))]
    return Check("octonion relation table", 64, bad)


def alternativity() -> Check:
    eye = FieldArray.eye(8)
    a = eye.reshape(8, 1, 1, 8)
    b = eye.reshape(1, 8, 1, 8)
    c = eye.reshape(1, 1, 8, 8)
    left = associator_array(a, a + 0 * b, b + 0 * c)  # (a, a, b)
    right = associator_array(a, b, b + 0 * c)         # (a, b, b)
    bad = sorted(set(bad_rows(left.reshape(64, 8, 8)[:, 0])) | set(bad_rows(right.reshape(64, 8, 8)[:, 0])))
    full = associator_array(a, b, c).reshape(512, 8)
    wit = [k for k in range(512) if not full[k].is_zero()]
    info = {}
    if wit:
        k = wit[0]
        info = {"associator_witness": [k // 64, (k // 8) % 8, k % 8],
                "value": residual_summary(full[k])}
    fails = [[k // 8, k % 8] for k in bad]
    if not wit:
        fails.append("no nonzero associator found")
    return Check("alternativity on basis triples", 512, fails, info)


# ------------------------------------------------------------ Jordan suite
def _rand(rng, n, count):
    return jordan.random_matrices(rng, n, (count,))


def _U(x, y):
    return quad_U(x, y)


def _V(x, y, z):
    return triple_V(x, y, z)


def jordan_checks(n: int, rng: np.random.Generator, count: int = 200) -> list[Check]:
    out = []
    one = identity()

    def check(name, res):
        out.append(Check(f"J3^{n} {name}", count, bad_rows(res)))

    x, y, z, w, u = (_rand(rng, n, count) for _ in range(5))
    x2 = jmul(x, x)
    check("power associativity", jmul(x2, jmul(x, z)) - jmul(x, jmul(x2, z)))
    s = sharp(x)
    check("cubic identity (sharp form)", jmul(s, x) - scale(tform(s, x) / 3, one))
    check("cubic identity (polynomial form)",
          jmul(x2, x) - scale(jtrace(x), x2) + scale(jtrace(s), x) - scale(tform(s, x) / 3, one))
    check("triple product two forms", triple_V(x, y, z) - triple_V_alt(x, y, z))
    check("quadratic map two forms", quad_U(x, y) - quad_U_alt(x, y))
    check("sharp_lin(x, x) = 2 x#", sharp_lin(x, x) - s * 2)
    # quadratic Jordan algebra axioms, as operator identities applied to z
    check("U_1 = Id", _U(one, y) - y)
    check("U_x V_{y,x} = V_{x,y} U_x", _U(x, _V(y, x, z)) - _V(x, y, _U(x, z)))
    check("U_{U_x y} = U_x U_y U_x", _U(_U(x, y), z) - _U(x, _U(y, _U(x, z))))
    # triple system axiom not implied by the two above
    check("V_{U_x y, y} = V_{x, U_y x}", _V(_U(x, y), y, z) - _V(x, _U(y, x), z))
    # pair axioms for both signs: the roles of the two modules swap
    for sig, (p, q) in (("+", (x, y)), ("-", (y, x))):
        check(f"pair axiom 1 (sigma={sig})", _U(p, _V(q, p, w)) - _V(p, q, _U(p, w)))
        check(f"pair axiom 2 (sigma={sig})", _V(_U(p, q), q, w) - _V(p, _U(q, p), w))
        check(f"pair axiom 3 (sigma={sig})", _U(_U(p, q), w) - _U(p, _U(q, _U(p, w))))
    # commutator of triple operators; on the second module V_{x,y} acts as V_{y,x}
    lhs = _V(x, y, _V(z, w, u)) - _V(z, w, _V(x, y, u))
    rhs = _V(_V(x, y, z), w, u) - _V(z, _V(y, x, w), u)
    check("[V_xy, V_zw] = V_{V_xy z, w} - V_{z, V_yx w}", lhs - rhs)
    literal = _V(_V(x, y, z), w, u) - _V(z, _V(x, y, w), u)
    out[-1].info["literal_V_xy_w_failures"] = len(bad_rows(lhs - literal))
    # derivations of the pair: D = beta(a, b) = (V_ab, -V_ba) against beta(x, y)
    a, b = _rand(rng, n, count), _rand(rng, n, count)
    dpx = _V(a, b, x)
    dmy = -_V(b, a, y)
    plus = _V(a, b, _V(x, y, u)) - _V(x, y, _V(a, b, u)) - _V(dpx, y, u) - _V(x, dmy, u)
    # minus components: [-V_ba, -V_yx] = -V_{y, D+ x} - V_{D- y, x}
    minus = (_V(b, a, _V(y, x, u)) - _V(y, x, _V(b, a, u))) + _V(y, dpx, u) + _V(dmy, x, u)
    check("[D, beta(x,y)] = beta(D+x, y) + beta(x, D-y) (+ part)", plus)
    check("[D, beta(x,y)] = beta(D+x, y) + beta(x, D-y) (- part)", minus)
    check("t(x, y.z) = t(z, x.y)", tform(x, jmul(y, z)) - tform(z, jmul(x, y)))

    def der(v):
        return jmul(a, jmul(b, v)) - jmul(b, jmul(a, v))

    check("t(Dx, y) + t(x, Dy) = 0", tform(der(x), y) + tform(x, der(y)))
    return out


def nonassociativity_witness(seed: int = 0, tries: int = 50) -> Check:
    """Find an exact x in J3^8 with (x^2) x != x (x^2) for the raw matrix product."""
    rng = np.random.default_rng(seed)
    x = _rand(rng, 8, tries)
    sq = mat_mul(x, x)
    diff = mat_mul(sq, x) - mat_mul(x, sq)
    wit = bad_rows(diff)
    if not wit:
        return Check("J3^8 non-associativity witness", tries, ["no witness found"])
    k = wit[0]
    xc = jordan.to_coords(x[k], 8)
    return Check("J3^8 non-associativity witness", tries, [],
                 {"seed": seed, "instance": k, "x_coords": [str(c) for c in xc.to_scalars()],
                  "difference": residual_summary(diff[k])})


def jordan_suite(ns=(1, 2, 4, 8), seed: int = 0, count: int = 200) -> list[Check]:
    rng = np.random.default_rng(seed)
    out = []
    for n in ns:
        out += jordan_checks(n, rng, count)
    if 8 in ns:
        out.append(nonassociativity_witness(seed))
    return out


# ------------------------------------------------------------------ g2
def g2_suite() -> list[Check]:
    gens = g2.generators()
    k = 14
    idx_i, idx_j = np.repeat(np.arange(k), k), np.tile(np.arange(k), k)
    x, y = gens[idx_i], gens[idx_j]
    br = g2.g2_bracket(x, y)
    live = g2.coords(br)
    table = concatenate([g2.table_bracket(g2.LABELS[i], g2.LABELS[j]).reshape(1, 14)
                         for i, j in zip(idx_i, idx_j)], axis=0)
    out = [Check("commutation table (196 pairs)", k * k,
                 [[g2.LABELS[idx_i[p]], g2.LABELS[idx_j[p]]] for p in bad_rows(live - table)])]
    # generators as D_{a,b} combinations agree with the matrix action
    act = g2.action_matrix(gens)
    out.append(Check("generators equal their D_{a,b} definitions", k,
                     [g2.LABELS[p] for p in bad_rows(act - g2.generator_derivations())]))
    ma, mb = act[idx_i], act[idx_j]
    hom = g2.action_matrix(br) - (ma @ mb - mb @ ma)
    out.append(Check("action is a bracket homomorphism (196 pairs)", k * k,
                     [[g2.LABELS[idx_i[p]], g2.LABELS[idx_j[p]]] for p in bad_rows(hom)]))
    # Leibniz rule on all 14 x 64 basis pairs
    eye = FieldArray.eye(8)
    a = eye.reshape(1, 8, 1, 8)
    b = eye.reshape(1, 1, 8, 8)
    from .composition import oct_mul_array

    gx = g2.G2Element(gens.a.reshape(14, 1, 1, 3, 3), gens.vp.reshape(14, 1, 1, 3), gens.vm.reshape(14, 1, 1, 3))
    ab = oct_mul_array(a, b)
    lhs = g2.act_array(gx, ab)
    rhs = oct_mul_array(g2.act_array(gx, a), b) + oct_mul_array(a, g2.act_array(gx, b))
    res = (lhs - rhs).reshape(14 * 64, 8)
    out.append(Check("action is a derivation (14 x 64 x 64)", 14 * 64 * 64,
                     [[g2.LABELS[p // 64], (p // 8) % 8, p % 8] for p in bad_rows(res)]))
    w = roots.g2_weights()
    out.append(Check("g2 weights reproduce the eigenvalue table", len(w),
                     [lab for lab, v in w.items()
                      if any(g2.commutation_table().get((h, lab), {}).get(lab, 0) != v[t]
                             for t, h in enumerate(("H1", "H2")))]))
    return out


# ------------------------------------------------------------------ f4
def f4_suite() -> list[Check]:
    return [Check("Tits correspondence intertwines the brackets (52 x 52)", 52 * 52,
                  [list(p) for p in tits.intertwining_failures()])]


# ------------------------------------------------------------------ e6
def e6_suite() -> list[Check]:
    rs = roots.e6_root_list()
    rset = set(rs)
    integral = sum(1 for r in rs if all(c.is_rational() and c.to_fraction().denominator == 1 for c in r.coords))
    fails = []
    if len(rs) != 72 or len(rset) != 72:
        fails.append(f"root count {len(rset)}")
    if integral != 40:
        fails.append(f"integral roots {integral}")
    fails += [str(r) for r in rs if (-r) not in rset or r.norm2() != 2]
    out = [Check("e6 root list (72 = 40 + 32)", 72, fails, {"integral": integral, "half_integral": 72 - integral})]
    rows = roots.table1_audit()
    out.append(Check("Table 1 weight rows", len(rows), [r.generator for r in rows if not r.ok],
                     {"rows": [r.to_json() for r in rows]}))
    classes = roots.outer_weight_classes()
    out.append(Check("outer weights constant on each Jordan block slot", len(classes),
                     [k for k, v in classes.items() if len(v) != 1]))
    return out


# ------------------------------------------------------------------ e7
def e7_suite() -> list[Check]:
    e6alg = exc.algebra(2)
    out = []
    nb = e6alg.dim
    ones = FieldArray.from_int(np.ones(nb + 1, dtype=np.int64))
    lam = concatenate([FieldArray.zeros((nb,)), ones[:1]])
    g = exc.ExcElement.unflatten(2, concatenate([e6alg.basis_flat, FieldArray.zeros((1, 513))], axis=0))
    for sign in "+-":
        vb = exc.Fund27.basis(sign)
        gi = np.repeat(np.arange(nb + 1), 27)
        vi = np.tile(np.arange(27), nb + 1)
        fails = []
        try:
            res = exc.e6_act_on_27(g[gi], lam[gi], vb[vi])
        except ArithmeticError as err:
            fails.append(str(err))
            res = None
        out.append(Check(f"e6 + C acts on the 27{'' if sign == '+' else 'bar'} (79 x 27, C22 and skew checked)",
                         (nb + 1) * 27, fails))
        if res is not None:
            got = res[np.arange(nb * 27, (nb + 1) * 27)].flatten()
            want = vb.flatten() * (2 if sign == "+" else -2)
            out.append(Check(f"lambda acts as {'+' if sign == '+' else '-'}2 lambda on the 27"
                             f"{'' if sign == '+' else 'bar'}", 27, bad_rows(got - want)))
            if sign == "+":
                eta = exc.e6_explicit_eta(g[gi[:nb * 27]], vb[vi[:nb * 27]])
                out.append(Check("closed eta formula matches the bracket (78 x 27)", nb * 27,
                                 [[int(gi[p]), int(vi[p])] for p in bad_rows(eta - res.eta[np.arange(nb * 27)])]))
    return out


def e7_constraint_hook(failures: list):
    """Row hook: the inner trace constraint on every basis bracket."""
    def hook(i, row):
        el = exc.ExcElement.unflatten(4, row)
        for j in bad_rows(exc.inner_constraint_defect(el.a1, 4)):
            failures.append([i, j])
    return hook


# ------------------------------------------------------------------ e8
def random_e6_operators(rng: np.random.Generator, count: int) -> e8.E6Operator:
    jc = e8.J()
    z = jordan.random_coords(rng, 8, (count,))
    z = z - (jc.jtrace(z) / 3).expand(1) * jc.one
    fb, _ = e8.derivation_span()
    c = FieldArray.from_int(rng.integers(-2, 3, size=(count, fb.shape[0])))
    f = einsum("...k,kn->...n", c, fb).reshape(count, 27, 27)
    return e8.E6Operator(z, f)


def _v_matrix(x, y):
    """Matrix of ``w -> V_{x,y} w`` in J3^8 coordinates, batched over x, y."""
    jc = e8.J()
    eye = FieldArray.eye(27)
    b = x.shape[:-1]
    cols = jc.triple_V(x.reshape(b + (1, 27)), y.reshape(b + (1, 27)), eye)
    return cols.swapaxes(-2, -1)


def e8_suite(seed: int = 0, count: int = 100) -> list[Check]:
    rng = np.random.default_rng(seed)
    jc = e8.J()
    out = []
    rank = e8.derivation_rank()
    out.append(Check("derivation span of [L_bi, L_bj] has rank 52", 1, [] if rank == 52 else [rank],
                     {"rank": rank}))
    c1 = random_e6_operators(rng, count)
    d1 = random_e6_operators(rng, count)
    comm = e8.e6_commutator(c1, d1)
    out.append(Check("e6 commutator closes (derivation part)", count,
                     [] if e8.is_derivation(comm.f) and jc.jtrace(comm.z).is_zero() else ["not closed"]))
    a, b, w = (jordan.random_coords(rng, 8, (count,)) for _ in range(3))
    ta = jc.tform(e8.apply(c1, a), b) - jc.tform(a, e8.apply_dagger(c1, b))
    out.append(Check("t(c1(a), b) = t(a, c1^dagger(b))", count, bad_rows(ta)))
    m = c1.matrix()
    e_ab = _v_matrix(a, b) / 2
    lhs = m @ e_ab - e_ab @ m
    rhs = _v_matrix(e8.apply(c1, a), b) / 2 - _v_matrix(a, e8.apply_dagger(c1, b)) / 2
    out.append(Check("[c1, E(a,b)] = E(c1 a, b) - E(a, c1^dagger b)", count, bad_rows(lhs - rhs)))
    xp = jordan.random_coords(rng, 8, (count, 3))
    ym = jordan.random_coords(rng, 8, (count, 3))
    outer, op = e8.diamond_e8(xp, ym)
    s = jc.tform(xp, ym).sum(-1)
    got = e8.matvec(op.matrix(), w)
    want = (s / 3).expand(1) * w - jc.triple_V(xp, ym, w.reshape(count, 1, 27)).sum(-2) / 2
    out.append(Check("diamond operator part = t/3 - V/2", count, bad_rows(got - want)))
    out.append(Check("diamond outer part traceless", count, bad_rows(outer.trace(-2, -1))))
    u, v = jordan.random_coords(rng, 8, (count,)), jordan.random_coords(rng, 8, (count,))
    f = e8.opcomm(e8.left(u), e8.left(v))
    got = e8.apply(e8.E6Operator(FieldArray.zeros((count, 27)), f), w)
    want = jc.jmul(u, jc.jmul(v, w)) - jc.jmul(v, jc.jmul(u, w))
    out.append(Check("[L_u, L_v] acts as u(v x) - v(u x)", count, bad_rows(got - want)))
    lx = e8.left(w)
    out.append(Check("[F, L_x] = L_{F(x)}", count, bad_rows(f @ lx - lx @ f - e8.left(e8.matvec(f, w)))))
    return out

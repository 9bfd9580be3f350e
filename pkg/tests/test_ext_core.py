"""Resolution, chart, cobar and Massey tests (the ext module core)."""

import itertools

import pytest

from adams3 import comodule, hopf
from adams3.ext import presentation as pres
from adams3.ext.chart import ext_chart
from adams3.ext.cobar import CobarComplex
from adams3.ext.massey import MasseyUndefined, canonical_cocycle, massey_triple
from adams3.ext.resolution import CapExceeded, minimal_resolution


def trivial_dual(name, cap):
    alg = hopf.algebra(name, cap)
    return comodule.dualize(comodule.trivial_comodule(alg))


@pytest.fixture(scope="module")
def res_a1():
    return minimal_resolution(trivial_dual("a1", 64), 16, 48)


@pytest.fixture(scope="module")
def chart_a1(res_a1):
    return ext_chart(res_a1, "a1")


@pytest.fixture(scope="module")
def cobar_a1():
    return CobarComplex(hopf.algebra("a1", 45))


# ------------------------------------------------------------------ resolution


def test_ext_e_tau2_is_polynomial_on_v2():
    res = minimal_resolution(trivial_dual("e_tau2", 180), 8, 140)
    dims = res.dims()
    expected = {(s, 17 * s): 1 for s in range(9)}
    assert {k: v for k, v in dims.items() if k[1] <= 140} == {
        k: v for k, v in expected.items() if k[1] <= 140
    }


def test_ext_a1_level1_only_v0_alpha1(res_a1):
    level1 = {(g.t): 1 for g in res_a1.generators(1)}
    assert level1 == {1: 1, 4: 1}


def test_ext_a1_dims_match_presentation(res_a1):
    dims = res_a1.dims()
    for s in range(17):
        for t in range(49):
            if t - s > 30:
                continue
            assert dims.get((s, t), 0) == pres.dim(s, t), (s, t)


def test_alpha1_squared_cell_empty(res_a1):
    assert res_a1.dim(2, 8) == 0


def test_gamma_has_v2_and_tensor_dims():
    res = minimal_resolution(trivial_dual("gamma", 76), 12, 56)
    dims = res.dims()
    assert dims.get((1, 17)) == 1
    for s in range(13):
        for t in range(57):
            if t - s > 40:
                continue
            assert dims.get((s, t), 0) == pres.gamma_dim_by_tensor(s, t), (s, t)


def test_resolution_cap_error():
    with pytest.raises(CapExceeded):
        minimal_resolution(trivial_dual("a1", 20), 4, 30)


def test_minimality_no_unit_entries(res_a1):
    unit = res_a1.algebra.unit_mono
    for s in range(1, 10):
        for g in res_a1.generators(s):
            assert all(h != unit for h, _gi, _c in g.image)


def test_resolution_deterministic():
    r1 = minimal_resolution(trivial_dual("a1", 40), 6, 30)
    r2 = minimal_resolution(trivial_dual("a1", 40), 6, 30)
    for s in range(7):
        assert [(g.t, g.image) for g in r1.generators(s)] == [
            (g.t, g.image) for g in r2.generators(s)
        ]


# ------------------------------------------------------------------ chart


def test_relation_products_chain_level(chart_a1):
    # the five relation products of the presentation, verified honestly
    assert chart_a1.yoneda_product("v0", "alpha1") == {}
    assert chart_a1.yoneda_product("v0", "alpha2") == {}
    assert chart_a1.yoneda_product("alpha1", "alpha1") == {}
    assert chart_a1.yoneda_product("alpha2", "alpha2") == {}
    prod = chart_a1.yoneda_product("alpha1", "alpha2")
    assert set(prod) == {"v0*beta"} and prod["v0*beta"] in (1, 2)


def test_v0_tower_products(chart_a1):
    assert chart_a1.yoneda_product("v0", "v0") == {"v0^2": 1}
    assert set(chart_a1.yoneda_product("v0", "c6")) == {"v0*c6"}


def test_products_bilinear_and_commutative_up_to_sign(chart_a1):
    names = ["v0", "alpha1", "alpha2", "beta", "c6", "v0^2"]
    for x, y in itertools.product(names, names):
        xy = chart_a1.yoneda_product(x, y)
        yx = chart_a1.yoneda_product(y, x)
        assert set(xy) == set(yx), (x, y)
        # equal or opposite coefficients, uniformly
        if xy:
            ratios = {(xy[k] * pow(yx[k], -1, 3)) % 3 for k in xy}
            assert len(ratios) == 1


def test_products_associative_all_triples_t40(chart_a1):
    # every class triple with total internal degree <= 40
    names = []
    for (s, t), classes in sorted(chart_a1.classes.items()):
        if 0 < t <= 38:
            names.extend(c.name for c in classes)
    checked = 0
    for x, y, z in itertools.product(names, repeat=3):
        tot_t = pres.parse_name(x).t + pres.parse_name(y).t + pres.parse_name(z).t
        if tot_t > 40:
            continue
        yz = chart_a1.yoneda_product(y, z)
        left = {}
        for n, c in yz.items():
            for n2, c2 in chart_a1.yoneda_product(x, n).items():
                left[n2] = (left.get(n2, 0) + c * c2) % 3
        xy = chart_a1.yoneda_product(x, y)
        right = {}
        for n, c in xy.items():
            for n2, c2 in chart_a1.yoneda_product(n, z).items():
                right[n2] = (right.get(n2, 0) + c * c2) % 3
        left = {k: v for k, v in left.items() if v}
        right = {k: v for k, v in right.items() if v}
        assert left == right, (x, y, z)
        checked += 1
    assert checked > 3000


def test_chart_dump_shape(chart_a1):
    doc = chart_a1.dump(products=[("v0", "alpha1"), ("alpha1", "alpha2")])
    assert doc["algebra"] == "a1"
    assert {"name": "alpha1", "s": 1, "t": 4} in doc["classes"]
    assert doc["products"][0]["result"] == []
    assert doc["products"][1]["result"] == [{"name": "v0*beta", "coeff": chart_a1.yoneda_product("alpha1", "alpha2")["v0*beta"]}]


# ------------------------------------------------------------------ presentation


def test_presentation_reduction_rules():
    assert pres.multiply_names("alpha1", "alpha2") == (1, "v0*beta")
    assert pres.multiply_names("alpha2", "alpha1") == (2, "v0*beta")
    assert pres.multiply_names("v0", "alpha1") is None
    assert pres.multiply_names("v0", "v0*beta") is None  # v0^2 beta = 0
    assert pres.multiply_names("beta", "v0*beta") == (1, "v0*beta^2")
    assert pres.multiply_names("v2", "v2") == (1, "v2^2")


def test_presentation_bidegrees():
    for name, (s, t) in pres.GENERATOR_BIDEGREES.items():
        m = pres.parse_name(name)
        assert (m.s, m.t) == (s, t)


# ------------------------------------------------------------------ cobar


def test_cobar_d_zeta1_is_zero(cobar_a1):
    z1 = cobar_a1.algebra.gen_mono("zeta", 1)
    assert cobar_a1.d_word(((z1,), "1")) == {}


def test_cobar_d_zeta1_squared(cobar_a1):
    alg = cobar_a1.algebra
    z1, z2 = alg.gen_mono("zeta", 1), alg.gen_mono("zeta", 1, 2)
    # psi-bar(zeta1^2) = 2 zeta1 x zeta1 and the differential negates it
    assert cobar_a1.d_word(((z2,), "1")) == {((z1, z1), "1"): 1}


def test_cobar_beta_cocycle_is_symmetric_combination(cobar_a1):
    alg = cobar_a1.algebra
    z1, z2 = alg.gen_mono("zeta", 1), alg.gen_mono("zeta", 1, 2)
    sym = {((z2, z1), "1"): 1, ((z1, z2), "1"): 1}
    assert cobar_a1.d_elem(sym) == {}
    beta = canonical_cocycle(cobar_a1, 2, 12)
    assert set(beta) == set(sym)


def test_cobar_d_squared_zero_exhaustive(cobar_a1):
    for s in range(4):
        for t in range(22):
            for w in cobar_a1.basis(s, t):
                assert cobar_a1.d_elem(cobar_a1.d_word(w)) == {}


def test_cobar_d_squared_zero_on_nontrivial_comodule():
    b = comodule.cotensor_induced(30)
    C = CobarComplex(b.algebra, b)
    for s in range(3):
        for t in range(25):
            for w in C.basis(s, t):
                assert C.d_elem(C.d_word(w)) == {}


def test_cobar_dims_match_resolution(cobar_a1, res_a1):
    # independent route cross-validation in the feasible window
    for s in range(5):
        for t in range(26):
            assert cobar_a1.cohomology_dim(s, t) == res_a1.dim(s, t), (s, t)


def test_cobar_v0_tower_region(cobar_a1):
    for s in range(1, 9):
        assert cobar_a1.cohomology_dim(s, s) == 1


# ------------------------------------------------------------------ massey


def test_massey_alpha1_cubed_is_beta(cobar_a1):
    alg = cobar_a1.algebra
    alpha1 = {((alg.gen_mono("zeta", 1),), "1"): 1}
    r = massey_triple(cobar_a1, alpha1, alpha1, alpha1)
    assert r.indeterminacy_dim == 0
    assert r.coords in ((1,), (2,))
    # representative supported on the two quoted words, with equal units
    words = {tuple(alg.monomial_name(a) for a in w[0]) for w in r.representative}
    assert words == {("zeta1^2", "zeta1"), ("zeta1", "zeta1^2")}
    assert len(set(r.representative.values())) == 1


def test_massey_v0_alpha1_alpha1_is_alpha2(cobar_a1):
    alg = cobar_a1.algebra
    alpha1 = {((alg.gen_mono("zeta", 1),), "1"): 1}
    v0 = {((alg.gen_mono("taubar", 0),), "1"): 1}
    r = massey_triple(cobar_a1, v0, alpha1, alpha1)
    assert (r.s, r.t) == (2, 9)
    assert any(r.coords)


def test_massey_v0_alpha2_alpha2_is_c6alpha1_zero_indet(cobar_a1):
    alg = cobar_a1.algebra
    v0 = {((alg.gen_mono("taubar", 0),), "1"): 1}
    alpha2 = canonical_cocycle(cobar_a1, 2, 9)
    r = massey_triple(cobar_a1, v0, alpha2, alpha2)
    assert (r.s, r.t) == (4, 19)
    assert any(r.coords)
    assert r.indeterminacy_dim == 0


def test_massey_undefined_when_product_nonzero(cobar_a1):
    alg = cobar_a1.algebra
    v0 = {((alg.gen_mono("taubar", 0),), "1"): 1}
    with pytest.raises(MasseyUndefined, match="nonzero"):
        massey_triple(cobar_a1, v0, v0, v0)


def test_massey_coset_stability(cobar_a1):
    alg = cobar_a1.algebra
    alpha1 = {((alg.gen_mono("zeta", 1),), "1"): 1}
    base = massey_triple(cobar_a1, alpha1, alpha1, alpha1)
    for seed in range(10):
        r = massey_triple(cobar_a1, alpha1, alpha1, alpha1, seed=seed)
        assert r.in_coset(base.coords)

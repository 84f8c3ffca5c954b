import random

import pytest

from findim import corpus as C
from findim.endo import (
    HypothesisError,
    add_approximation,
    canonical_map,
    check_gen_cogen,
    coker_module,
    coresolution_addV,
    end_algebra,
    gldim_endo_test,
    hom_transport,
    hom_transport_map,
    in_add,
    is_generator,
    omega2_hom_witness,
    strip_projective_summands,
    summand_classes,
    tensor_over_end,
    tensor_induced_map,
)
from findim.krull_schmidt import is_isomorphic
from findim.modules import (
    ExactSeq,
    direct_sum,
    dual,
    hom_dim,
    hom_induced_exactness,
    hom_space,
    is_exact_complex,
    mor_parts,
    regular_module,
    zero_morphism,
)
from findim.resolutions import PdResult, gldim, proj_dim, projective_cover, simple_modules


@pytest.fixture(scope="module")
def kx2_setup(kx2):
    sc = kx2.to_sc()
    s = C.simple_rep(kx2, "v")
    reg = regular_module(sc)
    v = direct_sum([reg, s])[0]
    return sc, reg, s, v


@pytest.fixture(scope="module")
def kx3_setup(kx3):
    sc = kx3.to_sc()
    m1, m2, m3 = (C.jordan_module(kx3, i) for i in (1, 2, 3))
    v = direct_sum([m1, m2, m3])[0]
    m = direct_sum([m2, m3])[0]
    return sc, v, m


def test_end_dims(kx2_setup, kx3_setup, a2, a2_modules):
    _, _, _, v2 = kx2_setup
    assert end_algebra(v2).e.dim == 5
    _, v3, m3 = kx3_setup
    assert end_algebra(v3).e.dim == 14
    assert end_algebra(m3).e.dim == 9
    va = direct_sum([a2_modules["P1"], a2_modules["S1"], a2_modules["S2"]])[0]
    assert end_algebra(va).e.dim == 5


def test_end_radical_cross_checked(kx2_setup):
    _, _, _, v = kx2_setup
    pkg = end_algebra(v)
    assert pkg.e.radical_basis().shape[1] == 3
    pkg.e.validate()


def test_transport_of_m_is_regular(kx2_setup):
    _, _, _, v = kx2_setup
    pkg = end_algebra(v)
    t = hom_transport(pkg, v)
    assert is_isomorphic(t.module, regular_module(pkg.e))


def test_transport_of_summand_is_projective(kx2_setup):
    from findim.resolutions import is_projective

    _, reg, s, v = kx2_setup
    pkg = end_algebra(v)
    for summand in (reg, s):
        t = hom_transport(pkg, summand)
        assert is_projective(t.module)


def test_transport_dimension(a2, a2_modules):
    p1, s1 = a2_modules["P1"], a2_modules["S1"]
    m = direct_sum([p1, a2_modules["S2"]])[0]  # P(1) + P(2) = regular
    pkg = end_algebra(m)
    t = hom_transport(pkg, s1)
    assert t.module.dim == 1


def test_projectivization_faithful(kx2_setup):
    _, reg, s, v = kx2_setup
    pkg = end_algebra(v)
    mods = [reg, s, v]
    for x in mods:
        for y in mods:
            tx, ty = hom_transport(pkg, x), hom_transport(pkg, y)
            assert hom_dim(tx.module, ty.module) == hom_dim(x, y)


def test_transport_functorial(kx2_setup):
    _, reg, s, v = kx2_setup
    pkg = end_algebra(v)
    f = hom_space(reg, s)[0]
    g = hom_space(s, s)[0]
    t_reg, t_s = hom_transport(pkg, reg), hom_transport(pkg, s)
    tf = hom_transport_map(pkg, f, t_reg, t_s)
    tg = hom_transport_map(pkg, g, t_s, t_s)
    comp = hom_transport_map(pkg, f.compose(g), t_reg, t_s)
    assert tf.compose(tg).matrix == comp.matrix
    tf.validate()


def test_in_add_and_generator(kx2_setup):
    sc, reg, s, v = kx2_setup
    assert in_add(direct_sum([reg, reg])[0], summand_classes(v))
    assert not in_add(s, summand_classes(reg))
    assert is_generator(sc, v)
    assert is_generator(sc, reg)
    assert not is_generator(sc, s)


def test_check_gen_cogen(a2, a2_modules, kx2_setup):
    sc2, reg2, s2_, v2 = kx2_setup
    assert check_gen_cogen(sc2, v2)
    assert check_gen_cogen(sc2, direct_sum([reg2, dual(regular_module(sc2.opposite()))])[0])
    sc = a2.to_sc()
    reg = regular_module(sc)
    assert not check_gen_cogen(sc, reg)  # injective envelope of S(2) missing
    da = dual(regular_module(sc.opposite()))
    assert check_gen_cogen(sc, direct_sum([reg, da])[0])


def test_add_approximation_split_case(kx2_setup):
    _, reg, s, v = kx2_setup
    ap = add_approximation(v, reg)
    assert ap.map.is_iso()


def test_add_approximation_by_regular_is_cover(kx2_setup):
    sc, reg, s, v = kx2_setup
    ap = add_approximation(reg, s)
    cover, epi = projective_cover(s)
    assert ap.v0.dim == cover.dim
    assert ap.map.matrix.rank() == s.dim


def test_add_approximation_hom_surjectivity(a2, a2_modules, registries):
    mods = [e.module for e in registries["a2"].registry]
    v = direct_sum(mods)[0]
    for x in a2_modules.values():
        ap = add_approximation(v, x)
        assert ap.map.matrix.rank() == x.dim
        for w in mods:
            induced = [(ap.map.matrix @ h.matrix).a.ravel().tolist() for h in hom_space(w, ap.v0)]
            from findim.linalg import FieldMat
            import numpy as np

            got = FieldMat(2, np.array(induced).T).rank() if induced else 0
            assert got == hom_dim(w, x)


def test_coresolution_depth0_full_generator(a2, registries, a2_modules):
    mods = [e.module for e in registries["a2"].registry]
    v = direct_sum(mods)[0]
    res = coresolution_addV(v, a2_modules["S1"], 0)
    assert res.success and res.depth == 0 and res.exact and res.hom_exact


def test_coresolution_regular_v_depth1(a2, a2_modules):
    sc = a2.to_sc()
    reg = regular_module(sc)
    res = coresolution_addV(reg, a2_modules["S1"], 1)
    assert res.success and res.depth == 1
    assert res.exact and res.hom_exact


def test_coresolution_failure_kx2(kx2_setup):
    sc, reg, s, v = kx2_setup
    res = coresolution_addV(reg, s, 3)
    assert not res.success
    assert res.failed_kernel is not None
    assert is_isomorphic(res.failed_kernel, s)


def test_coresolution_not_generator(kx2_setup):
    _, reg, s, v = kx2_setup
    with pytest.raises(HypothesisError, match="generator"):
        coresolution_addV(s, reg, 1)


def test_gldim_endo_equivalence(a2, registries):
    mods = [e.module for e in registries["a2"].registry]
    v = direct_sum(mods)[0]
    for n in (0, 1):
        rep = gldim_endo_test(v, mods, n)
        assert rep.agree
        assert rep.side_gldim == rep.side_coresolution == True  # gldim End = 2


def test_gldim_endo_negative_side(kx2, registries):
    # V = A + DA over kx2: both sides false at n = 0 (S not in add V; gldim infinite)
    sc = kx2.to_sc()
    mods = [e.module for e in registries["kx2"].registry]
    reg = regular_module(sc)
    v = direct_sum([reg, dual(regular_module(sc.opposite()))])[0]
    rep = gldim_endo_test(v, mods, 0)
    assert rep.agree and not rep.side_gldim and not rep.side_coresolution


def test_coker_module(kx2_setup):
    _, reg, s, v = kx2_setup
    pkg = end_algebra(v)
    # g an isomorphism -> zero cokernel
    g = hom_space(reg, reg)[0]
    from findim.modules import ModMorphism
    from findim.linalg import FieldMat
    import numpy as np

    ident = ModMorphism(reg, reg, FieldMat.identity(2, reg.dim))
    assert coker_module(pkg, ident).dim == 0
    # g = 0 -> the whole transported projective
    z = zero_morphism(reg, s)
    x = coker_module(pkg, z)
    assert x.dim == hom_dim(v, s)


def test_coker_membership_enforced(kx2_setup, a2_modules):
    _, reg, s, v = kx2_setup
    pkg = end_algebra(reg)  # add(A) only
    from findim.modules import ModuleError

    with pytest.raises(ModuleError, match="add"):
        coker_module(pkg, zero_morphism(s, s))


def test_tensor_unit(kx2_setup, kx3_setup):
    for pkg_mod in (kx2_setup[3], kx3_setup[2]):
        pkg = end_algebra(pkg_mod)
        ten = tensor_over_end(pkg, regular_module(pkg.e))
        assert is_isomorphic(ten.module, pkg_mod)


def test_tensor_additive(kx2_setup):
    _, reg, s, v = kx2_setup
    pkg = end_algebra(v)
    e2 = direct_sum([regular_module(pkg.e)] * 2)[0]
    ten = tensor_over_end(pkg, e2)
    assert ten.module.dim == 2 * v.dim
    assert is_isomorphic(ten.module, direct_sum([v, v])[0])


def test_tensor_functorial(kx2_setup):
    _, reg, s, v = kx2_setup
    pkg = end_algebra(v)
    rege = regular_module(pkg.e)
    t = tensor_over_end(pkg, rege)
    ident_map = hom_space(rege, rege)[0]
    # identity is in the hom basis span; pick the identity morphism explicitly
    from findim.modules import ModMorphism, identity_morphism

    induced = tensor_induced_map(pkg, identity_morphism(rege), t, t)
    assert induced.is_iso()


def test_canonical_map_iso_on_projectives(kx2_setup, kx3_setup):
    for base in (kx2_setup[3], kx3_setup[2]):
        pkg = end_algebra(base)
        rege = regular_module(pkg.e)
        sigma, _, _ = canonical_map(pkg, rege)
        assert sigma.is_iso()
        sigma.validate()
        e2 = direct_sum([rege, rege])[0]
        sigma2, _, _ = canonical_map(pkg, e2)
        assert sigma2.is_iso()


def test_canonical_map_non_projective_not_asserted(kx2_setup):
    _, reg, s, v = kx2_setup
    pkg = end_algebra(v)
    for sm in simple_modules(pkg.e):
        sigma, _, _ = canonical_map(pkg, sm)
        sigma.validate()  # E-linear even when not an isomorphism


def test_strip_projectives(kx2_setup):
    _, reg, s, v = kx2_setup
    pkg = end_algebra(v)
    rege = regular_module(pkg.e)
    assert strip_projective_summands(rege).dim == 0
    sm = simple_modules(pkg.e)
    mixed = direct_sum([rege, sm[0]])[0]
    stripped = strip_projective_summands(mixed)
    assert is_isomorphic(stripped, sm[0])


def test_omega2_witness_projective(kx2_setup):
    _, reg, s, v = kx2_setup
    pkg = end_algebra(v)
    w = omega2_hom_witness(pkg, regular_module(pkg.e))
    assert w.verdict and w.omega2.dim == 0


def test_omega2_witness_simples(kx2_setup, kx3_setup):
    for base in (kx2_setup[3], kx3_setup[2]):
        pkg = end_algebra(base)
        for sm in simple_modules(pkg.e):
            w = omega2_hom_witness(pkg, sm)
            assert w.verdict


def test_transported_ses_stays_exact(a2, registries, a2_modules):
    # short exact sequences from approximations stay exact under Hom(M, -)
    mods = [e.module for e in registries["a2"].registry]
    v = direct_sum(mods)[0]
    pkg = end_algebra(v)
    x = a2_modules["S1"]
    ap = add_approximation(v, x)
    parts = mor_parts(ap.map)
    seq = [parts.kernel_incl, ap.map]
    assert is_exact_complex(seq)
    t_k = hom_transport(pkg, parts.kernel)
    t_v0 = hom_transport(pkg, ap.v0)
    t_x = hom_transport(pkg, x)
    chain = [
        hom_transport_map(pkg, parts.kernel_incl, t_k, t_v0),
        hom_transport_map(pkg, ap.map, t_v0, t_x),
    ]
    assert is_exact_complex(chain)

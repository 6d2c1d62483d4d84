import pytest

from bicat import corpus
from bicat.bidiagram import (ComponentInvalid, LaxBidiagram, NotParallel,
                             check_coherence, check_gdo, constant_bidiagram,
                             derived_chi_whisker, derived_xi, hom_bidiagram,
                             precompose_bidiagram, validate_bidiagram_data)
from bicat.morphisms import identity_functor, validate_modification


CORPUS = corpus.corpus_bicategories()


@pytest.mark.parametrize("name,B", CORPUS, ids=[n for n, _ in CORPUS])
def test_hom_bidiagram_data_valid(name, B):
    for b0 in B.objects():
        rep = validate_bidiagram_data(hom_bidiagram(B, b0))
        assert rep.ok, (b0, str(rep))


@pytest.mark.parametrize("name,B", CORPUS, ids=[n for n, _ in CORPUS])
def test_hom_bidiagram_coherent(name, B):
    D = hom_bidiagram(B, 0)
    rep = check_coherence(D)
    assert rep.ok, str(rep)


@pytest.mark.parametrize("name,B", CORPUS, ids=[n for n, _ in CORPUS])
def test_hom_bidiagram_derived_units(name, B):
    # these equalities are consequences of coherence; they double as a
    # cross-check oracle on the pasting machinery itself
    D = hom_bidiagram(B, 0)
    rep = check_gdo(D)
    assert rep.ok, str(rep)


def test_hom_bidiagram_chi_is_associator():
    # over the hom fibers, the composition comparison is whisker-free:
    # its component at a 1-cell x is the associator x(gf) => (xg)f
    B = corpus.twisted_suspension()
    D = hom_bidiagram(B, 0)
    for (g, f), chi in D.chi_comp.items():
        for i, x in enumerate(D.hom_obj_keys[B.tgt1(g)]):
            assert D.hom_one_keys[B.src1(f)][chi.comp[i]] == B.a(x, g, f)
    for a in B.objects():
        for i, x in enumerate(D.hom_obj_keys[a]):
            assert D.hom_one_keys[a][D.chi_unit[a].comp[i]] == B.ri(x)


def test_constant_bidiagram_coherent():
    bases = dict(CORPUS)
    for bname in ["poset[2]", "cyclic2", "indiscrete2"]:
        for kname in ["cyclic2", "twisted", "idempotent"]:
            D = constant_bidiagram(bases[bname], bases[kname])
            assert check_coherence(D).ok, (bname, kname)
            assert check_gdo(D).ok, (bname, kname)


def test_precompose_group_hom_coherent():
    F = corpus.group_hom(2, 4, 2)
    D = hom_bidiagram(F.target, 0)
    E = precompose_bidiagram(D, F)
    assert check_coherence(E).ok
    assert check_gdo(E).ok


def test_precompose_poset_inclusion_coherent():
    F = corpus.poset_inclusion(1, 2)
    D = hom_bidiagram(F.target, 2)
    E = precompose_bidiagram(D, F)
    assert check_coherence(E).ok


def test_precompose_identity_preserves_fibers():
    B = corpus.twisted_suspension()
    D = hom_bidiagram(B, 0)
    E = precompose_bidiagram(D, identity_functor(B))
    assert check_coherence(E).ok
    for f in B.one_cells():
        assert E.pull[f].equal(D.pull[f])


def test_derived_xi_identity_and_generator():
    B = corpus.cyclic_group(3)
    D = hom_bidiagram(B, 0)
    c = B.i2(1)
    m = derived_xi(D, [c], [c])
    assert validate_modification(m).ok
    assert all(x == D.fiber[0].i2(y)
               for x, y in zip(m.comp, m.src_t.comp))


def test_derived_xi_rebracketing_paths_agree():
    # a 3-step and a 2-step factorization of the same vertical composite
    B = corpus.twisted_suspension()
    D = hom_bidiagram(B, 0)
    s = 3  # a sign automorphism; s . s = identity on its 1-cell
    f = B.src2(s)
    m = derived_xi(D, [s, s, B.i2(f)], [s, s])
    assert validate_modification(m).ok


def test_derived_xi_not_parallel():
    B = corpus.twisted_suspension()
    D = hom_bidiagram(B, 0)
    s = 3
    f = B.src2(s)
    with pytest.raises(NotParallel):
        derived_xi(D, [s], [B.i2(f)])


def test_derived_chi_whisker_valid_and_invertible():
    B = corpus.cyclic_group(2)
    D = hom_bidiagram(B, 0)
    alpha = B.i2(1)
    for side, cell in [("right", 0), ("left", 1)]:
        m = derived_chi_whisker(D, side, alpha, cell)
        assert validate_modification(m).ok
        T = m.src_t.F.target
        assert all(T.is_iso_two(c) for c in m.comp)


def test_mutated_chi_component_rejected_by_data_validator():
    B = corpus.twisted_suspension()
    D = hom_bidiagram(B, 0)
    FA = D.fiber[0]
    chi = D.chi_comp[(1, 1)]
    cur = chi.comp[0]
    alt = next(m for m in FA.one_cells()
               if m != cur and FA.src1(m) == FA.src1(cur)
               and FA.tgt1(m) == FA.tgt1(cur))
    chi.comp[0] = alt
    assert not validate_bidiagram_data(D).ok


def test_sign_flipped_omega_caught_only_by_coherence():
    # a central sign on one omega component survives every local
    # validity check; the pentagon condition is what pins it down
    B = corpus.cyclic_group(2)
    K = corpus.twisted_suspension()
    D = constant_bidiagram(B, K)
    key = sorted(D.omega)[1]
    comps = list(D.omega[key])
    cur = comps[0]
    alt = next(c for c in K.two_cells()
               if c != cur and K.src2(c) == K.src2(cur)
               and K.tgt2(c) == K.tgt2(cur))
    comps[0] = alt
    D.omega[key] = comps
    assert validate_bidiagram_data(D).ok
    rep = check_coherence(D)
    assert not rep.ok
    assert any(v.axiom == "coherence/omega_pentagon" for v in rep.violations)


def test_sign_flipped_gamma_caught_by_coherence():
    B = corpus.cyclic_group(2)
    K = corpus.twisted_suspension()
    D = constant_bidiagram(B, K)
    f = 1
    comps = list(D.gamma[f])
    cur = comps[0]
    alt = next(c for c in K.two_cells()
               if c != cur and K.src2(c) == K.src2(cur)
               and K.tgt2(c) == K.tgt2(cur))
    comps[0] = alt
    D.gamma[f] = comps
    assert validate_bidiagram_data(D).ok
    rep = check_coherence(D)
    assert not rep.ok


def test_check_coherence_rejects_invalid_data():
    B = corpus.cyclic_group(2)
    D = hom_bidiagram(B, 0)
    del D.omega[sorted(D.omega)[0]]
    with pytest.raises(ComponentInvalid):
        check_coherence(D)


def test_bidiagram_json_roundtrip():
    B = corpus.twisted_suspension()
    D = hom_bidiagram(B, 0)
    d = D.to_json_dict()
    D2 = LaxBidiagram.from_json_dict(d)
    assert D2.to_json_dict() == d
    assert check_coherence(D2).ok

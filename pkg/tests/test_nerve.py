import pytest
from hypothesis import given, settings, strategies as st

from bicat import corpus
from bicat.fiber import comma, homotopy_fiber
from bicat.kernel import Bicat
from bicat.morphisms import (LaxFunctor, compose_lax_functors,
                             identity_functor, validate_lax_functor)
from bicat.nerve import (GeometricSimplex, TruncationTooLarge, homology,
                         induced_maps_equal, nerve, pi0, simplicial_map)


SMALL = ["poset[1]", "poset[2]", "cyclic2", "cyclic3", "indiscrete2",
         "idempotent", "twisted"]
CORPUS = dict(corpus.corpus_bicategories())
NERVES = {name: nerve(CORPUS[name]) for name in SMALL}


def test_nondegenerate_counts_poset2():
    assert NERVES["poset[2]"].nondegenerate_counts() == [3, 3, 1, 0]


def test_nondegenerate_counts_cyclic2():
    assert NERVES["cyclic2"].nondegenerate_counts() == [1, 1, 1, 1]


@pytest.mark.parametrize("name", SMALL)
def test_every_simplex_is_a_lax_functor(name):
    B, X = CORPUS[name], NERVES[name]
    for n in range(X.N + 1):
        for z in X.simplices[n]:
            assert validate_lax_functor(z.as_lax_functor(B)).ok


def _chain_count(C, n):
    # functors [n] -> C are chains of n composable morphisms
    if n == 0:
        return C.n_obj
    counts = {a: 1 for a in range(C.n_obj)}
    for _ in range(n):
        nxt = {a: 0 for a in range(C.n_obj)}
        for f in range(C.n_mor):
            nxt[C.mor_src[f]] += counts[C.mor_tgt[f]]
        counts = nxt
    return sum(counts.values())


@pytest.mark.parametrize("make", [corpus.poset_cat, corpus.indiscrete_cat],
                         ids=["poset", "indiscrete"])
@pytest.mark.parametrize("size", [1, 2])
def test_locally_discrete_nerve_is_the_category_nerve(make, size):
    # independent oracle: on a category all 2-cell data is forced, so
    # simplex counts match the composable-chain counts
    C = make(size)
    X = nerve(corpus.locally_discrete(C))
    for n in range(X.N + 1):
        assert len(X.simplices[n]) == _chain_count(C, n)


@pytest.mark.parametrize("name", SMALL)
def test_simplicial_identities(name):
    X = NERVES[name]
    for n in range(2, X.N + 1):
        for s in range(len(X.simplices[n])):
            for j in range(n + 1):
                for i in range(j):
                    assert X.face(n - 1, i, X.face(n, j, s)) == \
                        X.face(n - 1, j - 1, X.face(n, i, s))
    for n in range(1, X.N):
        for s in range(len(X.simplices[n])):
            for j in range(n + 1):
                for i in range(n + 2):
                    t = X.degeneracy(n, j, s)
                    if i < j:
                        assert X.face(n + 1, i, t) == \
                            X.degeneracy(n - 1, j - 1, X.face(n, i, s))
                    elif i in (j, j + 1):
                        assert X.face(n + 1, i, t) == s
                    else:
                        assert X.face(n + 1, i, t) == \
                            X.degeneracy(n - 1, j, X.face(n, i - 1, s))
    for n in range(X.N - 1):
        for s in range(len(X.simplices[n])):
            for i in range(n + 1):
                for j in range(i, n + 1):
                    assert X.degeneracy(n + 1, i, X.degeneracy(n, j, s)) \
                        == X.degeneracy(n + 1, j + 1, X.degeneracy(n, i, s))


@pytest.mark.parametrize("name", SMALL)
def test_degenerate_simplices_are_retracts(name):
    # a simplex is an image of a degeneracy iff some s_i d_i fixes it
    X = NERVES[name]
    for n in range(1, X.N + 1):
        predicate = {s for s in range(len(X.simplices[n]))
                     if any(X.degeneracy(n - 1, i, X.face(n, i, s)) == s
                            for i in range(n))}
        assert predicate == X.degenerate_ids(n)


@settings(max_examples=50, deadline=None)
@given(st.data())
def test_relabel_composes(data):
    X = NERVES["twisted"]
    z = data.draw(st.sampled_from(X.simplices[3]))
    m = data.draw(st.integers(0, 3))
    k = data.draw(st.integers(0, 3))
    sigma = sorted(data.draw(st.lists(st.integers(0, 3), min_size=m + 1,
                                      max_size=m + 1)))
    tau = sorted(data.draw(st.lists(st.integers(0, m), min_size=k + 1,
                                    max_size=k + 1)))
    assert z.relabel(sigma).relabel(tau) == \
        z.relabel([sigma[t] for t in tau])


# -- connected components and homology -------------------------------------

def test_pi0_examples():
    assert pi0(nerve(comma(CORPUS["cyclic2"], 0)))[0] == 1
    F = corpus.group_hom(1, 2, 0)
    assert pi0(nerve(homotopy_fiber(F, 0)))[0] == 2
    empty = Bicat(0, [], [], {}, {}, {}, [], [], {}, [], [])
    assert pi0(nerve(empty))[0] == 0


def test_homology_of_cyclic_group_suspensions():
    H = homology(NERVES["cyclic2"])
    assert H.betti == [1, 0, 0]
    assert H.torsion == [[], [2], []]
    H = homology(NERVES["cyclic3"])
    assert H.betti == [1, 0, 0]
    assert H.torsion == [[], [3], []]


def test_homology_of_contractible_instances():
    for X in (NERVES["poset[2]"], nerve(comma(CORPUS["cyclic2"], 0))):
        H = homology(X)
        assert H.betti == [1, 0, 0]
        assert H.torsion == [[], [], []]


def test_homology_of_symmetric_group_is_its_abelianization():
    H = homology(nerve(corpus.symmetric_group(3)))
    assert H.betti == [1, 0, 0]
    assert H.torsion == [[], [2], []]


def test_homology_degree_guard():
    with pytest.raises(ValueError):
        homology(NERVES["poset[1]"], kmax=3)


def test_budget_guard():
    with pytest.raises(TruncationTooLarge):
        nerve(corpus.symmetric_group(3), budget=1000)


# -- induced simplicial maps -----------------------------------------------

def test_identity_map_is_the_identity():
    X = NERVES["cyclic2"]
    sm = simplicial_map(identity_functor(CORPUS["cyclic2"]), X, X)
    for n, col in enumerate(sm.maps):
        assert col == list(range(len(X.simplices[n])))


def test_simplicial_map_commutes_with_operators():
    F = corpus.group_hom(2, 4, 2)
    XA, XB = nerve(F.source), nerve(F.target)
    sm = simplicial_map(F, XA, XB)
    for n in range(1, XA.N + 1):
        for s in range(len(XA.simplices[n])):
            for i in range(n + 1):
                assert XB.face(n, i, sm.maps[n][s]) == \
                    sm.maps[n - 1][XA.face(n, i, s)]
    for n in range(XA.N):
        for s in range(len(XA.simplices[n])):
            for i in range(n + 1):
                assert XB.degeneracy(n, i, sm.maps[n][s]) == \
                    sm.maps[n + 1][XA.degeneracy(n, i, s)]


def test_simplicial_map_is_functorial():
    F = corpus.group_hom(1, 2, 0)
    G = corpus.group_hom(2, 4, 2)
    XA, XB, XC = nerve(F.source), nerve(F.target), nerve(G.target)
    smF = simplicial_map(F, XA, XB)
    smG = simplicial_map(G, XB, XC)
    smGF = simplicial_map(compose_lax_functors(G, F), XA, XC)
    for n in range(XA.N + 1):
        assert smGF.maps[n] == [smG.maps[n][s] for s in smF.maps[n]]


def test_point_inclusion_hits_degenerate_simplices():
    F = corpus.group_hom(1, 2, 0)
    XA, XB = nerve(F.source), nerve(F.target)
    sm = simplicial_map(F, XA, XB)
    for n in range(1, XA.N + 1):
        deg = XB.degenerate_ids(n)
        for s in XA.nondegenerate(n):
            assert sm.maps[n][s] in deg


def _conjugation(B, elems, mult, inv, g):
    ix = {e: k for k, e in enumerate(elems)}
    conj = [ix[mult(mult(g, e), inv(g))] for e in elems]
    return LaxFunctor(B, B, [0], conj, list(conj),
                      {(q, f): B.i2(B.h1(conj[q], conj[f]))
                       for (q, f) in B.hcomp1},
                      {0: B.i2(B.i1(0))})


def test_conjugation_induces_the_identity_on_homology():
    # homotopic lax functors induce equal maps; an inner automorphism
    # is connected to the identity by a pseudo transformation
    from itertools import permutations
    elems = sorted(permutations(range(3)))
    mult = lambda a, b: tuple(a[b[i]] for i in range(3))
    inv = lambda a: tuple(sorted(range(3), key=lambda i: a[i]))
    B = corpus.symmetric_group(3)
    X = nerve(B)
    C = _conjugation(B, elems, mult, inv, elems[1])
    assert validate_lax_functor(C).ok
    smC = simplicial_map(C, X, X)
    smI = simplicial_map(identity_functor(B), X, X)
    assert induced_maps_equal(smC, smI)


def test_distinct_homotopy_classes_are_distinguished():
    B = corpus.symmetric_group(3)
    X = nerve(B)
    one = B.i1(0)
    K = LaxFunctor(B, B, [0], [one] * len(B.one_cells()),
                   [B.i2(one)] * len(B.two_cells()),
                   {(q, f): B.l(one) for (q, f) in B.hcomp1},
                   {0: B.i2(one)})
    assert validate_lax_functor(K).ok
    smK = simplicial_map(K, X, X)
    smI = simplicial_map(identity_functor(B), X, X)
    assert not induced_maps_equal(smK, smI)


@pytest.mark.parametrize("name", ["poset[1]", "poset[2]", "cyclic2",
                                  "cyclic3", "twisted"])
def test_comma_nerves_are_contractible(name):
    B = CORPUS[name]
    for b in B.objects():
        X = nerve(comma(B, b))
        assert pi0(X)[0] == 1
        H = homology(X)
        assert H.betti == [1, 0, 0]
        assert H.torsion == [[], [], []]

import random

import pytest

from bicat import corpus
from bicat.kernel import (Bicat, IllTypedTerm, MalformedTable, OComp, OGen,
                          OId, TAssoc, TGen, TH, TId, TLUnit, TRUnit, TV,
                          eval_one, eval_two, validate_bicategory)


CORPUS = corpus.corpus_bicategories()


@pytest.mark.parametrize("name,B", CORPUS, ids=[n for n, _ in CORPUS])
def test_corpus_validates(name, B):
    rep = validate_bicategory(B)
    assert rep.ok, str(rep)


def test_poset2_shape():
    B = corpus.poset(2)
    assert B.n_obj == 3
    assert B.n_one == 6
    assert B.n_two == 6


def test_eval_identity_term():
    B = corpus.cyclic_group(2)
    f = 1  # the generator
    assert eval_two(B, TId(OGen(f))) == B.i2(f)


def test_eval_runit_inverse_pair():
    B = corpus.poset(1)
    a = 0
    t = TV(TRUnit(OId(a)), TRUnit(OId(a), invert=True))
    assert eval_two(B, t) == B.i2(B.h1(B.i1(a), B.i1(a)))


def test_eval_group_multiplication():
    B = corpus.cyclic_group(2)
    g = 1
    assert eval_one(B, OComp(OGen(g), OGen(g))) == B.i1(0)


def test_eval_vcomp_reassociation_invariance():
    B = corpus.twisted_suspension()
    # a 3-chain of sign automorphisms at object 1 of the hom-category
    x = TGen(3)  # the -1 automorphism of the odd object
    left = TV(TV(x, x), x)
    right = TV(x, TV(x, x))
    assert eval_two(B, left) == eval_two(B, right) == 3


def test_eval_ill_typed():
    B = corpus.poset(1)
    # 1-cell 0->1 composed after itself is not composable
    f = next(f for f in B.one_cells()
             if B.src1(f) == 0 and B.tgt1(f) == 1)
    with pytest.raises(IllTypedTerm):
        eval_one(B, OComp(OGen(f), OGen(f)))


def test_assoc_term_on_twisted():
    B = corpus.twisted_suspension()
    g = 1  # the nontrivial object of the monoidal category, as a 1-cell
    c = eval_two(B, TAssoc(OGen(g), OGen(g), OGen(g)))
    assert c == B.a(g, g, g)
    assert c != B.i2(B.h1(B.h1(g, g), g))  # the twist is a genuine sign


def test_is_iso_identity_and_constraints():
    for name, B in CORPUS:
        for f in B.one_cells():
            assert B.is_iso_two(B.i2(f))
            assert B.is_iso_two(B.l(f))
            assert B.is_iso_two(B.r(f))
        for c in B.assoc.values():
            assert B.is_iso_two(c)


def test_non_invertible_two_cell():
    B = corpus.idempotent_monoid()
    assert not B.is_iso_two(1)
    assert B.is_iso_two(0)


def test_lunit_runit_term_eval():
    for name, B in CORPUS:
        for f in B.one_cells():
            assert eval_two(B, TLUnit(OGen(f))) == B.l(f)
            assert eval_two(B, TRUnit(OGen(f))) == B.r(f)
            assert eval_two(B, TH(TId(OGen(f)), TId(OId(B.src1(f))))) == \
                B.i2(B.h1(f, B.i1(B.src1(f))))


def test_pentagon_mutation_detected():
    B = corpus.twisted_suspension()
    d = B.to_json_dict()
    rng = random.Random(7)
    quads = sorted(B.assoc)
    h, g, f = quads[rng.randrange(len(quads))]
    cur = B.assoc[(h, g, f)]
    # replace by the parallel 2-cell with the opposite sign
    other = next(c for c in B.two_cells()
                 if c != cur and B.src2(c) == B.src2(cur)
                 and B.tgt2(c) == B.tgt2(cur))
    M = Bicat.from_json_dict(d)
    M.assoc[(h, g, f)] = other
    rep = validate_bicategory(M)
    assert not rep.ok
    broken = {v.axiom for v in rep.violations}
    assert broken & {"pentagon", "triangle", "natural/assoc",
                     "derived/left_triangle", "derived/right_triangle"}


def test_malformed_table_reported_first():
    B = corpus.poset(1)
    M = Bicat.from_json_dict(B.to_json_dict())
    del M.vcomp[(0, 0)]
    with pytest.raises(MalformedTable):
        validate_bicategory(M)


def test_json_roundtrip_bit_exact():
    for name, B in CORPUS:
        d = B.to_json_dict()
        B2 = Bicat.from_json_dict(d)
        assert B2.to_json_dict() == d
        assert B2.dumps() == B.dumps()

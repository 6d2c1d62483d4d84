"""Monoidal categories, their suspensions, and the fiber constructions
they induce (homotopy fiber of a monoidal functor, tensor endofunctors,
and action categories).
"""

from __future__ import annotations

from dataclasses import dataclass

from .kernel import Bicat, ValidationReport


class IncoherentAction(Exception):
    pass


@dataclass
class FinCat:
    """A finite category: dense object and morphism identifiers."""
    n_obj: int
    mor_src: list
    mor_tgt: list
    comp: dict           # (g, f) -> g o f, when tgt f == src g
    idm: list            # a -> identity morphism

    @property
    def n_mor(self):
        return len(self.mor_src)

    def validate(self) -> ValidationReport:
        rep = ValidationReport()
        for a in range(self.n_obj):
            i = self.idm[a]
            if self.mor_src[i] != a or self.mor_tgt[i] != a:
                rep.add("cat/identity_typing", (a,))
        for g in range(self.n_mor):
            for f in range(self.n_mor):
                if self.mor_tgt[f] != self.mor_src[g]:
                    continue
                c = self.comp.get((g, f))
                if c is None:
                    rep.add("cat/missing_composite", (g, f))
                elif (self.mor_src[c], self.mor_tgt[c]) != \
                        (self.mor_src[f], self.mor_tgt[g]):
                    rep.add("cat/composite_typing", (g, f))
        for f in range(self.n_mor):
            if self.comp[(f, self.idm[self.mor_src[f]])] != f:
                rep.add("cat/unit_right", (f,))
            if self.comp[(self.idm[self.mor_tgt[f]], f)] != f:
                rep.add("cat/unit_left", (f,))
        for (g, f) in list(self.comp):
            for h in range(self.n_mor):
                if self.mor_src[h] == self.mor_tgt[g]:
                    if self.comp[(h, self.comp[(g, f)])] != \
                            self.comp[(self.comp[(h, g)], f)]:
                        rep.add("cat/assoc", (h, g, f))
        return rep


def locally_discrete(C: FinCat) -> Bicat:
    """The category C viewed as a bicategory with only identity 2-cells.

    The 2-cell identifier space reuses the morphism identifiers: 2-cell
    ``f`` is the identity on 1-cell ``f``.
    """
    n = C.n_mor
    vcomp = {}
    hcomp2 = {}
    for f in range(n):
        vcomp[(f, f)] = f
    for (g, f), c in C.comp.items():
        hcomp2[(g, f)] = c
    assoc = {}
    for h in range(n):
        for g in range(n):
            if C.mor_tgt[g] != C.mor_src[h]:
                continue
            for f in range(n):
                if C.mor_tgt[f] != C.mor_src[g]:
                    continue
                assoc[(h, g, f)] = C.comp[(C.comp[(h, g)], f)]
    lunit = [f for f in range(n)]
    runit = [f for f in range(n)]
    return Bicat(C.n_obj,
                 list(zip(C.mor_src, C.mor_tgt)),
                 [(f, f) for f in range(n)],
                 vcomp, dict(C.comp), hcomp2,
                 list(C.idm), list(range(n)),
                 assoc, lunit, runit)


@dataclass
class MonoidalCategory:
    cat: FinCat
    tensor_obj: dict     # (x, y) -> x tensor y
    tensor_mor: dict     # (u, v) -> u tensor v
    unit: int            # object I
    assoc: dict          # (x, y, z) -> iso (x@y)@z -> x@(y@z)
    lunit: list          # x -> iso I@x -> x
    runit: list          # x -> iso x@I -> x

    def validate(self) -> ValidationReport:
        # coherence is delegated to the bicategory validator applied to
        # the suspension, which transports pentagon/triangle verbatim
        rep = self.cat.validate()
        if not rep.ok:
            return rep
        from .kernel import validate_bicategory
        return validate_bicategory(suspension(self))


def suspension(M: MonoidalCategory) -> Bicat:
    """The one-object bicategory with hom-category M and horizontal
    composition the tensor."""
    C = M.cat
    return Bicat(1,
                 [(0, 0)] * C.n_obj,
                 list(zip(C.mor_src, C.mor_tgt)),
                 dict(C.comp),
                 dict(M.tensor_obj),
                 dict(M.tensor_mor),
                 [M.unit], list(C.idm),
                 dict(M.assoc), list(M.lunit), list(M.runit))


# ---------------------------------------------------------------------------
# The homotopy fiber of a monoidal functor
# ---------------------------------------------------------------------------

def monoidal_fiber(F) -> Bicat:
    """The homotopy fiber bicategory of a monoidal functor, presented
    as a lax functor between the suspension bicategories: the fiber
    over the unique object of the target.

    Objects are the objects x' of the target; 1-cells (u', x) pair an
    object x of the source with a morphism u' : x' -> y' (x) Fx; 2-cells
    are source morphisms u : x -> y making the anchoring triangle
    commute.
    """
    if F.source.n_obj != 1 or F.target.n_obj != 1:
        raise ValueError("monoidal_fiber expects a functor between "
                         "one-object bicategories")
    from .fiber import homotopy_fiber
    return homotopy_fiber(F, 0)


def _comparison_cell(K: Bicat, s: int, t: int) -> int:
    if s == t:
        return K.i2(s)
    cells = K.hom2(s, t)
    if len(cells) != 1:
        raise ValueError("no canonical comparison 2-cell between "
                         "1-cells %d and %d" % (s, t))
    return cells[0]


def tensor_endofunctor(F, zp: int, K=None):
    """Tensoring on the left by an object z' of the target monoidal
    category: the endofunctor of the homotopy fiber that whiskers
    every anchoring cell with z' and rebrackets with the inverse
    associator.

    The comparison cells are taken to be identities whenever the image
    tables compose on the nose, and otherwise the unique connecting
    2-cell; strictness is therefore reported by ``is_strict`` on the
    result rather than assumed.
    """
    from .morphisms import LaxFunctor
    A, B = F.source, F.target
    if K is None:
        K = monoidal_fiber(F)
    obj = [K.obj_ix[(B.h1(zp, f), a)] for (f, a) in K.obj_keys]

    def shift(beta, u, fp):
        return B.v(B.inv(B.a(zp, fp, F.one[u])), B.h(B.i2(zp), beta))

    one = [K.one_ix[(shift(beta, u, fp), u, B.h1(zp, fp))]
           for (beta, u, fp) in K.one_keys]
    two = [K.two_ix[(alpha, shift(beta, A.src2(alpha), fp),
                     B.h1(zp, fp))]
           for (alpha, beta, fp) in K.two_keys]
    comp = {(gi, fi): _comparison_cell(K, K.h1(one[gi], one[fi]),
                                       one[K.h1(gi, fi)])
            for (gi, fi) in K.hcomp1}
    unit = {o: _comparison_cell(K, K.i1(obj[o]), one[K.id1[o]])
            for o in range(K.n_obj)}
    return LaxFunctor(K, K, obj, one, two, comp, unit)


# ---------------------------------------------------------------------------
# Categories with a coherent right action of a monoidal category
# ---------------------------------------------------------------------------

@dataclass
class ActionCategory:
    """A category together with a coherent right pseudo action of a
    monoidal category.

    ``act_obj[(a, x)]`` and ``act_mor[(f, u)]`` tabulate the action
    functor; ``chi[(x, y)]`` lists, per object a, the rebracketing
    isomorphism (a @ x) @ y -> a @ (x @ y), and ``chi_unit[a]`` the
    unit comparison a -> a @ I.  Coherence means exactly that the data
    encodes as a pseudo bidiagram over the suspension of the monoid;
    ``validate`` builds that encoding and runs the full bidiagram
    checkers, raising IncoherentAction on any failure.
    """
    cat: FinCat
    monoid: MonoidalCategory
    act_obj: dict        # (a, x) -> a @ x
    act_mor: dict        # (f, u) -> f @ u
    chi: dict            # (x, y) -> [component at a, per object a]
    chi_unit: list       # a -> component

    def to_bidiagram(self):
        from .bidiagram import (ComponentInvalid, LaxBidiagram,
                                NotComposable, NotParallel,
                                fill_structure_components)
        from .morphisms import (LaxFunctor, Transformation,
                                compose_lax_functors, identity_functor)
        M = self.monoid
        mc = M.cat
        B = suspension(M)
        Nd = locally_discrete(self.cat)

        def act_functor(x):
            obj = [self.act_obj[(a, x)] for a in range(self.cat.n_obj)]
            one = [self.act_mor[(f, mc.idm[x])]
                   for f in range(self.cat.n_mor)]
            comp = {(g, f): Nd.i2(Nd.h1(one[g], one[f]))
                    for (g, f) in Nd.hcomp1}
            unit = {a: Nd.i2(Nd.i1(obj[a]))
                    for a in range(self.cat.n_obj)}
            return LaxFunctor(Nd, Nd, obj, one, list(one), comp, unit)

        def ident_nat(F, comp):
            return {m: Nd.i2(Nd.h1(comp[F.source.tgt1(m)], F.one[m]))
                    for m in F.source.one_cells()}

        try:
            pull = {x: act_functor(x) for x in B.one_cells()}
            pull2 = {}
            for u in B.two_cells():
                Fx = pull[B.src2(u)]
                comp = [self.act_mor[(self.cat.idm[a], u)]
                        for a in range(self.cat.n_obj)]
                pull2[u] = Transformation("pseudo", Fx, pull[B.tgt2(u)],
                                          comp, ident_nat(Fx, comp))
            chi_comp = {}
            for (x, y) in B.hcomp1:
                Fc = compose_lax_functors(pull[y], pull[x])
                comp = list(self.chi[(x, y)])
                chi_comp[(x, y)] = Transformation(
                    "pseudo", Fc, pull[B.h1(x, y)], comp,
                    ident_nat(Fc, comp))
            Fi = identity_functor(Nd)
            cu = Transformation("pseudo", Fi, pull[B.i1(0)],
                                list(self.chi_unit),
                                ident_nat(Fi, list(self.chi_unit)))
            D = LaxBidiagram(B, [Nd], pull, pull2, chi_comp, [cu],
                             {}, {}, {}, {}, {}, {})
            return fill_structure_components(D)
        except (KeyError, IndexError, ComponentInvalid, NotComposable,
                NotParallel) as e:
            raise IncoherentAction("%s: %s" % (type(e).__name__, e))

    def validate(self):
        """Build and fully check the encoded bidiagram (data validator
        plus the coherence checker); returns the bidiagram.  Raises
        IncoherentAction on any failure."""
        from .bidiagram import check_coherence, validate_bidiagram_data
        rep = self.cat.validate()
        if not rep.ok:
            raise IncoherentAction(str(rep))
        D = self.to_bidiagram()
        rep = validate_bidiagram_data(D)
        if not rep.ok:
            raise IncoherentAction(str(rep))
        rep = check_coherence(D)
        if not rep.ok:
            raise IncoherentAction(str(rep))
        return D


def _mor_inverse(C: FinCat, f: int) -> int:
    a, b = C.mor_src[f], C.mor_tgt[f]
    for g in range(C.n_mor):
        if (C.mor_src[g], C.mor_tgt[g]) == (b, a) \
                and C.comp[(f, g)] == C.idm[b] \
                and C.comp[(g, f)] == C.idm[a]:
            return g
    raise ValueError("morphism %d is not invertible" % f)


def self_action(M: MonoidalCategory) -> ActionCategory:
    """The right action of a monoidal category on its own underlying
    category by tensoring: rebracketing is the associator and the unit
    comparison the inverse right unitor."""
    mc = M.cat
    chi = {(x, y): [M.assoc[(a, x, y)] for a in range(mc.n_obj)]
           for x in range(mc.n_obj) for y in range(mc.n_obj)}
    return ActionCategory(mc, M, dict(M.tensor_obj), dict(M.tensor_mor),
                          chi, [_mor_inverse(mc, M.runit[a])
                                for a in range(mc.n_obj)])


def trivial_action(C: FinCat) -> ActionCategory:
    """The action of the trivial (one-object, one-morphism) monoidal
    category: tensoring changes nothing."""
    unit_cat = FinCat(1, [0], [0], {(0, 0): 0}, [0])
    M = MonoidalCategory(unit_cat, {(0, 0): 0}, {(0, 0): 0}, 0,
                         {(0, 0, 0): 0}, [0], [0])
    act_obj = {(a, 0): a for a in range(C.n_obj)}
    act_mor = {(f, 0): f for f in range(C.n_mor)}
    return ActionCategory(C, M, act_obj, act_mor,
                          {(0, 0): list(C.idm)}, list(C.idm))


def action_grothendieck(N: ActionCategory) -> Bicat:
    """The bicategory of an action: objects are those of the category
    acted on; a 1-cell (f, x) : a -> b pairs an acting object x with a
    morphism f : a -> b @ x; a 2-cell u : x -> y is an acting-category
    morphism making the evident triangle commute.  The tables are
    built directly from these descriptions and then checked cell by
    cell against the total of the encoded bidiagram, which is the
    provenance oracle for the construction."""
    from .grothendieck import grothendieck
    from .fiber import FiberMismatch, check_cell_maps
    from .kernel import BicatBuilder
    D = N.validate()
    C, M = N.cat, N.monoid
    mc = M.cat

    bld = BicatBuilder()
    for a in range(C.n_obj):
        bld.add_obj(a)
    for x in range(mc.n_obj):
        for b in range(C.n_obj):
            tb = N.act_obj[(b, x)]
            for f in range(C.n_mor):
                if C.mor_tgt[f] == tb:
                    bld.add_one((f, x, b), C.mor_src[f], b)
    for u in range(mc.n_mor):
        x, y = mc.mor_src[u], mc.mor_tgt[u]
        for (f, x0, b) in list(bld.one_keys):
            if x0 != x:
                continue
            g = C.comp[(N.act_mor[(C.idm[b], u)], f)]
            bld.add_two((u, f, x, b), (f, x, b), (g, y, b))

    def fpart(gk, fk):
        (v, y, c) = gk
        (f, x, b) = fk
        return C.comp[(N.chi[(y, x)][c],
                       C.comp[(N.act_mor[(v, mc.idm[x])], f)])]

    def hcomp1(gk, fk):
        (v, y, c) = gk
        (f, x, b) = fk
        return (fpart(gk, fk), M.tensor_obj[(y, x)], c)

    def vcomp(bk, ak):
        (u2, g, y, b) = bk
        (u1, f, x, _) = ak
        return (mc.comp[(u2, u1)], f, x, b)

    def id1(a):
        return (N.chi_unit[a], M.unit, a)

    def id2(fk):
        (f, x, b) = fk
        return (mc.idm[x], f, x, b)

    def hcomp2(bk, ak):
        (u2, g, y, c) = bk
        (u1, f, x, b) = ak
        return (M.tensor_mor[(u2, u1)], fpart((g, y, c), (f, x, b)),
                M.tensor_obj[(y, x)], c)

    def assoc(hk, gk, fk):
        (w, z, d) = hk
        (v, y, c) = gk
        (f, x, b) = fk
        s = hcomp1(hcomp1(hk, gk), fk)
        return (M.assoc[(z, y, x)], s[0], s[1], d)

    def lunit(fk):
        (f, x, b) = fk
        s = hcomp1(id1(b), fk)
        return (M.lunit[x], s[0], s[1], b)

    def runit(fk):
        (f, x, b) = fk
        s = hcomp1(fk, id1(C.mor_src[f]))
        return (M.runit[x], s[0], s[1], b)

    T = bld.build(vcomp, hcomp1, hcomp2, id1, id2, assoc, lunit, runit)
    T.obj_keys = bld.obj_keys
    T.one_keys = bld.one_keys
    T.two_keys = bld.two_keys
    T.obj_ix = bld.obj_ix
    T.one_ix = bld.one_ix
    T.two_ix = bld.two_ix
    T.action = N

    G = grothendieck(D, check=False)
    try:
        omap = [T.obj_ix[a] for (a, _) in G.obj_keys]
        fmap = [T.one_ix[k] for k in G.one_keys]
        tmap = [T.two_ix[(alpha, u, mc.mor_src[alpha], y)]
                for (phi, alpha, u, y) in G.two_keys]
    except KeyError as e:
        raise FiberMismatch("cell missing from direct construction: %r"
                            % (e.args[0],))
    check_cell_maps(T, G, omap, fmap, tmap)
    T.generic = G
    return T

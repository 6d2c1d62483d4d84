"""Total bicategory of a lax bidiagram, and its attendant functors.

Cells of the total bicategory are keyed by their constituents: an
object is a pair ``(x, a)`` of a fiber object over a base object; a
1-cell ``(u, f, y)`` consists of a base 1-cell f: a -> b, a target
fiber object y, and a fiber 1-cell u: x -> f*y; a 2-cell
``(phi, alpha, u, y)`` consists of a base 2-cell alpha: f => g and a
fiber 2-cell phi: alpha*y . u => v.  All composition tables are closed
by evaluating the structure pastings inside the fibers; the key -> id
maps are kept on the result as provenance.

Besides the construction itself the module provides the strict
projection onto the base, the fiber embedding at a base object, the
functor induced by restricting along a base functor together with the
mediating functor that witnesses the strictness of the resulting
square, and the collapse onto the initial fiber when the base is a
locally discrete category with an initial object.
"""

from .kernel import Bicat, BicatBuilder, ValidationReport
from .morphisms import (LaxFunctor, Transformation, compose_lax_functors,
                        identity_functor)
from .bidiagram import IncoherentInput, check_coherence


class SquareMismatch(Exception):
    """The given functors do not satisfy the required square equation."""


class NoInitialObject(Exception):
    pass


def grothendieck(D, check=True):
    """Assemble the fibers of a (contravariant) lax bidiagram into a
    single bicategory.

    With ``check`` set, the coherence checker runs first and incoherent
    input is refused; the resulting tables would not satisfy the
    bicategory axioms otherwise.
    """
    if check:
        rep = check_coherence(D)
        if not rep.ok:
            raise IncoherentInput(str(rep))
    B = D.base
    bld = BicatBuilder()

    for a in B.objects():
        for x in D.fiber[a].objects():
            bld.add_obj((x, a))

    for f in B.one_cells():
        a, b = B.src1(f), B.tgt1(f)
        FA, FB = D.fiber[a], D.fiber[b]
        for y in FB.objects():
            fy = D.pull[f].obj[y]
            for u in FA.one_cells():
                if FA.tgt1(u) == fy:
                    bld.add_one((u, f, y), (FA.src1(u), a), (y, b))

    for f in B.one_cells():
        a, b = B.src1(f), B.tgt1(f)
        FA, FB = D.fiber[a], D.fiber[b]
        for alpha in B.two_cells():
            if B.src2(alpha) != f:
                continue
            g = B.tgt2(alpha)
            for y in FB.objects():
                ay = D.pull2[alpha].comp[y]
                fy = D.pull[f].obj[y]
                for u in FA.one_cells():
                    if FA.tgt1(u) != fy:
                        continue
                    s = FA.h1(ay, u)
                    for phi in FA.two_cells():
                        if FA.src2(phi) == s:
                            v = FA.tgt2(phi)
                            bld.add_two((phi, alpha, u, y),
                                        (u, f, y), (v, g, y))

    def vcomp(bk, ak):
        (psi, beta, v, y) = bk
        (phi, alpha, u, y2) = ak
        f = B.src2(alpha)
        FA = D.fiber[B.src1(f)]
        by = D.pull2[beta].comp[y]
        ay = D.pull2[alpha].comp[y]
        xi = D.xi_v[(beta, alpha)][y]
        cell = FA.vseq(
            psi,
            FA.h(FA.i2(by), phi),
            FA.a(by, ay, u),
            FA.h(FA.inv(xi), FA.i2(u)))
        return (cell, B.v(beta, alpha), u, y)

    def hcomp1(gk, fk):
        (up, fp, z) = gk
        (u, f, y) = fk
        FA = D.fiber[B.src1(f)]
        chi = D.chi_comp[(fp, f)].comp[z]
        return (FA.h1(chi, FA.h1(D.pull[f].one[up], u)),
                B.h1(fp, f), z)

    def id1(ok):
        (x, a) = ok
        return (D.chi_unit[a].comp[x], B.i1(a), x)

    def id2(fk):
        (u, f, y) = fk
        FA = D.fiber[B.src1(f)]
        cell = FA.v(FA.l(u),
                    FA.h(FA.inv(D.xi_id[f][y]), FA.i2(u)))
        return (cell, B.i2(f), u, y)

    def hcomp2(bk, ak):
        (php, alp, up, z) = bk       # outer, over b -> c
        (phi, alpha, u, y) = ak      # inner, over a -> b
        f, g = B.src2(alpha), B.tgt2(alpha)
        fp, gp = B.src2(alp), B.tgt2(alp)
        a = B.src1(f)
        FA, FB = D.fiber[a], D.fiber[B.tgt1(f)]
        pf, pg = D.pull[f], D.pull[g]

        v = FA.tgt2(phi)
        vp = FB.tgt2(php)
        o = D.pull[gp].obj[z]                  # the object g'*z
        Cz = D.chi_comp[(fp, f)].comp[z]
        Dz = D.chi_comp[(gp, g)].comp[z]
        Pz = D.pull2[B.h(alp, alpha)].comp[z]
        Ao = D.pull2[alpha].comp[o]
        apz = D.pull2[alp].comp[z]             # alpha'*z, in the middle fiber
        fu = pf.one[up]
        faz = pf.one[apz]
        fv = pf.one[vp]
        gv = pg.one[vp]
        chih = D.chi_h[(alp, alpha)][z]
        natv = D.pull2[alpha].nat[vp]
        fhat = pf.comp[(apz, up)]
        fphi = pf.two[php]

        base = FA.h1(fu, u)
        inner = FA.vseq(
            FA.h(FA.i2(gv), phi),
            FA.a(gv, D.pull2[alpha].comp[y], u),
            FA.h(natv, FA.i2(u)),
            FA.ai(Ao, fv, u),
            FA.h(FA.i2(Ao), FA.h(fphi, FA.i2(u))),
            FA.h(FA.i2(Ao), FA.h(fhat, FA.i2(u))),
            FA.h(FA.i2(Ao), FA.ai(faz, fu, u)),
            FA.a(Ao, faz, base))
        cell = FA.vseq(
            FA.h(FA.i2(Dz), inner),
            FA.a(Dz, FA.h1(Ao, faz), base),
            FA.h(chih, FA.i2(base)),
            FA.ai(Pz, Cz, base))
        u2 = FA.h1(Cz, base)
        return (cell, B.h(alp, alpha), u2, z)

    def assoc(hk, gk, fk):
        (w, h_, t) = hk
        (v, g_, z) = gk
        (u, f_, y) = fk
        a = B.src1(f_)
        FA, FB, FC = D.fiber[a], D.fiber[B.tgt1(f_)], D.fiber[B.tgt1(g_)]
        pf, pg, ph = D.pull[f_], D.pull[g_], D.pull[h_]
        hg = B.h1(h_, g_)
        gf = B.h1(g_, f_)

        m1 = FB.h1(D.chi_comp[(h_, g_)].comp[t], FB.h1(pg.one[w], v))
        At = D.pull2[B.a(h_, g_, f_)].comp[t]
        Xh = D.chi_comp[(hg, f_)].comp[t]
        fm1 = pf.one[m1]
        fchi = pf.one[D.chi_comp[(h_, g_)].comp[t]]
        fgw = pf.one[pg.one[w]]
        fv = pf.one[v]
        fh1 = pf.comp[(D.chi_comp[(h_, g_)].comp[t], FB.h1(pg.one[w], v))]
        fh2 = pf.comp[(pg.one[w], v)]
        omt = D.omega[(h_, g_, f_)][t]
        Y = D.chi_comp[(h_, gf)].comp[t]
        Z = D.chi_comp[(g_, f_)].comp[ph.obj[t]]
        natw = D.chi_comp[(g_, f_)].nat[w]
        gfw = D.pull[gf].one[w]
        chz = D.chi_comp[(g_, f_)].comp[z]

        Q = FA.h1(fgw, fv)
        Qu = FA.h1(Q, u)
        cell = FA.vseq(
            FA.h(FA.i2(Y), FA.h(FA.i2(gfw), FA.a(chz, fv, u))),
            FA.h(FA.i2(Y), FA.a(gfw, FA.h1(chz, fv), u)),
            FA.h(FA.i2(Y), FA.h(FA.a(gfw, chz, fv), FA.i2(u))),
            FA.h(FA.i2(Y), FA.h(FA.h(natw, FA.i2(fv)), FA.i2(u))),
            FA.h(FA.i2(Y), FA.h(FA.ai(Z, fgw, fv), FA.i2(u))),
            FA.h(FA.i2(Y), FA.ai(Z, Q, u)),
            FA.a(Y, Z, Qu),
            FA.h(omt, FA.i2(Qu)),
            FA.ai(At, FA.h1(Xh, fchi), Qu),
            FA.h(FA.i2(At), FA.ai(Xh, fchi, Qu)),
            FA.h(FA.i2(At), FA.h(FA.i2(Xh), FA.a(fchi, Q, u))),
            FA.h(FA.i2(At), FA.h(FA.i2(Xh),
                                 FA.h(FA.h(FA.i2(fchi), FA.inv(fh2)),
                                      FA.i2(u)))),
            FA.h(FA.i2(At), FA.h(FA.i2(Xh),
                                 FA.h(FA.inv(fh1), FA.i2(u)))))
        src_u = FA.h1(Xh, FA.h1(fm1, u))
        return (cell, B.a(h_, g_, f_), src_u, t)

    def lunit(fk):
        (u, f, y) = fk
        a, b = B.src1(f), B.tgt1(f)
        FA = D.fiber[a]
        X = D.pull2[B.l(f)].comp[y]
        Yc = D.chi_comp[(B.i1(b), f)].comp[y]
        Zc = D.pull[f].one[D.chi_unit[b].comp[y]]
        gy = D.gamma[f][y]
        cell = FA.vseq(
            FA.l(u),
            FA.h(gy, FA.i2(u)),
            FA.ai(X, FA.h1(Yc, Zc), u),
            FA.h(FA.i2(X), FA.ai(Yc, Zc, u)))
        src_u = FA.h1(Yc, FA.h1(Zc, u))
        return (cell, B.l(f), src_u, y)

    def runit(fk):
        (u, f, y) = fk
        a, b = B.src1(f), B.tgt1(f)
        FA = D.fiber[a]
        fy = D.pull[f].obj[y]
        X = D.pull2[B.r(f)].comp[y]
        Yc = D.chi_comp[(f, B.i1(a))].comp[y]
        au = D.pull[B.i1(a)].one[u]
        chx = D.chi_unit[a].comp[FA.src1(u)]
        chfy = D.chi_unit[a].comp[fy]
        natu = D.chi_unit[a].nat[u]
        dy = D.delta[f][y]
        cell = FA.vseq(
            FA.l(u),
            FA.h(dy, FA.i2(u)),
            FA.ai(X, FA.h1(Yc, chfy), u),
            FA.h(FA.i2(X), FA.ai(Yc, chfy, u)),
            FA.h(FA.i2(X), FA.h(FA.i2(Yc), FA.inv(natu))))
        src_u = FA.h1(Yc, FA.h1(au, chx))
        return (cell, B.r(f), src_u, y)

    T = bld.build(vcomp, hcomp1, hcomp2, id1, id2, assoc, lunit, runit)
    T.obj_keys = bld.obj_keys
    T.one_keys = bld.one_keys
    T.two_keys = bld.two_keys
    T.obj_ix = bld.obj_ix
    T.one_ix = bld.one_ix
    T.two_ix = bld.two_ix
    T.diagram = D
    return T


# -- projection ------------------------------------------------------------

def projection(T):
    """The strict projection onto the base of the diagram ``T`` was
    assembled from."""
    D = T.diagram
    B = D.base
    obj = [a for (x, a) in T.obj_keys]
    one = [f for (u, f, y) in T.one_keys]
    two = [alpha for (phi, alpha, u, y) in T.two_keys]
    comp = {}
    for (gi, fi) in T.hcomp1:
        comp[(gi, fi)] = B.i2(B.h1(one[gi], one[fi]))
    unit = {o: B.i2(B.i1(obj[o])) for o in T.objects()}
    return LaxFunctor(T, B, obj, one, two, comp, unit)


# -- fiber embedding -------------------------------------------------------

def embedding_J(D, a, T=None):
    """The embedding of the fiber over ``a`` into the total bicategory,
    sending x to (x, a) with all 1-cells lying over the identity of a."""
    if T is None:
        T = grothendieck(D)
    B = D.base
    FA = D.fiber[a]
    e = B.i1(a)
    chi = D.chi_unit[a]
    xi = D.xi_id[e]

    obj = [T.obj_ix[(x, a)] for x in FA.objects()]

    def jone_key(u):
        return (FA.h1(chi.comp[FA.tgt1(u)], u), e, FA.tgt1(u))

    one = [T.one_ix[jone_key(u)] for u in FA.one_cells()]

    two = []
    for phi in FA.two_cells():
        u, v = FA.src2(phi), FA.tgt2(phi)
        y = FA.tgt1(u)
        ju = FA.h1(chi.comp[y], u)
        cell = FA.vseq(
            FA.h(FA.i2(chi.comp[y]), phi),
            FA.l(ju),
            FA.h(FA.inv(xi[y]), FA.i2(ju)))
        two.append(T.two_ix[(cell, B.i2(e), ju, y)])

    comp = {}
    for (v, u) in FA.hcomp1:
        y, z = FA.tgt1(u), FA.tgt1(v)
        ju = FA.h1(chi.comp[y], u)
        jv = FA.h1(chi.comp[z], v)
        X = D.pull2[B.l(e)].comp[z]
        Yc = D.chi_comp[(e, e)].comp[z]
        W = D.pull[e].one[jv]
        achz = D.pull[e].one[chi.comp[z]]
        av = D.pull[e].one[v]
        Q = FA.h1(FA.h1(chi.comp[z], v), u)
        cell = FA.vseq(
            FA.a(chi.comp[z], v, u),
            FA.l(Q),
            FA.h(D.gamma[e][z], FA.i2(Q)),
            FA.ai(X, FA.h1(Yc, achz), Q),
            FA.h(FA.i2(X), FA.ai(Yc, achz, Q)),
            FA.h(FA.i2(X), FA.h(FA.i2(Yc),
                                FA.h(FA.i2(achz), FA.h(FA.inv(chi.nat[v]),
                                                       FA.i2(u))))),
            FA.h(FA.i2(X), FA.h(FA.i2(Yc),
                                FA.h(FA.i2(achz), FA.ai(av, chi.comp[y], u)))),
            FA.h(FA.i2(X), FA.h(FA.i2(Yc), FA.a(achz, av, ju))),
            FA.h(FA.i2(X), FA.h(FA.i2(Yc),
                                FA.h(FA.inv(D.pull[e].comp[(chi.comp[z], v)]),
                                     FA.i2(ju)))))
        src_u = FA.h1(Yc, FA.h1(W, ju))
        comp[(v, u)] = T.two_ix[(cell, B.l(e), src_u, z)]

    unit = {}
    for x in FA.objects():
        chx = chi.comp[x]
        cell = FA.vseq(
            FA.inv(FA.r(chx)),
            FA.l(chx),
            FA.h(FA.inv(xi[x]), FA.i2(chx)))
        unit[x] = T.two_ix[(cell, B.i2(e), chx, x)]

    return LaxFunctor(FA, T, obj, one, two, comp, unit)


# -- restriction along a base functor --------------------------------------

def induced_functor(D, F, E=None, TE=None, TD=None):
    """The functor between total bicategories induced by restricting
    the diagram ``D`` along a base functor ``F``.

    ``E`` must be the restricted diagram (it is built when omitted);
    ``TE`` / ``TD`` are the two totals.  The resulting functor acts by
    relabelling the base constituent of every cell; its composition
    constraint is an associator of the fiber paired with the comparison
    cell of ``F``, and its unit constraint is an identity paired with
    the unit cell of ``F``.
    """
    from .bidiagram import precompose_bidiagram
    if E is None:
        E = precompose_bidiagram(D, F)
    if TE is None:
        TE = grothendieck(E, check=False)
    if TD is None:
        TD = grothendieck(D, check=False)
    A, B = F.source, F.target

    obj = [TD.obj_ix[(x, F.obj[a])] for (x, a) in TE.obj_keys]
    one = [TD.one_ix[(u, F.one[f], y)] for (u, f, y) in TE.one_keys]
    two = [TD.two_ix[(phi, F.two[alpha], u, y)]
           for (phi, alpha, u, y) in TE.two_keys]

    comp = {}
    for (gi, fi) in TE.hcomp1:
        (up, fp, z) = TE.one_keys[gi]
        (u, f, y) = TE.one_keys[fi]
        FA = D.fiber[F.obj[A.src1(f)]]
        fhz = D.pull2[F.comp[(fp, f)]].comp[z]
        chz = D.chi_comp[(F.one[fp], F.one[f])].comp[z]
        base = FA.h1(D.pull[F.one[f]].one[up], u)
        cell = FA.ai(fhz, chz, base)
        uD = FA.h1(chz, base)
        comp[(gi, fi)] = TD.two_ix[(cell, F.comp[(fp, f)], uD, z)]

    unit = {}
    for o, (x, a) in enumerate(TE.obj_keys):
        FA = D.fiber[F.obj[a]]
        chx = D.chi_unit[F.obj[a]].comp[x]
        cell = FA.i2(FA.h1(D.pull2[F.unit[a]].comp[x], chx))
        unit[o] = TD.two_ix[(cell, F.unit[a], chx, x)]

    return LaxFunctor(TE, TD, obj, one, two, comp, unit)


def mediating(D, F, L, M, E=None, TE=None, TD=None, Fbar=None):
    """Fill the strict pullback square of total bicategories.

    Given ``L`` into the source of ``F`` and ``M`` into the total
    bicategory of ``D`` agreeing over the base (``F . L = P . M`` as
    exact table equality), produce the unique functor ``N`` into the
    total bicategory of the restricted diagram with ``P . N = L`` and
    ``induced . N = M``.  Raises SquareMismatch otherwise.
    """
    from .bidiagram import precompose_bidiagram
    if E is None:
        E = precompose_bidiagram(D, F)
    if TE is None:
        TE = grothendieck(E, check=False)
    if TD is None:
        TD = grothendieck(D, check=False)
    if Fbar is None:
        Fbar = induced_functor(D, F, E, TE, TD)
    P = projection(TD)
    FL = compose_lax_functors(F, L)
    PM = compose_lax_functors(P, M)
    if not FL.equal(PM):
        for c in L.source.objects():
            if FL.obj[c] != PM.obj[c]:
                raise SquareMismatch("object %d" % c)
        for m in L.source.one_cells():
            if FL.one[m] != PM.one[m]:
                raise SquareMismatch("1-cell %d" % m)
        for m in L.source.two_cells():
            if FL.two[m] != PM.two[m]:
                raise SquareMismatch("2-cell %d" % m)
        raise SquareMismatch("constraint tables differ")

    C = L.source
    obj = []
    for c in C.objects():
        (x, _) = TD.obj_keys[M.obj[c]]
        obj.append(TE.obj_ix[(x, L.obj[c])])
    one = []
    for m in C.one_cells():
        (u, _, y) = TD.one_keys[M.one[m]]
        one.append(TE.one_ix[(u, L.one[m], y)])
    two = []
    for m in C.two_cells():
        (phi, _, u, y) = TD.two_keys[M.two[m]]
        two.append(TE.two_ix[(phi, L.two[m], u, y)])

    def solve(src1, tgt1, base2, target):
        out = None
        for n in TE.hom2(src1, tgt1):
            if TE.two_keys[n][1] != base2:
                continue
            if TD.v(Fbar.two[n], target[1]) == target[0]:
                if out is not None:
                    raise SquareMismatch("mediating cell not unique")
                out = n
        if out is None:
            raise SquareMismatch("no mediating cell")
        return out

    comp = {}
    for (g, f) in C.hcomp1:
        s = TE.h1(one[g], one[f])
        t = one[C.h1(g, f)]
        comp[(g, f)] = solve(s, t, L.comp[(g, f)],
                             (M.comp[(g, f)], Fbar.comp[(one[g], one[f])]))
    unit = {}
    for c in C.objects():
        s = TE.i1(obj[c])
        t = one[C.i1(c)]
        unit[c] = solve(s, t, L.unit[c],
                        (M.unit[c], Fbar.unit[obj[c]]))
    return LaxFunctor(C, TE, obj, one, two, comp, unit)


# -- collapse onto the fiber over an initial object ------------------------

def _initial_object(B):
    for c in B.two_cells():
        if c != B.i2(B.src2(c)) or B.src2(c) != B.tgt2(c):
            raise NoInitialObject("base is not locally discrete")
    for z in B.objects():
        if all(len(B.hom1(z, a)) == 1 for a in B.objects()):
            return z
    raise NoInitialObject("no object with a unique map to every object")


def initial_collapse(D, T=None):
    """Over a locally discrete base with an initial object, collapse the
    total bicategory onto the fiber over that object.

    Returns the collapse functor together with the two pseudo
    transformations tying it to the fiber embedding (one on each side),
    which exhibit the embedding as an equivalence-up-to-homotopy.
    """
    B = D.base
    z = _initial_object(B)
    if T is None:
        T = grothendieck(D)
    F0 = D.fiber[z]
    zero = [B.hom1(z, a)[0] for a in B.objects()]
    e = B.i1(z)

    def kobj(x, a):
        return D.pull[zero[a]].obj[x]

    def kone(u, f, y):
        a = B.src1(f)
        return F0.h1(D.chi_comp[(f, zero[a])].comp[y],
                     D.pull[zero[a]].one[u])

    obj = [kobj(x, a) for (x, a) in T.obj_keys]
    one = [kone(u, f, y) for (u, f, y) in T.one_keys]

    two = []
    for (phi, alpha, u, y) in T.two_keys:
        f = B.src2(alpha)
        a = B.src1(f)
        p0 = D.pull[zero[a]]
        chy = D.chi_comp[(f, zero[a])].comp[y]
        au = p0.one[u]
        unitcell = F0.v(p0.two[D.xi_id[f][y]],
                        p0.unit[D.pull[f].obj[y]])
        two.append(F0.vseq(
            F0.h(F0.i2(chy), p0.two[phi]),
            F0.h(F0.i2(chy), p0.comp[(D.pull2[alpha].comp[y], u)]),
            F0.h(F0.i2(chy), F0.h(unitcell, F0.i2(au))),
            F0.h(F0.i2(chy), F0.inv(F0.l(au)))))

    comp = {}
    for (gi, fi) in T.hcomp1:
        (v, g, zc) = T.one_keys[gi]
        (u, f, y) = T.one_keys[fi]
        a, b, c = B.src1(f), B.src1(g), B.tgt1(g)
        p0a = D.pull[zero[a]]
        chzb = D.chi_comp[(g, zero[b])].comp[zc]
        bv = D.pull[zero[b]].one[v]
        chya = D.chi_comp[(f, zero[a])].comp[y]
        au = p0a.one[u]
        chgz = D.chi_comp[(f, zero[a])].comp[D.pull[g].obj[zc]]
        fv = D.pull[f].one[v]
        afv = p0a.one[fv]
        natv = D.chi_comp[(f, zero[a])].nat[v]
        chgf = D.chi_comp[(B.h1(g, f), zero[a])].comp[zc]
        chaz = D.chi_comp[(g, f)].comp[zc]
        achz = p0a.one[chaz]
        om = D.omega[(g, f, zero[a])][zc]
        xic = D.xi_id[zero[c]][zc]
        R = F0.h1(afv, au)
        mid = F0.h1(chgf, achz)
        cell = F0.vseq(
            F0.h(F0.i2(chgf), p0a.comp[(chaz, D.fiber[a].h1(fv, u))]),
            F0.h(F0.i2(chgf), F0.h(F0.i2(achz), p0a.comp[(fv, u)])),
            F0.a(chgf, achz, R),
            F0.h(F0.l(mid), F0.i2(R)),
            F0.h(F0.h(F0.inv(xic), F0.i2(mid)), F0.i2(R)),
            F0.h(F0.inv(om), F0.i2(R)),
            F0.ai(chzb, chgz, R),
            F0.h(F0.i2(chzb), F0.a(chgz, afv, au)),
            F0.h(F0.i2(chzb), F0.h(F0.inv(natv), F0.i2(au))),
            F0.h(F0.i2(chzb), F0.ai(bv, chya, au)),
            F0.a(chzb, bv, F0.h1(chya, au)))
        comp[(gi, fi)] = cell

    unit = {}
    for o, (x, a) in enumerate(T.obj_keys):
        oa = zero[a]
        Q = F0.h1(D.chi_comp[(B.i1(a), oa)].comp[x],
                  D.pull[oa].one[D.chi_unit[a].comp[x]])
        unit[o] = F0.vseq(
            F0.l(Q),
            F0.h(F0.inv(D.xi_id[oa][x]), F0.i2(Q)),
            F0.inv(D.gamma[oa][x]))

    K = LaxFunctor(T, F0, obj, one, two, comp, unit)

    J = embedding_J(D, z, T)
    JK = compose_lax_functors(J, K)
    IT = identity_functor(T)

    eps_comp = []
    for (x, a) in T.obj_keys:
        eps_comp.append(T.one_ix[(F0.i1(kobj(x, a)), zero[a], x)])
    eps_nat = {}
    chi0 = D.chi_unit[z]
    for mi, (u, f, y) in enumerate(T.one_keys):
        a, b = B.src1(f), B.tgt1(f)
        ob = zero[b]
        q = kobj(y, b)
        mf = one[mi]                    # K of the 1-cell, in the fiber
        c0q = chi0.comp[q]
        jkm = F0.h1(c0q, mf)
        P2y = D.pull2[B.i2(ob)].comp[y]
        Yc = D.chi_comp[(ob, e)].comp[y]
        lhs = F0.h1(Yc, F0.h1(D.pull[e].one[F0.i1(q)], jkm))
        chya = D.chi_comp[(f, zero[a])].comp[y]
        au = D.pull[zero[a]].one[u]
        cell = F0.vseq(
            F0.h(F0.i2(chya), F0.inv(F0.r(au))),
            F0.l(mf),
            F0.h(D.delta[ob][y], F0.i2(mf)),
            F0.ai(P2y, F0.h1(Yc, c0q), mf),
            F0.h(F0.i2(P2y), F0.ai(Yc, c0q, mf)),
            F0.h(F0.i2(P2y), F0.h(F0.i2(Yc), F0.l(jkm))),
            F0.h(F0.i2(P2y), F0.h(F0.i2(Yc),
                                  F0.h(F0.inv(D.pull[e].unit[q]),
                                       F0.i2(jkm)))))
        eps_nat[mi] = T.two_ix[(cell, B.i2(ob), lhs, y)]
    eps = Transformation("pseudo", JK, IT, eps_comp, eps_nat)

    KJ = compose_lax_functors(K, J)
    IF = identity_functor(F0)
    eta_comp = [chi0.comp[x] for x in F0.objects()]
    eta_nat = {}
    for u in F0.one_cells():
        x, y = F0.src1(u), F0.tgt1(u)
        c0y = chi0.comp[y]
        au1 = D.pull[e].one[u]
        echy = D.pull[e].one[c0y]
        ccy = D.chi_comp[(e, e)].comp[y]
        Zq = F0.h1(ccy, echy)
        zeta = F0.vseq(
            F0.l(Zq),
            F0.h(F0.inv(D.xi_id[e][y]), F0.i2(Zq)),
            F0.inv(D.gamma[e][y]))
        eta_nat[u] = F0.vseq(
            F0.h(F0.h(F0.i2(ccy), D.pull[e].comp[(c0y, u)]),
                 F0.i2(chi0.comp[x])),
            F0.h(F0.a(ccy, echy, au1), F0.i2(chi0.comp[x])),
            F0.h(F0.h(zeta, F0.i2(au1)), F0.i2(chi0.comp[x])),
            F0.h(F0.inv(F0.l(au1)), F0.i2(chi0.comp[x])),
            chi0.nat[u])
    eta = Transformation("pseudo", IF, KJ, eta_comp, eta_nat)

    return K, eps, eta


# -- covariant total -------------------------------------------------------

def grothendieck_oplax(G, check=True):
    """Total bicategory of a covariant oplax bidiagram.

    Objects are pairs ``(x, a)`` with x in fiber[a].  A 1-cell
    ``(u, f, x) : (x, a) -> (y, b)`` consists of a base 1-cell
    f : a -> b and a fiber 1-cell u : push[f] x -> y, where y is
    recovered as the target of u.  A 2-cell keyed ``(phi, alpha, v, x)``
    runs (u, f, x) => (v, g, x) for alpha : f => g in the base and
    phi : u => v o (push2[alpha] at x) in fiber[b], with v the fiber
    part of the target 1-cell.

    Computed as the 1- and 2-dual of the contravariant total of the
    encoded lax bidiagram; cell identifiers and provenance keys carry
    over unchanged.
    """
    from .dual import coop
    Te = grothendieck(G.enc, check=check)
    T = coop(Te)
    T.obj_keys = Te.obj_keys
    T.one_keys = Te.one_keys
    T.two_keys = Te.two_keys
    T.obj_ix = Te.obj_ix
    T.one_ix = Te.one_ix
    T.two_ix = Te.two_ix
    T.diagram = G
    T.contravariant_total = Te
    return T


def projection_oplax(T):
    """The strict projection of a covariant total onto its base."""
    G = T.diagram
    B = G.base
    obj = [a for (x, a) in T.obj_keys]
    one = [f for (u, f, y) in T.one_keys]
    two = [alpha for (phi, alpha, u, y) in T.two_keys]
    comp = {(gi, fi): B.i2(B.h1(one[gi], one[fi]))
            for (gi, fi) in T.hcomp1}
    unit = {o: B.i2(B.i1(obj[o])) for o in range(len(T.obj_keys))}
    return LaxFunctor(T, B, obj, one, two, comp, unit)

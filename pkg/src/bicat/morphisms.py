"""Lax functors, transformations, and modifications between finite
bicategories, with exhaustive validators and the standard compositions.

Directions follow the Benabou-style conventions used throughout the
constructions in this package: the comparison cells of a lax functor
point F g o F f => F(g o f), and the naturality cell of a lax
transformation points alpha_b o F f => G f o alpha_a (reversed for
oplax).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .kernel import Bicat, ValidationReport


class SourceTargetMismatch(Exception):
    pass


class KindMismatch(Exception):
    pass


@dataclass
class LaxFunctor:
    source: Bicat
    target: Bicat
    obj: list            # ObjId -> ObjId
    one: list            # OneCellId -> OneCellId
    two: list            # TwoCellId -> TwoCellId
    comp: dict           # (g, f) -> TwoCellId in target  (Fg o Ff => F(gf))
    unit: dict           # a -> TwoCellId in target       (1_{Fa} => F 1_a)

    @property
    def is_pseudo(self):
        T = self.target
        return (all(T.is_iso_two(c) for c in self.comp.values())
                and all(T.is_iso_two(c) for c in self.unit.values()))

    @property
    def is_normal(self):
        T = self.target
        return all(c == T.i2(T.i1(self.obj[a])) for a, c in self.unit.items())

    @property
    def is_strict(self):
        T = self.target
        return self.is_normal and all(
            c == T.i2(T.h1(self.one[g], self.one[f]))
            for (g, f), c in self.comp.items())

    def tables(self):
        return (self.obj, self.one, self.two,
                sorted(self.comp.items()), sorted(self.unit.items()))

    def equal(self, other):
        """On-the-nose equality of all tables."""
        return (self.source is other.source or True) and \
            self.tables() == other.tables()


def identity_functor(B: Bicat) -> LaxFunctor:
    return LaxFunctor(B, B,
                      list(B.objects()), list(B.one_cells()),
                      list(B.two_cells()),
                      {(g, f): B.i2(c) for (g, f), c in B.hcomp1.items()},
                      {a: B.i2(B.i1(a)) for a in B.objects()})


def validate_lax_functor(F: LaxFunctor) -> ValidationReport:
    rep = ValidationReport()
    S, T = F.source, F.target

    # typing of the three maps
    for f in S.one_cells():
        Ff = F.one[f]
        if (T.src1(Ff), T.tgt1(Ff)) != (F.obj[S.src1(f)], F.obj[S.tgt1(f)]):
            rep.add("functor/one_typing", (f,))
    for c in S.two_cells():
        Fc = F.two[c]
        if (T.src2(Fc), T.tgt2(Fc)) != (F.one[S.src2(c)], F.one[S.tgt2(c)]):
            rep.add("functor/two_typing", (c,))
    if rep.violations:
        return rep

    # hom-functoriality
    for f in S.one_cells():
        if F.two[S.i2(f)] != T.i2(F.one[f]):
            rep.add("functor/identities", (f,))
    for (b, a), c in S.vcomp.items():
        if F.two[c] != T.v(F.two[b], F.two[a]):
            rep.add("functor/vcomp", (b, a))

    # constraint typing
    for (g, f), c in F.comp.items():
        if T.src2(c) != T.h1(F.one[g], F.one[f]) or \
                T.tgt2(c) != F.one[S.h1(g, f)]:
            rep.add("functor/comp_typing", (g, f))
    for a, c in F.unit.items():
        if T.src2(c) != T.i1(F.obj[a]) or T.tgt2(c) != F.one[S.i1(a)]:
            rep.add("functor/unit_typing", (a,))
    for (g, f) in S.hcomp1:
        if (g, f) not in F.comp:
            rep.add("functor/comp_missing", (g, f))
    for a in S.objects():
        if a not in F.unit:
            rep.add("functor/unit_missing", (a,))
    if rep.violations:
        return rep

    # naturality of the comparison cells
    for (b, a), _ in S.hcomp2.items():
        g, f = S.src2(b), S.src2(a)
        gp, fp = S.tgt2(b), S.tgt2(a)
        lhs = T.v(F.comp[(gp, fp)], T.h(F.two[b], F.two[a]))
        rhs = T.v(F.two[S.h(b, a)], F.comp[(g, f)])
        if lhs != rhs:
            rep.add("functor/comp_natural", (b, a))

    # associativity hexagon
    for (h, g, f) in S.assoc:
        lhs = T.vseq(F.comp[(h, S.h1(g, f))],
                     T.h(T.i2(F.one[h]), F.comp[(g, f)]),
                     T.a(F.one[h], F.one[g], F.one[f]))
        rhs = T.vseq(F.two[S.a(h, g, f)],
                     F.comp[(S.h1(h, g), f)],
                     T.h(F.comp[(h, g)], T.i2(F.one[f])))
        if lhs != rhs:
            rep.add("functor/hexagon", (h, g, f))

    # unit squares
    for f in S.one_cells():
        a0, b0 = S.src1(f), S.tgt1(f)
        Ff = F.one[f]
        lhs = T.vseq(F.two[S.r(f)], F.comp[(f, S.i1(a0))],
                     T.h(T.i2(Ff), F.unit[a0]))
        if lhs != T.r(Ff):
            rep.add("functor/right_unit", (f,))
        lhs = T.vseq(F.two[S.l(f)], F.comp[(S.i1(b0), f)],
                     T.h(F.unit[b0], T.i2(Ff)))
        if lhs != T.l(Ff):
            rep.add("functor/left_unit", (f,))
    return rep


def compose_lax_functors(G: LaxFunctor, F: LaxFunctor) -> LaxFunctor:
    """The composite G o F with comparison cells G(F^) . G^."""
    if G.source is not F.target and G.source.to_json_dict() != F.target.to_json_dict():
        raise SourceTargetMismatch("middle bicategories differ")
    S, T = F.source, G.target
    comp = {}
    for (g, f), c in F.comp.items():
        comp[(g, f)] = T.v(G.two[c], G.comp[(F.one[g], F.one[f])])
    unit = {}
    for a, c in F.unit.items():
        unit[a] = T.v(G.two[c], G.unit[F.obj[a]])
    return LaxFunctor(S, T,
                      [G.obj[x] for x in F.obj],
                      [G.one[x] for x in F.one],
                      [G.two[x] for x in F.two],
                      comp, unit)


@dataclass
class Transformation:
    kind: str            # "lax" | "oplax" | "pseudo"
    F: LaxFunctor
    G: LaxFunctor
    comp: list           # a -> OneCellId in target (alpha_a : Fa -> Ga)
    nat: dict            # f -> TwoCellId in target

    def nat_inv(self, f):
        return self.F.target.inv(self.nat[f])


def identity_transformation(F: LaxFunctor) -> Transformation:
    T = F.target
    comp = [T.i1(F.obj[a]) for a in F.source.objects()]
    nat = {f: T.v(T.inv(T.r(F.one[f])), T.l(F.one[f]))
           for f in F.source.one_cells()}
    return Transformation("pseudo", F, F, comp, nat)


def validate_transformation(t: Transformation) -> ValidationReport:
    rep = ValidationReport()
    F, G = t.F, t.G
    S, T = F.source, F.target
    if G.source is not S and G.source.to_json_dict() != S.to_json_dict():
        raise SourceTargetMismatch("parallel functors required")

    for a in S.objects():
        c = t.comp[a]
        if (T.src1(c), T.tgt1(c)) != (F.obj[a], G.obj[a]):
            rep.add("transformation/component_typing", (a,))
    oplax = t.kind == "oplax"
    for f in S.one_cells():
        n = t.nat.get(f)
        a0, b0 = S.src1(f), S.tgt1(f)
        if n is None:
            rep.add("transformation/nat_missing", (f,))
            continue
        lax_src = T.hcomp1.get((t.comp[b0], F.one[f]))
        lax_tgt = T.hcomp1.get((G.one[f], t.comp[a0]))
        want = (lax_tgt, lax_src) if oplax else (lax_src, lax_tgt)
        if (T.src2(n), T.tgt2(n)) != want:
            rep.add("transformation/nat_typing", (f,))
    if rep.violations:
        return rep

    if t.kind == "pseudo":
        for f in S.one_cells():
            if not T.is_iso_two(t.nat[f]):
                rep.add("transformation/nat_not_iso", (f,))

    # naturality in 2-cells
    for s in S.two_cells():
        f, fp = S.src2(s), S.tgt2(s)
        a0, b0 = S.src1(f), S.tgt1(f)
        if oplax:
            lhs = T.v(t.nat[fp], T.h(G.two[s], T.i2(t.comp[a0])))
            rhs = T.v(T.h(T.i2(t.comp[b0]), F.two[s]), t.nat[f])
        else:
            lhs = T.v(t.nat[fp], T.h(T.i2(t.comp[b0]), F.two[s]))
            rhs = T.v(T.h(G.two[s], T.i2(t.comp[a0])), t.nat[f])
        if lhs != rhs:
            rep.add("transformation/naturality", (s,))

    # compatibility with horizontal composition
    for (g, f) in S.hcomp1:
        a0 = S.src1(f)
        b0 = S.src1(g)
        c0 = S.tgt1(g)
        if oplax:
            lhs = T.v(t.nat[S.h1(g, f)], T.h(G.comp[(g, f)], T.i2(t.comp[a0])))
            rhs = T.vseq(T.h(T.i2(t.comp[c0]), F.comp[(g, f)]),
                         T.a(t.comp[c0], F.one[g], F.one[f]),
                         T.h(t.nat[g], T.i2(F.one[f])),
                         T.inv(T.a(G.one[g], t.comp[b0], F.one[f])),
                         T.h(T.i2(G.one[g]), t.nat[f]),
                         T.a(G.one[g], G.one[f], t.comp[a0]))
        else:
            lhs = T.v(t.nat[S.h1(g, f)], T.h(T.i2(t.comp[c0]), F.comp[(g, f)]))
            rhs = T.vseq(T.h(G.comp[(g, f)], T.i2(t.comp[a0])),
                         T.inv(T.a(G.one[g], G.one[f], t.comp[a0])),
                         T.h(T.i2(G.one[g]), t.nat[f]),
                         T.a(G.one[g], t.comp[b0], F.one[f]),
                         T.h(t.nat[g], T.i2(F.one[f])),
                         T.inv(T.a(t.comp[c0], F.one[g], F.one[f])))
        if lhs != rhs:
            rep.add("transformation/hcomp", (g, f))

    # compatibility with identities
    for a0 in S.objects():
        c = t.comp[a0]
        if oplax:
            lhs = T.v(t.nat[S.i1(a0)], T.h(G.unit[a0], T.i2(c)))
            rhs = T.vseq(T.h(T.i2(c), F.unit[a0]), T.inv(T.r(c)), T.l(c))
        else:
            lhs = T.v(t.nat[S.i1(a0)], T.h(T.i2(c), F.unit[a0]))
            rhs = T.vseq(T.h(G.unit[a0], T.i2(c)), T.inv(T.l(c)), T.r(c))
        if lhs != rhs:
            rep.add("transformation/unit", (a0,))
    return rep


def whisker_functor_transformation(H: LaxFunctor, t: Transformation) -> Transformation:
    """H t : HF => HG for a homomorphism H composable after t."""
    T = H.target
    comp = [H.one[c] for c in t.comp]
    nat = {}
    for f, n in t.nat.items():
        F, G = t.F, t.G
        a0, b0 = t.F.source.src1(f), t.F.source.tgt1(f)
        if t.kind == "oplax":
            nat[f] = T.vseq(T.inv(H.comp[(t.comp[b0], F.one[f])]),
                            H.two[n],
                            H.comp[(G.one[f], t.comp[a0])])
        else:
            nat[f] = T.vseq(T.inv(H.comp[(G.one[f], t.comp[a0])]),
                            H.two[n],
                            H.comp[(t.comp[b0], F.one[f])])
    return Transformation(t.kind, compose_lax_functors(H, t.F),
                          compose_lax_functors(H, t.G), comp, nat)


def whisker_transformation_functor(t: Transformation, H: LaxFunctor) -> Transformation:
    """t H : FH => GH for a lax functor H composable before t."""
    comp = [t.comp[t_a] for t_a in H.obj]
    nat = {f: t.nat[H.one[f]] for f in H.source.one_cells()}
    return Transformation(t.kind, compose_lax_functors(t.F, H),
                          compose_lax_functors(t.G, H), comp, nat)


def vcompose_transformations(b: Transformation, a: Transformation) -> Transformation:
    """The composite b o a : F => H of a : F => G and b : G => H,
    with components b_x o a_x."""
    F, G, H = a.F, a.G, b.G
    T = F.target
    S = F.source
    comp = [T.h1(b.comp[x], a.comp[x]) for x in S.objects()]
    nat = {}
    for f in S.one_cells():
        a0, b0 = S.src1(f), S.tgt1(f)
        if a.kind == "oplax" or b.kind == "oplax":
            nat[f] = T.vseq(
                T.inv(T.a(b.comp[b0], a.comp[b0], F.one[f])),
                T.h(T.i2(b.comp[b0]), a.nat[f]),
                T.a(b.comp[b0], G.one[f], a.comp[a0]),
                T.h(b.nat[f], T.i2(a.comp[a0])),
                T.inv(T.a(H.one[f], b.comp[a0], a.comp[a0])))
        else:
            nat[f] = T.vseq(
                T.a(H.one[f], b.comp[a0], a.comp[a0]),
                T.h(b.nat[f], T.i2(a.comp[a0])),
                T.inv(T.a(b.comp[b0], G.one[f], a.comp[a0])),
                T.h(T.i2(b.comp[b0]), a.nat[f]),
                T.a(b.comp[b0], a.comp[b0], F.one[f]))
    kind = a.kind if a.kind == b.kind else (
        "oplax" if "oplax" in (a.kind, b.kind) else "lax")
    return Transformation(kind, F, H, comp, nat)


@dataclass
class Modification:
    src_t: Transformation
    tgt_t: Transformation
    comp: list           # a -> TwoCellId in target


def identity_modification(t: Transformation) -> Modification:
    T = t.F.target
    return Modification(t, t, [T.i2(c) for c in t.comp])


def validate_modification(m: Modification) -> ValidationReport:
    rep = ValidationReport()
    al, be = m.src_t, m.tgt_t
    F, G = al.F, al.G
    S, T = F.source, F.target
    if al.kind != be.kind:
        raise KindMismatch("modification between different kinds")

    # the two transformations must be genuinely parallel
    for a in S.objects():
        if F.obj[a] != be.F.obj[a] or G.obj[a] != be.G.obj[a]:
            rep.add("modification/not_parallel", (a,))
    for a in S.objects():
        c = m.comp[a]
        if (T.src2(c), T.tgt2(c)) != (al.comp[a], be.comp[a]):
            rep.add("modification/component_typing", (a,))
    if rep.violations:
        return rep

    for f in S.one_cells():
        a0, b0 = S.src1(f), S.tgt1(f)
        if al.kind == "oplax":
            lhs = T.v(T.h(m.comp[b0], T.i2(F.one[f])), al.nat[f])
            rhs = T.v(be.nat[f], T.h(T.i2(G.one[f]), m.comp[a0]))
        else:
            lhs = T.v(T.h(T.i2(G.one[f]), m.comp[a0]), al.nat[f])
            rhs = T.v(be.nat[f], T.h(m.comp[b0], T.i2(F.one[f])))
        if lhs != rhs:
            rep.add("modification/square", (f,))
    return rep


def transformations_equal(s: Transformation, t: Transformation) -> bool:
    """On-the-nose equality: same kind, components, naturality cells,
    and the same underlying functor tables on both sides."""
    def ftab(F):
        return (F.obj, F.one, F.two, sorted(F.comp.items()),
                sorted(F.unit.items()))
    return (s.kind == t.kind and list(s.comp) == list(t.comp)
            and s.nat == t.nat
            and ftab(s.F) == ftab(t.F) and ftab(s.G) == ftab(t.G))


def modifications_equal(m: Modification, n: Modification) -> bool:
    return (list(m.comp) == list(n.comp)
            and transformations_equal(m.src_t, n.src_t)
            and transformations_equal(m.tgt_t, n.tgt_t))


# ---------------------------------------------------------------------------
# Modification algebra
#
# The coherence checkers compare pasting diagrams of modifications; the
# operations below are the elementary gluing steps.  Each returns a new
# Modification between explicitly constructed composite transformations,
# so an ill-matched pasting surfaces as a typing failure (a KeyError in
# a composition table, or a source/target mismatch) rather than passing
# silently.
# ---------------------------------------------------------------------------

def vcompose_modifications(n: Modification, m: Modification) -> Modification:
    """n . m, defined when m's target transformation is n's source."""
    if not transformations_equal(n.src_t, m.tgt_t):
        raise SourceTargetMismatch("modifications not composable")
    T = m.src_t.F.target
    return Modification(m.src_t, n.tgt_t,
                        [T.v(nc, mc) for nc, mc in zip(n.comp, m.comp)])


def invert_modification(m: Modification) -> Modification:
    T = m.src_t.F.target
    return Modification(m.tgt_t, m.src_t, [T.inv(c) for c in m.comp])


def whisker_left(t: Transformation, m: Modification) -> Modification:
    """t o m : t o src => t o tgt, for t composable after the sides of m."""
    T = t.F.target
    return Modification(vcompose_transformations(t, m.src_t),
                        vcompose_transformations(t, m.tgt_t),
                        [T.h(T.i2(t.comp[x]), m.comp[x])
                         for x in m.src_t.F.source.objects()])


def whisker_right(m: Modification, t: Transformation) -> Modification:
    """m o t : src o t => tgt o t, for t composable before the sides of m."""
    T = t.F.target
    return Modification(vcompose_transformations(m.src_t, t),
                        vcompose_transformations(m.tgt_t, t),
                        [T.h(m.comp[x], T.i2(t.comp[x]))
                         for x in t.F.source.objects()])


def whisker_functor_modification(H: LaxFunctor, m: Modification) -> Modification:
    """H m, the image of m under a homomorphism H composable after it."""
    return Modification(whisker_functor_transformation(H, m.src_t),
                        whisker_functor_transformation(H, m.tgt_t),
                        [H.two[c] for c in m.comp])


def whisker_modification_functor(m: Modification, H: LaxFunctor) -> Modification:
    """m H, the restriction of m along a functor H composable before it."""
    return Modification(whisker_transformation_functor(m.src_t, H),
                        whisker_transformation_functor(m.tgt_t, H),
                        [m.comp[x] for x in H.obj])


def assoc_transformations(c: Transformation, b: Transformation,
                          a: Transformation) -> Modification:
    """The invertible rebracketing (c o b) o a => c o (b o a), with the
    target bicategory's associator as components."""
    T = a.F.target
    src = vcompose_transformations(vcompose_transformations(c, b), a)
    tgt = vcompose_transformations(c, vcompose_transformations(b, a))
    return Modification(src, tgt,
                        [T.a(c.comp[x], b.comp[x], a.comp[x])
                         for x in a.F.source.objects()])


def lunitor_transformation(t: Transformation) -> Modification:
    """1_G o t => t, components the left unitors."""
    T = t.F.target
    src = vcompose_transformations(identity_transformation(t.G), t)
    return Modification(src, t, [T.l(c) for c in t.comp])


def runitor_transformation(t: Transformation) -> Modification:
    """t o 1_F => t, components the right unitors."""
    T = t.F.target
    src = vcompose_transformations(t, identity_transformation(t.F))
    return Modification(src, t, [T.r(c) for c in t.comp])


def functor_comp_constraint(H: LaxFunctor, s: Transformation,
                            t: Transformation) -> Modification:
    """(H s) o (H t) => H (s o t), with H's comparison cells as
    components; the whisker of a composite differs from the composite
    of the whiskers by exactly these cells."""
    T = H.target
    src = vcompose_transformations(whisker_functor_transformation(H, s),
                                   whisker_functor_transformation(H, t))
    tgt = whisker_functor_transformation(H, vcompose_transformations(s, t))
    return Modification(src, tgt,
                        [H.comp[(s.comp[x], t.comp[x])]
                         for x in t.F.source.objects()])


def functor_unit_constraint(H: LaxFunctor, K: LaxFunctor) -> Modification:
    """H 1_K => 1_{HK}, with the inverses of H's unit cells as
    components; requires H to be a homomorphism."""
    T = H.target
    src = whisker_functor_transformation(H, identity_transformation(K))
    tgt = identity_transformation(compose_lax_functors(H, K))
    return Modification(src, tgt,
                        [T.inv(H.unit[K.obj[x]])
                         for x in K.source.objects()])


def compose_pseudo_transformations(b: Transformation, a: Transformation):
    """Horizontal composite b a = (b F') o (G a) : G F => G' F' of
    a : F => F' and b : G => G', together with the invertible
    interchange-style modification (b F') o (G a) => (G' a) o (b F)
    whose component at x is the naturality cell of b at a_x.
    """
    if a.kind != "pseudo" or b.kind != "pseudo":
        raise KindMismatch("horizontal composition needs pseudo inputs")
    Ga = whisker_functor_transformation(b.F, a)
    bFp = whisker_transformation_functor(b, a.G)
    comp = vcompose_transformations(bFp, Ga)

    Gpa = whisker_functor_transformation(b.G, a)
    bF = whisker_transformation_functor(b, a.F)
    other = vcompose_transformations(Gpa, bF)
    interchange = Modification(comp, other,
                               [b.nat[a.comp[x]]
                                for x in a.F.source.objects()])
    return comp, interchange

"""Small example bicategories and lax functors used by the test suites
and by the ``gen`` subcommand.

Everything produced here passes its validator; the generators cover the
qualitatively different regimes: locally discrete (posets, indiscrete
categories), strict with nontrivial 1-cell composition (group
suspensions), non-invertible 2-cells (the idempotent monoid), and a
genuinely weak instance (a suspension with a cocycle-twisted
associator).
"""

from __future__ import annotations

from itertools import permutations

from .kernel import Bicat
from .monoidal import FinCat, MonoidalCategory, locally_discrete, suspension
from .morphisms import LaxFunctor


# ---------------------------------------------------------------------------
# categories
# ---------------------------------------------------------------------------

def poset_cat(n: int) -> FinCat:
    """The chain poset 0 < 1 < ... < n as a category.

    Morphism identifiers enumerate the pairs (i, j) with i <= j in
    lexicographic order.
    """
    pairs = [(i, j) for i in range(n + 1) for j in range(i, n + 1)]
    ix = {p: k for k, p in enumerate(pairs)}
    comp = {}
    for (j1, k) in pairs:
        for (i, j2) in pairs:
            if j2 == j1:
                comp[(ix[(j1, k)], ix[(i, j2)])] = ix[(i, k)]
    return FinCat(n + 1, [i for i, _ in pairs], [j for _, j in pairs],
                  comp, [ix[(i, i)] for i in range(n + 1)])


def indiscrete_cat(n: int) -> FinCat:
    """Exactly one morphism between every ordered pair of objects."""
    pairs = [(i, j) for i in range(n) for j in range(n)]
    ix = {p: k for k, p in enumerate(pairs)}
    comp = {}
    for (j1, k) in pairs:
        for (i, j2) in pairs:
            if j2 == j1:
                comp[(ix[(j1, k)], ix[(i, j2)])] = ix[(i, k)]
    return FinCat(n, [i for i, _ in pairs], [j for _, j in pairs],
                  comp, [ix[(i, i)] for i in range(n)])


# ---------------------------------------------------------------------------
# bicategories
# ---------------------------------------------------------------------------

def poset(n: int) -> Bicat:
    return locally_discrete(poset_cat(n))


def indiscrete(n: int) -> Bicat:
    return locally_discrete(indiscrete_cat(n))


def group_suspension(elements, mult, unit) -> Bicat:
    """One-object strict bicategory on a finite group's multiplication
    table; 1-cells are the group elements, 2-cells are identities."""
    n = len(elements)
    ix = {g: k for k, g in enumerate(elements)}
    h1 = {(ix[g], ix[f]): ix[mult(g, f)] for g in elements for f in elements}
    vcomp = {(c, c): c for c in range(n)}
    assoc = {(h, g, f): h1[(h1[(h, g)], f)]
             for h in range(n) for g in range(n) for f in range(n)}
    return Bicat(1, [(0, 0)] * n, [(f, f) for f in range(n)],
                 vcomp, h1, dict(h1),
                 [ix[unit]], list(range(n)), assoc,
                 [h1[(ix[unit], f)] for f in range(n)],
                 [h1[(f, ix[unit])] for f in range(n)])


def cyclic_group(n: int) -> Bicat:
    return group_suspension(list(range(n)), lambda g, f: (g + f) % n, 0)


def symmetric_group(n: int = 3) -> Bicat:
    elems = sorted(permutations(range(n)))
    mult = lambda g, f: tuple(g[f[i]] for i in range(n))
    return group_suspension(elems, mult, tuple(range(n)))


def idempotent_monoid() -> Bicat:
    """One object, one 1-cell, and the two-element monoid {1, e} with
    e.e = e as its 2-cells; e has no vertical inverse."""
    mult = lambda x, y: x | y
    vcomp = {(x, y): mult(x, y) for x in (0, 1) for y in (0, 1)}
    return Bicat(1, [(0, 0)], [(0, 0), (0, 0)],
                 vcomp, {(0, 0): 0}, dict(vcomp),
                 [0], [0], {(0, 0, 0): 0}, [0], [0])


def cyclic_monoidal(n: int) -> MonoidalCategory:
    """The discrete strict monoidal category on Z/n: objects the group
    elements, morphisms identities, tensor the addition."""
    cat = FinCat(n, list(range(n)), list(range(n)),
                 {(i, i): i for i in range(n)}, list(range(n)))
    tensor = {(x, y): (x + y) % n for x in range(n) for y in range(n)}
    assoc = {(x, y, z): (x + y + z) % n
             for x in range(n) for y in range(n) for z in range(n)}
    return MonoidalCategory(cat, tensor, dict(tensor), 0, assoc,
                            list(range(n)), list(range(n)))


def twisted_cyclic() -> MonoidalCategory:
    """The skeletal monoidal category with objects Z/2, a sign
    automorphism group at each object, and the associator twisted by the
    nontrivial 3-cocycle c(x,y,z) = xyz.  Its suspension is a genuinely
    weak one-object bicategory: the associator is not an identity and
    cannot be removed by renaming cells."""
    # morphism id = 2*object + sign_bit
    mor_src = [0, 0, 1, 1]
    comp = {}
    for x in (0, 1):
        for s in (0, 1):
            for t in (0, 1):
                comp[(2 * x + s, 2 * x + t)] = 2 * x + (s ^ t)
    cat = FinCat(2, mor_src, list(mor_src), comp, [0, 2])
    tensor_obj = {(x, y): x ^ y for x in (0, 1) for y in (0, 1)}
    tensor_mor = {}
    for x in (0, 1):
        for s in (0, 1):
            for y in (0, 1):
                for t in (0, 1):
                    tensor_mor[(2 * x + s, 2 * y + t)] = 2 * (x ^ y) + (s ^ t)
    assoc = {(x, y, z): 2 * (x ^ y ^ z) + (x & y & z)
             for x in (0, 1) for y in (0, 1) for z in (0, 1)}
    return MonoidalCategory(cat, tensor_obj, tensor_mor, 0, assoc,
                            [2 * x for x in (0, 1)], [2 * x for x in (0, 1)])


def twisted_suspension() -> Bicat:
    return suspension(twisted_cyclic())


# ---------------------------------------------------------------------------
# lax functors
# ---------------------------------------------------------------------------

def group_hom(n: int, m: int, mult: int = 0) -> LaxFunctor:
    """The strict functor of suspensions induced by the group
    homomorphism Z/n -> Z/m, j -> mult * j.  Requires mult*n = 0 (m)."""
    if (mult * n) % m != 0:
        raise ValueError("j -> %d*j is not a homomorphism Z/%d -> Z/%d"
                         % (mult, n, m))
    A, B = cyclic_group(n), cyclic_group(m)
    one = [(mult * j) % m for j in range(n)]
    return LaxFunctor(A, B, [0], one, list(one),
                      {(g, f): B.i2(B.h1(one[g], one[f]))
                       for (g, f) in A.hcomp1},
                      {0: B.i2(B.i1(0))})


def poset_inclusion(n: int, m: int) -> LaxFunctor:
    """The strict inclusion of the chain [n] into [m] (n <= m)."""
    A, B = poset(n), poset(m)
    pairs_m = [(i, j) for i in range(m + 1) for j in range(i, m + 1)]
    ix_m = {p: k for k, p in enumerate(pairs_m)}
    pairs_n = [(i, j) for i in range(n + 1) for j in range(i, n + 1)]
    one = [ix_m[p] for p in pairs_n]
    return LaxFunctor(A, B, list(range(n + 1)), one, list(one),
                      {(g, f): B.i2(B.h1(one[g], one[f]))
                       for (g, f) in A.hcomp1},
                      {a: B.i2(B.i1(a)) for a in range(n + 1)})


def corpus_bicategories():
    """The standard corpus, as (name, bicategory) pairs."""
    return [
        ("poset[1]", poset(1)),
        ("poset[2]", poset(2)),
        ("cyclic2", cyclic_group(2)),
        ("cyclic3", cyclic_group(3)),
        ("sym3", symmetric_group(3)),
        ("indiscrete2", indiscrete(2)),
        ("indiscrete3", indiscrete(3)),
        ("idempotent", idempotent_monoid()),
        ("twisted", twisted_suspension()),
    ]

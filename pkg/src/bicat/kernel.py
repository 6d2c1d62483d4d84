"""Finite bicategories as explicit cell tables.

A bicategory is stored by three index spaces (objects, 1-cells, 2-cells,
all dense integers), total composition tables, and designated constraint
cells (associator, left/right unitors).  Cell equality is identifier
equality: there is no rewriting or quotienting anywhere, so every
equation between pasting composites becomes a comparison of two ints.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field


class MalformedTable(Exception):
    """A composition table entry violates source/target typing."""


class IllTypedTerm(Exception):
    """A pasting term has a composability violation; carries the subterm."""

    def __init__(self, msg, subterm=None):
        super().__init__(msg)
        self.subterm = subterm


@dataclass
class Violation:
    axiom: str
    cells: tuple
    detail: str = ""

    def __str__(self):
        return "%s %r %s" % (self.axiom, self.cells, self.detail)


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)

    def add(self, axiom, cells, detail=""):
        self.violations.append(Violation(axiom, tuple(cells), detail))

    @property
    def ok(self):
        return not self.violations

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return "OK"
        return "\n".join(str(v) for v in self.violations)


class Bicat:
    """A finite bicategory given by total composition tables.

    ``one_src[f] / one_tgt[f]`` give the endpoints of 1-cell ``f``;
    ``two_src[c] / two_tgt[c]`` give the (parallel) boundary 1-cells of
    2-cell ``c``.  ``vcomp[(b, a)]`` is defined exactly when
    ``tgt(a) == src(b)`` and similarly for the horizontal tables.
    """

    def __init__(self, n_obj, one_cells, two_cells, vcomp, hcomp1, hcomp2,
                 id1, id2, assoc, lunit, runit):
        self.n_obj = n_obj
        self.one_src = [s for s, _ in one_cells]
        self.one_tgt = [t for _, t in one_cells]
        self.two_src = [s for s, _ in two_cells]
        self.two_tgt = [t for _, t in two_cells]
        self.vcomp = dict(vcomp)
        self.hcomp1 = dict(hcomp1)
        self.hcomp2 = dict(hcomp2)
        self.id1 = list(id1)
        self.id2 = list(id2)
        self.assoc = dict(assoc)
        self.lunit = list(lunit)
        self.runit = list(runit)
        self._inv = None

    # -- basic accessors ---------------------------------------------------

    @property
    def n_one(self):
        return len(self.one_src)

    @property
    def n_two(self):
        return len(self.two_src)

    def objects(self):
        return range(self.n_obj)

    def one_cells(self):
        return range(self.n_one)

    def two_cells(self):
        return range(self.n_two)

    def src1(self, f):
        return self.one_src[f]

    def tgt1(self, f):
        return self.one_tgt[f]

    def src2(self, c):
        return self.two_src[c]

    def tgt2(self, c):
        return self.two_tgt[c]

    # -- composition helpers (raise KeyError on non-composable input) ------

    def v(self, b, a):
        """Vertical composite b . a."""
        return self.vcomp[(b, a)]

    def h1(self, g, f):
        """Horizontal composite of 1-cells g o f."""
        return self.hcomp1[(g, f)]

    def h(self, b, a):
        """Horizontal composite of 2-cells b o a."""
        return self.hcomp2[(b, a)]

    def i1(self, a):
        return self.id1[a]

    def i2(self, f):
        return self.id2[f]

    def a(self, h, g, f):
        return self.assoc[(h, g, f)]

    def l(self, f):
        return self.lunit[f]

    def r(self, f):
        return self.runit[f]

    def vseq(self, *cells):
        """Vertical composite of a chain, rightmost applied first."""
        cells = list(cells)
        out = cells.pop()
        while cells:
            out = self.v(cells.pop(), out)
        return out

    # -- invertibility -----------------------------------------------------

    def _build_inverse_cache(self):
        inv = {}
        for (b, a), c in self.vcomp.items():
            if c == self.id2[self.two_src[a]] and self.two_src[b] == self.two_tgt[a]:
                # b . a is an identity; check the other side before recording
                other = self.vcomp.get((a, b))
                if other is not None and other == self.id2[self.two_src[b]]:
                    inv[a] = b
        self._inv = inv

    def inv(self, c):
        """Two-sided vcomp inverse of c, or raise KeyError."""
        if self._inv is None:
            self._build_inverse_cache()
        return self._inv[c]

    def is_iso_two(self, c):
        """True iff c has a two-sided vertical inverse in the table."""
        if self._inv is None:
            self._build_inverse_cache()
        return c in self._inv

    def ai(self, h, g, f):
        return self.inv(self.assoc[(h, g, f)])

    def li(self, f):
        return self.inv(self.lunit[f])

    def ri(self, f):
        return self.inv(self.runit[f])

    # -- hom enumeration ---------------------------------------------------

    def hom1(self, a, b):
        return [f for f in self.one_cells()
                if self.one_src[f] == a and self.one_tgt[f] == b]

    def hom2(self, f, g):
        return [c for c in self.two_cells()
                if self.two_src[c] == f and self.two_tgt[c] == g]

    # -- serialization -----------------------------------------------------

    def to_json_dict(self):
        return {
            "schema": "bicategory",
            "objects": self.n_obj,
            "one_cells": [[self.one_src[f], self.one_tgt[f]]
                          for f in self.one_cells()],
            "two_cells": [[self.two_src[c], self.two_tgt[c]]
                          for c in self.two_cells()],
            "vcomp": sorted([b, a, c] for (b, a), c in self.vcomp.items()),
            "hcomp1": sorted([g, f, c] for (g, f), c in self.hcomp1.items()),
            "hcomp2": sorted([b, a, c] for (b, a), c in self.hcomp2.items()),
            "id1": self.id1,
            "id2": self.id2,
            "assoc": sorted([h, g, f, c]
                            for (h, g, f), c in self.assoc.items()),
            "lunit": self.lunit,
            "runit": self.runit,
        }

    def dumps(self):
        return json.dumps(self.to_json_dict(), sort_keys=True, indent=1)

    @classmethod
    def from_json_dict(cls, d):
        return cls(
            d["objects"],
            [tuple(x) for x in d["one_cells"]],
            [tuple(x) for x in d["two_cells"]],
            {(b, a): c for b, a, c in d["vcomp"]},
            {(g, f): c for g, f, c in d["hcomp1"]},
            {(b, a): c for b, a, c in d["hcomp2"]},
            d["id1"], d["id2"],
            {(h, g, f): c for h, g, f, c in d["assoc"]},
            d["lunit"], d["runit"],
        )


# ---------------------------------------------------------------------------
# Pasting terms
# ---------------------------------------------------------------------------

# 1-cell terms

class One:
    pass


@dataclass(frozen=True)
class OGen(One):
    cell: int


@dataclass(frozen=True)
class OId(One):
    obj: int


@dataclass(frozen=True)
class OComp(One):
    g: One
    f: One


# 2-cell terms

class Two:
    pass


@dataclass(frozen=True)
class TGen(Two):
    cell: int


@dataclass(frozen=True)
class TId(Two):
    f: One


@dataclass(frozen=True)
class TV(Two):
    b: Two
    a: Two


@dataclass(frozen=True)
class TH(Two):
    b: Two
    a: Two


@dataclass(frozen=True)
class TAssoc(Two):
    h: One
    g: One
    f: One
    invert: bool = False


@dataclass(frozen=True)
class TLUnit(Two):
    f: One
    invert: bool = False


@dataclass(frozen=True)
class TRUnit(Two):
    f: One
    invert: bool = False


def eval_one(B: Bicat, t: One) -> int:
    """Evaluate a 1-cell term to a table identifier (left-normed)."""
    if isinstance(t, OGen):
        if not 0 <= t.cell < B.n_one:
            raise IllTypedTerm("unknown 1-cell %d" % t.cell, t)
        return t.cell
    if isinstance(t, OId):
        return B.id1[t.obj]
    if isinstance(t, OComp):
        g = eval_one(B, t.g)
        f = eval_one(B, t.f)
        if B.tgt1(f) != B.src1(g):
            raise IllTypedTerm("1-cells not composable", t)
        return B.h1(g, f)
    raise IllTypedTerm("not a 1-cell term", t)


def eval_two(B: Bicat, t: Two) -> int:
    """Evaluate a 2-cell pasting term to a table identifier.

    Evaluation is innermost-first and left-normed; the result does not
    depend on the association of the vertical spine (table vcomp is
    associative on a valid bicategory).
    """
    if isinstance(t, TGen):
        if not 0 <= t.cell < B.n_two:
            raise IllTypedTerm("unknown 2-cell %d" % t.cell, t)
        return t.cell
    if isinstance(t, TId):
        return B.id2[eval_one(B, t.f)]
    if isinstance(t, TV):
        b = eval_two(B, t.b)
        a = eval_two(B, t.a)
        if B.tgt2(a) != B.src2(b):
            raise IllTypedTerm("2-cells not vertically composable", t)
        return B.v(b, a)
    if isinstance(t, TH):
        b = eval_two(B, t.b)
        a = eval_two(B, t.a)
        if B.tgt1(B.src2(a)) != B.src1(B.src2(b)):
            raise IllTypedTerm("2-cells not horizontally composable", t)
        return B.h(b, a)
    if isinstance(t, TAssoc):
        h = eval_one(B, t.h)
        g = eval_one(B, t.g)
        f = eval_one(B, t.f)
        try:
            c = B.a(h, g, f)
        except KeyError:
            raise IllTypedTerm("1-cells not composable for assoc", t)
        return B.inv(c) if t.invert else c
    if isinstance(t, TLUnit):
        f = eval_one(B, t.f)
        c = B.l(f)
        return B.inv(c) if t.invert else c
    if isinstance(t, TRUnit):
        f = eval_one(B, t.f)
        c = B.r(f)
        return B.inv(c) if t.invert else c
    raise IllTypedTerm("not a 2-cell term", t)


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

def _check_tables(B: Bicat, rep: ValidationReport):
    """Typing and totality of every table; reported as MalformedTable-level
    violations before any axiom is attempted."""
    for f in B.one_cells():
        if not (0 <= B.one_src[f] < B.n_obj and 0 <= B.one_tgt[f] < B.n_obj):
            rep.add("malformed/one_cell", (f,), "endpoint out of range")
    for c in B.two_cells():
        s, t = B.two_src[c], B.two_tgt[c]
        if not (0 <= s < B.n_one and 0 <= t < B.n_one):
            rep.add("malformed/two_cell", (c,), "boundary out of range")
        elif (B.one_src[s], B.one_tgt[s]) != (B.one_src[t], B.one_tgt[t]):
            rep.add("malformed/two_cell", (c,), "boundary 1-cells not parallel")
    if rep.violations:
        return

    for a in B.objects():
        f = B.id1[a]
        if B.one_src[f] != a or B.one_tgt[f] != a:
            rep.add("malformed/id1", (a,), "identity 1-cell not an endocell")
    for f in B.one_cells():
        c = B.id2[f]
        if B.two_src[c] != f or B.two_tgt[c] != f:
            rep.add("malformed/id2", (f,), "identity 2-cell boundary mismatch")

    # vcomp totality + typing
    for b in B.two_cells():
        for a in B.two_cells():
            if B.two_tgt[a] == B.two_src[b]:
                c = B.vcomp.get((b, a))
                if c is None:
                    rep.add("malformed/vcomp", (b, a), "missing entry")
                elif B.two_src[c] != B.two_src[a] or B.two_tgt[c] != B.two_tgt[b]:
                    rep.add("malformed/vcomp", (b, a), "boundary mismatch")
    # hcomp1 totality + typing
    for g in B.one_cells():
        for f in B.one_cells():
            if B.one_tgt[f] == B.one_src[g]:
                c = B.hcomp1.get((g, f))
                if c is None:
                    rep.add("malformed/hcomp1", (g, f), "missing entry")
                elif B.one_src[c] != B.one_src[f] or B.one_tgt[c] != B.one_tgt[g]:
                    rep.add("malformed/hcomp1", (g, f), "endpoint mismatch")
    # hcomp2 totality + typing
    for b in B.two_cells():
        for a in B.two_cells():
            if B.one_tgt[B.two_src[a]] == B.one_src[B.two_src[b]]:
                c = B.hcomp2.get((b, a))
                if c is None:
                    rep.add("malformed/hcomp2", (b, a), "missing entry")
                    continue
                s = B.hcomp1.get((B.two_src[b], B.two_src[a]))
                t = B.hcomp1.get((B.two_tgt[b], B.two_tgt[a]))
                if B.two_src[c] != s or B.two_tgt[c] != t:
                    rep.add("malformed/hcomp2", (b, a), "boundary mismatch")
    # constraint designations
    for (h, g, f), c in sorted(B.assoc.items()):
        lhs = B.hcomp1.get((B.hcomp1.get((h, g), -1), f), -1)
        rhs = B.hcomp1.get((h, B.hcomp1.get((g, f), -1)), -1)
        if B.two_src[c] != lhs or B.two_tgt[c] != rhs:
            rep.add("malformed/assoc", (h, g, f), "boundary mismatch")
    for f in B.one_cells():
        c = B.lunit[f]
        lf = B.hcomp1.get((B.id1[B.one_tgt[f]], f))
        if B.two_src[c] != lf or B.two_tgt[c] != f:
            rep.add("malformed/lunit", (f,), "boundary mismatch")
        c = B.runit[f]
        rf = B.hcomp1.get((f, B.id1[B.one_src[f]]))
        if B.two_src[c] != rf or B.two_tgt[c] != f:
            rep.add("malformed/runit", (f,), "boundary mismatch")
    # assoc totality
    for h in B.one_cells():
        for g in B.one_cells():
            if B.one_tgt[g] != B.one_src[h]:
                continue
            for f in B.one_cells():
                if B.one_tgt[f] != B.one_src[g]:
                    continue
                if (h, g, f) not in B.assoc:
                    rep.add("malformed/assoc", (h, g, f), "missing entry")


def validate_bicategory(B: Bicat) -> ValidationReport:
    """Exhaustively check every bicategory axiom on the tables.

    Also checks, as derived identities, the two unit triangles that
    follow from the axioms and the equality of the unitors on identity
    1-cells; these are theorems, so a failure here flags an
    inconsistent table even when the primary axioms hold.
    """
    rep = ValidationReport()
    _check_tables(B, rep)
    if rep.violations:
        raise MalformedTable(str(rep))

    two = list(B.two_cells())
    one = list(B.one_cells())

    # hom-categories: vcomp unit laws and associativity
    for a in two:
        if B.v(a, B.i2(B.src2(a))) != a:
            rep.add("hom/unit_right", (a,))
        if B.v(B.i2(B.tgt2(a)), a) != a:
            rep.add("hom/unit_left", (a,))
    comp_pairs = [(b, a) for (b, a) in B.vcomp]
    for (b, a) in comp_pairs:
        for c in two:
            if B.src2(c) == B.tgt2(b):
                if B.v(c, B.v(b, a)) != B.v(B.v(c, b), a):
                    rep.add("hom/assoc", (c, b, a))

    # horizontal functoriality
    for g in one:
        for f in one:
            if B.tgt1(f) == B.src1(g):
                if B.h(B.i2(g), B.i2(f)) != B.i2(B.h1(g, f)):
                    rep.add("interchange/identities", (g, f))
    hpairs = [(b, a) for (b, a) in B.hcomp2]
    for (b, a) in hpairs:
        for bp in two:
            if B.src2(bp) != B.tgt2(b):
                continue
            for ap in two:
                if B.src2(ap) != B.tgt2(a):
                    continue
                if B.h(B.v(bp, b), B.v(ap, a)) != B.v(B.h(bp, ap), B.h(b, a)):
                    rep.add("interchange", (bp, b, ap, a))

    # invertibility of constraints
    for (h, g, f), c in sorted(B.assoc.items()):
        if not B.is_iso_two(c):
            rep.add("invertible/assoc", (h, g, f))
    for f in one:
        if not B.is_iso_two(B.l(f)):
            rep.add("invertible/lunit", (f,))
        if not B.is_iso_two(B.r(f)):
            rep.add("invertible/runit", (f,))
    if rep.violations:
        # naturality/pentagon need inverses; stop before uncatchable KeyErrors
        return rep

    # naturality of the associator, one slot at a time (joint naturality
    # follows from the three single-slot cases plus interchange)
    for (h, g, f) in B.assoc:
        for s in two:
            if B.src2(s) == h:
                hp = B.tgt2(s)
                lhs = B.v(B.a(hp, g, f), B.h(B.h(s, B.i2(g)), B.i2(f)))
                rhs = B.v(B.h(s, B.i2(B.h1(g, f))), B.a(h, g, f))
                if lhs != rhs:
                    rep.add("natural/assoc", (s, g, f), "outer slot")
            if B.src2(s) == g:
                gp = B.tgt2(s)
                lhs = B.v(B.a(h, gp, f), B.h(B.h(B.i2(h), s), B.i2(f)))
                rhs = B.v(B.h(B.i2(h), B.h(s, B.i2(f))), B.a(h, g, f))
                if lhs != rhs:
                    rep.add("natural/assoc", (h, s, f), "middle slot")
            if B.src2(s) == f:
                fp = B.tgt2(s)
                lhs = B.v(B.a(h, g, fp), B.h(B.i2(B.h1(h, g)), s))
                rhs = B.v(B.h(B.i2(h), B.h(B.i2(g), s)), B.a(h, g, f))
                if lhs != rhs:
                    rep.add("natural/assoc", (h, g, s), "inner slot")

    # naturality of the unitors
    for s in two:
        f, fp = B.src2(s), B.tgt2(s)
        b = B.tgt1(f)
        a0 = B.src1(f)
        if B.v(B.l(fp), B.h(B.i2(B.i1(b)), s)) != B.v(s, B.l(f)):
            rep.add("natural/lunit", (s,))
        if B.v(B.r(fp), B.h(s, B.i2(B.i1(a0)))) != B.v(s, B.r(f)):
            rep.add("natural/runit", (s,))

    # pentagon
    for (k, h, g) in B.assoc:
        for f in one:
            if B.tgt1(f) != B.src1(g):
                continue
            gf = B.h1(g, f)
            hg = B.h1(h, g)
            lhs = B.v(B.a(k, h, gf), B.a(B.h1(k, h), g, f))
            rhs = B.vseq(B.h(B.i2(k), B.a(h, g, f)),
                         B.a(k, hg, f),
                         B.h(B.a(k, h, g), B.i2(f)))
            if lhs != rhs:
                rep.add("pentagon", (k, h, g, f))

    # triangle
    for g in one:
        for f in one:
            if B.tgt1(f) != B.src1(g):
                continue
            b = B.tgt1(f)
            lhs = B.v(B.h(B.i2(g), B.l(f)), B.a(g, B.i1(b), f))
            rhs = B.h(B.r(g), B.i2(f))
            if lhs != rhs:
                rep.add("triangle", (g, f))

    # derived identities: the two unit triangles and r = l on identities.
    # These follow from the axioms; they are re-checked, not assumed.
    for g in one:
        for f in one:
            if B.tgt1(f) != B.src1(g):
                continue
            c = B.tgt1(g)
            gf = B.h1(g, f)
            if B.v(B.l(gf), B.a(B.i1(c), g, f)) != B.h(B.l(g), B.i2(f)):
                rep.add("derived/left_triangle", (g, f))
            if B.v(B.h(B.i2(g), B.r(f)), B.a(g, f, B.i1(B.src1(f)))) != B.r(gf):
                rep.add("derived/right_triangle", (g, f))
    for a0 in B.objects():
        if B.r(B.i1(a0)) != B.l(B.i1(a0)):
            rep.add("derived/unit_unitors", (a0,))

    return rep


# ---------------------------------------------------------------------------
# Builder: dense identifiers from symbolic cell keys, with provenance
# ---------------------------------------------------------------------------

class BicatBuilder:
    """Assemble a Bicat from hashable cell keys.

    Constructions such as the Grothendieck bicategory produce cells that
    are tuples of constituents; the builder assigns dense identifiers,
    keeps the key -> id maps (provenance) in both directions, and closes
    the tables by evaluating caller-supplied composition rules on keys.
    """

    def __init__(self):
        self.obj_keys = []
        self.obj_ix = {}
        self.one_keys = []
        self.one_ix = {}
        self.one_ends = []
        self.two_keys = []
        self.two_ix = {}
        self.two_ends = []

    def add_obj(self, key):
        if key in self.obj_ix:
            raise ValueError("duplicate object key %r" % (key,))
        self.obj_ix[key] = len(self.obj_keys)
        self.obj_keys.append(key)

    def add_one(self, key, src_key, tgt_key):
        if key in self.one_ix:
            raise ValueError("duplicate 1-cell key %r" % (key,))
        self.one_ix[key] = len(self.one_keys)
        self.one_keys.append(key)
        self.one_ends.append((self.obj_ix[src_key], self.obj_ix[tgt_key]))

    def add_two(self, key, src_key, tgt_key):
        if key in self.two_ix:
            raise ValueError("duplicate 2-cell key %r" % (key,))
        self.two_ix[key] = len(self.two_keys)
        self.two_keys.append(key)
        self.two_ends.append((self.one_ix[src_key], self.one_ix[tgt_key]))

    def build(self, vcomp, hcomp1, hcomp2, id1, id2, assoc, lunit, runit):
        """Close all tables; the rule arguments are functions on keys."""
        one_by_obj = {}
        for k in self.one_keys:
            i = self.one_ix[k]
            one_by_obj.setdefault(self.one_ends[i], []).append(k)

        vt = {}
        for bk in self.two_keys:
            bi = self.two_ix[bk]
            for ak in self.two_keys:
                ai = self.two_ix[ak]
                if self.two_ends[ai][1] == self.two_ends[bi][0]:
                    vt[(bi, ai)] = self.two_ix[vcomp(bk, ak)]
        h1t = {}
        for gk in self.one_keys:
            gi = self.one_ix[gk]
            for fk in self.one_keys:
                fi = self.one_ix[fk]
                if self.one_ends[fi][1] == self.one_ends[gi][0]:
                    h1t[(gi, fi)] = self.one_ix[hcomp1(gk, fk)]
        h2t = {}
        for bk in self.two_keys:
            bi = self.two_ix[bk]
            for ak in self.two_keys:
                ai = self.two_ix[ak]
                fa = self.two_ends[ai][0]
                fb = self.two_ends[bi][0]
                if self.one_ends[fa][1] == self.one_ends[fb][0]:
                    h2t[(bi, ai)] = self.two_ix[hcomp2(bk, ak)]
        id1t = [self.one_ix[id1(k)] for k in self.obj_keys]
        id2t = [self.two_ix[id2(k)] for k in self.one_keys]
        asst = {}
        for hk in self.one_keys:
            hi = self.one_ix[hk]
            for gk in self.one_keys:
                gi = self.one_ix[gk]
                if self.one_ends[gi][1] != self.one_ends[hi][0]:
                    continue
                for fk in self.one_keys:
                    fi = self.one_ix[fk]
                    if self.one_ends[fi][1] != self.one_ends[gi][0]:
                        continue
                    asst[(hi, gi, fi)] = self.two_ix[assoc(hk, gk, fk)]
        lt = [self.two_ix[lunit(k)] for k in self.one_keys]
        rt = [self.two_ix[runit(k)] for k in self.one_keys]
        return Bicat(len(self.obj_keys),
                     list(self.one_ends), list(self.two_ends),
                     vt, h1t, h2t, id1t, id2t, asst, lt, rt)

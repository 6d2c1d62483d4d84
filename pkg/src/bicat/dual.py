"""Dualities of finite bicategories.

Both operations keep every cell identifier and only rewire the
tables, so data indexed by cells of a bicategory remains valid for
its duals without translation.
"""

from .kernel import Bicat


def op_one(B: Bicat) -> Bicat:
    """Reverse the 1-cells (and with them the horizontal order)."""
    return Bicat(
        B.n_obj,
        list(zip(B.one_tgt, B.one_src)),
        list(zip(B.two_src, B.two_tgt)),
        dict(B.vcomp),
        {(g, f): c for (f, g), c in B.hcomp1.items()},
        {(b, a): c for (a, b), c in B.hcomp2.items()},
        list(B.id1),
        list(B.id2),
        {(h, g, f): B.inv(B.assoc[(f, g, h)])
         for (f, g, h) in B.assoc},
        [B.runit[f] for f in B.one_cells()],
        [B.lunit[f] for f in B.one_cells()])


def coop(B: Bicat) -> Bicat:
    """Reverse both the 1-cells and the 2-cells."""
    return Bicat(
        B.n_obj,
        list(zip(B.one_tgt, B.one_src)),
        list(zip(B.two_tgt, B.two_src)),
        {(b, a): c for (a, b), c in B.vcomp.items()},
        {(g, f): c for (f, g), c in B.hcomp1.items()},
        {(b, a): c for (a, b), c in B.hcomp2.items()},
        list(B.id1),
        list(B.id2),
        {(h, g, f): B.assoc[(f, g, h)] for (f, g, h) in B.assoc},
        [B.inv(B.runit[f]) for f in B.one_cells()],
        [B.inv(B.lunit[f]) for f in B.one_cells()])

"""Command-line interface: file-format handling, the example
generators, and the theorem-level check suite.

Exit codes: 0 success, 1 a check failed, 2 malformed input.  All
enumerations are emitted in sorted identifier order so runs are
byte-reproducible.
"""

from __future__ import annotations

import json
import os
import random
import sys

import click

from .bidiagram import (ComponentInvalid, IncoherentInput, LaxBidiagram,
                        OplaxBidiagram, check_coherence, check_gdo,
                        constant_bidiagram, hom_bidiagram,
                        validate_bidiagram_data)
from .fiber import (FiberMismatch, comma, comma_contraction,
                    comparison_diagram_checks, embedding_oplax,
                    fiber_bidiagram, fiber_isomorphism, generic_fiber,
                    homotopy_fiber, pushforward, total_Q_L)
from .grothendieck import (grothendieck, grothendieck_oplax, induced_functor,
                           mediating, projection, projection_oplax)
from .kernel import Bicat, MalformedTable, validate_bicategory
from .monoidal import (FinCat, locally_discrete, monoidal_fiber, suspension)
from .morphisms import (LaxFunctor, Modification, Transformation,
                        compose_lax_functors, compose_pseudo_transformations,
                        identity_functor, identity_transformation,
                        validate_lax_functor, validate_modification,
                        validate_transformation)
from .nerve import (TruncatedSimplicialSet, GeometricSimplex,
                    TruncationTooLarge, homology, nerve, pi0)
from . import corpus


# ---------------------------------------------------------------------------
# JSON formats
# ---------------------------------------------------------------------------
#
# Beyond the "bicategory" and "bidiagram" schemas defined next to their
# types, the CLI reads and writes:
#
#   laxfunctor      {"schema": "laxfunctor", "source": <bicategory or
#                    path>, "target": ..., "obj", "one", "two",
#                    "comp": [[g, f, c]...], "unit": [[a, c]...]}
#   transformation  {"schema": "transformation", "kind", "F":
#                    <laxfunctor>, "G": <laxfunctor>, "comp",
#                    "nat": [[f, c]...]}
#   modification    {"schema": "modification", "s": <transformation>,
#                    "t": <transformation>, "comp"}
#   oplax-bidiagram like "bidiagram" with push/push2 in place of
#                    pull/pull2 (covariant variance)
#   sset            truncated simplicial set with its normalized chain
#                    complex as integer matrix triples
#
# Wherever a sub-document is expected, a string is read as a path to a
# JSON file (relative to the referring file).


class MalformedInput(Exception):
    pass


def _resolve(doc, basedir):
    if isinstance(doc, str):
        path = os.path.join(basedir, doc)
        try:
            with open(path) as fh:
                return json.load(fh), os.path.dirname(path)
        except (OSError, json.JSONDecodeError) as e:
            raise MalformedInput("%s: %s" % (path, e))
    return doc, basedir


def functor_to_json(F: LaxFunctor) -> dict:
    return {"schema": "laxfunctor",
            "source": F.source.to_json_dict(),
            "target": F.target.to_json_dict(),
            "obj": F.obj, "one": F.one, "two": F.two,
            "comp": sorted([g, f, c] for (g, f), c in F.comp.items()),
            "unit": sorted([a, c] for a, c in F.unit.items())}


def functor_from_json(d, basedir=".") -> LaxFunctor:
    src, sdir = _resolve(d["source"], basedir)
    tgt, tdir = _resolve(d["target"], basedir)
    return LaxFunctor(Bicat.from_json_dict(src), Bicat.from_json_dict(tgt),
                      d["obj"], d["one"], d["two"],
                      {(g, f): c for g, f, c in d["comp"]},
                      {a: c for a, c in d["unit"]})


def transformation_to_json(t: Transformation) -> dict:
    return {"schema": "transformation", "kind": t.kind,
            "F": functor_to_json(t.F), "G": functor_to_json(t.G),
            "comp": t.comp,
            "nat": sorted([f, c] for f, c in t.nat.items())}


def transformation_from_json(d, basedir=".") -> Transformation:
    F, _ = _resolve(d["F"], basedir)
    G, _ = _resolve(d["G"], basedir)
    return Transformation(d["kind"],
                          functor_from_json(F, basedir),
                          functor_from_json(G, basedir),
                          d["comp"], {f: c for f, c in d["nat"]})


def modification_to_json(m: Modification) -> dict:
    return {"schema": "modification",
            "s": transformation_to_json(m.src_t),
            "t": transformation_to_json(m.tgt_t),
            "comp": m.comp}


def modification_from_json(d, basedir=".") -> Modification:
    s, _ = _resolve(d["s"], basedir)
    t, _ = _resolve(d["t"], basedir)
    return Modification(transformation_from_json(s, basedir),
                        transformation_from_json(t, basedir), d["comp"])


def oplax_to_json(G: OplaxBidiagram) -> dict:
    def func(F):
        return {"obj": F.obj, "one": F.one, "two": F.two,
                "comp": sorted([g, f, c] for (g, f), c in F.comp.items()),
                "unit": sorted([a, c] for a, c in F.unit.items())}

    def trans(t):
        return {"kind": t.kind, "comp": t.comp,
                "nat": sorted([f, c] for f, c in t.nat.items())}

    return {"schema": "oplax-bidiagram",
            "base": G.base.to_json_dict(),
            "fibers": [F.to_json_dict() for F in G.fiber],
            "push": [[f, func(G.push[f])] for f in sorted(G.push)],
            "push2": [[c, trans(G.push2[c])] for c in sorted(G.push2)],
            "chi_comp": [[g, f, trans(t)]
                         for (g, f), t in sorted(G.chi_comp.items())],
            "chi_unit": [trans(t) for t in G.chi_unit]}


def oplax_from_json(d) -> OplaxBidiagram:
    base = Bicat.from_json_dict(d["base"])
    fibers = [Bicat.from_json_dict(x) for x in d["fibers"]]

    def func(fd, src, tgt):
        return LaxFunctor(src, tgt, fd["obj"], fd["one"], fd["two"],
                          {(g, f): c for g, f, c in fd["comp"]},
                          {a: c for a, c in fd["unit"]})

    push = {f: func(fd, fibers[base.src1(f)], fibers[base.tgt1(f)])
            for f, fd in d["push"]}

    def trans(td, F, G):
        return Transformation(td["kind"], F, G, td["comp"],
                              {f: c for f, c in td["nat"]})

    push2 = {c: trans(td, push[base.src2(c)], push[base.tgt2(c)])
             for c, td in d["push2"]}
    chi_comp = {(g, f): trans(td, push[base.h1(g, f)],
                              compose_lax_functors(push[g], push[f]))
                for g, f, td in d["chi_comp"]}
    chi_unit = [trans(td, push[base.i1(b)], identity_functor(fibers[b]))
                for b, td in enumerate(d["chi_unit"])]
    return OplaxBidiagram(base, fibers, push, push2, chi_comp, chi_unit)


def sset_to_json(X: TruncatedSimplicialSet) -> dict:
    nd = [X.nondegenerate(n) for n in range(X.N + 1)]
    pos = [{s: r for r, s in enumerate(col)} for col in nd]
    triples = []
    for n in range(1, X.N + 1):
        for c, s in enumerate(nd[n]):
            for i in range(n + 1):
                r = pos[n - 1].get(X.face(n, i, s))
                if r is not None:
                    triples.append([n, r, c, (-1) ** i])
    return {"schema": "sset", "N": X.N,
            "simplices": [[[list(z.obj), list(z.one), list(z.comp),
                            list(z.unit)] for z in dim]
                          for dim in X.simplices],
            "nondegenerate_counts": X.nondegenerate_counts(),
            "chain_complex": {"ranks": [len(col) for col in nd],
                              "boundary_triples": triples}}


def sset_from_json(d) -> TruncatedSimplicialSet:
    sims = [[GeometricSimplex(n, tuple(obj), tuple(one), tuple(comp),
                              tuple(unit))
             for obj, one, comp, unit in dim]
            for n, dim in enumerate(d["simplices"])]
    return TruncatedSimplicialSet(d["N"], sims)


def _load(path):
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        click.echo("malformed input: %s" % e, err=True)
        sys.exit(2)
    if not isinstance(doc, dict) or "schema" not in doc:
        click.echo("malformed input: %s: missing schema tag" % path,
                   err=True)
        sys.exit(2)
    return doc


def _build(path, want=None):
    doc = _load(path)
    basedir = os.path.dirname(path)
    schema = doc["schema"]
    if want is not None and schema not in want:
        click.echo("malformed input: %s: expected schema %s, got %s"
                   % (path, " or ".join(want), schema), err=True)
        sys.exit(2)
    builders = {
        "bicategory": lambda: Bicat.from_json_dict(doc),
        "laxfunctor": lambda: functor_from_json(doc, basedir),
        "transformation": lambda: transformation_from_json(doc, basedir),
        "modification": lambda: modification_from_json(doc, basedir),
        "bidiagram": lambda: LaxBidiagram.from_json_dict(doc),
        "oplax-bidiagram": lambda: oplax_from_json(doc),
        "sset": lambda: sset_from_json(doc),
    }
    if schema not in builders:
        click.echo("malformed input: %s: unknown schema %r" % (path, schema),
                   err=True)
        sys.exit(2)
    try:
        return schema, builders[schema]()
    except (KeyError, IndexError, TypeError, ValueError, MalformedTable,
            MalformedInput, ComponentInvalid, IncoherentInput) as e:
        click.echo("malformed input: %s: %s" % (path, e), err=True)
        sys.exit(2)


def _write(path, doc):
    with open(path, "w") as fh:
        json.dump(doc, fh, sort_keys=True, indent=1)
        fh.write("\n")


def _report(rep, label):
    if rep.ok:
        click.echo("OK: %s" % label)
        return True
    for v in rep.violations:
        click.echo("FAIL %s: %s @ %s%s"
                   % (label, v.axiom, v.cells,
                      " (%s)" % v.detail if v.detail else ""))
    return False


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

@click.group()
def main():
    """Finite bicategories: validation, Grothendieck totals, homotopy
    fibers, nerves, and homology."""


@main.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
def validate(file):
    """Validate a JSON artifact, dispatching on its schema tag."""
    schema, obj = _build(file)
    validators = {
        "bicategory": validate_bicategory,
        "laxfunctor": validate_lax_functor,
        "transformation": validate_transformation,
        "modification": validate_modification,
        "bidiagram": validate_bidiagram_data,
        "oplax-bidiagram": lambda G: validate_bidiagram_data(G.enc),
    }
    if schema not in validators:
        click.echo("malformed input: no validator for schema %r" % schema,
                   err=True)
        sys.exit(2)
    if not _report(validators[schema](obj), "%s %s" % (schema, file)):
        sys.exit(1)


@main.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
def coherence(file):
    """Check the coherence conditions of a bidiagram."""
    schema, D = _build(file, want=("bidiagram", "oplax-bidiagram"))
    data = D.enc if schema == "oplax-bidiagram" else D
    ok = _report(validate_bidiagram_data(data), "data %s" % file)
    if ok:
        ok = _report(check_coherence(D), "coherence %s" % file)
    if not ok:
        sys.exit(1)


@main.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--oplax", is_flag=True,
              help="Treat the input as a covariant (oplax) bidiagram.")
@click.option("-o", "out", type=click.Path(dir_okay=False),
              help="Write the total bicategory JSON here; a provenance "
                   "sidecar goes next to it.")
def groth(file, oplax, out):
    """Assemble the Grothendieck total of a bidiagram."""
    want = ("oplax-bidiagram",) if oplax else ("bidiagram",)
    _, D = _build(file, want=want)
    try:
        T = grothendieck_oplax(D) if oplax else grothendieck(D)
    except (IncoherentInput, ComponentInvalid) as e:
        click.echo("FAIL %s: %s" % (file, e), err=True)
        sys.exit(1)
    if not _report(validate_bicategory(T), "total of %s" % file):
        sys.exit(1)
    click.echo("total: %d objects, %d 1-cells, %d 2-cells"
               % (T.n_obj, len(T.one_cells()), len(T.two_cells())))
    if out:
        _write(out, T.to_json_dict())
        stem, _ext = os.path.splitext(out)
        _write(stem + ".provenance.json", {
            "schema": "groth-provenance",
            "objects": [list(k) for k in T.obj_keys],
            "one_cells": [list(k) for k in T.one_keys],
            "two_cells": [list(k) for k in T.two_keys],
        })
        click.echo("wrote %s and %s" % (out, stem + ".provenance.json"))


@main.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--over", type=int, required=True,
              help="Target object the fiber sits over.")
@click.option("--direct", "route", flag_value="direct", default=True,
              help="Explicit cell-table construction (default).")
@click.option("--generic", "route", flag_value="generic",
              help="Route through the Grothendieck total.")
@click.option("--both", "route", flag_value="both",
              help="Build both and check the provenance isomorphism.")
@click.option("-o", "out", type=click.Path(dir_okay=False))
def fiber(file, over, route, out):
    """The homotopy fiber of a lax functor over an object."""
    _, F = _build(file, want=("laxfunctor",))
    if over not in F.target.objects():
        click.echo("malformed input: no object %d in the target" % over,
                   err=True)
        sys.exit(2)
    if route == "both":
        try:
            T = fiber_isomorphism(F, over)[0]
        except FiberMismatch as e:
            click.echo("FAIL: routes disagree: %s" % e, err=True)
            sys.exit(1)
        click.echo("direct and generic routes isomorphic over %d" % over)
    elif route == "generic":
        T = generic_fiber(F, over)
    else:
        T = homotopy_fiber(F, over)
    if not _report(validate_bicategory(T), "fiber over %d" % over):
        sys.exit(1)
    click.echo("fiber: %d objects, %d 1-cells, %d 2-cells"
               % (T.n_obj, len(T.one_cells()), len(T.two_cells())))
    if out:
        _write(out, T.to_json_dict())
        click.echo("wrote %s" % out)


@main.command("comma")
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--over", type=int, required=True)
@click.option("-o", "out", type=click.Path(dir_okay=False))
def comma_cmd(file, over, out):
    """The comma bicategory of a bicategory over an object."""
    _, B = _build(file, want=("bicategory",))
    if over not in B.objects():
        click.echo("malformed input: no object %d" % over, err=True)
        sys.exit(2)
    T = comma(B, over)
    if not _report(validate_bicategory(T), "comma over %d" % over):
        sys.exit(1)
    click.echo("comma: %d objects, %d 1-cells, %d 2-cells"
               % (T.n_obj, len(T.one_cells()), len(T.two_cells())))
    if out:
        _write(out, T.to_json_dict())
        click.echo("wrote %s" % out)


@main.command("monoidal-fiber")
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("-o", "out", type=click.Path(dir_okay=False))
def monoidal_fiber_cmd(file, out):
    """The fiber of a monoidal functor, via the one-object suspension."""
    _, F = _build(file, want=("laxfunctor",))
    try:
        T = monoidal_fiber(F)
    except ValueError as e:
        click.echo("malformed input: %s" % e, err=True)
        sys.exit(2)
    if not _report(validate_bicategory(T), "monoidal fiber"):
        sys.exit(1)
    click.echo("fiber: %d objects, %d 1-cells, %d 2-cells"
               % (T.n_obj, len(T.one_cells()), len(T.two_cells())))
    if out:
        _write(out, T.to_json_dict())
        click.echo("wrote %s" % out)


@main.command("nerve")
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--dim", type=int, default=3, show_default=True,
              help="Truncation dimension.")
@click.option("--budget", type=int, default=2_000_000, show_default=True,
              help="Backtracking-node budget for the enumeration.")
@click.option("-o", "out", type=click.Path(dir_okay=False))
def nerve_cmd(file, dim, budget, out):
    """The geometric nerve of a bicategory, truncated at --dim."""
    _, B = _build(file, want=("bicategory",))
    try:
        X = nerve(B, N=dim, budget=budget)
    except TruncationTooLarge as e:
        click.echo("FAIL: %s" % e, err=True)
        sys.exit(1)
    click.echo("simplices per dimension: %s"
               % [len(d) for d in X.simplices])
    click.echo("nondegenerate: %s" % X.nondegenerate_counts())
    n, _reps = pi0(X)
    click.echo("pi0: %d" % n)
    if out:
        _write(out, sset_to_json(X))
        click.echo("wrote %s" % out)


@main.command("homology")
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--kmax", type=int, default=None,
              help="Top homology degree (default: truncation - 1).")
@click.option("-o", "out", type=click.Path(dir_okay=False),
              help="Write a JSON report here, plus CSV and PNG siblings.")
def homology_cmd(file, kmax, out):
    """Integral homology of a truncated simplicial set."""
    _, X = _build(file, want=("sset",))
    try:
        H = homology(X, kmax=kmax)
    except ValueError as e:
        click.echo("malformed input: %s" % e, err=True)
        sys.exit(2)
    for k in range(len(H.betti)):
        click.echo("H_%d = %s" % (k, H.group(k)))
    if out:
        doc = {"schema": "homology", "betti": H.betti,
               "torsion": H.torsion,
               "groups": [H.group(k) for k in range(len(H.betti))]}
        _write(out, doc)
        stem, _ext = os.path.splitext(out)
        with open(stem + ".csv", "w") as fh:
            fh.write("degree,betti,torsion,group\n")
            for k in range(len(H.betti)):
                fh.write("%d,%d,%s,%s\n"
                         % (k, H.betti[k],
                            ";".join(map(str, H.torsion[k])), H.group(k)))
        _betti_png(H, stem + ".png")
        click.echo("wrote %s, %s, %s"
                   % (out, stem + ".csv", stem + ".png"))


def _betti_png(H, path):
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    ks = list(range(len(H.betti)))
    fig, ax = plt.subplots(figsize=(4, 3))
    ax.bar(ks, H.betti, color="#4878b0",
           label="free rank")
    ax.bar(ks, [len(t) for t in H.torsion], bottom=H.betti,
           color="#d65f5f", label="torsion summands")
    ax.set_xticks(ks)
    ax.set_xlabel("degree")
    ax.set_ylabel("summands")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=100)
    plt.close(fig)


_GENERATORS = {
    "poset": (1, lambda n: corpus.poset(int(n))),
    "indiscrete": (1, lambda n: corpus.indiscrete(int(n))),
    "cyclic_group": (1, lambda n: corpus.cyclic_group(int(n))),
    "symmetric_group": (1, lambda n: corpus.symmetric_group(int(n))),
    "idempotent_monoid": (0, corpus.idempotent_monoid),
    "twisted_suspension": (0, corpus.twisted_suspension),
    "suspension_of": (1, lambda w: suspension(
        {"twisted": corpus.twisted_cyclic}.get(
            w, lambda: corpus.cyclic_monoidal(int(w)))())),
    "group_hom": (3, lambda n, m, mult: corpus.group_hom(
        int(n), int(m), int(mult))),
    "poset_inclusion": (2, lambda n, m: corpus.poset_inclusion(
        int(n), int(m))),
}


@main.command()
@click.argument("name")
@click.argument("params", nargs=-1)
@click.option("-o", "out", type=click.Path(dir_okay=False))
def gen(name, params, out):
    """Emit an example artifact as JSON.

    NAME is one of: poset, indiscrete, cyclic_group, symmetric_group,
    idempotent_monoid, twisted_suspension, suspension_of, group_hom,
    poset_inclusion.
    """
    if name not in _GENERATORS:
        click.echo("malformed input: unknown generator %r" % name, err=True)
        sys.exit(2)
    arity, make = _GENERATORS[name]
    if len(params) != arity:
        click.echo("malformed input: %s takes %d parameter(s)"
                   % (name, arity), err=True)
        sys.exit(2)
    try:
        thing = make(*params)
    except ValueError as e:
        click.echo("malformed input: %s" % e, err=True)
        sys.exit(2)
    doc = (functor_to_json(thing) if isinstance(thing, LaxFunctor)
           else thing.to_json_dict())
    text = json.dumps(doc, sort_keys=True, indent=1) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
        click.echo("wrote %s" % out)
    else:
        click.echo(text, nl=False)


# ---------------------------------------------------------------------------
# theorem-level checks
# ---------------------------------------------------------------------------

def _hom_category(B, a, b):
    """The hom-category B(a, b) as a finite category."""
    ones = B.hom1(a, b)
    oix = {f: i for i, f in enumerate(ones)}
    twos = [c for c in B.two_cells() if B.src2(c) in oix]
    tix = {c: i for i, c in enumerate(twos)}
    return FinCat(len(ones),
                  [oix[B.src2(c)] for c in twos],
                  [oix[B.tgt2(c)] for c in twos],
                  {(tix[d], tix[c]): tix[B.v(d, c)]
                   for d in twos for c in twos
                   if B.tgt2(c) == B.src2(d)},
                  [tix[B.i2(f)] for f in ones])


def _check_simplicial_identities(X):
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
                        want = X.degeneracy(n - 1, j - 1, X.face(n, i, s))
                    elif i in (j, j + 1):
                        want = s
                    else:
                        want = X.degeneracy(n - 1, j, X.face(n, i - 1, s))
                    assert X.face(n + 1, i, t) == want
    for n in range(X.N - 1):
        for s in range(len(X.simplices[n])):
            for i in range(n + 1):
                for j in range(i, n + 1):
                    assert X.degeneracy(n + 1, i, X.degeneracy(n, j, s)) \
                        == X.degeneracy(n + 1, j + 1, X.degeneracy(n, i, s))


def _corpus():
    return dict(corpus.corpus_bicategories())


def _standard_functors():
    C = _corpus()
    return [("phi:1->Z2", corpus.group_hom(1, 2, 0)),
            ("Z2->Z4", corpus.group_hom(2, 4, 2)),
            ("poset1->poset2", corpus.poset_inclusion(1, 2)),
            ("id:poset2", identity_functor(C["poset[2]"])),
            ("id:cyclic2", identity_functor(C["cyclic2"])),
            ("id:twisted", identity_functor(C["twisted"]))]


def _hom_instances():
    C = _corpus()
    picks = [("poset[2]", 2), ("cyclic2", 0), ("cyclic3", 0),
             ("twisted", 0), ("idempotent", 0)]
    return [("hom/%s@%d" % (n, b), hom_bidiagram(C[n], b))
            for n, b in picks]


def check_axiom_closure():
    """All corpus bicategories and every constructed total validate,
    including the derived unit identities the validator enforces."""
    count = 0
    for name, B in corpus.corpus_bicategories():
        assert validate_bicategory(B).ok, name
        count += 1
    C = _corpus()
    outputs = []
    for name, D in _hom_instances()[:3]:
        outputs.append((name, grothendieck(D)))
    phi = corpus.group_hom(1, 2, 0)
    outputs.append(("oplax-total/phi",
                    grothendieck_oplax(fiber_bidiagram(phi))))
    outputs.append(("fiber/phi@0", homotopy_fiber(phi, 0)))
    outputs.append(("fiber/Z2->Z4@0",
                    homotopy_fiber(corpus.group_hom(2, 4, 2), 0)))
    outputs.append(("comma/poset2@2", comma(C["poset[2]"], 2)))
    outputs.append(("comma/cyclic2@0", comma(C["cyclic2"], 0)))
    outputs.append(("comma/twisted@0", comma(C["twisted"], 0)))
    outputs.append(("suspension/Z3", suspension(corpus.cyclic_monoidal(3))))
    outputs.append(("suspension/twisted", corpus.twisted_suspension()))
    outputs.append(("groth/const", grothendieck(
        constant_bidiagram(C["cyclic2"], C["twisted"]))))
    for name, T in outputs:
        assert validate_bicategory(T).ok, name
        count += 1
    return "%d instances validated" % count


def check_iso_transfer():
    """A 2-cell of a Grothendieck total is invertible exactly when both
    its base part and its fiber part are."""
    cells = 0
    for name, D in _hom_instances():
        B = D.base
        T = grothendieck(D, check=False)
        for c, (phi, alpha, u, y) in enumerate(T.two_keys):
            FA = D.fiber[B.src1(B.src2(alpha))]
            want = B.is_iso_two(alpha) and FA.is_iso_two(phi)
            assert T.is_iso_two(c) == want, (name, c)
            cells += 1
    return "%d total 2-cells checked on %d instances" \
        % (cells, len(_hom_instances()))


def check_derived_unit_equations():
    """The derived equations between unit comparisons hold on every
    coherent bidiagram (theorem used as implementation cross-check)."""
    C = _corpus()
    insts = _hom_instances() + [
        ("const/cyclic2-twisted",
         constant_bidiagram(C["cyclic2"], C["twisted"]))]
    for name, D in insts:
        assert check_gdo(D).ok, name
    return "%d bidiagrams" % len(insts)


def check_fiber_dual_route():
    """The direct homotopy-fiber tables agree with the total of the
    hom bidiagram, under the provenance bijection."""
    pairs = []
    for name, F in _standard_functors():
        for b in F.target.objects():
            pairs.append(("%s@%d" % (name, b), F, b))
    for name, F, b in pairs:
        fiber_isomorphism(F, b)
    return "%d (functor, object) pairs" % len(pairs)


def check_coherence_suites():
    """check_coherence is empty on every hom bidiagram of the corpus
    and on the bidiagram of fibers of three lax functors."""
    n = 0
    for name, B in corpus.corpus_bicategories():
        D = hom_bidiagram(B, B.n_obj - 1)
        assert validate_bidiagram_data(D).ok, name
        assert check_coherence(D).ok, name
        n += 1
    for name, F in _standard_functors()[:3]:
        G = fiber_bidiagram(F)
        assert validate_bidiagram_data(G.enc).ok, name
        assert check_coherence(G).ok, name
        n += 1
    return "%d coherence suites empty" % n


def check_retraction_identities():
    """Q o L is the identity on the nose, and all the section /
    retraction / contraction data validates."""
    n = 0
    for name, F in _standard_functors():
        T = grothendieck_oplax(fiber_bidiagram(F))
        Q, L, iota = total_Q_L(F, T)
        assert validate_lax_functor(Q).ok, name
        assert validate_lax_functor(L).ok, name
        assert validate_transformation(iota).ok, name
        assert compose_lax_functors(Q, L).equal(identity_functor(F.source))
        for b in F.target.objects():
            J = embedding_oplax(T, b)
            assert validate_lax_functor(J).ok and J.is_pseudo
        n += 1
    C = _corpus()
    for name in ("poset[2]", "cyclic2", "twisted"):
        B = C[name]
        for b in B.objects():
            t = comma_contraction(B, b)
            assert validate_transformation(t).ok, (name, b)
    # the interchange modification attached to horizontal composition
    B = C["cyclic2"]
    idt = identity_transformation(identity_functor(B))
    _, inter = compose_pseudo_transformations(idt, idt)
    assert validate_modification(inter).ok
    assert all(B.is_iso_two(c) for c in inter.comp)
    return "%d functors, 3 comma contractions, interchange valid" % n


def check_comparison_diagrams():
    """The projection square commutes, the mediating functor factors
    both legs, and the two fiber/comma comparison diagrams commute."""
    fs = [corpus.group_hom(2, 4, 2), corpus.group_hom(1, 2, 0),
          corpus.poset_inclusion(1, 2)]
    for F in fs:
        D = hom_bidiagram(F.target, 0)
        from .bidiagram import precompose_bidiagram
        E = precompose_bidiagram(D, F)
        TD = grothendieck(D, check=False)
        TE = grothendieck(E, check=False)
        Fbar = induced_functor(D, F, E, TE, TD)
        left = compose_lax_functors(projection(TD), Fbar)
        right = compose_lax_functors(F, projection(TE))
        assert left.equal(right)
        L = projection(TE)
        N = mediating(D, F, L, Fbar, E, TE, TD, Fbar)
        assert compose_lax_functors(projection(TE), N).equal(L)
        assert compose_lax_functors(Fbar, N).equal(Fbar)
        for check, ok in comparison_diagram_checks(F):
            assert ok, check
    return "%d instances" % len(fs)


def check_comma_contractibility():
    """Truncated at dimension 3, the nerve of every comma bicategory
    over the three smallest bases is connected and acyclic."""
    C = _corpus()
    n = 0
    for name in ("poset[2]", "cyclic2", "cyclic3"):
        B = C[name]
        for b in B.objects():
            X = nerve(comma(B, b))
            assert pi0(X)[0] == 1, (name, b)
            H = homology(X)
            assert H.betti == [1, 0, 0], (name, b)
            assert H.torsion == [[], [], []], (name, b)
            n += 1
    return "%d comma nerves connected and acyclic through degree 2" % n


def check_group_homology():
    """H_1 of the nerve of a one-object suspension of a finite group is
    the abelianization, and the hom-category nerve has one component
    per group element."""
    for n in (2, 3):
        B = corpus.cyclic_group(n)
        H = homology(nerve(B))
        assert H.betti == [1, 0, 0] and H.torsion == [[], [n], []], n
        hom = _hom_category(B, 0, 0)
        X = nerve(locally_discrete(hom))
        assert pi0(X)[0] == n
    return "H_1 = Z/2, Z/3 and |pi0(hom nerve)| = 2, 3"


def check_fiber_components():
    """The fiber of the inclusion of the trivial group into Z/2 has two
    components, exchanged by pushing forward along the generator."""
    F = corpus.group_hom(1, 2, 0)
    T = homotopy_fiber(F, 0)
    X = nerve(T)
    assert pi0(X)[0] == 2
    gen = next(p for p in F.target.one_cells() if p != F.target.i1(0))
    P = pushforward(F, gen)
    assert validate_lax_functor(P).ok and P.is_strict
    assert sorted(P.obj) == sorted(T.objects())
    assert sorted(P.one) == sorted(T.one_cells())
    assert sorted(P.two) == sorted(T.two_cells())
    assert all(P.obj[o] != o for o in T.objects())
    return "2 components, generator pushforward is a swap isomorphism"


def check_nerve_counts():
    """Nondegenerate simplex counts and exhaustive simplicial
    identities on the two reference nerves."""
    X = nerve(corpus.poset(2))
    assert X.nondegenerate_counts() == [3, 3, 1, 0]
    _check_simplicial_identities(X)
    Y = nerve(corpus.cyclic_group(2))
    assert Y.nondegenerate_counts() == [1, 1, 1, 1]
    _check_simplicial_identities(Y)
    return "counts (3,3,1,0) and (1,1,1,1); identities exhaustive"


def _other_parallel(B, c):
    return next(d for d in B.two_cells()
                if d != c and B.src2(d) == B.src2(c)
                and B.tgt2(d) == B.tgt2(c))


def check_mutation_sensitivity(seed=0):
    """Randomized single-entry perturbations of unit-adjacent coherence
    data are detected with a report naming the broken axiom instance.

    Perturbations deliberately avoid lone interior sign flips, which
    can be valid cocycle twists rather than violations."""
    rng = random.Random(seed)
    detected = []

    def run(label, rep, near):
        assert not rep.ok, label
        hit = [v for v in rep.violations
               if set(v.cells) & set(near) or not near]
        assert hit, (label, rep.violations)
        detected.append("%s -> %s@%s" % (label, hit[0].axiom, hit[0].cells))

    B0 = corpus.twisted_suspension()
    unit = B0.i1(0)
    unit_quads = [k for k in sorted(B0.assoc) if unit in k]
    for _ in range(4):
        h, g, f = unit_quads[rng.randrange(len(unit_quads))]
        M = Bicat.from_json_dict(B0.to_json_dict())
        M.assoc[(h, g, f)] = _other_parallel(M, M.assoc[(h, g, f)])
        run("assoc@%s" % ((h, g, f),), validate_bicategory(M), (h, g, f))

    for _ in range(3):
        F = identity_functor(corpus.twisted_suspension())
        B = F.target
        a = 0
        keys = [k for k in sorted(F.comp) if unit in k]
        k = keys[rng.randrange(len(keys))]
        F.comp = dict(F.comp)
        F.comp[k] = _other_parallel(B, F.comp[k])
        run("functor-comp@%s" % (k,), validate_lax_functor(F), k)

    for _ in range(3):
        D = hom_bidiagram(corpus.twisted_suspension(), 0)
        B = D.base
        pairs = sorted(D.chi_comp)
        g, f = pairs[rng.randrange(len(pairs))]
        t = D.chi_comp[(g, f)]
        FA = t.F.target
        x = rng.randrange(len(t.comp))
        others = [w for w in FA.one_cells()
                  if w != t.comp[x]
                  and (FA.src1(w), FA.tgt1(w)) == (FA.src1(t.comp[x]),
                                                   FA.tgt1(t.comp[x]))]
        comp = list(t.comp)
        comp[x] = others[rng.randrange(len(others))]
        D.chi_comp[(g, f)] = Transformation(t.kind, t.F, t.G, comp, t.nat)
        rep = validate_bidiagram_data(D)
        if rep.ok:
            rep = check_coherence(D)
        run("chi@%s/x%d" % ((g, f), x), rep, ())

    assert len(detected) >= 10
    return "%d mutations detected: %s" % (len(detected), detected[0])


THEOREM_CHECKS = [
    ("axiom-closure", check_axiom_closure),
    ("iso-transfer", check_iso_transfer),
    ("derived-unit-equations", check_derived_unit_equations),
    ("fiber-dual-route", check_fiber_dual_route),
    ("coherence-suites", check_coherence_suites),
    ("retraction-identities", check_retraction_identities),
    ("comparison-diagrams", check_comparison_diagrams),
    ("comma-contractibility", check_comma_contractibility),
    ("group-homology", check_group_homology),
    ("fiber-components", check_fiber_components),
    ("nerve-counts", check_nerve_counts),
    ("mutation-sensitivity", check_mutation_sensitivity),
]


def run_theorem_checks(instance=None, seed=0):
    """Run the theorem-level check suite; returns a list of result
    dicts with name / ok / detail."""
    results = []
    for name, fn in THEOREM_CHECKS:
        if instance and instance not in name:
            continue
        try:
            detail = fn(seed) if name == "mutation-sensitivity" else fn()
            results.append({"name": name, "ok": True, "detail": detail})
        except AssertionError as e:
            results.append({"name": name, "ok": False,
                            "detail": "assertion failed: %s" % (e,)})
        except Exception as e:          # a crash is a failed check too
            results.append({"name": name, "ok": False,
                            "detail": "%s: %s" % (type(e).__name__, e)})
    return results


@main.command("check-theorems")
@click.option("--instance", default=None,
              help="Only run checks whose name contains this string.")
@click.option("--seed", type=int, default=0, show_default=True,
              help="Seed for the randomized mutation checks.")
@click.option("-o", "out", type=click.Path(dir_okay=False),
              help="Write a JSON report here, plus CSV and PNG siblings.")
def check_theorems(instance, seed, out):
    """Run the theorem-level check suite."""
    click.echo("seed: %d" % seed)
    results = run_theorem_checks(instance, seed)
    if not results:
        click.echo("malformed input: no check matches %r" % instance,
                   err=True)
        sys.exit(2)
    for r in results:
        click.echo("%s %s: %s"
                   % ("PASS" if r["ok"] else "FAIL", r["name"], r["detail"]))
    if out:
        _write(out, {"schema": "theorem-report", "seed": seed,
                     "results": results})
        stem, _ext = os.path.splitext(out)
        with open(stem + ".csv", "w") as fh:
            fh.write("check,ok\n")
            for r in results:
                fh.write("%s,%s\n" % (r["name"], r["ok"]))
        _summary_png(results, stem + ".png")
        click.echo("wrote %s, %s, %s" % (out, stem + ".csv", stem + ".png"))
    if not all(r["ok"] for r in results):
        sys.exit(1)


def _summary_png(results, path):
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    names = [r["name"] for r in results]
    vals = [1 if r["ok"] else 0 for r in results]
    fig, ax = plt.subplots(figsize=(6, 0.4 * len(names) + 1))
    ax.barh(range(len(names)), vals,
            color=["#55a868" if v else "#c44e52" for v in vals])
    ax.set_yticks(range(len(names)))
    ax.set_yticklabels(names, fontsize=8)
    ax.set_xlim(0, 1.2)
    ax.set_xticks([])
    ax.invert_yaxis()
    for i, v in enumerate(vals):
        ax.text(v + 0.02, i, "pass" if v else "FAIL", va="center",
                fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=100)
    plt.close(fig)


if __name__ == "__main__":
    main()

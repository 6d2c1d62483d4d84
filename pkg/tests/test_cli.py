import json
import os

import pytest
from click.testing import CliRunner

from bicat import corpus
from bicat.bidiagram import hom_bidiagram, oplax_hom_bidiagram
from bicat.cli import (functor_to_json, main, oplax_to_json,
                       run_theorem_checks)
from bicat.monoidal import suspension
from bicat.morphisms import identity_functor


@pytest.fixture
def runner():
    return CliRunner()


def _run(runner, *args):
    return runner.invoke(main, list(args), catch_exceptions=False)


def _write(path, doc):
    with open(path, "w") as fh:
        json.dump(doc, fh)


def test_gen_is_deterministic(runner):
    a = _run(runner, "gen", "cyclic_group", "2")
    b = _run(runner, "gen", "cyclic_group", "2")
    assert a.exit_code == 0
    assert a.output == b.output
    doc = json.loads(a.output)
    assert doc["schema"] == "bicategory"
    assert doc["objects"] == 1


def test_gen_unknown_generator(runner):
    assert _run(runner, "gen", "mystery").exit_code == 2


def test_gen_wrong_arity(runner):
    assert _run(runner, "gen", "poset").exit_code == 2


def test_gen_invalid_group_hom(runner):
    # j -> 1*j is not a homomorphism Z/2 -> Z/3
    assert _run(runner, "gen", "group_hom", "2", "3", "1").exit_code == 2


def test_validate_all_generated_schemas(runner):
    with runner.isolated_filesystem():
        for args in (["poset", "2"], ["indiscrete", "2"],
                     ["symmetric_group", "3"], ["idempotent_monoid"],
                     ["twisted_suspension"], ["suspension_of", "3"],
                     ["group_hom", "2", "4", "2"],
                     ["poset_inclusion", "1", "2"]):
            r = _run(runner, "gen", *args, "-o", "x.json")
            assert r.exit_code == 0, r.output
            r = _run(runner, "validate", "x.json")
            assert r.exit_code == 0, r.output


def test_validate_detects_broken_table(runner):
    with runner.isolated_filesystem():
        B = corpus.twisted_suspension()
        d = B.to_json_dict()
        # give the pentagon a wrong sign at a unit-adjacent slot
        d["assoc"] = [[h, g, f, c ^ 1 if (h, g, f) == (1, 1, 0) else c]
                      for h, g, f, c in d["assoc"]]
        _write("bad.json", d)
        r = _run(runner, "validate", "bad.json")
        assert r.exit_code == 1
        assert "FAIL" in r.output


def test_malformed_json_is_exit_2(runner):
    with runner.isolated_filesystem():
        with open("bad.json", "w") as fh:
            fh.write("{not json")
        assert _run(runner, "validate", "bad.json").exit_code == 2


def test_missing_schema_is_exit_2(runner):
    with runner.isolated_filesystem():
        _write("x.json", {"objects": 1})
        assert _run(runner, "validate", "x.json").exit_code == 2


def test_unknown_schema_is_exit_2(runner):
    with runner.isolated_filesystem():
        _write("x.json", {"schema": "widget"})
        assert _run(runner, "validate", "x.json").exit_code == 2


def test_functor_file_with_path_references(runner):
    with runner.isolated_filesystem():
        F = corpus.group_hom(1, 2, 0)
        _write("src.json", F.source.to_json_dict())
        _write("tgt.json", F.target.to_json_dict())
        doc = functor_to_json(F)
        doc["source"] = "src.json"
        doc["target"] = "tgt.json"
        _write("phi.json", doc)
        assert _run(runner, "validate", "phi.json").exit_code == 0
        r = _run(runner, "fiber", "phi.json", "--over", "0", "--both")
        assert r.exit_code == 0
        assert "isomorphic" in r.output


def test_fiber_bad_object_is_exit_2(runner):
    with runner.isolated_filesystem():
        _write("phi.json", functor_to_json(corpus.group_hom(1, 2, 0)))
        assert _run(runner, "fiber", "phi.json",
                    "--over", "5").exit_code == 2


def test_comma_writes_output(runner):
    with runner.isolated_filesystem():
        _write("b.json", corpus.poset(1).to_json_dict())
        r = _run(runner, "comma", "b.json", "--over", "1",
                 "-o", "c.json")
        assert r.exit_code == 0
        out = json.loads(open("c.json").read())
        assert out["objects"] == 2
        assert len(out["one_cells"]) == 3


def test_monoidal_fiber_command(runner):
    with runner.isolated_filesystem():
        F = identity_functor(suspension(corpus.cyclic_monoidal(2)))
        _write("f.json", functor_to_json(F))
        r = _run(runner, "monoidal-fiber", "f.json", "-o", "k.json")
        assert r.exit_code == 0
        assert json.loads(open("k.json").read())["objects"] == 2


def test_monoidal_fiber_rejects_multi_object(runner):
    with runner.isolated_filesystem():
        _write("f.json",
               functor_to_json(identity_functor(corpus.poset(1))))
        assert _run(runner, "monoidal-fiber", "f.json").exit_code == 2


def test_groth_with_provenance_sidecar(runner):
    with runner.isolated_filesystem():
        D = hom_bidiagram(corpus.cyclic_group(2), 0)
        _write("d.json", D.to_json_dict())
        assert _run(runner, "coherence", "d.json").exit_code == 0
        r = _run(runner, "groth", "d.json", "-o", "t.json")
        assert r.exit_code == 0
        total = json.loads(open("t.json").read())
        prov = json.loads(open("t.provenance.json").read())
        assert total["objects"] == len(prov["objects"]) == 2
        assert len(total["one_cells"]) == len(prov["one_cells"])
        assert len(total["two_cells"]) == len(prov["two_cells"])
        # the sidecar names the base part of every 1-cell
        for (u, f, y) in prov["one_cells"]:
            assert f in (0, 1)


def test_groth_is_deterministic(runner):
    with runner.isolated_filesystem():
        D = hom_bidiagram(corpus.twisted_suspension(), 0)
        _write("d.json", D.to_json_dict())
        _run(runner, "groth", "d.json", "-o", "a.json")
        _run(runner, "groth", "d.json", "-o", "b.json")
        assert open("a.json").read() == open("b.json").read()


def test_groth_oplax(runner):
    with runner.isolated_filesystem():
        G = oplax_hom_bidiagram(corpus.poset(2), 0)
        _write("g.json", oplax_to_json(G))
        assert _run(runner, "validate", "g.json").exit_code == 0
        r = _run(runner, "groth", "g.json", "--oplax", "-o", "t.json")
        assert r.exit_code == 0
        assert json.loads(open("t.json").read())["objects"] == 3


def test_coherence_rejects_mutated_comparison(runner):
    with runner.isolated_filesystem():
        D = hom_bidiagram(corpus.twisted_suspension(), 0)
        d = D.to_json_dict()
        # flip the naturality cell of one comparison transformation at
        # a unit-adjacent slot
        g, f, td = d["chi_comp"][1]
        td["nat"] = [[m, c ^ 1 if m == 0 else c] for m, c in td["nat"]]
        _write("d.json", d)
        r = _run(runner, "coherence", "d.json")
        assert r.exit_code == 1
        assert "FAIL" in r.output


def test_nerve_homology_pipeline(runner):
    with runner.isolated_filesystem():
        _write("b.json", corpus.cyclic_group(2).to_json_dict())
        r = _run(runner, "nerve", "b.json", "--dim", "3",
                 "-o", "x.json")
        assert r.exit_code == 0
        assert "nondegenerate: [1, 1, 1, 1]" in r.output
        sset = json.loads(open("x.json").read())
        assert sset["chain_complex"]["ranks"] == [1, 1, 1, 1]
        r = _run(runner, "homology", "x.json", "-o", "h.json")
        assert r.exit_code == 0
        assert "H_1 = Z/2" in r.output
        rep = json.loads(open("h.json").read())
        assert rep["betti"] == [1, 0, 0]
        assert rep["torsion"] == [[], [2], []]
        assert os.path.exists("h.csv") and os.path.exists("h.png")
        assert "Z/2" in open("h.csv").read()


def test_homology_kmax_guard(runner):
    with runner.isolated_filesystem():
        _write("b.json", corpus.poset(1).to_json_dict())
        _run(runner, "nerve", "b.json", "-o", "x.json")
        assert _run(runner, "homology", "x.json",
                    "--kmax", "3").exit_code == 2


def test_nerve_budget_guard(runner):
    with runner.isolated_filesystem():
        _write("b.json", corpus.symmetric_group(3).to_json_dict())
        r = _run(runner, "nerve", "b.json", "--budget", "500")
        assert r.exit_code == 1


def test_check_theorems_single_instance(runner):
    with runner.isolated_filesystem():
        r = _run(runner, "check-theorems", "--instance", "nerve-counts",
                 "-o", "rep.json")
        assert r.exit_code == 0
        assert "PASS nerve-counts" in r.output
        rep = json.loads(open("rep.json").read())
        assert rep["results"][0]["ok"] is True
        assert os.path.exists("rep.csv") and os.path.exists("rep.png")


def test_check_theorems_no_match_is_exit_2(runner):
    assert _run(runner, "check-theorems",
                "--instance", "nope").exit_code == 2


def test_check_theorems_seed_is_reported(runner):
    r = _run(runner, "check-theorems", "--instance", "nerve-counts",
             "--seed", "13")
    assert "seed: 13" in r.output


def test_run_theorem_checks_reports_failures():
    # the runner itself must turn an exception inside a check into a
    # failed result, not a crash
    import bicat.cli as cli
    results = run_theorem_checks("nerve-counts")
    assert all(r["ok"] for r in results)
    broken = [("boom", lambda: (_ for _ in ()).throw(AssertionError("x")))]
    old = cli.THEOREM_CHECKS
    cli.THEOREM_CHECKS = broken
    try:
        res = run_theorem_checks()
    finally:
        cli.THEOREM_CHECKS = old
    assert res == [{"name": "boom", "ok": False,
                    "detail": "assertion failed: x"}]

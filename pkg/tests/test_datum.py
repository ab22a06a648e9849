"""Datum files: round trips, shipped-file fidelity, and path-tagged errors."""

import json

import pytest

from tatecoh.cohomology import ExtensionGroup, FormationTwist
from tatecoh.datum import (
    DatumError,
    data_dir,
    dump_datum,
    load_datum,
    parse_datum,
    encode_int,
)
from tatecoh.frobloop import FiltrationDatum, FrobeniusModule
from tatecoh.gaction import FiniteGroup, GModule, GroupMap
from tatecoh.langlands import (
    ClassFormationDatum,
    kottwitz_target,
    standard_torus,
    unramified_formation,
)
from tatecoh.shipped import shipped_objects
from tatecoh.zmodule import FgAbelianGroup, Mat


def reparse(obj, expect):
    return parse_datum(json.loads(dump_datum(obj)), expect=expect)


def same_gmodule(a, b):
    return (a.group.table == b.group.table
            and a.module.invariants() == b.module.invariants()
            and [m.a for m in a.action] == [m.a for m in b.action])


def test_torus_round_trips():
    for name in ("split-gm", "norm-one-unramified", "norm-one-ramified",
                 "induced-quadratic", "induced-cubic", "weyl-2d"):
        t = standard_torus(name)
        t2 = reparse(t, "torus")
        assert t2.name == name
        assert t2.frobenius.a == t.frobenius.a
        assert same_gmodule(t2.lattice, t.lattice)
        assert (t2.ambient is None) == (t.ambient is None)
        if t.ambient is not None:
            assert t2.ambient.group.table == t.ambient.group.table
            assert t2.ambient.embedding.images == t.ambient.embedding.images
            assert t2.ambient.frobenius == t.ambient.frobenius
        assert (t2.induced_from is None) == (t.induced_from is None)
        assert kottwitz_target(t2).group.invariants() == kottwitz_target(t).group.invariants()


def test_formation_round_trips():
    for n in (1, 2, 3, 4):
        f = unramified_formation(FiniteGroup.cyclic(n))
        f2 = reparse(f, "formation")
        assert f2.name == f.name
        assert f2.cocycle.vec == f.cocycle.vec
        assert f2.formation_report.passed


def test_twisted_formation_round_trip():
    # inversion on C3 with kernel -1 needs a correcting shift
    f3 = unramified_formation(FiniteGroup.cyclic(3))
    phi = GroupMap(f3.gamma, f3.gamma, [0, 2, 1])
    twist = FormationTwist(ExtensionGroup(f3.cocycle), phi, Mat.diagonal([-1]),
                           shift=[-1, -1])
    f = ClassFormationDatum("twisted-c3", f3.cocycle, twist)
    f2 = reparse(f, "formation")
    assert f2.twist.base_map.images == [0, 2, 1]
    assert f2.twist.kernel_map.a == [[-1]]
    assert f2.twist.shift == [-1, -1]


def test_gmodule_and_group_round_trips():
    c2 = FiniteGroup.cyclic(2)
    m = GModule(c2, FgAbelianGroup.free(1), [Mat.identity(1), Mat.diagonal([-1])],
                name="z-with-inversion")
    m2 = reparse(m, "gmodule")
    assert same_gmodule(m, m2) and m2.name == "z-with-inversion"
    g2 = reparse(FiniteGroup.dihedral(3), "group")
    assert g2.table == FiniteGroup.dihedral(3).table


def test_frobmodule_and_filtration_round_trips():
    mu8 = FrobeniusModule(FgAbelianGroup.cyclic(8), Mat.from_rows([[3]]))
    p2 = reparse(mu8, "frobmodule")
    assert p2.frobenius.a == [[3]] and p2.underlying.invariants() == [8]
    filt = FiltrationDatum(mu8, [Mat.from_rows([[1]]), Mat.from_rows([[2]])])
    f2 = reparse(filt, "filtration")
    assert [q.a for q in f2.chain] == [q.a for q in filt.chain]
    assert f2.base.frobenius.a == [[3]]


def test_large_integers_as_strings():
    big = 2 ** 60
    p = FrobeniusModule(FgAbelianGroup.cyclic(big), Mat.from_rows([[big - 1]]))
    doc = json.loads(dump_datum(p))
    assert doc["module"]["relations"][0][0] == str(big)
    p2 = parse_datum(doc, expect="frobmodule")
    assert p2.underlying.invariants() == [big]
    assert p2.frobenius.a == [[big - 1]]
    assert encode_int(7) == 7 and encode_int(big) == str(big)


def test_small_integers_accepted_as_strings():
    doc = json.loads(dump_datum(standard_torus("split-gm")))
    doc["rank"] = "1"
    doc["version"] = "1"
    t = parse_datum(doc, expect="torus")
    assert t.cochar_rank == 1


def test_shipped_files_match_builders():
    base = data_dir()
    for fname, obj in shipped_objects().items():
        assert base.joinpath(fname).read_text(encoding="utf-8") == dump_datum(obj), fname


def test_load_datum_falls_back_to_shipped(tmp_path):
    t = load_datum("gm_split.json", expect="torus")
    assert t.name == "split-gm"
    path = tmp_path / "local.json"
    path.write_text(dump_datum(standard_torus("weyl-2d")), encoding="utf-8")
    assert load_datum(str(path), expect="torus").name == "weyl-2d"
    with pytest.raises(DatumError, match="no such file"):
        load_datum("never_shipped.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{", encoding="utf-8")
    with pytest.raises(DatumError, match="not valid JSON"):
        load_datum(str(bad))


def error_path(doc, expect=None):
    with pytest.raises(DatumError) as exc:
        parse_datum(doc, expect=expect)
    return exc.value.path


def test_error_paths_locate_the_problem():
    assert error_path([1, 2]) == "$"
    assert error_path({"kind": "torus"}) == "$"
    assert error_path({"version": 2, "kind": "torus"}) == "$.version"
    assert error_path({"version": 1, "kind": "nope"}) == "$.kind"
    assert error_path({"version": 1, "kind": "torus"}, expect="formation") == "$.kind"
    assert error_path({"version": 1, "kind": "torus"}) == "$"
    doc = json.loads(dump_datum(standard_torus("norm-one-ramified")))
    doc["action"][1] = [[1, 0]]
    assert error_path(doc).startswith("$.action[1]")
    doc = json.loads(dump_datum(standard_torus("norm-one-ramified")))
    doc["ambient"]["embedding"] = [0, 9]
    assert error_path(doc) == "$.ambient.embedding[1]"
    doc = json.loads(dump_datum(standard_torus("norm-one-ramified")))
    doc["frobenius"] = [[2]]
    assert error_path(doc) == "$"
    doc = json.loads(dump_datum(standard_torus("induced-quadratic")))
    doc["rank"] = 2
    assert error_path(doc) == "$.induced"


def test_error_paths_in_formations():
    good = json.loads(dump_datum(unramified_formation(FiniteGroup.cyclic(2))))
    doc = json.loads(json.dumps(good))
    doc["cocycle"][0][1] = [5]
    assert error_path(doc) == "$.cocycle[0][1]"
    doc = json.loads(json.dumps(good))
    doc["cocycle"][1] = [[0]]
    assert error_path(doc) == "$.cocycle[1]"
    doc = json.loads(json.dumps(good))
    doc["class_module"]["module"]["relations"] = [[1], [2]]
    assert error_path(doc) == "$.class_module.module.relations"
    doc = json.loads(json.dumps(good))
    doc["twist"] = {"base_map": [0, 1], "kernel_map": [[2]]}
    assert error_path(doc) == "$.twist"


def test_error_paths_in_frobmodules():
    doc = {"version": 1, "kind": "frobmodule",
           "module": {"generators": 1, "relations": [[4]]},
           "frobenius": [[2]]}
    assert error_path(doc) == "$"
    doc["frobenius"] = [[1], [2]]
    assert error_path(doc) == "$.frobenius"
    doc["frobenius"] = [[True]]
    assert error_path(doc) == "$.frobenius[0][0]"


def test_datum_document_rejects_unknown_types():
    with pytest.raises(TypeError):
        dump_datum(object())

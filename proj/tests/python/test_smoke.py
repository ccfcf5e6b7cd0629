import pytest

import cayleycast as cc


def test_bounds():
    assert cc.moore_bound(3, 4) == 14
    assert cc.moore_bound(80, 80) == 2**80
    assert cc.moore_f(2, 3) == 7
    table = cc.bound_table(10, 10)
    assert table[1][:5] == [4, 8, 14, 24, 40]
    assert table[-1][-1] == 1024


def test_groups():
    d7 = cc.Group("dihedral(7)")
    assert d7.order == 14
    assert d7.multiply("(1,1)", "(1,3)") == "(0,2)"
    sd = cc.Group("semidirect(12,13,2)")
    assert sd.inverse("(7,1)") == "(5,7)"
    assert len(sd.elements()) == 156
    with pytest.raises(cc.InvalidGroup):
        cc.Group("semidirect(5,13,2)")
    with pytest.raises(cc.ParseError):
        cc.Group("dihedral(7")


def test_cayley_and_simulation():
    cg = cc.CayleyGraph("semidirect(12,13,2)", "(7,1),(5,7),(6,0)")
    assert cg.vertex_count == 156
    assert cg.degree == 3
    assert cg.connected
    q3 = cc.CayleyGraph.hypercube(3)
    trace = q3.simulate()
    assert trace["completion_round"] == 3
    assert [len(r) for r in trace["rounds"]] == [1, 2, 4]
    assert q3.broadcast_time() == 3
    with pytest.raises(cc.InvalidGenerators):
        cc.CayleyGraph("cyclic(5)", "1")


def test_exact():
    petersen = cc.Graph.named("petersen")
    assert cc.exact_broadcast_time(petersen) == 4
    assert cc.exact_broadcast_time(petersen.product_with_k2()) <= 5
    assert cc.log2_lower_bound(petersen) <= 4 <= cc.greedy_upper_bound(petersen)
    path = cc.Graph(4, [(0, 1), (1, 2), (2, 3)])
    assert cc.exact_broadcast_time(path, origin=0) == 3
    schedule = cc.exact_schedule(cc.Graph.named("cycle(6)"))
    assert schedule["completion_round"] == 3


def test_family_and_catalog(tmp_path):
    report = cc.verify_family("dihedral", 3)
    assert report["passed"]
    assert report["summary"].endswith("OPTIMAL")
    records = cc.seed_catalog()
    assert all(cc.verify_record(r)["passed"] for r in records)
    path = tmp_path / "catalog.jsonl"
    best = next(r for r in records if (r["delta"], r["time"]) == (3, 4))
    assert cc.catalog_update(path, best)[0] == "inserted"
    assert cc.catalog_update(path, best)[0] == "kept_existing"


def test_search():
    result = cc.search(family="dihedral", delta=3, time=4, budget=10_000)
    assert result["records"][0]["order"] == 14
    assert result["first_hit"] < 10_000

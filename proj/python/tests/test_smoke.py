import os
from pathlib import Path

import pytest

import motifkg

DATA = Path(os.environ.get("MOTIF_DATA_DIR", Path(__file__).resolve().parents[2] / "data"))


@pytest.fixture
def counter_graph():
    return motifkg.KnowledgeGraph.read(DATA / "counterexample.tsv")


def test_parse_and_facts():
    g = motifkg.KnowledgeGraph.parse("a\tr\tb\nb\ts\tc\n")
    assert (g.num_nodes, g.num_relations, g.num_facts) == (3, 2, 2)
    assert g.facts() == [("a", "r", "b"), ("b", "s", "c")]
    assert g.augment_inverses().num_facts == 4


def test_parse_error():
    with pytest.raises(motifkg.MotifError):
        motifkg.KnowledgeGraph.parse("a\tr\n")


def test_catalog():
    assert "f3path" in motifkg.catalog_names()
    assert sorted(motifkg.motif_names("ultra4")) == ["h2h", "h2t", "t2h", "t2t"]
    with pytest.raises(motifkg.MotifError):
        motifkg.motif_names("f9path")


def test_lift_counter_example(counter_graph):
    edges = motifkg.lift(counter_graph, "f3path")
    assert ("tfh", ("r2", "r3", "r1")) in edges
    assert ("tfh", ("r1", "r3", "r2")) not in edges
    assert sorted(motifkg.lift(counter_graph, "f3path", fast=True)) == sorted(edges)


def test_separation_counter_example(counter_graph):
    a, b = ("r3", "u", "v1"), ("r3", "u", "v2")
    assert motifkg.separate(counter_graph, "ultra4", a, b, 10, 10) == {"separated": False, "first_at": None}
    assert motifkg.separate(counter_graph, "f3path", a, b) == {"separated": True, "first_at": (1, 1)}


def test_score_link(counter_graph):
    s = motifkg.score_link(counter_graph, "f2path", ("r3", "u", "v1"), seed=1, d=8)
    assert 0.0 < s < 1.0
    assert s == motifkg.score_link(counter_graph, "f2path", ("r3", "u", "v1"), seed=1, d=8)


def test_refinement_and_core():
    assert motifkg.refinement_report("h2t", "h2t,h2h")["uncovered"] == ["h2h"]
    core = motifkg.rp_core(motifkg.KnowledgeGraph.parse("a\tr\tb\nc\tr\td\n"))
    assert core.num_facts == 1


def test_connecthub_and_ultra_equiv():
    report = motifkg.connecthub(2, graphs=1, seed=3)
    assert report["accuracy"]["f3star"] == 1.0
    assert report["accuracy"]["ultra4"] == 0.5
    assert motifkg.ultra_equiv(trials=5)["passed"]

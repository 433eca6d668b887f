import random

import pytest

from randgraphs import random_graph, random_instance, toy_store
from triplesim.baselines import MethodId, jaccard, sili
from triplesim.engine import SimilarityConfig, sim_graphs
from triplesim.rdf import IRI, XSD, EntityGraph, Literal, Triple
from triplesim.vectorizers import EmbeddingStore

VO = "http://ex/vo#"
STORE = EmbeddingStore(2, {"ford": [1.0, 0.0], "tesla": [0.0, 1.0], "red": [1.0, 0.0], "blue": [0.0, 1.0]})


def graph(subject, *attrs):
    s = IRI(subject)
    triples = []
    for pred, obj in attrs:
        o = Literal(str(obj), XSD + "integer") if isinstance(obj, int) else Literal(obj)
        triples.append(Triple(s, IRI(VO + pred), o))
    return EntityGraph(s, tuple(triples))


def naive_jaccard(g1, g2):
    a = [t.n3() for t in g1.triples]
    b = [t.n3() for t in g2.triples]
    both = [x for x in a if x in b]
    either = list(dict.fromkeys(a + b))
    return 1.0 if not either else len(both) / len(either)


class TestJaccard:
    def test_identical(self):
        g = graph("http://ex/a", ("color", "red"), ("mileage", 5))
        assert jaccard(g, g) == 1.0

    def test_disjoint(self):
        assert jaccard(graph("http://ex/a", ("color", "red")), graph("http://ex/a", ("color", "blue"))) == 0.0

    def test_one_of_three(self):
        g1 = graph("http://ex/a", ("color", "red"), ("mileage", 5))
        g2 = graph("http://ex/a", ("color", "red"), ("mileage", 6))
        assert jaccard(g1, g2) == pytest.approx(1 / 3, abs=1e-12)

    def test_both_empty(self):
        e = EntityGraph(IRI("http://ex/a"), ())
        assert jaccard(e, e) == 1.0

    def test_distinct_subjects_never_overlap(self):
        g1 = graph("http://ex/a", ("color", "red"))
        g2 = graph("http://ex/b", ("color", "red"))
        assert jaccard(g1, g2) == 0.0
        assert jaccard(g1, g2, subject_blind=True) == 1.0

    def test_matches_naive_oracle(self):
        for seed in range(500):
            rng = random.Random(seed)
            # a shared subject half the time so overlaps actually happen
            g1 = random_graph(rng)
            g2 = random_graph(rng, subject=g1.subject if rng.random() < 0.5 else None)
            assert jaccard(g1, g2) == naive_jaccard(g1, g2), seed
            assert jaccard(g1, g2) == jaccard(g2, g1), seed


class TestSili:
    def test_identity(self):
        g = graph("http://ex/ford", ("color", "red"), ("mileage", 5))
        assert sili(g, g, STORE).value == pytest.approx(2.0, abs=1e-12)
        assert sili(g, g, STORE, SimilarityConfig(combine="normalized")).value == pytest.approx(1.0, abs=1e-12)

    def test_subject_renaming_leaves_score_unchanged(self):
        for seed in range(500):
            g1, g2, table, cfg = random_instance(seed)
            if cfg.beta == cfg.gamma == 0:
                cfg = cfg.updated(gamma=1.0)
            renamed = IRI("http://t/other/" + str(seed))
            g1r = EntityGraph(renamed, tuple(Triple(renamed, t.predicate, t.object) for t in g1.triples))
            store = toy_store(table)
            assert sili(g1, g2, store, cfg).value == pytest.approx(sili(g1r, g2, store, cfg).value, abs=1e-12)

    def test_n1_at_least_sili_when_subjects_agree(self):
        g1 = graph("http://ex/a/ford", ("color", "red"))
        g2 = graph("http://ex/b/ford", ("color", "blue"))
        # n1: (1 + 1 + 0)/3, sili: (1 + 0)/2
        assert sim_graphs(g1, g2, STORE).value == pytest.approx(2 / 3, abs=1e-12)
        assert sili(g1, g2, STORE).value == pytest.approx(1 / 2, abs=1e-12)

    def test_rejects_subject_only_weights(self):
        with pytest.raises(ValueError):
            sili(graph("http://ex/a", ("color", "red")), graph("http://ex/a", ("color", "red")), STORE,
                 SimilarityConfig(alpha=1, beta=0, gamma=0))


class TestMethodId:
    def test_order(self):
        assert sorted([MethodId.JACCARD, MethodId.SILI, MethodId.N2, MethodId.N1]) == [
            MethodId.N1, MethodId.N2, MethodId.SILI, MethodId.JACCARD,
        ]

    @pytest.mark.parametrize("name", ["n1", "n2", "sili", "jaccard"])
    def test_names(self, name):
        assert MethodId(name).value == name

    def test_unknown(self):
        with pytest.raises(ValueError):
            MethodId("cosine")

import gzip
import io
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from triplesim.errors import DimensionMismatch, EmptyCorpus, EmptyLexicon, FormatError, LengthMismatch
from triplesim.vectorizers import (
    EmbeddingStore,
    build_tfidf,
    cosine,
    generate_toy_embeddings,
    load_word2vec_text,
    lookup,
)


class TestWord2VecText:
    def test_basic(self):
        store = load_word2vec_text(io.BytesIO(b"2 3\na 1 0 0\nb 0 1 0\n"))
        assert len(store) == 2 and store.dimension == 3
        np.testing.assert_array_equal(store.lookup("b"), [0.0, 1.0, 0.0])

    def test_short_row_is_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch) as info:
            load_word2vec_text(b"2 3\na 1 0 0\nb 0 1\n")
        assert info.value.line == 3

    def test_bad_float(self):
        with pytest.raises(FormatError) as info:
            load_word2vec_text(b"1 2\na 1 x\n")
        assert info.value.line == 2

    def test_bad_header(self):
        with pytest.raises(FormatError):
            load_word2vec_text(b"3\na 1 2 3\n")

    def test_duplicates_last_wins(self):
        store = load_word2vec_text(b"2 2\na 1 0\na 0 1\n")
        assert len(store) == 1
        np.testing.assert_array_equal(store.lookup("a"), [0.0, 1.0])

    def test_gzip_detected(self):
        store = load_word2vec_text(gzip.compress(b"1 2\nvoiture 0.5 -0.25\n"))
        np.testing.assert_array_equal(store.lookup("voiture"), [0.5, -0.25])

    def test_roundtrip_preserves_vectors(self):
        store = generate_toy_embeddings([f"w{i}" for i in range(20)], 7, seed=3)
        again = load_word2vec_text(store.to_word2vec_text())
        for w in store.words:
            assert again.lookup(w).tolist() == store.lookup(w).tolist()

    def test_store_is_immutable(self):
        store = EmbeddingStore(2, {"a": [1.0, 0.0]})
        with pytest.raises(ValueError):
            store.lookup("a")[0] = 5.0

    def test_lookup_oov(self):
        store = EmbeddingStore(2, {"a": [1.0, 0.0]})
        assert lookup(store, "a") is not None
        assert lookup(store, "zzz") is None


class TestCosine:
    def test_identity(self):
        assert cosine([0.3, -2.0, 5.0], [0.3, -2.0, 5.0]) == pytest.approx(1.0, abs=1e-12)

    def test_orthogonal(self):
        assert cosine([1, 0], [0, 1]) == 0.0

    def test_forty_five_degrees(self):
        assert cosine([1, 1], [1, 0]) == pytest.approx(0.70711, abs=1e-5)

    def test_zero_vector(self):
        assert cosine([0, 0], [1, 2]) == 0.0

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatch):
            cosine([1, 2], [1, 2, 3])

    @given(
        st.lists(st.floats(-1e3, 1e3), min_size=1, max_size=6).flatmap(
            lambda a: st.tuples(st.just(a), st.lists(st.floats(-1e3, 1e3), min_size=len(a), max_size=len(a)))
        )
    )
    def test_symmetric_and_bounded(self, pair):
        a, b = pair
        assert cosine(a, b) == cosine(b, a)
        assert abs(cosine(a, b)) <= 1 + 1e-12


class TestTfidf:
    def test_two_document_example(self):
        model = build_tfidf([["a", "b", "a", "c"], ["b", "d"]])
        assert model.document_frequency["a"] == 1
        np.testing.assert_allclose(model.lookup("a"), [0.5 * math.log(2), 0.0], atol=1e-12)
        assert model.lookup("a")[0] == pytest.approx(0.34657, abs=1e-5)
        np.testing.assert_array_equal(model.lookup("b"), [0.0, 0.0])

    def test_single_document_all_zero(self):
        model = build_tfidf([["x", "y", "x"]])
        for w in ("x", "y"):
            np.testing.assert_array_equal(model.lookup(w), [0.0])

    def test_empty_corpus(self):
        with pytest.raises(EmptyCorpus):
            build_tfidf([])

    def test_oov(self):
        assert build_tfidf([["a"]]).lookup("zzz") is None


def brute_force_tfidf(corpus):
    """Term-document matrix built cell by cell."""
    vocab = sorted({w for doc in corpus for w in doc})
    n = len(corpus)
    rows = {}
    for w in vocab:
        df = 0
        for doc in corpus:
            if w in doc:
                df += 1
        row = []
        for doc in corpus:
            count = 0
            for x in doc:
                if x == w:
                    count += 1
            tf = count / len(doc) if doc else 0.0
            row.append(tf * math.log(n / df))
        rows[w] = row
    return rows


@settings(max_examples=200)
@given(st.lists(st.lists(st.sampled_from("abcdefg"), max_size=8), min_size=1, max_size=5))
def test_tfidf_matches_brute_force(corpus):
    model = build_tfidf(corpus)
    expected = brute_force_tfidf(corpus)
    assert sorted(model.vocabulary) == sorted(expected)
    for w, row in expected.items():
        np.testing.assert_allclose(model.lookup(w), row, rtol=0, atol=1e-12)
        assert 1 <= model.document_frequency[w] <= len(corpus)


class TestToyEmbeddings:
    LEX = [f"w{i}" for i in range(10)]

    def test_deterministic(self):
        a = generate_toy_embeddings(self.LEX, 8, seed=11)
        b = generate_toy_embeddings(self.LEX, 8, seed=11)
        assert a.to_word2vec_text() == b.to_word2vec_text()

    def test_unit_norm(self):
        store = generate_toy_embeddings(self.LEX, 8, seed=11)
        for w in self.LEX:
            assert np.linalg.norm(store.lookup(w)) == pytest.approx(1.0, abs=1e-9)

    def test_seed_changes_vectors(self):
        a = generate_toy_embeddings(self.LEX, 8, seed=1)
        b = generate_toy_embeddings(self.LEX, 8, seed=2)
        assert any(not np.array_equal(a.lookup(w), b.lookup(w)) for w in self.LEX)

    def test_empty_lexicon(self):
        with pytest.raises(EmptyLexicon):
            generate_toy_embeddings([], 4, seed=0)

    def test_dimension_floor(self):
        with pytest.raises(ValueError):
            generate_toy_embeddings(["a"], 1, seed=0)

"""Hybrid semantic similarity between RDF entity descriptions."""

__version__ = "0.1.0"

from triplesim.rdf import (
    IRI,
    BlankNode,
    Dataset,
    EntityGraph,
    Literal,
    ObjectKind,
    Triple,
    classify_object,
    group_by_subject,
    parse_ntriples,
    serialize_ntriples,
)
from triplesim.text import local_name, tokenize
from triplesim.vectorizers import (
    EmbeddingStore,
    TfidfModel,
    build_tfidf,
    cosine,
    generate_toy_embeddings,
    load_word2vec_text,
)
from triplesim.engine import SimilarityConfig, SimilarityEngine, sim_graphs
from triplesim.baselines import MethodId, jaccard, sili

__all__ = [
    "IRI",
    "BlankNode",
    "Literal",
    "Triple",
    "ObjectKind",
    "EntityGraph",
    "Dataset",
    "classify_object",
    "group_by_subject",
    "parse_ntriples",
    "serialize_ntriples",
    "local_name",
    "tokenize",
    "EmbeddingStore",
    "TfidfModel",
    "build_tfidf",
    "cosine",
    "generate_toy_embeddings",
    "load_word2vec_text",
    "SimilarityConfig",
    "SimilarityEngine",
    "sim_graphs",
    "MethodId",
    "jaccard",
    "sili",
]

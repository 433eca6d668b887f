import re

import pytest
from hypothesis import given
from hypothesis import strategies as st

from triplesim.rdf import IRI, BlankNode, Literal
from triplesim.text import local_name, split_words, tokenize


@pytest.mark.parametrize(
    "iri, expected",
    [
        ("http://ex/vo#has_transmission", "has_transmission"),
        ("http://ex/vehicles/ford_focus_4_2018", "ford_focus_4_2018"),
        ("urn:x", "urn:x"),
        ("http://ex/a#b/c", "b/c"),
    ],
)
def test_local_name(iri, expected):
    assert local_name(iri) == expected


@pytest.mark.parametrize(
    "term, words",
    [
        (IRI("http://ex/vo#has_number_of_mileage"), ("has", "number", "of", "mileage")),
        (Literal("Tesla Model S"), ("tesla", "model", "s")),
        (IRI("http://ex/v/FordFocus4"), ("ford", "focus", "4")),
        (IRI("http://ex/v/ford_focus_4_2018"), ("ford", "focus", "4", "2018")),
        (Literal("C5 Aircross"), ("c", "5", "aircross")),
        (Literal("semi-automatic, 6.speed"), ("semi", "automatic", "6", "speed")),
        (Literal("!!! ..."), ()),
        (BlankNode("owner1"), ("owner", "1")),
        (Literal("gris métallisé"), ("gris", "métallisé")),
        (Literal("XMLParser"), ("xmlparser",)),
    ],
)
def test_tokenize_examples(term, words):
    assert tokenize(term) == words


ascii_text = st.text(alphabet="abcXYZ019 _-.,/!", max_size=30)


@given(ascii_text)
def test_idempotent_on_space_join(text):
    words = split_words(text)
    assert split_words(" ".join(words)) == words


@given(ascii_text)
def test_words_are_clean(text):
    for w in split_words(text):
        assert w and w == w.lower() and not re.search(r"\s", w)


@given(ascii_text)
def test_case_insensitive_across_uniform_case(text):
    # camelCase humps only exist in mixed-case input, so uniform upper and
    # lower versions of any string must agree
    assert split_words(text.lower()) == split_words(text.upper())


@given(ascii_text)
def test_case_insensitive_without_humps(text):
    if re.search(r"[a-z][A-Z]", text):
        return
    flipped = text.swapcase()
    if re.search(r"[a-z][A-Z]", flipped):
        return
    assert split_words(flipped) == split_words(text)


def test_deterministic():
    t = IRI("http://ex/vo#hasNumberOfMileage")
    assert tokenize(t) == tokenize(IRI("http://ex/vo#hasNumberOfMileage"))

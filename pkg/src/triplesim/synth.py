"""Seeded synthetic used-vehicle catalogue."""

from __future__ import annotations

import numpy as np

from triplesim.rdf import IRI, XSD, Dataset, EntityGraph, Literal, Triple
from triplesim.text import tokenize

VEHICLE_NS = "http://example.org/vehicle/"
VO = "http://example.org/vo#"

MODELS = {
    "ford": ["Focus", "Fiesta", "Kuga", "Mondeo"],
    "citroen": ["C3", "C4", "C5 Aircross", "Berlingo"],
    "renault": ["Clio", "Megane", "Captur", "Scenic"],
    "peugeot": ["208", "308", "3008", "Partner"],
    "tesla": ["Model S", "Model 3", "Model Y"],
    "volkswagen": ["Golf", "Polo", "Passat", "Tiguan"],
    "toyota": ["Yaris", "Corolla", "RAV4", "Prius"],
    "bmw": ["Serie 1", "Serie 3", "X1", "X3"],
}
BRANDS = sorted(MODELS)
FUELS = ["diesel", "gasoline", "electric", "hybrid", "lpg"]
TRANSMISSIONS = ["mechanical", "automatic", "semi automatic"]
COLORS = ["black", "white", "grey", "silver", "blue", "red", "green", "beige"]
BODIES = ["sedan", "hatchback", "suv", "estate", "coupe", "convertible", "minivan", "pickup"]

MILEAGE = (0, 300_000)
YEAR = (1990, 2023)
PRICE = (500, 80_000)


def _slug(text: str) -> str:
    return text.lower().replace(" ", "_")


def synth_dataset(n_entities: int, seed: int) -> tuple[Dataset, list[str]]:
    """Generate ``n_entities`` vehicles with 6 textual and 3 integer attributes.

    Returns the dataset and the sorted set of words appearing in subjects,
    predicates and textual objects, for building toy embeddings.
    """
    if n_entities < 1:
        raise ValueError("n_entities must be at least 1")
    rng = np.random.default_rng(seed & 0xFFFFFFFFFFFFFFFF)

    def pick(options):
        return options[int(rng.integers(len(options)))]

    def integer(bounds):
        return int(rng.integers(bounds[0], bounds[1] + 1))

    graphs = []
    for i in range(n_entities):
        brand = pick(BRANDS)
        model = pick(MODELS[brand])
        year = integer(YEAR)
        subject = IRI(f"{VEHICLE_NS}{brand}_{_slug(model)}_{year}_{i:04d}")
        attrs = [
            ("has_brand", IRI(VO + brand.capitalize())),
            # typed as a string so names like "308" stay textual
            ("has_model", Literal(model, XSD + "string")),
            ("has_fuel_type", Literal(pick(FUELS))),
            ("has_transmission", Literal(pick(TRANSMISSIONS))),
            ("has_color", Literal(pick(COLORS))),
            ("has_body_type", Literal(pick(BODIES))),
            ("has_number_of_mileage", Literal(str(integer(MILEAGE)), XSD + "integer")),
            ("has_year", Literal(str(year), XSD + "integer")),
            ("has_price", Literal(str(integer(PRICE)), XSD + "integer")),
        ]
        triples = tuple(Triple(subject, IRI(VO + p), o) for p, o in attrs)
        graphs.append(EntityGraph(subject, triples))

    data = Dataset(tuple(graphs))
    lexicon: set[str] = set()
    for g in data:
        lexicon.update(tokenize(g.subject))
        for t in g.triples:
            lexicon.update(tokenize(t.predicate))
        for t in g.qualitative:
            lexicon.update(tokenize(t.object))
    return data, sorted(lexicon)

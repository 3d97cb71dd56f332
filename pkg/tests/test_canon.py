"""Canonical serializer: round-trip identity and canonicalization."""

from skg import load_graph, serialize


def test_round_trip_is_identity(building_source):
    kg = load_graph(building_source)
    text = serialize(kg)
    assert load_graph(text) == kg


def test_serialize_is_idempotent(building_source):
    kg = load_graph(building_source)
    once = serialize(kg)
    twice = serialize(load_graph(once))
    assert once == twice


def test_statement_order_does_not_matter():
    a = "entity A { prior: 0.1 }\nentity B { prior: 0.2 }"
    b = "entity B { prior: 0.2 }\nentity A { prior: 0.1 }"
    assert serialize(load_graph(a)) == serialize(load_graph(b))
    assert load_graph(a) == load_graph(b)


def test_field_order_does_not_matter():
    a = "place p { position: (1, 2), location_class: c, weight: 3 }"
    b = "place p { weight: 3, location_class: c, position: (1, 2) }"
    assert serialize(load_graph(a)) == serialize(load_graph(b))


def test_defaults_are_made_explicit():
    text = serialize(load_graph("kind sound { falloff: inverse_square_db }"))
    assert "ref_distance: 1.0" in text
    assert "requires_line_of_sight: false" in text


def test_profile_block_preserved():
    src = (
        "entity A { prior: 0.5 }\n"
        "profile night {\n"
        "  set entity.A.prior: 0.05\n"
        "}"
    )
    text = serialize(load_graph(src))
    assert "profile night {" in text
    assert "set entity.A.prior: 0.05" in text
    assert load_graph(text) == load_graph(src)


def test_empty_graph_serializes_to_empty_text():
    assert serialize(load_graph("")) == ""


def test_numbers_round_trip_exactly():
    src = "entity A { prior: 0.30000000000000004 }\nentity B { prior: 1e-17 }"
    kg = load_graph(src)
    again = load_graph(serialize(kg))
    assert again.entity("A").prior == kg.entity("A").prior
    assert again.entity("B").prior == kg.entity("B").prior

import pytest

from skg import ParseError, parse, tokenize


def parse_source(source):
    return parse(tokenize(source))


def test_minimal_entity_block():
    doc = parse_source("entity A { prior: 0.5 }")
    assert len(doc.statements) == 1
    stmt = doc.statements[0]
    assert stmt.keyword == "entity"
    assert stmt.name == "A"
    assert stmt.arrow is None
    assert [f.name for f in stmt.fields] == ["prior"]
    assert stmt.fields[0].value.value == 0.5


def test_missing_closing_brace_reported_at_end_of_input():
    source = "entity A { prior: 0.5"
    with pytest.raises(ParseError) as err:
        parse_source(source)
    diag = err.value.diagnostic
    assert "'}'" in diag.message
    assert diag.line == 1
    assert diag.column == len(source) + 1


def test_emission_arrow_recorded():
    doc = parse_source("emission a -> s { prob: 0.9, intensity: 80 }")
    stmt = doc.statements[0]
    assert stmt.keyword == "emission"
    assert stmt.name == "a"
    assert stmt.arrow == "s"
    assert [f.name for f in stmt.fields] == ["prob", "intensity"]


def test_empty_document():
    assert parse_source("").statements == ()
    assert parse_source("# nothing here\n").statements == ()


def test_trailing_commas_are_optional():
    a = parse_source("sensor s { position: (1, 2), classifier: c }")
    b = parse_source("sensor s { position: (1, 2) classifier: c, }")
    shape = lambda doc: [
        (f.name, f.value.kind, f.value.value) for f in doc.statements[0].fields
    ]
    assert shape(a) == shape(b)


def test_list_value():
    doc = parse_source("classifier c { classes: [a, b, c] }")
    value = doc.statements[0].fields[0].value
    assert value.kind == "list"
    assert [v.value for v in value.value] == ["a", "b", "c"]


def test_empty_list_value():
    doc = parse_source("classifier c { classes: [] }")
    assert doc.statements[0].fields[0].value.value == ()


def test_classifier_substatements():
    doc = parse_source(
        """
        classifier c {
          kind: sound,
          classes: [glass],
          curve glass { lo: 30, hi: 60, p_max: 0.9 }
          confusion glass -> speech: 0.1
          false_alarm glass: 0.01
        }
        """
    )
    subs = doc.statements[0].subs
    assert [s.keyword for s in subs] == ["curve", "confusion", "false_alarm"]
    assert subs[0].head == ("glass",)
    assert [f.name for f in subs[0].fields] == ["lo", "hi", "p_max"]
    assert subs[1].head == ("glass", "speech")
    assert subs[1].value.value == 0.1
    assert subs[2].head == ("glass",)


def test_profile_set_paths():
    doc = parse_source(
        """
        profile busy {
          set entity.Employee.prior: 0.9
          set action.drop_tray.prob: 0.3
        }
        """
    )
    subs = doc.statements[0].subs
    assert subs[0].head == ("entity", "Employee", "prior")
    assert subs[1].head == ("action", "drop_tray", "prob")


def test_field_named_like_keyword():
    # `kind` and `set` are keywords, but `name:` position accepts them.
    doc = parse_source("signal s { kind: sound }")
    assert doc.statements[0].fields[0].name == "kind"
    doc = parse_source("entity set { prior: 0.1 }")
    assert doc.statements[0].name == "set"


def test_unknown_declaration_keyword():
    with pytest.raises(ParseError) as err:
        parse_source("entty A { prior: 0.5 }")
    assert "declaration keyword" in err.value.diagnostic.message
    assert err.value.diagnostic.column == 1


def test_missing_colon():
    with pytest.raises(ParseError) as err:
        parse_source("entity A { prior 0.5 }")
    assert "':'" in err.value.diagnostic.message
    assert err.value.diagnostic.line == 1
    assert err.value.diagnostic.column == 18


def test_tuple_requires_two_numbers():
    with pytest.raises(ParseError) as err:
        parse_source("place p { position: (1) }")
    assert "','" in err.value.diagnostic.message


def test_arrow_without_target():
    with pytest.raises(ParseError) as err:
        parse_source("signal a -> { kind: sound }")
    assert "arrow target" in err.value.diagnostic.message


def test_no_partial_document_on_error():
    # The second statement is broken; parse must raise, not return one
    # statement.
    with pytest.raises(ParseError):
        parse_source("entity A { prior: 0.5 }\nentity B {")


def test_nested_substatement_block_closes():
    with pytest.raises(ParseError) as err:
        parse_source("classifier c { curve g { lo: 1, hi: 2 ")
    assert "'}'" in err.value.diagnostic.message

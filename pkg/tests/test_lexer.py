import pytest

from skg import LexError, tokenize


def kinds(source):
    return [t.kind for t in tokenize(source)]


def lexemes(source):
    return [t.lexeme for t in tokenize(source)]


def test_entity_statement_token_count():
    assert len(tokenize("entity A { prior: 0.5 }")) == 7


def test_comment_only_source_is_empty():
    assert tokenize("# only a comment") == []


def test_unexpected_character_position():
    with pytest.raises(LexError) as err:
        tokenize("entity @")
    assert err.value.diagnostic.line == 1
    assert err.value.diagnostic.column == 8


def test_keyword_vs_identifier():
    assert kinds("entity Attacker") == ["keyword", "identifier"]
    # Substatement heads are keywords too.
    assert kinds("curve confusion false_alarm set") == ["keyword"] * 4


def test_arrow_and_tuple_delimiters():
    toks = tokenize("emission a -> b { from: (0, -1) }")
    assert [t.kind for t in toks] == [
        "keyword",
        "identifier",
        "arrow",
        "identifier",
        "punctuation",
        "identifier",
        "punctuation",
        "tuple-delimiter",
        "number",
        "punctuation",
        "number",
        "tuple-delimiter",
        "punctuation",
    ]


def test_number_forms():
    assert lexemes("1 2.5 -3 +4.25 1e-3 2.5E+2 .5 7.") == [
        "1",
        "2.5",
        "-3",
        "+4.25",
        "1e-3",
        "2.5E+2",
        ".5",
        "7.",
    ]
    assert all(k == "number" for k in kinds("1 2.5 -3 +4.25 1e-3 2.5E+2 .5 7."))


def test_negative_number_vs_arrow():
    assert kinds("-> -1") == ["arrow", "number"]


def test_positions_are_one_based_and_increase():
    toks = tokenize("entity A {\n  prior: 0.5\n}")
    assert (toks[0].line, toks[0].column) == (1, 1)
    assert (toks[3].line, toks[3].column) == (2, 3)  # prior
    assert (toks[-1].line, toks[-1].column) == (3, 1)
    seen = [(t.line, t.column) for t in toks]
    assert seen == sorted(seen)


def test_comments_stripped_mid_line():
    assert lexemes("entity A # trailing words @ $\nplace B") == [
        "entity",
        "A",
        "place",
        "B",
    ]


def test_ok_with_windows_line_endings():
    toks = tokenize("entity A {\r\n prior: 1 \r\n}")
    assert len(toks) == 7
    assert toks[-1].line == 3

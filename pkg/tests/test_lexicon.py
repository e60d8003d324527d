import io
import json

import pytest

from relcheck import load_lexicon, load_reference_edges, write_edges
from relcheck.errors import AliasCollision, DuplicateTerm, ParseError, UnknownTerm

from conftest import make_lexicon


def lexicon_stream(terms, source="s"):
    payload = {"source": source, "terms": terms}
    return io.StringIO(json.dumps(payload))


def test_load_two_entries():
    lex = load_lexicon(lexicon_stream([{"canonical": "Panopticon"}, {"canonical": "Discipline"}]))
    assert lex.terms == ("Discipline", "Panopticon")
    assert lex.source_name == "s"


def test_duplicate_after_case_folding():
    with pytest.raises(DuplicateTerm):
        load_lexicon(lexicon_stream([{"canonical": "Power"}, {"canonical": "power"}]))


def test_empty_lexicon_is_parse_error():
    with pytest.raises(ParseError):
        load_lexicon(lexicon_stream([]))


def test_malformed_json_reports_position():
    with pytest.raises(ParseError, match="line"):
        load_lexicon(io.StringIO('{"terms": [}'))


def test_alias_collision_with_other_canonical():
    with pytest.raises(AliasCollision):
        load_lexicon(
            lexicon_stream(
                [
                    {"canonical": "Power", "aliases": ["discipline"]},
                    {"canonical": "Discipline"},
                ]
            )
        )


def test_alias_collision_with_other_alias():
    with pytest.raises(AliasCollision):
        load_lexicon(
            lexicon_stream(
                [
                    {"canonical": "Power", "aliases": ["pouvoir"]},
                    {"canonical": "Knowledge", "aliases": ["Pouvoir"]},
                ]
            )
        )


def test_alias_equal_to_own_canonical_is_tolerated():
    lex = load_lexicon(lexicon_stream([{"canonical": "Power", "aliases": ["power"]}]))
    assert lex.resolve("POWER") == "Power"


def test_load_reference_edges_basic():
    lex = make_lexicon(["a", "b", "c"])
    g = load_reference_edges(io.StringIO("source,target\na,b\nb,c\n"), lex)
    assert g.edges == {("a", "b"), ("b", "c")}
    assert g.nodes == ("a", "b", "c")


def test_unknown_term_collected_with_row():
    lex = make_lexicon(["a", "b"])
    with pytest.raises(UnknownTerm) as err:
        load_reference_edges(io.StringIO("source,target\na,x\n"), lex)
    assert err.value.failures == [("x", 2)]


def test_all_unknown_rows_reported_together():
    lex = make_lexicon(["a", "b"])
    with pytest.raises(UnknownTerm) as err:
        load_reference_edges(io.StringIO("source,target\na,x\ny,b\n"), lex)
    assert {t for t, _ in err.value.failures} == {"x", "y"}


def test_alias_rows_resolve_to_canonical():
    lex = make_lexicon(["Power", "Knowledge"], aliases={"Knowledge": ("savoir",)})
    g = load_reference_edges(io.StringIO("source,target\nPower,savoir\n"), lex)
    assert g.edges == {("Power", "Knowledge")}


def test_bad_header_is_parse_error():
    lex = make_lexicon(["a", "b"])
    with pytest.raises(ParseError):
        load_reference_edges(io.StringIO("from,to\na,b\n"), lex)


def test_round_trip(tmp_path):
    lex = make_lexicon(["a", "b", "c"])
    g = load_reference_edges(io.StringIO("source,target\na,b\nb,c\nc,a\n"), lex)
    path = write_edges(g, tmp_path / "edges.csv")
    assert load_reference_edges(path, lex) == g


def test_resolution_is_total_over_aliases():
    aliases = {"Power": ("pouvoir", "puissance"), "Knowledge": ("savoir",)}
    lex = make_lexicon(["Power", "Knowledge"], aliases=aliases)
    for canonical, alias_list in aliases.items():
        for alias in alias_list:
            assert lex.resolve(alias) == canonical

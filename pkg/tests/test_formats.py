"""Round trips for every on-disk format the tools read and write."""

from liewords import automata as au
from liewords.bundled import get_word
from liewords.counting import (
    counting_representation,
    minimize_representation,
    representation_from_text,
    representation_to_text,
)
from liewords.words import (
    dfao_to_text,
    morphism,
    morphism_to_text,
    parse_dfao,
    parse_morphism,
)


def test_morphism_format():
    m = morphism("012", {"0": "012", "1": "02", "2": "1"})
    text = morphism_to_text(m)
    assert text.splitlines()[0] == "alphabet: 0 1 2"
    assert parse_morphism(text) == m


def test_dfao_format():
    d = get_word("vtm").dfao
    text = dfao_to_text(d)
    assert text.splitlines()[0] == "base: 2"
    assert parse_dfao(text) == d
    assert dfao_to_text(parse_dfao(text)) == text


def test_multitrack_format():
    a = au.conjoin([au.add_predicate("i", "n", "z", 2), au.lt_predicate("i", "z", 2)])
    text = au.to_text(a)
    head = text.splitlines()
    assert head[0] == "base: 2"
    assert head[1] == "tracks: i n z"
    b = au.from_text(text)
    assert au.to_text(b) == text
    assert au.equivalent(a, b)


def test_linear_representation_format(tm_library):
    rep = minimize_representation(counting_representation(tm_library["lie"]))
    text = representation_to_text(rep)
    lines = text.splitlines()
    assert lines[0] == "base: 2"
    assert lines[1].startswith("dimension:")
    assert representation_from_text(text) == rep

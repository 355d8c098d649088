from fractions import Fraction

import pytest

from liewords import automata as au
from liewords.bundled import PIPELINE_WORDS, get_word
from liewords.counting import (
    LinearRepresentation,
    count_direct,
    counting_representation,
    eval_int,
    evaluate,
    minimize_representation,
    representation_from_text,
    representation_to_text,
    sup_value,
    to_dfao,
)
from liewords.errors import (
    InfiniteCount,
    NoConvergence,
    NonIntegerOutput,
    StateCapExceeded,
    UnknownTrack,
)
from liewords.golden import closed_form
from liewords.words import dfao_eval


def test_count_direct_equals_position_scan(tm_library):
    lie = tm_library["lie"]
    for n in range(0, 24):
        scanned = len(au.accepted_values(lie, {"n": n}, "i", 512))
        assert count_direct(lie, n) == scanned
        assert scanned == closed_form("thue-morse", n)


def test_count_direct_needs_the_standard_tracks(tm_library):
    with pytest.raises(UnknownTrack):
        count_direct(tm_library["factoreq"], 3)
    with pytest.raises(UnknownTrack):
        counting_representation(tm_library["factoreq"])


def test_divergent_predicates_fail_loudly(tm_library):
    with pytest.raises(InfiniteCount):
        count_direct(tm_library["allconj"], 2)
    with pytest.raises(NoConvergence):
        counting_representation(tm_library["allconj"])
    with pytest.raises(NoConvergence):
        counting_representation(tm_library["lexleast"])


def test_representation_matches_direct_path(tm_library):
    lie = tm_library["lie"]
    rep = counting_representation(lie)
    for n in range(0, 400):
        assert eval_int(rep, n) == count_direct(lie, n)


def test_representation_entries_are_nonnegative_integers(tm_library):
    rep = counting_representation(tm_library["lie"])
    for m in rep.matrices:
        for row in m:
            for x in row:
                assert x == int(x) and x >= 0


def test_minimization_preserves_values_and_shrinks(tm_library):
    rep = counting_representation(tm_library["lie"])
    small = minimize_representation(rep)
    assert small.dimension <= rep.dimension
    again = minimize_representation(small)
    assert again.dimension == small.dimension
    for n in range(0, 200):
        assert evaluate(small, n) == evaluate(rep, n)


def test_dfao_agrees_with_representation(tm_library):
    rep = minimize_representation(counting_representation(tm_library["lie"]))
    d = to_dfao(rep)
    for n in range(0, 1024):
        assert int(dfao_eval(d, n)) == eval_int(rep, n)
    assert sup_value(d) == 3


@pytest.mark.parametrize("name", PIPELINE_WORDS)
def test_pipeline_dfao_matches_brute_force(name):
    from liewords.complexity import lie_complexity, saturated_factor_set
    from liewords.logic import build_predicate_library

    word = get_word(name)
    lie = build_predicate_library(word.dfao)["lie"]
    d = to_dfao(minimize_representation(counting_representation(lie)))
    for n in range(0, 65):
        assert int(dfao_eval(d, n)) == lie_complexity(saturated_factor_set(word, n))


def test_state_cap_respected(tm_library):
    rep = minimize_representation(counting_representation(tm_library["lie"]))
    with pytest.raises(StateCapExceeded):
        to_dfao(rep, state_cap=1)


def test_non_integer_rep_rejected():
    rep = LinearRepresentation(
        2,
        (Fraction(1, 2),),
        ((( Fraction(1),),), ((Fraction(1),),)),
        (Fraction(1),),
    )
    assert evaluate(rep, 0) == Fraction(1, 2)
    with pytest.raises(NonIntegerOutput):
        eval_int(rep, 0)
    with pytest.raises(NonIntegerOutput):
        to_dfao(rep)


def test_representation_text_round_trip(tm_library):
    rep = minimize_representation(counting_representation(tm_library["lie"]))
    again = representation_from_text(representation_to_text(rep))
    assert again == rep
    assert representation_to_text(again) == representation_to_text(rep)


def test_sup_value_matches_observed_outputs(cantor_library):
    # the zero digit out of the initial state pads; its target values
    # only count when reached again later
    d = to_dfao(minimize_representation(counting_representation(cantor_library["lie"])))
    outputs = {int(dfao_eval(d, n)) for n in range(200)}
    assert sup_value(d) == max(outputs) == 3

import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from liewords.bundled import get_word
from liewords.complexity import (
    abelian_complexity,
    complexity_table,
    cyclic_complexity,
    factor_set,
    first_difference_margin,
    least_rotation,
    lie_complexity,
    per_w_estimate,
    rows_to_json,
    rows_to_tsv,
    saturated_factor_set,
    unbounded_exponent_scan,
)
from liewords.errors import EmptyWord, UncertifiedData
from liewords.words import saturation_window

from oracles import naive_lie_count, sam_lie_counts


def test_factor_set_by_hand():
    fs = factor_set("0110", 2)
    assert fs.members == {"01", "11", "10"}
    assert fs.n == 2 and not fs.certified


def test_least_rotation_examples():
    assert least_rotation("bca") == "abc"
    assert least_rotation("10") == "01"
    assert least_rotation("0101") == "0101"
    with pytest.raises(EmptyWord):
        least_rotation("")


@given(st.text(alphabet="012", min_size=1, max_size=12))
def test_least_rotation_is_minimum_of_orbit(v):
    rotations = {v[t:] + v[:t] for t in range(len(v))}
    assert least_rotation(v) == min(rotations)


def test_least_rotation_custom_order():
    # rank map reverses the usual order of the two letters
    order = {"0": 1, "1": 0}
    assert least_rotation("01", order) == "10"


def test_counts_on_periodic_window():
    fs = factor_set("0101010101", 2)
    assert lie_complexity(fs) == 1
    assert cyclic_complexity(fs) == 1
    assert abelian_complexity(fs) == 1


def test_counts_on_thue_morse_row_two():
    fs = saturated_factor_set(get_word("thue-morse"), 2)
    assert len(fs.members) == 4
    assert lie_complexity(fs) == 3
    assert cyclic_complexity(fs) == 3
    assert abelian_complexity(fs) == 3


def test_length_zero_class_counts_once():
    fs = factor_set("0110", 0)
    assert lie_complexity(fs) == 1
    assert cyclic_complexity(fs) == 1
    assert abelian_complexity(fs) == 1


def test_complexity_table_thue_morse_head():
    rows = complexity_table(get_word("thue-morse"), range(0, 5))
    got = [(r.n, r.p, r.c, r.a, r.L) for r in rows]
    assert got == [
        (0, 1, 1, 1, 1),
        (1, 2, 2, 2, 2),
        (2, 4, 3, 3, 3),
        (3, 6, 2, 2, 2),
        (4, 10, 4, 3, 2),
    ]
    assert all(r.certified for r in rows)


@given(st.integers(min_value=1, max_value=40))
def test_lie_count_matches_naive_oracle(n):
    tm = get_word("thue-morse")
    fs = saturated_factor_set(tm, n)
    window = tm.prefix(saturation_window(tm, n)[0]).letters
    assert lie_complexity(fs) == naive_lie_count(window, n)


def test_lie_counts_match_suffix_automaton_on_fibonacci():
    fib = get_word("fibonacci")
    w, certified = saturation_window(fib, 120)
    assert certified
    counts = sam_lie_counts(fib.prefix(w).letters, 120)
    rows = complexity_table(fib, range(0, 121))
    assert [r.L for r in rows] == counts


def test_margin_on_certified_rows():
    rows = complexity_table(get_word("thue-morse"), range(0, 10))
    for prev, row in zip(rows, rows[1:]):
        margin = first_difference_margin(row, prev.p)
        assert margin == row.p - prev.p + 1 - row.L
        assert margin >= 0


def test_margin_refuses_uncertified_data():
    rows = complexity_table(get_word("cantor"), range(0, 3))
    assert not rows[2].certified
    with pytest.raises(UncertifiedData):
        first_difference_margin(rows[2], rows[1].p)
    assert first_difference_margin(rows[2], rows[1].p, strict=False) >= 0


def test_power_scan_separates_words():
    assert unbounded_exponent_scan(get_word("cantor"), 4, 4, 8192) == ["0"]
    assert unbounded_exponent_scan(get_word("fibonacci"), 4, 4, 8192) == []
    assert unbounded_exponent_scan(get_word("thue-morse"), 4, 4, 8192) == []


def test_power_scan_finds_squares_in_thue_morse():
    roots = unbounded_exponent_scan(get_word("thue-morse"), 2, 2, 4096)
    assert "0" in roots and "01" in roots


def test_per_w_estimate_shrinks_with_schedule():
    cantor = get_word("cantor")
    loose = per_w_estimate(cantor, 4, (2,), 8192)
    tight = per_w_estimate(cantor, 4, (2, 3, 4), 8192)
    assert tight <= loose
    assert tight == 1


def test_tsv_shape_and_determinism():
    rows = complexity_table(get_word("fibonacci"), range(0, 4))
    text = rows_to_tsv(rows)
    lines = text.strip().split("\n")
    assert lines[0] == "n\tp\tc\ta\tL\tcertified"
    assert len(lines) == 5
    assert text == rows_to_tsv(complexity_table(get_word("fibonacci"), range(0, 4)))


def test_json_round_trips_values():
    rows = complexity_table(get_word("fibonacci"), range(0, 4))
    data = json.loads(rows_to_json(rows))["rows"]
    assert data[2]["n"] == 2 and data[2]["p"] == 3
    assert all(set(d) == {"n", "p", "c", "a", "L", "certified"} for d in data)

import pytest

from liewords import automata as au
from liewords import formulas as fo
from liewords.bundled import get_word
from liewords.complexity import least_rotation, saturated_factor_set
from liewords.errors import BaseMismatch, UnboundSequence
from liewords.logic import (
    PREDICATE_TEXTS,
    apply_predicate,
    compile_formula,
    parse_with_library,
)


def test_compile_arithmetic_formula():
    a = compile_formula(fo.parse("x+y=z & y<x"), base=2)
    for x in range(12):
        for y in range(12):
            for z in range(24):
                want = x + y == z and y < x
                assert au.accepts(a, {"x": x, "y": y, "z": z}) == want


def test_truncated_subtraction_is_false_on_underflow():
    a = compile_formula(fo.parse("x-y=z"), base=2)
    for x in range(10):
        for y in range(10):
            accepted = au.accepted_values(a, {"x": x, "y": y}, "z", 20)
            if x >= y:
                assert accepted == [x - y]
            else:
                assert accepted == []


def test_quantifier_compilation():
    # Ey x+y=n says x <= n
    a = compile_formula(fo.parse("Ey x+y=n"), base=3)
    for x in range(15):
        for n in range(15):
            assert au.accepts(a, {"x": x, "n": n}) == (x <= n)


def test_sequence_atom_requires_binding():
    with pytest.raises(UnboundSequence):
        compile_formula(fo.parse("W[i]=@1"))


def test_sequence_base_must_match():
    tm = get_word("thue-morse").dfao
    with pytest.raises(BaseMismatch):
        compile_formula(fo.parse("W[i]=@1"), {"W": tm}, base=3)


def test_sequence_atoms_follow_the_word():
    tm = get_word("thue-morse")
    a = compile_formula(fo.parse("W[i]=W[j]"), {"W": tm.dfao})
    prefix = tm.prefix(128).letters
    for i in range(0, 120, 7):
        for j in range(0, 120, 11):
            assert au.accepts(a, {"i": i, "j": j}) == (prefix[i] == prefix[j])


def _route_pair(name, library, dfao):
    text = dict((n, t) for n, params, t in PREDICATE_TEXTS)[name]
    f = parse_with_library(text)
    return compile_formula(f, {"W": dfao}), library[name]


@pytest.mark.parametrize(
    "name", [n for n, _, _ in PREDICATE_TEXTS]
)
def test_formula_route_equals_operation_route_on_thue_morse(name, tm_library):
    tm = get_word("thue-morse").dfao
    via_text, via_ops = _route_pair(name, tm_library, tm)
    assert au.equivalent(via_text, via_ops)


@pytest.mark.parametrize("name", ["factoreq", "conj", "lie"])
def test_formula_route_on_cantor(name, cantor_library):
    cantor = get_word("cantor").dfao
    via_text, via_ops = _route_pair(name, cantor_library, cantor)
    assert au.equivalent(via_text, via_ops)


def test_formula_route_on_vtm(vtm_library):
    vtm = get_word("vtm").dfao
    via_text, via_ops = _route_pair("lie", vtm_library, vtm)
    assert au.equivalent(via_text, via_ops)


def test_shift_false_when_offset_exceeds_length(tm_library):
    """Rotating by more than the block length names no factor; the
    truncated n-t argument must not make the inner check vacuous."""
    shift = tm_library["shift"]
    assert au.accepts(shift, {"i": 0, "j": 0, "n": 2, "t": 0})
    assert not au.accepts(shift, {"i": 0, "j": 0, "n": 2, "t": 5})


def test_factoreq_matches_prefix_comparison(tm_library):
    prefix = get_word("thue-morse").prefix(600).letters
    feq = tm_library["factoreq"]
    for i in range(0, 500, 13):
        for j in range(0, 500, 17):
            for n in (0, 1, 2, 3, 8):
                want = prefix[i : i + n] == prefix[j : j + n]
                assert au.accepts(feq, {"i": i, "j": j, "n": n}) == want


def test_conj_matches_rotation_semantics(tm_library):
    prefix = get_word("thue-morse").prefix(300).letters
    conj = tm_library["conj"]
    for i in range(0, 40):
        for j in range(0, 40):
            for n in (1, 2, 3, 4):
                u = prefix[i : i + n]
                v = prefix[j : j + n]
                want = least_rotation(u) == least_rotation(v)
                assert au.accepts(conj, {"i": i, "j": j, "n": n}) == want


def test_lie_accepted_positions_are_class_witnesses(tm_library):
    """For each fully contained rotation class, the accepted position is
    the first occurrence of its least rotation; recompute that from the
    prefix and compare."""
    tm = get_word("thue-morse")
    lie = tm_library["lie"]
    prefix = tm.prefix(4096).letters
    for n in (1, 2, 3, 4, 5, 6):
        fs = saturated_factor_set(tm, n)
        expected = set()
        for v in fs.members:
            doubled = v + v
            orbit = {doubled[t : t + n] for t in range(n)}
            if orbit <= fs.members and v == least_rotation(v):
                expected.add(prefix.index(v))
        got = set(au.accepted_values(lie, {"n": n}, "i", 256))
        assert got == expected
    assert au.accepted_values(lie, {"n": 2}, "i", 64) == [0, 1, 5]


def test_apply_predicate_binds_compound_arguments(tm_library):
    prefix = get_word("thue-morse").prefix(300).letters
    feq = tm_library["factoreq"]
    shifted = apply_predicate(
        feq, {"i": fo.Var("p"), "j": fo.Plus(fo.Var("p"), fo.Var("k")), "n": fo.Const(3)}
    )
    for p in range(0, 60):
        for k in range(0, 30):
            want = prefix[p : p + 3] == prefix[p + k : p + k + 3]
            assert au.accepts(shifted, {"p": p, "k": k}) == want


def test_apply_predicate_truncated_argument(tm_library):
    feq = tm_library["factoreq"]
    # n-5 underflows for n < 5, so nothing of negative length is compared
    trimmed = apply_predicate(
        feq, {"n": fo.Minus(fo.Var("n"), fo.Const(5))}
    )
    assert not au.accepts(trimmed, {"i": 0, "j": 0, "n": 2})
    assert au.accepts(trimmed, {"i": 0, "j": 0, "n": 7})

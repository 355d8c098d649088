from fractions import Fraction

from liewords.algebra import (
    algebra_report,
    algebra_rows_to_tsv,
    commutator_span,
    factor_sets_up_to,
    lie_via_algebra,
)
from liewords.bundled import get_word
from liewords.complexity import lie_complexity
from liewords.linalg import RowBasis


def test_row_basis_exact_rank():
    b = RowBasis(2, track_coords=True)
    assert b.insert((Fraction(1), Fraction(2))) is None
    assert b.insert((Fraction(2), Fraction(4))) == [Fraction(2)]
    assert b.rank == 1


def test_row_basis_does_not_lose_precision():
    # these rows collapse under float arithmetic but are independent
    big = 10**20
    b = RowBasis(2)
    b.insert((Fraction(1), Fraction(big)))
    b.insert((Fraction(1), Fraction(big + 1)))
    assert b.rank == 2


def test_commutator_span_on_fibonacci():
    fs_by_len = factor_sets_up_to(get_word("fibonacci"), 2)
    span = commutator_span(fs_by_len, 2)
    # factors 00, 01, 10: the one usable bracket is 01 - 10 up to sign
    assert span.rank == 1


def test_rank_route_equals_direct_count():
    for name in ("thue-morse", "fibonacci"):
        gen = get_word(name)
        fs_by_len = factor_sets_up_to(gen, 10)
        for n in range(0, 11):
            assert lie_via_algebra(fs_by_len, n) == lie_complexity(fs_by_len[n])


def test_report_rows_are_consistent():
    rows = algebra_report(get_word("tribonacci"), 8)
    assert [r.n for r in rows] == list(range(9))
    for r in rows:
        assert r.lie_algebra == r.dim_v - r.dim_w
        assert r.match
    text = algebra_rows_to_tsv(rows)
    assert text.splitlines()[0] == "n\tdimV\tdimW\tL_algebra\tL_direct\tmatch"


def test_dimension_of_full_slice():
    rows = algebra_report(get_word("thue-morse"), 4)
    # dim V_n is the factor count p(n)
    assert [r.dim_v for r in rows] == [1, 2, 4, 6, 10]

from fractions import Fraction

import pytest

from rankgrad.errors import CapExceeded, DomainError
from rankgrad.witt import (
    build_witt_table,
    check_lasteq,
    lyndon_count,
    lyndon_words,
    necklace_identity_holds,
    witt_csv_rows,
    witt_number,
)


def _naive_lyndon_count(length):
    """Quadratic oracle: count words strictly minimal among rotations."""
    count = 0
    for bits in range(2**length):
        w = [(bits >> i) & 1 for i in range(length)]
        rotations = [tuple(w[i:] + w[:i]) for i in range(length)]
        if all(tuple(w) < r for r in rotations[1:]):
            count += 1
    return count


def test_witt_examples():
    assert witt_number(1) == 2
    assert witt_number(2) == 1
    assert witt_number(6) == 9


def test_lyndon_count_examples():
    assert lyndon_count(1) == 2
    assert lyndon_count(2) == 1
    assert lyndon_count(4) == 3
    with pytest.raises(CapExceeded):
        lyndon_count(25)
    with pytest.raises(DomainError):
        lyndon_count(0)


def test_duval_enumeration_matches_naive_rotation_check():
    for i in range(1, 13):
        assert lyndon_count(i) == _naive_lyndon_count(i)


def test_witt_equals_lyndon_up_to_twenty():
    for i in range(1, 21):
        assert witt_number(i) == lyndon_count(i)


def test_duval_words_are_sorted_and_aperiodic():
    words = list(lyndon_words(6))
    assert words == sorted(words)
    for w in words:
        assert all(w < w[i:] + w[:i] for i in range(1, len(w)))


def test_necklace_identity():
    for i in range(1, 41):
        assert necklace_identity_holds(i)


def test_table_rows_and_index():
    table = build_witt_table(2, 4)
    assert [(r.r, r.a, r.b) for r in table.rows] == [
        (2, 2, 2), (1, 3, 5), (2, 5, 10), (3, 8, 18)
    ]
    assert table.index_of_u(3) == 2**5 == 32
    with pytest.raises(DomainError):
        table.index_of_u(1)
    table3 = build_witt_table(3, 4)
    assert [(r.r, r.a, r.b) for r in table3.rows] == [
        (2, 2, 2), (1, 3, 5), (2, 5, 10), (3, 8, 18)
    ]
    assert table3.index_of_u(3) == 3**5


def test_ratio_identity_every_row():
    table = build_witt_table(2, 64)
    for row in table.rows:
        if row.ratio is None:
            continue
        assert row.ratio == Fraction(row.b, row.index_exponent) - 1
        assert row.ratio == Fraction(row.a, row.index_exponent)


def test_lasteq_report():
    table = build_witt_table(2, 64)
    rep = check_lasteq(table, Fraction(1, 10))
    assert rep.nonempty
    assert 2 in rep.witnesses
    assert rep.max_growth > Fraction(199, 100)
    # growth is eventually at least 1.9: from n = 23 on (exact table)
    tail = [r for r in table.rows if r.n >= 23]
    assert tail and all(r.ratio + 1 >= Fraction(19, 10) for r in tail)
    assert build_witt_table(2, 23).rows[21].ratio + 1 < Fraction(19, 10)
    # epsilon near 1: every row with a ratio qualifies
    rep_all = check_lasteq(table, Fraction(99, 100))
    assert rep_all.witnesses == tuple(range(2, 65))
    with pytest.raises(DomainError):
        check_lasteq(table, Fraction(3, 2))
    two_rows = build_witt_table(2, 2)
    rep2 = check_lasteq(two_rows, Fraction(1, 10))
    assert rep2.max_ratio == Fraction(3, 2)
    assert rep2.witnesses == (2,)


def test_csv_rows():
    table = build_witt_table(2, 4)
    rows = witt_csv_rows(table)
    assert rows[0] == (1, 2, 2, 2, "", "", "")
    assert rows[3] == (4, 3, 8, 18, 10, 8, 10)

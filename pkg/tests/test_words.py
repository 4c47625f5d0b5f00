import random

import pytest

from rankgrad.errors import SpecFileError
from rankgrad.words import (
    cyclic_normal_form,
    cyclic_reduce,
    format_word,
    free_reduce,
    invert,
    parse_word,
)


def test_free_reduce_examples():
    assert free_reduce((1, -1)) == ()
    assert free_reduce((1, 2, -2, 1)) == (1, 1)
    assert free_reduce((-2, 1, -1, 2)) == ()


def test_free_reduce_idempotent_random():
    rng = random.Random(7)
    for _ in range(200):
        seq = [rng.choice([1, -1, 2, -2, 3, -3]) for _ in range(rng.randrange(12))]
        w = free_reduce(seq)
        assert free_reduce(w) == w
        # reduction never leaves an adjacent inverse pair
        assert all(w[i] != -w[i + 1] for i in range(len(w) - 1))
        # length parity is preserved
        assert (len(seq) - len(w)) % 2 == 0


def test_parse_and_format_roundtrip():
    assert parse_word("abAB") == (1, 2, -1, -2)
    assert parse_word("a bA\tB") == (1, 2, -1, -2)
    assert format_word((1, 2, -1, -2)) == "abAB"
    assert parse_word("aA") == ()
    with pytest.raises(SpecFileError):
        parse_word("a1b")
    with pytest.raises(SpecFileError):
        parse_word("abc", rank=2)


def test_invert_and_concat():
    w = parse_word("abA")
    assert invert(w) == (1, -2, -1)
    assert free_reduce(w + invert(w)) == ()


def test_cyclic_reduce():
    assert cyclic_reduce(parse_word("baaB")) == (1, 1)
    assert cyclic_reduce(parse_word("aba")) == (1, 2, 1)


def test_cyclic_normal_form_conjugates_and_inverses():
    w = parse_word("abAB")
    for conj in ("a", "b", "ab", "ba", "bab"):
        u = parse_word(conj)
        conjugated = free_reduce(u + w + invert(u))
        assert cyclic_normal_form(conjugated) == cyclic_normal_form(w)
    assert cyclic_normal_form(invert(w)) == cyclic_normal_form(w)

import pytest

from preprojective.braids import (BraidWord, WordError, all_positive_words, bounded_equal,
                                  free_reduce, positive_class, positive_partition)
from preprojective.quiver import parse_quiver

A2 = parse_quiver("A2")
A3 = parse_quiver("A3")
K2 = parse_quiver("Kronecker2")


def test_parse_and_print():
    w = BraidWord.parse("1 2' 1", (1, 2))
    assert w.letters == ((1, 1), (2, -1), (1, 1))
    assert str(w) == "1 2' 1"
    assert str(BraidWord()) == "e"
    assert BraidWord.parse("1,-2", (1, 2)).letters == ((1, 1), (2, -1))


def test_unknown_vertex():
    with pytest.raises(WordError):
        BraidWord.parse("1 4", (1, 2, 3))


def test_inverse_and_reduction():
    w = BraidWord.parse("1 2 2'")
    assert (w + w.inverse()).free_reduce() == BraidWord()
    assert free_reduce(((1, 1), (2, 1), (2, -1), (1, -1))) == ()
    assert w.inverse().letters == ((2, 1), (2, -1), (1, -1))


def test_length_only_for_positive_words():
    assert BraidWord.parse("1 2 1").length() == 3
    with pytest.raises(WordError):
        BraidWord.parse("1'").length()


def test_positive_classes():
    assert positive_class("1 2 1", A2) == {(1, 2, 1), (2, 1, 2)}
    assert positive_class("1 3", A3) == {(1, 3), (3, 1)}
    assert positive_class("1 2 1", K2) == {(1, 2, 1)}


def test_partition_of_length_three_words_on_a2():
    words = [w for w in all_positive_words((1, 2), 3) if len(w) == 3]
    parts = positive_partition(words, A2)
    assert len(words) == 8
    assert len(parts) == 7


def test_bounded_equal_finds_mixed_rewrites():
    # a1 a2 a1^- = a2^- a1 a2 in the braid group of A2
    assert bounded_equal("1 2 1'", "2' 1 2", A2, budget=5)
    assert bounded_equal("1 2", "2 1", A2, budget=4, max_states=2000) is None


def test_word_counts():
    assert len(all_positive_words((1, 2), 4)) == 31

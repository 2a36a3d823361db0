import pytest

from preprojective import Gamma
from preprojective.complexes import TwistedComplex, shift
from preprojective.iso import equal_upto_iso
from preprojective.silting import (braid_to_silting, enumerate_interval, gamma_object, mutate,
                                   mutate_sequence, order_reversal_test, silting_geq,
                                   two_term_oracle, word_equality)
from preprojective.tensor import WindowInsufficient, tensor_ideal


def test_gamma_is_silting(A3):
    G = gamma_object(A3)
    assert G.is_presilting(8)
    assert G.g_vector() == (1, 1, 1)


def test_left_then_right_mutation_returns(A3):
    top = gamma_object(A3)
    for i in A3.vertices:
        back = mutate(mutate(top, i, "L"), i, "R")
        assert equal_upto_iso(back.complex, top.complex).equal


def test_left_mutation_is_the_ideal(A2):
    for i in A2.vertices:
        M = mutate(gamma_object(A2), i, "L")
        assert equal_upto_iso(M.complex, tensor_ideal(TwistedComplex.algebra(A2), i, 1)).equal
        assert M.provenance == f"mu^L_{i}(e)"


def test_mutation_sequence_matches_braid_word(A2):
    M = mutate_sequence(gamma_object(A2), "1")
    assert equal_upto_iso(M.complex, braid_to_silting(A2, "1").complex).equal


def test_unknown_label(A2):
    with pytest.raises(ValueError):
        mutate(gamma_object(A2), 7)


def test_small_window_is_reported(A2):
    # the second mutation at 1 needs maps of weight 3, invisible at W = 2
    with pytest.raises(WindowInsufficient):
        mutate_sequence(gamma_object(A2), "1 1", 4)
    M = mutate_sequence(gamma_object(A2), "1 1", 10)
    assert equal_upto_iso(M.complex, braid_to_silting(A2, "1 1").complex).equal


def test_braid_relation_on_objects(A2):
    assert word_equality(A2, "1 2 1", "2 1 2")[0] == "EqualInBQ"
    assert word_equality(A2, "1 2", "2 1")[0] == "DistinctInBQ"
    assert word_equality(A2, "1 1'", "")[0] == "EqualInBQ"
    assert word_equality(A2, "1 2 1'", "2' 1 2")[0] == "EqualInBQ"


def test_braid_words_give_presilting_objects(A3):
    for w in ("1 2 3", "2 2' 1", "3' 1 2'", "1 3 2 1"):
        assert braid_to_silting(A3, w).is_presilting(8)


def test_order(A2):
    top = gamma_object(A2)
    low = shift(top.complex, 1)
    assert silting_geq(top, low)
    r = silting_geq(low, top)
    assert not r and r.witness[0] > 0


def test_order_reversal(A3):
    assert order_reversal_test(A3, "1", "2")["pass"]
    assert order_reversal_test(A3, "", "2 1'")["pass"]
    with pytest.raises(ValueError):
        order_reversal_test(A3, "1'", "2")


@pytest.mark.parametrize("q,count", [("A2", 6), ("A3", 24)])
def test_two_term_interval_counts(q, count):
    G = Gamma(q)
    slc = enumerate_interval(G, 1, 8)
    assert slc.count == count
    assert two_term_oracle(G)[0] == count
    # every node is reached from Gamma and has as many successors as summands
    assert {a for a, _, _ in slc.edges} | {b for _, b, _ in slc.edges} == set(range(count))


def test_negative_interval_rejected(A2):
    with pytest.raises(ValueError):
        enumerate_interval(A2, -1)

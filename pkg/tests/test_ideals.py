import pytest

from preprojective import Gamma
from preprojective.ideals import (DgIdeal, IdealError, braid_relation_check, contractible_quotient,
                                  ideal_I, ideal_I_pair, ideal_I_triple, ideal_equal_upto,
                                  ideal_product, inclusion_is_quasi_iso, model_consistency,
                                  two_cycle, verify_simple_resolution)


def test_positive_ideal_is_monomial(A2):
    I, model = ideal_I(A2, 1, 1)
    assert I.monomial
    assert I.contains(A2.idem(2))
    assert not I.contains(A2.idem(1))
    assert I.contains(A2.elem(A2.letter("t1")))


def test_negative_ideal_has_only_a_model(A2):
    I, model = ideal_I(A2, 1, -1)
    assert I is None
    assert model.is_valid()


def test_two_cycles(A2):
    assert two_cycle(A2, 1, 2) == A2.elem(A2.parse_path(["a1*", "a1"]))
    assert two_cycle(A2, 2, 1) == A2.elem(A2.parse_path(["a1", "a1*"]))


def test_generators_are_closed(A3):
    for i, j in ((1, 2), (2, 3), (1, 3)):
        assert ideal_I_pair(A3, i, j).closedness_defects() == []
    assert ideal_I_triple(A3, 1, 2).closedness_defects() == []


def test_product_membership(A2):
    I, _ = ideal_I(A2, 1, 1)
    J, _ = ideal_I(A2, 2, 1)
    IJ = ideal_product(I, J)
    # e2 lies in I, and e1 in J, but a path must split through both
    assert IJ.contains(A2.elem(A2.parse_path(["a1"])))
    assert not IJ.contains(A2.idem(1))
    assert IJ.dim(0, 0, 1, 1) == 0


def test_ideal_equality_report(A2):
    P = ideal_I_pair(A2, 1, 2)
    assert ideal_equal_upto(P, P, 4)
    I, _ = ideal_I(A2, 1, 1)
    r = ideal_equal_upto(P, I, 4)
    assert not r and r.cells


def test_inclusion_into_gamma_is_not_quasi_iso(A2):
    P = ideal_I_pair(A2, 1, 2)
    whole = DgIdeal(A2, [A2.one()], "Gamma")
    r = inclusion_is_quasi_iso(P, whole, 4)
    assert not r
    assert r.cells[0]["status"] == "not a quasi-isomorphism"


@pytest.mark.parametrize("q", ["A2", "A3"])
def test_braid_relations_hold(q):
    G = Gamma(q)
    for i in G.vertices:
        for j in G.vertices:
            if i < j:
                r = braid_relation_check(G, i, j, 6)
                assert r, r.cells[:2]


def test_contractible_quotient(A3):
    assert contractible_quotient(A3, 1, 2, 6)
    assert contractible_quotient(A3, 2, 1, 6)


def test_resolution_and_models(A3):
    for i in A3.vertices:
        assert verify_simple_resolution(A3, i, 8)
        assert model_consistency(A3, i, 6)


def test_inhomogeneous_generator_rejected(A2):
    x = A2.idem(1) + A2.elem(A2.letter("a1"))
    with pytest.raises(IdealError):
        DgIdeal(A2, [x])


def test_report_json(A2):
    r = braid_relation_check(A2, 1, 2, 4)
    data = r.to_json()
    assert data["verdict"] == "pass" and data["W"] == 4

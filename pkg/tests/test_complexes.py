import json

import pytest

from preprojective import Gamma
from preprojective.complexes import (ComplexError, FiniteModule, Gen, TwistedComplex,
                                     build_simple_resolution, cone, direct_sum, hom_defect,
                                     identity_map, reduce, shift)
from preprojective.homs import HomComplex, hom_cohomology, positive_hom_vanishes, simples_table
from preprojective.iso import equal_upto_iso, is_certified_indecomposable, summands
from preprojective.tensor import ideal_model, tensor_ideal


def test_simple_resolution_shape(A2):
    P = build_simple_resolution(A2, 1)
    assert [(g.vertex, g.shift, g.weight) for g in P.gens] == [(1, 2, 2), (2, 1, 1), (1, 0, 0)]
    assert P.is_valid() and P.is_minimal()
    assert P.g_vector() == (2, -1)


@pytest.mark.parametrize("q", ["A3", "D4", "Kronecker2"])
def test_simple_resolutions_satisfy_maurer_cartan(q):
    G = Gamma(q)
    for i in G.vertices:
        assert not build_simple_resolution(G, i).mc_defect()


def test_entry_degree_is_enforced(A2):
    b = A2.elem(A2.letter("a1*"))
    # a1* runs 2 -> 1; entry (row, col) needs degree n_r - n_c + 1 = 0 and weight 1
    ok = TwistedComplex(A2, [Gen(2, 1, 1), Gen(1, 0, 0)], {(1, 0): b})
    assert ok.is_valid()
    with pytest.raises(ComplexError):
        TwistedComplex(A2, [Gen(2, 1, 1), Gen(1, 1, 0)], {(1, 0): b})
    with pytest.raises(ComplexError):
        TwistedComplex(A2, [Gen(2, 1, 1), Gen(1, 0, 1)], {(1, 0): b})


def test_json_roundtrip(A3):
    P = build_simple_resolution(A3, 2)
    data = json.loads(json.dumps(P.to_json()))
    Q = TwistedComplex.from_json(A3, data)
    assert Q.gens == P.gens
    assert {k: v for k, v in Q.delta.items()} == P.delta


def test_shift_and_sum(A2):
    P = TwistedComplex.free(A2, 1)
    S = direct_sum(shift(P, 1), TwistedComplex.free(A2, 2))
    assert S.generator_multiset() == {(1, 1): 1, (2, 0): 1}
    assert S.g_vector() == (-1, 1)


def test_cone_of_identity_reduces_to_zero(A3):
    P = build_simple_resolution(A3, 2)
    C = cone(P, P, identity_map(P))
    assert not C.mc_defect()
    assert len(reduce(C)) == 0


def test_identity_is_closed(A2):
    P = build_simple_resolution(A2, 2)
    assert not hom_defect(P, P, identity_map(P), 0)


def test_cohomology_of_gamma_a2_is_periodic(A2):
    A = TwistedComplex.algebra(A2)
    t = hom_cohomology(A, A, 10, (-4, 4))
    expect = {(0, 0): 2, (0, 1): 2}
    for k in range(1, 4):
        expect[(-k, 3 * k)] = 2
        expect[(-k, 3 * k + 1)] = 2
    assert t.nonzero() == expect


def test_hom_into_simple(A2):
    t = simples_table(build_simple_resolution(A2, 1), 8, (-4, 4))
    assert t[1].nonzero() == {(0, 0): 1, (2, -2): 1}
    assert t[2].nonzero() == {(1, -1): 1}


def test_endomorphisms_of_resolution(A2):
    P = build_simple_resolution(A2, 1)
    t = hom_cohomology(P, P, 8, (-4, 4))
    assert t.nonzero() == {(0, 0): 1, (2, -2): 1}
    ok, cell = positive_hom_vanishes(P, P, 8)
    assert not ok and cell[0] == 2


def test_hom_complex_differential_squares_to_zero(A3):
    P = build_simple_resolution(A3, 2)
    H = HomComplex(P, P)
    for w in range(-3, 4):
        for p in range(-3, 4):
            for x in H.basis(p, w):
                phi = H.as_map(p, w, {H.index(p, w)[x]: 1})
                dphi = hom_defect(P, P, phi, p)
                assert not hom_defect(P, P, dphi, p + 1)


def test_hom_table_text_and_json(A2):
    t = hom_cohomology(TwistedComplex.free(A2, 1), FiniteModule.simple(A2, 1), 4, (-2, 2))
    assert t.to_json()["cells"]
    assert "W=4" in t.to_text()


def test_bimodule_models_are_compatible(A3, D4):
    for G in (A3, D4):
        for i in G.vertices:
            for sign in (1, -1):
                assert ideal_model(G, i, sign).defects() == []


def test_tensor_ideal_is_valid(A3):
    A = TwistedComplex.algebra(A3)
    for i in A3.vertices:
        for sign in (1, -1):
            T = tensor_ideal(A, i, sign)
            assert T.is_valid() and T.is_minimal()


def test_summands_and_certification(A2):
    T = tensor_ideal(TwistedComplex.algebra(A2), 1, 1)
    parts = summands(T)
    assert len(parts) == 2
    assert all(is_certified_indecomposable(X) for X in parts)


def test_iso_detects_equal_and_distinct(A2):
    A = TwistedComplex.algebra(A2)
    assert equal_upto_iso(A, A).equal
    T = tensor_ideal(A, 1, 1)
    v = equal_upto_iso(T, A)
    assert v.distinct
    back = reduce(tensor_ideal(T, 1, -1))
    assert equal_upto_iso(back, A).equal


def test_iso_distinguishes_cones(A2):
    b = A2.elem(A2.letter("a1*"))
    gens = [Gen(2, 1, 1, "x"), Gen(1, 0, 0, "x")]
    X = TwistedComplex(A2, gens, {(1, 0): b})
    Y = TwistedComplex(A2, gens, {(1, 0): b.scale(-3)})
    Z = TwistedComplex(A2, gens, {})
    assert equal_upto_iso(X, Y).equal
    assert not equal_upto_iso(X, Z).equal

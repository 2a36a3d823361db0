from fractions import Fraction

import pytest

from preprojective.algebra import Gamma, differential, multiply
from preprojective.field import Field
from preprojective.linalg import (Echelon, NoSolution, SparseMatrix, kernel_basis, rank,
                                  solve_list)
from preprojective.quiver import QuiverError, parse_quiver


# ---- fields ---------------------------------------------------------------

def test_rational_field_is_exact():
    Q = Field.parse("Q")
    assert Q.add(Fraction(1, 3), Fraction(2, 3)) == 1
    assert Q.inv(Fraction(2, 7)) == Fraction(7, 2)
    assert Q("3/6") == Fraction(1, 2)


def test_prime_field():
    F = Field.parse("Fp:7")
    assert F.mul(3, 5) == 1
    assert F.inv(3) == 5
    assert F(Fraction(1, 2)) == 4
    assert F.name == "Fp:7"


@pytest.mark.parametrize("spec", ["Fp:4", "Fp:1", "R", "C"])
def test_bad_fields_rejected(spec):
    with pytest.raises(ValueError):
        Field.parse(spec)


# ---- quivers --------------------------------------------------------------

def test_builtin_quivers():
    assert parse_quiver("A3").vertices == (1, 2, 3)
    assert len(parse_quiver("D4").arrows) == 3
    assert parse_quiver("E6").is_dynkin()
    assert not parse_quiver("Kronecker2").is_dynkin()
    assert parse_quiver("Kronecker3").edges_between(1, 2) == 3


def test_arrow_list_and_json_agree():
    a = parse_quiver("1->2, 2->3")
    b = parse_quiver('{"vertices": [1, 2, 3], "arrows": [{"id": "a1", "from": 1, "to": 2},'
                     ' {"id": "a2", "from": 2, "to": 3}]}')
    assert a.to_json() == b.to_json()
    assert parse_quiver("1->2->3").to_json() == a.to_json()


@pytest.mark.parametrize("text", ["1->1", "1->2, 2->1", "1->2,,2->3", "1->", "{bad json",
                                  "Z5", ""])
def test_invalid_quivers(text):
    with pytest.raises(QuiverError):
        parse_quiver(text)


def test_quiver_error_reports_position():
    with pytest.raises(QuiverError) as exc:
        parse_quiver("1->2, 2->")
    assert exc.value.position == 5


# ---- the algebra ----------------------------------------------------------

def test_letter_bidegrees(A2):
    kinds = {l.name: (l.degree, l.weight) for l in A2.letters}
    assert kinds == {"a1": (0, 1), "a1*": (0, 1), "t1": (-1, 2), "t2": (-1, 2)}


def test_loop_differential_on_a2(A2):
    # the source of a1 sees -a1* a1, the target sees +a1 a1*
    d1 = A2.d_loop(1)
    d2 = A2.d_loop(2)
    assert d1 == A2.elem(A2.parse_path(["a1*", "a1"]), -1)
    assert d2 == A2.elem(A2.parse_path(["a1", "a1*"]))


def test_sum_of_loop_differentials_is_commutator(A3):
    total = A3.zero()
    for v in A3.vertices:
        total = total + A3.d_loop(v)
    expect = A3.zero()
    for a in A3.quiver.arrows:
        expect = expect + A3.elem(A3.parse_path([a.id, a.id + "*"]))
        expect = expect - A3.elem(A3.parse_path([a.id + "*", a.id]))
    assert total == expect


def test_d_squared_vanishes_on_low_weight_paths(D4):
    for w in range(6):
        for p in range(-(w // 2), 1):
            for s in D4.vertices:
                for t in D4.vertices:
                    for q in D4.weight_slice(p, w, s, t):
                        assert not differential(differential(D4.elem(q)))


def test_leibniz_rule(A3):
    paths = [q for w in range(5) for p in range(-(w // 2), 1)
             for s in A3.vertices for t in A3.vertices for q in A3.weight_slice(p, w, s, t)]
    for x in paths[:40]:
        for y in paths[:40]:
            if x[1] != y[0]:
                continue
            X, Y = A3.elem(x), A3.elem(y)
            lhs = differential(multiply(X, Y))
            sign = -1 if A3.degree(x) % 2 else 1
            rhs = multiply(differential(X), Y) + multiply(X, differential(Y)).scale(sign)
            assert lhs == rhs


def test_path_counts_match_hilbert_series_of_a2(A2):
    # total dimension in weight w of Gamma(A2): weight 0 -> 2, weight 1 -> 2
    def dim(w):
        return sum(len(A2.weight_slice(p, w, s, t)) for p in range(-(w // 2), 1)
                   for s in A2.vertices for t in A2.vertices)
    assert [dim(w) for w in range(4)] == [2, 2, 4, 6]


def test_element_parsing(A2):
    x = A2.parse_element([{"path": ["a1", "a1*"], "coeff": "1/2"}, {"vertex": 1, "path": []}])
    assert x.terms[A2.parse_path(["a1", "a1*"])] == Fraction(1, 2)
    with pytest.raises(ValueError):
        A2.parse_path(["a1", "a1"])


# ---- linear algebra -------------------------------------------------------

def test_rank_and_kernel():
    m = SparseMatrix.from_dense([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    assert rank(m) == 2
    ker = kernel_basis(m)
    assert len(ker) == 1
    assert all(v == 0 for v in m.apply(ker[0]).values())


def test_solve_and_no_solution():
    m = SparseMatrix.from_dense([[1, 1], [0, 2]])
    assert solve_list(m, [3, 4]) == [1, 2]
    singular = SparseMatrix.from_dense([[1, 1], [1, 1]])
    with pytest.raises(NoSolution):
        solve_list(singular, [1, 0])


def test_echelon_over_prime_field():
    F = Field(5)
    e = Echelon(F)
    assert e.add({0: 2, 1: 1}) is None
    assert e.add({0: 4, 1: 2}) == {}
    assert e.contains({0: 1, 1: 3})
    assert len(e) == 1

from fractions import Fraction

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from preprojective import Gamma
from preprojective.algebra import differential, multiply
from preprojective.braids import BraidWord, _relations, _rewrites, free_reduce, positive_class
from preprojective.complexes import TwistedComplex, build_simple_resolution, cone, identity_map, reduce, shift
from preprojective.field import Field
from preprojective.iso import equal_upto_iso
from preprojective.linalg import SparseMatrix, kernel_basis, rank, solve_list
from preprojective.silting import braid_to_silting, word_equality

G3 = Gamma("A3")
G2 = Gamma("A2")
PATHS = [q for w in range(6) for p in range(-(w // 2), 1) for s in G3.vertices
         for t in G3.vertices for q in G3.weight_slice(p, w, s, t)]

slow = settings(max_examples=25, deadline=None,
                suppress_health_check=[HealthCheck.too_slow])

small = st.integers(-5, 5)


@given(st.integers(1, 100), st.sampled_from([2, 3, 5, 7, 101]))
def test_prime_field_inverse(a, p):
    F = Field(p)
    if a % p:
        assert F.mul(a, F.inv(a)) == 1


@given(st.fractions(max_denominator=20), st.fractions(max_denominator=20))
def test_rationals_agree_with_fraction(a, b):
    Q = Field()
    assert Fraction(Q.add(a, b)) == a + b
    assert Fraction(Q.mul(a, b)) == a * b


@given(st.lists(st.lists(small, min_size=4, max_size=4), min_size=1, max_size=5))
def test_rank_nullity(rows):
    m = SparseMatrix.from_dense(rows)
    ker = kernel_basis(m)
    assert rank(m) + len(ker) == 4
    for v in ker:
        assert not any(m.apply(v).values())


@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=3, max_size=3),
       st.lists(small, min_size=3, max_size=3))
def test_solve_recovers_image(rows, x):
    m = SparseMatrix.from_dense(rows)
    b = [sum(r[k] * x[k] for k in range(3)) for r in rows]
    y = solve_list(m, b)
    assert [sum(r[k] * y[k] for k in range(3)) for r in rows] == b


def _element(terms):
    out = G3.zero()
    for k, c in terms:
        out = out + G3.elem(PATHS[k], c)
    return out


elements = st.lists(st.tuples(st.integers(0, len(PATHS) - 1), st.integers(-3, 3)), max_size=4)


@given(elements)
def test_d_squared_zero(terms):
    assert not differential(differential(_element(terms)))


@given(st.integers(0, len(PATHS) - 1), st.integers(0, len(PATHS) - 1))
def test_leibniz(a, b):
    x, y = PATHS[a], PATHS[b]
    X, Y = G3.elem(x), G3.elem(y)
    sign = -1 if G3.degree(x) % 2 else 1
    assert differential(multiply(X, Y)) == \
        multiply(differential(X), Y) + multiply(X, differential(Y)).scale(sign)


words = st.lists(st.tuples(st.sampled_from([1, 2, 3]), st.sampled_from([1, -1])), max_size=6)


@given(words)
def test_free_reduce_is_idempotent(w):
    r = free_reduce(tuple(w))
    assert free_reduce(r) == r
    assert free_reduce(r + BraidWord(r).inverse().letters) == ()


@given(st.lists(st.sampled_from([1, 2, 3]), max_size=5), st.data())
def test_rewriting_stays_in_class(w, data):
    q = G3.quiver
    cls = positive_class(BraidWord.positive(w), q)
    moves = list(_rewrites(tuple(w), _relations(q)))
    if moves:
        assert data.draw(st.sampled_from(moves)) in cls


@slow
@given(st.lists(st.tuples(st.sampled_from([1, 2]), st.sampled_from([1, -1])), max_size=3))
def test_word_times_inverse_is_trivial(w):
    w = BraidWord(tuple(w))
    T = braid_to_silting(G2, w + w.inverse()).complex
    assert equal_upto_iso(T, TwistedComplex.algebra(G2)).equal


@slow
@given(st.lists(st.sampled_from([1, 2]), min_size=1, max_size=4), st.data())
def test_relation_moves_preserve_the_object(w, data):
    moves = list(_rewrites(tuple(w), _relations(G2.quiver)))
    if not moves:
        return
    other = data.draw(st.sampled_from(moves))
    assert word_equality(G2, BraidWord.positive(w), BraidWord.positive(other))[0] == "EqualInBQ"


@slow
@given(st.sampled_from([1, 2, 3]), st.integers(-2, 2))
def test_cone_of_identity_is_contractible(i, n):
    P = shift(build_simple_resolution(G3, i), n)
    C = cone(P, P, identity_map(P))
    assert not C.mc_defect()
    assert len(reduce(C)) == 0


@slow
@given(words)
def test_braid_objects_are_valid(w):
    M = braid_to_silting(G3, BraidWord(tuple(w)))
    assert M.complex.is_valid()
    assert M.complex.is_minimal()

"""Deciding whether two twisted complexes are isomorphic in per(Gamma), ignoring weights.

Both sides are first brought to minimal form.  Minimal complexes have no
scalar entries, so the scalar (weight 0, trivial path) part of a closed map
only depends on its cohomology class.  A summand X whose weight-0 degree-0
endomorphisms are one-dimensional has local endomorphism ring, and X is
isomorphic to Y(s) iff some composite X -> Y(s) -> X of closed maps has
nonzero scalar part.  When every summand on both sides is certified this way
the answer is exact (Krull-Schmidt reduces it to a bipartite matching).
Otherwise a seeded random closed map with invertible scalar part is tried,
and failing that the verdict is Unknown unless a weight-free invariant
separates the two sides.
"""

import random
from collections import Counter
from dataclasses import dataclass, field as dc_field

from .complexes import reduce
from .homs import HomComplex
from .linalg import Echelon


@dataclass
class Verdict:
    kind: str  # "Equal", "Distinct" or "Unknown"
    witness: str = ""
    isos: list = dc_field(default_factory=list)  # (T-summand, S-summand, weight offset, map)

    def __bool__(self):
        return self.kind == "Equal"

    @property
    def equal(self):
        return self.kind == "Equal"

    @property
    def distinct(self):
        return self.kind == "Distinct"

    def __str__(self):
        return self.kind + (f" ({self.witness})" if self.witness else "")


def summands(T):
    """Split T into pieces: labelled summands if labels are present, else components."""
    labels = T.labels()
    if None not in labels and len(labels) > 1:
        parts = [T.summand(l) for l in labels]
        out = []
        for P in parts:
            out.extend(P.restrict(c) for c in P.components())
        return out
    return [T.restrict(c) for c in T.components()]


def _weight_free(T):
    return tuple(sorted(Counter((g.vertex, g.shift) for g in T.gens).items(), key=repr))


def _graded(T):
    return sorted(((g.vertex, g.shift, g.weight) for g in T.gens), key=repr)


def weight_offset(X, Y):
    """The weight shift s with graded generators of X(s) equal to those of Y, or None."""
    if len(X.gens) != len(Y.gens) or not X.gens:
        return 0 if not X.gens and not Y.gens else None
    s = min(g.weight for g in Y.gens) - min(g.weight for g in X.gens)
    if _graded(X.with_weight_offset(s)) != _graded(Y):
        return None
    return s


def is_certified_indecomposable(X):
    """Weight-0 degree-0 endomorphisms of the minimal complex X are scalars."""
    return bool(X.gens) and HomComplex(X, X).h_dim(0, 0) == 1


def _scalar_matrix(H, vec):
    """Scalar parts {(r, c): coeff} of a closed map given by a vector in cell (0, 0)."""
    out = {}
    basis = H.basis(0, 0)
    for k, a in vec.items():
        r, c, path = basis[k]
        if not path[2]:
            out[(r, c)] = a
    return out


def _exact_iso(X, Y, s):
    """An isomorphism X(s) -> Y as a map dict, or None if there is none (X certified)."""
    Xs = X.with_weight_offset(s)
    F = X.gamma.field
    H1, H2 = HomComplex(Xs, Y), HomComplex(Y, Xs)
    Z1, Z2 = H1.cocycles(0, 0), H2.cocycles(0, 0)
    if not Z1 or not Z2:
        return None
    # scalar part of (psi o phi)[0, 0] = sum_k psi[0, k] phi[k, 0]
    cols = [_scalar_matrix(H1, z) for z in Z1]
    rows = [_scalar_matrix(H2, z) for z in Z2]
    for a, phi in enumerate(cols):
        col0 = {k: v for (k, c), v in phi.items() if c == 0}
        if not col0:
            continue
        for psi in rows:
            lam = 0
            for (r, k), v in psi.items():
                if r == 0 and k in col0:
                    lam = F.add(lam, F.mul(v, col0[k]))
            if lam != 0:
                return H1.as_map(0, 0, Z1[a])
    return None


def _scalar_invertible(X, Y, scal, field):
    """Whether the scalar part of a map X -> Y is invertible (blockwise by graded generator)."""
    keys = {}
    for k, g in enumerate(X.gens):
        keys.setdefault((g.vertex, g.shift, g.weight), [[], []])[0].append(k)
    for k, g in enumerate(Y.gens):
        keys.setdefault((g.vertex, g.shift, g.weight), [[], []])[1].append(k)
    for cs, rs in keys.values():
        if len(cs) != len(rs):
            return False
        ech = Echelon(field)
        for c in cs:
            col = {rs.index(r): v for (r, cc), v in scal.items() if cc == c and r in rs}
            if ech.add(col) is not None:
                return False
    return True


def _random_iso(X, Y, s, rng, tries=3):
    Xs = X.with_weight_offset(s)
    F = X.gamma.field
    H = HomComplex(Xs, Y)
    Z = H.cocycles(0, 0)
    if not Z:
        return None
    for _ in range(tries):
        vec = {}
        for z in Z:
            c = F(rng.randint(-10 ** 6, 10 ** 6))
            for k, v in z.items():
                vec[k] = F.add(vec.get(k, 0), F.mul(c, v))
        vec = {k: v for k, v in vec.items() if v != 0}
        if _scalar_invertible(Xs, Y, _scalar_matrix(H, vec), F):
            return H.as_map(0, 0, vec)
    return None


def _matching(n, edges):
    """Perfect matching in a bipartite graph given as edges[i] = {j: payload}."""
    match = {}

    def augment(i, seen):
        for j in edges[i]:
            if j in seen:
                continue
            seen.add(j)
            if j not in match or augment(match[j], seen):
                match[j] = i
                return True
        return False

    for i in range(n):
        if not augment(i, set()):
            return None
    return {i: j for j, i in match.items()}


def equal_upto_iso(T, S, seed=0):
    """Three-valued comparison of T and S in per(Gamma), weights ignored."""
    if not T.is_minimal():
        T = reduce(T)
    if not S.is_minimal():
        S = reduce(S)
    gT, gS = T.generator_multiset(), S.generator_multiset()
    if gT != gS:
        diff = (gT - gS) + (gS - gT)
        return Verdict("Distinct", f"generator multisets differ at {sorted(diff, key=repr)[0]}")
    if not T.gens:
        return Verdict("Equal")
    A, B = summands(T), summands(S)
    certified = all(is_certified_indecomposable(X) for X in A + B)
    rng = random.Random(seed)
    edges = []
    for X in A:
        row = {}
        for j, Y in enumerate(B):
            s = weight_offset(X, Y)
            if s is None:
                continue
            phi = _exact_iso(X, Y, s) if certified else _random_iso(X, Y, s, rng)
            if phi is not None:
                row[j] = (s, phi)
        edges.append(row)
    if len(A) == len(B):
        m = _matching(len(A), edges)
        if m is not None:
            return Verdict("Equal", "", [(i, j, *edges[i][j]) for i, j in sorted(m.items())])
    if certified:
        return Verdict("Distinct", "no summand-wise isomorphism (exact, Krull-Schmidt)")
    sa = sorted((_weight_free(X) for X in A), key=repr)
    sb = sorted((_weight_free(Y) for Y in B), key=repr)
    if sa == sb or len(A) != len(B):
        return Verdict("Unknown", "invariants agree but no isomorphism was found")
    return Verdict("Unknown", "summand signatures differ but summands are not certified")

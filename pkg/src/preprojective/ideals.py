"""Two-sided dg ideals of Gamma, read through finite bidegree slices.

A slice is the part of an ideal inside one cell (degree, weight, source,
target) of Gamma.  Ideals generated by paths (and idempotents) are spanned
by paths, and so are their products: a path lies in I*J iff it splits as a
path of I followed on the right by a path of J.  Those slices are plain path
subsets.  Ideals with other generators fall back to spans of p*g*q.
"""

from dataclasses import dataclass, field as dc_field

from .algebra import Element
from .complexes import TwistedComplex, build_simple_resolution, hom_defect, ideal_plus_block
from .linalg import Echelon, rank_of_vectors
from .tensor import ideal_complex


class IdealError(ValueError):
    pass


def _as_path(x):
    """The single path of a monomial element (coefficient ignored), else None."""
    if len(x.terms) == 1:
        return next(iter(x.terms))
    return None


def _contains_sub(letters, word):
    n, m = len(letters), len(word)
    return any(letters[k:k + m] == word for k in range(n - m + 1))


def cells_upto(gamma, W):
    """All (degree, weight, source, target) cells with weight <= W and a path in them."""
    out = []
    for w in range(W + 1):
        for p in range(-(w // 2), 1):
            for s in gamma.vertices:
                for t in gamma.vertices:
                    if gamma.weight_slice(p, w, s, t):
                        out.append((p, w, s, t))
    return out


class Ideal:
    """Common interface: ``slice(cell)`` returns an echelon basis of index vectors
    over ``gamma.weight_slice(*cell)``; monomial ideals also answer ``has_path``."""

    gamma = None
    name = ""
    monomial = False

    def slice(self, p, w, s, t):
        key = (p, w, s, t)
        cached = self._slices.get(key)
        if cached is None:
            cached = self._compute_slice(p, w, s, t)
            self._slices[key] = cached
        return cached

    def dim(self, p, w, s, t):
        return len(self.slice(p, w, s, t))

    def _compute_slice(self, p, w, s, t):
        paths = self.gamma.weight_slice(p, w, s, t)
        return [{k: self.gamma.field(1)} for k, q in enumerate(paths) if self.has_path(q)]

    def contains(self, x):
        """Whether the element x lies in the ideal (checked cell by cell)."""
        G = self.gamma
        for (p, w) in x.bidegrees():
            comp = x.component(p, w)
            by_cell = {}
            for q, a in comp.terms.items():
                by_cell.setdefault((q[1], q[0]), {})[q] = a
            for (s, t), terms in by_cell.items():
                paths = G.weight_slice(p, w, s, t)
                idx = {q: k for k, q in enumerate(paths)}
                vec = {idx[q]: a for q, a in terms.items()}
                ech = Echelon(G.field)
                for v in self.slice(p, w, s, t):
                    ech.add(v)
                if not ech.contains(vec):
                    return False
        return True

    def __mul__(self, other):
        return ProductIdeal([self, other])


class DgIdeal(Ideal):
    """The two-sided ideal generated by homogeneous elements (``Element``s)."""

    def __init__(self, gamma, generators, name=""):
        self.gamma = gamma
        self.generators = [g for g in generators if g.terms]
        for g in self.generators:
            if not g.is_homogeneous():
                raise IdealError(f"generator {g} is not bihomogeneous")
        self.name = name
        self._paths = [_as_path(g) for g in self.generators]
        self.monomial = all(q is not None for q in self._paths)
        self._verts = {q[0] for q in self._paths if q is not None and not q[2]}
        self._words = [q[2] for q in self._paths if q is not None and q[2]]
        self._slices = {}

    def __repr__(self):
        return f"DgIdeal({self.name or self.generators})"

    def has_path(self, q):
        if not self.monomial:
            raise IdealError("path membership is only defined for monomial ideals")
        if q[0] in self._verts or q[1] in self._verts:
            return True
        G = self.gamma
        letters = q[2]
        if self._verts and any(G.letters[k].target in self._verts for k in letters):
            return True
        return any(_contains_sub(letters, wd) for wd in self._words)

    def _compute_slice(self, p, w, s, t):
        if self.monomial:
            return Ideal._compute_slice(self, p, w, s, t)
        G = self.gamma
        paths = G.weight_slice(p, w, s, t)
        idx = {q: k for k, q in enumerate(paths)}
        ech = Echelon(G.field)
        for g in self.generators:
            dg, wg = next(iter(g.bidegrees()))
            gs, gt = next(iter(g.terms))[1], next(iter(g.terms))[0]
            for wl in range(0, w - wg + 1):
                for dl in range(-(wl // 2), 1):
                    lefts = G.weight_slice(dl, wl, gt, t)
                    rights = G.weight_slice(p - dg - dl, w - wg - wl, s, gs)
                    for l in lefts:
                        for r in rights:
                            x = G.elem(l) * g * G.elem(r)
                            ech.add({idx[q]: a for q, a in x.terms.items()})
        return ech.basis()

    def closedness_defects(self, W=None):
        """Generators whose differential is not in the ideal."""
        return [g for g in self.generators if not self.contains(self.gamma.d(g))]


class ProductIdeal(Ideal):
    """I_1 I_2 ... I_k."""

    def __init__(self, factors, name=""):
        flat = []
        for f in factors:
            flat.extend(f.factors if isinstance(f, ProductIdeal) else [f])
        self.factors = flat
        self.gamma = flat[0].gamma
        self.name = name or "*".join(f.name or "?" for f in flat)
        self.monomial = all(f.monomial for f in flat)
        self._slices = {}
        self._memo = {}

    def __repr__(self):
        return f"ProductIdeal({self.name})"

    def has_path(self, q):
        return self._split(q, 0)

    def _split(self, q, k):
        key = (q, k)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        f = self.factors[k]
        if k == len(self.factors) - 1:
            res = f.has_path(q)
        else:
            G = self.gamma
            letters = q[2]
            res = False
            # q = x * y: x the first len-m letters (ends at target), y the rest
            for m in range(len(letters), -1, -1):
                y_letters = letters[len(letters) - m:] if m else ()
                x_letters = letters[:len(letters) - m]
                mid = G.letters[x_letters[-1]].source if x_letters else q[0]
                x = (q[0], mid, x_letters)
                y = (mid, q[1], y_letters)
                if f.has_path(x) and self._split(y, k + 1):
                    res = True
                    break
        self._memo[key] = res
        return res

    def _compute_slice(self, p, w, s, t):
        if self.monomial:
            return Ideal._compute_slice(self, p, w, s, t)
        # generic: span of x*y with x in the first factor, y in the product of the rest
        G = self.gamma
        first = self.factors[0]
        rest = self.factors[1] if len(self.factors) == 2 else ProductIdeal(self.factors[1:])
        paths = G.weight_slice(p, w, s, t)
        idx = {q: k for k, q in enumerate(paths)}
        ech = Echelon(G.field)
        for m in G.vertices:
            for w1 in range(w + 1):
                for p1 in range(-(w1 // 2), 1):
                    X = _elements(first, p1, w1, m, t)
                    if not X:
                        continue
                    Y = _elements(rest, p - p1, w - w1, s, m)
                    for x in X:
                        for y in Y:
                            z = x * y
                            ech.add({idx[q]: a for q, a in z.terms.items()})
        return ech.basis()


def _elements(I, p, w, s, t):
    G = I.gamma
    if w < 0:
        return []
    paths = G.weight_slice(p, w, s, t)
    return [Element(G, {paths[k]: a for k, a in v.items()}) for v in I.slice(p, w, s, t)]


# ---- the ideals that occur -------------------------------------------------

def _others(gamma, skip):
    return [gamma.idem(v) for v in gamma.vertices if v not in skip]


def ideal_I(gamma, i, sign=1):
    """I_i = Gamma(1-e_i)Gamma + Gamma t_i Gamma (sign +) together with its
    right-module model; for sign - only the model Gamma (x) I_i^- exists here."""
    if i not in gamma.vertices:
        raise IdealError(f"unknown vertex {i!r}")
    model = ideal_complex(gamma, i, sign)
    if sign in (1, "+"):
        ideal = DgIdeal(gamma, _others(gamma, {i}) + [gamma.elem(gamma.loop_letter(i))], f"I_{i}")
        return ideal, model
    return None, model


def _single_edge(gamma, i, j):
    edges = [a for a in gamma.quiver.arrows if {a.source, a.target} == {i, j}]
    if len(edges) > 1:
        raise IdealError(f"vertices {i} and {j} are joined by {len(edges)} arrows")
    return edges[0] if edges else None


def two_cycle(gamma, i, j):
    """The path i -> j -> i along the unique edge, as an element at i."""
    a = _single_edge(gamma, i, j)
    if a is None:
        raise IdealError(f"no edge between {i} and {j}")
    rho, rho_s = gamma.arrow_letter(a.id), gamma.dual_letter(a.id)
    if a.source == i:
        return gamma.elem(gamma.concat(rho_s, rho))
    return gamma.elem(gamma.concat(rho, rho_s))


def ideal_I_pair(gamma, i, j):
    """I(i,j) of the braid relation at i, j."""
    G = gamma
    gens = _others(G, {i, j}) + [G.elem(G.loop_letter(i)), G.elem(G.loop_letter(j))]
    if _single_edge(G, i, j) is not None:
        gens += [two_cycle(G, i, j), two_cycle(G, j, i)]
    return DgIdeal(G, gens, f"I({i},{j})")


def ideal_I_triple(gamma, i, j):
    """I_{i,j,i}: the paths of I(i,j) other than t_i and the 2-cycle at i.

    This is the ideal that I_i I_j I_i equals in the one-edge case.
    """
    G = gamma
    ti, tj = G.elem(G.loop_letter(i)), G.elem(G.loop_letter(j))
    ci, cj = two_cycle(G, i, j), two_cycle(G, j, i)
    gens = _others(G, {i, j}) + [ti * ti, ti * ci, ci * ti, tj, cj]
    # t_i followed or preceded by the letter to or from j; without these the
    # product I_i I_j I_i is strictly larger (e.g. rho t_i = rho e_i t_i)
    for l in G.letters:
        if l.kind == "loop" or {l.source, l.target} != {i, j}:
            continue
        h = G.elem(G.letter(l.name))
        gens.append(h * ti if l.source == i else ti * h)
    return DgIdeal(G, gens, f"I_{{{i},{j},{i}}}")


def ideal_slice(I, degree, weight, source, target):
    """Basis of the slice as a list of Elements."""
    return _elements(I, degree, weight, source, target)


def ideal_product(*ideals):
    return ProductIdeal(list(ideals))


@dataclass
class Report:
    check: str
    params: dict
    W: int
    cells: list = dc_field(default_factory=list)  # failing or notable cells
    verdict: bool = True

    def __bool__(self):
        return self.verdict

    def fail(self, cell, status, witness=None):
        self.verdict = False
        entry = {"bidegree": list(cell), "status": status}
        if witness is not None:
            entry["witness"] = witness
        self.cells.append(entry)

    def to_json(self):
        return {"check": self.check, "params": self.params, "W": self.W,
                "cells": self.cells, "verdict": "pass" if self.verdict else "fail"}


def _same_span(A, B, field):
    if len(A) != len(B):
        return False
    ech = Echelon(field)
    for v in A:
        ech.add(v)
    return all(ech.contains(v) for v in B)


def ideal_equal_upto(I, J, W):
    """Compare I and J in every cell of weight <= W; failing cells are listed."""
    G = I.gamma
    rep = Report("ideal-equality", {"left": I.name, "right": J.name}, W)
    for cell in cells_upto(G, W):
        a, b = I.slice(*cell), J.slice(*cell)
        if not _same_span(a, b, G.field):
            rep.fail(cell, "differ", {"dims": [len(a), len(b)]})
    return rep


# ---- cohomology of slice complexes ------------------------------------------

def _d_column(G, q, target_idx):
    return {target_idx[r]: a for r, a in G.d_path(q).items()}


def _cell_data(G, I, p, w, s, t):
    """(Z, B) of the slice complex of I at (p, w, s, t), in path coordinates of Gamma."""
    F = G.field
    here = G.weight_slice(p, w, s, t)
    up = {r: k for k, r in enumerate(G.weight_slice(p + 1, w, s, t))}
    here_idx = {r: k for k, r in enumerate(here)}
    down_paths = G.weight_slice(p - 1, w, s, t)
    elems = [Element(G, {here[k]: a for k, a in v.items()}) for v in I.slice(p, w, s, t)]
    cols = []
    for x in elems:
        col = {}
        for r, a in G.d(x).terms.items():
            col[up[r]] = a
        cols.append(col)
    ech = Echelon(F, track=True)
    Z = []
    for col in cols:
        combo = ech.add(col)
        if combo is not None:
            vec = {}
            for k, c in combo.items():
                for key, b in I.slice(p, w, s, t)[k].items():
                    vec[key] = F.add(vec.get(key, 0), F.mul(c, b))
            Z.append({k: v for k, v in vec.items() if v != 0})
    B = []
    for v in I.slice(p - 1, w, s, t):
        x = Element(G, {down_paths[k]: a for k, a in v.items()})
        dx = G.d(x)
        if dx.terms:
            B.append({here_idx[r]: a for r, a in dx.terms.items()})
    return Z, B


def inclusion_is_quasi_iso(A, B_ideal, W):
    """Whether A subset B induces isomorphisms on every slice cohomology up to weight W."""
    G = A.gamma
    F = G.field
    rep = Report("quasi-iso", {"sub": A.name, "ambient": B_ideal.name}, W)
    for cell in cells_upto(G, W):
        ZA, BA = _cell_data(G, A, *cell)
        ZB, BB = _cell_data(G, B_ideal, *cell)
        zb = rank_of_vectors(ZB, F)
        za = rank_of_vectors(ZA, F)
        ba = rank_of_vectors(BA, F)
        bb = rank_of_vectors(BB, F)
        sum_dim = rank_of_vectors(ZA + BB, F)
        # surjective: Z_B = Z_A + B_B ; injective: Z_A meet B_B = B_A
        if sum_dim != zb or za + bb - sum_dim != ba:
            rep.fail(cell, "not a quasi-isomorphism",
                     {"H_sub": za - ba, "H_ambient": zb - bb})
    return rep


def braid_relation_check(gamma, i, j, W=8):
    """Ideal-level braid relation at (i, j): commuting or length-3 case."""
    G = gamma
    if i == j:
        raise IdealError("braid relation needs two distinct vertices")
    edge = _single_edge(G, i, j)
    Ii, _ = ideal_I(G, i)
    Ij, _ = ideal_I(G, j)
    rep = Report("braid-relation", {"quiver": G.quiver.name, "i": i, "j": j,
                                    "adjacent": edge is not None}, W)
    sub = []
    if edge is None:
        pair = ideal_I_pair(G, i, j)
        sub.append(("I_iI_j = I_jI_i", ideal_equal_upto(Ii * Ij, Ij * Ii, W)))
        sub.append(("I_iI_j = I(i,j)", ideal_equal_upto(Ii * Ij, pair, W)))
    else:
        pair = ideal_I_pair(G, i, j)
        iji, jij = Ii * Ij * Ii, Ij * Ii * Ij
        sub.append(("I_iI_jI_i = I_{i,j,i}", ideal_equal_upto(iji, ideal_I_triple(G, i, j), W)))
        sub.append(("I_jI_iI_j = I_{j,i,j}", ideal_equal_upto(jij, ideal_I_triple(G, j, i), W)))
        sub.append(("I_iI_jI_i -> I(i,j)", inclusion_is_quasi_iso(iji, pair, W)))
        sub.append(("I_jI_iI_j -> I(i,j)", inclusion_is_quasi_iso(jij, pair, W)))
        sub.append(("I(i,j)/I_{i,j,i} contractible", contractible_quotient(G, i, j, W)))
        sub.append(("I(j,i)/I_{j,i,j} contractible", contractible_quotient(G, j, i, W)))
    rep.params["subchecks"] = {name: bool(r) for name, r in sub}
    for name, r in sub:
        for c in r.cells:
            rep.fail(c["bidegree"], f"{name}: {c['status']}", c.get("witness"))
    return rep


def contractible_quotient(gamma, i, j, W=8):
    """I(i,j)/I_{i,j,i} is K{t_i} + K{c}, d(t_i) = +-c, in cells (-1,2,i,i) and (0,2,i,i)."""
    G = gamma
    big, small = ideal_I_pair(G, i, j), ideal_I_triple(G, i, j)
    rep = Report("contractible-quotient", {"i": i, "j": j}, W)
    expected = {(-1, 2, i, i): 1, (0, 2, i, i): 1}
    for cell in cells_upto(G, W):
        q = big.dim(*cell) - small.dim(*cell)
        if q != expected.get(cell, 0):
            rep.fail(cell, "quotient dimension", {"dim": q})
    ti = G.elem(G.loop_letter(i))
    c = two_cycle(G, i, j)
    # d(t_i) = -c when the edge leaves i and +c when it arrives at i
    sign = -1 if _single_edge(G, i, j).source == i else 1
    if not small.contains(G.d(ti) - c.scale(sign)):
        rep.fail((0, 2, i, i), "d(t_i) is not +-c modulo I_{i,j,i}")
    if small.contains(c):
        rep.fail((0, 2, i, i), "c lies in I_{i,j,i}")
    return rep


# ---- the simple resolution --------------------------------------------------

def verify_simple_resolution(gamma, i, W=10):
    """Exactness of 0 -> L -> e_i Gamma -> S_i -> 0 in every cell of weight <= W."""
    G = gamma
    F = G.field
    L, incl = ideal_plus_block(G, i)
    rep = Report("simple-resolution", {"quiver": G.quiver.name, "i": i}, W)
    target = TwistedComplex.free(G, i)
    bad = hom_defect(L, target, {(0, k): x for k, x in enumerate(incl)}, 0)
    if bad:
        rep.fail(("chain-map",), "L -> e_i Gamma is not closed")
    P = build_simple_resolution(G, i)
    if P.mc_defect():
        rep.fail(("maurer-cartan",), "pS_i fails Maurer-Cartan")
    for w in range(W + 1):
        for p in range(-(w // 2), 1):
            for u in G.vertices:
                cod = G.weight_slice(p, w, u, i)
                idx = {q: k for k, q in enumerate(cod)}
                cols = []
                for g, x in zip(L.gens, incl):
                    for q in G.weight_slice(p + g.shift, w - g.weight, u, g.vertex):
                        img = x * G.elem(q)
                        cols.append({idx[r]: a for r, a in img.terms.items()})
                r = rank_of_vectors(cols, F)
                ker = len(cod) - (1 if (p, w, u) == (0, 0, i) else 0)
                if r != len(cols):
                    rep.fail((p, w, u, i), "L -> e_i Gamma not injective", {"rank": r, "dim": len(cols)})
                elif r != ker:
                    rep.fail((p, w, u, i), "image differs from the kernel", {"rank": r, "kernel": ker})
    return rep


def model_consistency(gamma, i, W=8):
    """Slices of I_i against the bigraded pieces of its right-module model.

    The summand of Gamma (x) I_i labelled v is a free graded module on its
    generators, so its (p, w) part at source u has dimension
    sum_g #paths(u -> v_g) of degree p + n_g and weight w - w_g; it must equal
    the slice of e_v I_i e_u.
    """
    G = gamma
    ideal, model = ideal_I(G, i, 1)
    rep = Report("ideal-vs-model", {"quiver": G.quiver.name, "i": i}, W)
    for w in range(W + 1):
        for p in range(-(w // 2), 1):
            for u in G.vertices:
                for v in G.vertices:
                    free = sum(len(G.weight_slice(p + g.shift, w - g.weight, u, g.vertex))
                               for g in model.gens if g.label == v)
                    sl = ideal.dim(p, w, u, v)
                    if free != sl:
                        rep.fail((p, w, u, v), "dimension mismatch", {"ideal": sl, "model": free})
    return rep

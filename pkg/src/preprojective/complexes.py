"""Twisted complexes over Gamma: finite sums of shifted, weight-shifted projectives.

A generator ``(v, n, w)`` stands for ``e_v Gamma[n]`` with its weight grading
moved up by ``w``; its unit sits in degree ``-n`` and weight ``w``.  The entry
``delta[(r, c)]`` is an element of ``e_{v_r} Gamma e_{v_c}`` acting by left
multiplication from generator ``c`` to generator ``r``.  It has degree
``n_r - n_c + 1`` and weight ``w_c - w_r``.  The total differential is

    D(x)_r = (-1)^{n_r} d(x_r) + sum_c delta[r, c] x_c,

and ``D^2 = 0`` is the Maurer-Cartan equation
``(-1)^{n_r} d(delta[r, c]) + sum_k delta[r, k] delta[k, c] = 0``.

Because every entry is bigraded and weight-0 elements are scalars on trivial
paths, the support of ``delta`` can never contain a directed cycle; the
generators are kept in a topological order (``c`` before ``r`` whenever
``delta[r, c] != 0``), which is the filtration witness.
"""

from collections import Counter
from typing import NamedTuple

from .algebra import Element


class Gen(NamedTuple):
    vertex: object
    shift: int
    weight: int = 0
    label: object = None


class ComplexError(ValueError):
    pass


def _sign(n):
    return -1 if n % 2 else 1


class TwistedComplex:
    def __init__(self, gamma, gens, delta=None, check=True):
        self.gamma = gamma
        self.gens = [Gen(*g) for g in gens]
        self.delta = {k: v for k, v in (delta or {}).items() if v.terms}
        if check:
            self._check_entries()
        self._toposort()

    # ---- construction helpers ---------------------------------------------

    @classmethod
    def free(cls, gamma, vertex, shift=0, weight=0, label=None):
        """The free module e_v Gamma[shift]."""
        return cls(gamma, [Gen(vertex, shift, weight, label)])

    @classmethod
    def algebra(cls, gamma):
        """Gamma itself as a right module, one summand per vertex (labelled by it)."""
        return cls(gamma, [Gen(v, 0, 0, v) for v in gamma.vertices])

    @classmethod
    def empty(cls, gamma):
        return cls(gamma, [])

    def copy(self, gens=None, delta=None):
        return TwistedComplex(self.gamma, self.gens if gens is None else gens,
                              self.delta if delta is None else delta, check=False)

    def __len__(self):
        return len(self.gens)

    def __repr__(self):
        gs = ", ".join(f"({g.vertex},{g.shift})" for g in self.gens)
        return f"TwistedComplex[{gs}]"

    # ---- validation --------------------------------------------------------

    def _check_entries(self):
        G = self.gamma
        n = len(self.gens)
        for (r, c), x in self.delta.items():
            if not (0 <= r < n and 0 <= c < n):
                raise ComplexError(f"delta entry ({r}, {c}) out of range")
            gr, gc = self.gens[r], self.gens[c]
            want = (gr.shift - gc.shift + 1, gc.weight - gr.weight)
            for p in x.terms:
                if p[0] != gr.vertex or p[1] != gc.vertex:
                    raise ComplexError(f"delta[{r},{c}] has a path with wrong endpoints")
                if (G.degree(p), G.weight(p)) != want:
                    raise ComplexError(
                        f"delta[{r},{c}] has bidegree {(G.degree(p), G.weight(p))}, expected {want}")

    def _toposort(self):
        n = len(self.gens)
        preds = [set() for _ in range(n)]
        for (r, c) in self.delta:
            if r == c:
                raise ComplexError("diagonal delta entry")
            preds[r].add(c)
        order, placed = [], [False] * n
        remaining = list(range(n))
        while remaining:
            progressed = False
            rest = []
            for k in remaining:
                if all(placed[c] for c in preds[k]):
                    order.append(k)
                    placed[k] = True
                    progressed = True
                else:
                    rest.append(k)
            if not progressed:
                raise ComplexError("delta support has a cycle; no filtration exists")
            remaining = rest
        if order != list(range(n)):
            pos = {old: new for new, old in enumerate(order)}
            self.gens = [self.gens[k] for k in order]
            self.delta = {(pos[r], pos[c]): x for (r, c), x in self.delta.items()}

    def is_filtered(self):
        return all(c < r for (r, c) in self.delta)

    def mc_defect(self):
        """Entries of (-1)^{n_r} d(delta) + delta*delta that are nonzero."""
        G = self.gamma
        out = {}
        cols = {}
        for (k, c), x in self.delta.items():
            cols.setdefault(k, []).append((c, x))
        acc = {}
        for (r, c), x in self.delta.items():
            dx = G.d(x)
            acc[(r, c)] = dx if _sign(self.gens[r].shift) > 0 else -dx
        for (r, k), x in self.delta.items():
            for c, y in cols.get(k, ()):
                acc[(r, c)] = acc.get((r, c), G.zero()) + x * y
        for key, v in acc.items():
            if v.terms:
                out[key] = v
        return out

    def validate(self):
        """Raise ComplexError unless entries are bigraded, filtered and Maurer-Cartan."""
        self._check_entries()
        if not self.is_filtered():
            raise ComplexError("generators are not in filtration order")
        bad = self.mc_defect()
        if bad:
            (r, c), v = next(iter(bad.items()))
            raise ComplexError(f"Maurer-Cartan fails at ({r}, {c}): {v}")
        return True

    def is_valid(self):
        try:
            return self.validate()
        except ComplexError:
            return False

    # ---- invariants --------------------------------------------------------

    def generator_multiset(self):
        return Counter((g.vertex, g.shift) for g in self.gens)

    def g_vector(self):
        """Class in K_0(per Gamma) = Z^{Q_0}: alternating sum of generators."""
        vec = {v: 0 for v in self.gamma.vertices}
        for g in self.gens:
            vec[g.vertex] += _sign(g.shift)
        return tuple(vec[v] for v in self.gamma.vertices)

    def labels(self):
        seen = []
        for g in self.gens:
            if g.label not in seen:
                seen.append(g.label)
        return seen

    def summand(self, label):
        keep = [k for k, g in enumerate(self.gens) if g.label == label]
        return self.restrict(keep)

    def restrict(self, keep):
        pos = {old: new for new, old in enumerate(keep)}
        delta = {(pos[r], pos[c]): x for (r, c), x in self.delta.items()
                 if r in pos and c in pos}
        return self.copy([self.gens[k] for k in keep], delta)

    def components(self):
        """Index lists of the connected components of the delta support graph."""
        n = len(self.gens)
        parent = list(range(n))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for (r, c) in self.delta:
            parent[find(r)] = find(c)
        groups = {}
        for k in range(n):
            groups.setdefault(find(k), []).append(k)
        return sorted(groups.values())

    def with_label(self, label):
        return self.copy([g._replace(label=label) for g in self.gens])

    def with_weight_offset(self, s):
        return self.copy([g._replace(weight=g.weight + s) for g in self.gens])

    def iso_entries(self):
        """(r, c, scalar) for entries that are invertible scalars on a trivial path."""
        out = []
        for (r, c), x in self.delta.items():
            if len(x.terms) == 1:
                (p, v), = x.terms.items()
                if not p[2]:
                    out.append((r, c, v))
        return out

    def is_minimal(self):
        return not self.iso_entries()

    # ---- serialization -----------------------------------------------------

    def to_json(self):
        return {
            "generators": [{"vertex": g.vertex, "shift": g.shift, "weight": g.weight,
                            **({"label": g.label} if g.label is not None else {})}
                           for g in self.gens],
            "delta": [{"row": r, "col": c, "element": x.to_json()}
                      for (r, c), x in sorted(self.delta.items())],
        }

    @classmethod
    def from_json(cls, gamma, data):
        gens = [Gen(g["vertex"], g["shift"], g.get("weight", 0), g.get("label"))
                for g in data["generators"]]
        delta = {(e["row"], e["col"]): gamma.parse_element(e["element"])
                 for e in data.get("delta", [])}
        T = cls(gamma, gens, delta)
        T.validate()
        return T


# ---- operations -------------------------------------------------------------

def shift(T, n):
    """T[n]: shifts go up by n and every entry picks up (-1)^n."""
    if n == 0:
        return T.copy()
    gens = [g._replace(shift=g.shift + n) for g in T.gens]
    delta = T.delta if n % 2 == 0 else {k: -x for k, x in T.delta.items()}
    return T.copy(gens, dict(delta))


def direct_sum(*parts):
    gamma = parts[0].gamma
    gens, delta, off = [], {}, 0
    for T in parts:
        gens.extend(T.gens)
        for (r, c), x in T.delta.items():
            delta[(r + off, c + off)] = x
        off += len(T.gens)
    return TwistedComplex(gamma, gens, delta, check=False)


def hom_defect(T, S, phi, degree=0):
    """Nonzero entries of d(phi) for a map phi: T -> S given as {(s, c): element}."""
    G = T.gamma
    acc = {}
    sgn = -_sign(degree)
    for (s, c), x in phi.items():
        dx = G.d(x)
        acc[(s, c)] = dx if _sign(S.gens[s].shift) > 0 else -dx
    for (s, r), y in S.delta.items():
        for (r2, c), x in phi.items():
            if r2 == r:
                acc[(s, c)] = acc.get((s, c), G.zero()) + y * x
    for (s, k), x in phi.items():
        for (k2, c), y in T.delta.items():
            if k2 == k:
                term = x * y
                acc[(s, c)] = acc.get((s, c), G.zero()) + (term if sgn > 0 else -term)
    return {k: v for k, v in acc.items() if v.terms}


def cone(T, S, phi, weight=0):
    """Cone of a closed degree-0 map phi: T -> S of weight ``weight``.

    Generators are T[1] (weights raised by ``weight``) followed by S and the
    differential is [[-delta_T, 0], [phi, delta_S]].
    """
    bad = hom_defect(T, S, phi, 0)
    if bad:
        raise ComplexError("cone of a map that is not closed")
    nT = len(T.gens)
    gens = [g._replace(shift=g.shift + 1, weight=g.weight + weight) for g in T.gens]
    gens += list(S.gens)
    delta = {(r, c): -x for (r, c), x in T.delta.items()}
    for (r, c), x in S.delta.items():
        delta[(r + nT, c + nT)] = x
    for (s, c), x in phi.items():
        if x.terms:
            delta[(s + nT, c)] = x
    return TwistedComplex(T.gamma, gens, delta)


def identity_map(T):
    return {(k, k): T.gamma.idem(g.vertex) for k, g in enumerate(T.gens)}


def reduce(T):
    """Gaussian elimination of every entry that is an invertible scalar.

    The pivot is the first such entry in (column, row) order; repeated until
    the complex is minimal.  The result is homotopy equivalent to T.
    """
    F = T.gamma.field
    gens = list(T.gens)
    delta = dict(T.delta)
    while True:
        best = None
        for (r, c), x in delta.items():
            if len(x.terms) == 1:
                (p, v), = x.terms.items()
                if not p[2] and (best is None or (c, r) < best[:2]):
                    best = (c, r, v)
        if best is None:
            break
        c, r, lam = best
        inv = F.neg(F.inv(lam))
        into_c = [(a, x) for (a, cc), x in delta.items() if cc == c and a != r]
        from_r = [(b, y) for (rr, b), y in delta.items() if rr == r and b != c]
        new = {k: x for k, x in delta.items() if r not in k and c not in k}
        for a, x in into_c:
            xa = x.scale(inv)
            for b, y in from_r:
                term = xa * y
                if term.terms:
                    cur = new.get((a, b))
                    val = term if cur is None else cur + term
                    if val.terms:
                        new[(a, b)] = val
                    else:
                        new.pop((a, b), None)
        keep = [k for k in range(len(gens)) if k not in (r, c)]
        pos = {old: i for i, old in enumerate(keep)}
        gens = [gens[k] for k in keep]
        delta = {(pos[a], pos[b]): x for (a, b), x in new.items()}
    return TwistedComplex(T.gamma, gens, delta, check=False)


# ---- the projective resolution of a simple ---------------------------------

def neighbour_data(gamma, i):
    """Summands of R_i with the entries of f and g.

    Returns a list of (vertex, f_entry, g_entry): f: e_i Gamma -> R_i sends the
    unit to sum gamma_a a* - sum gamma_b b, and g sends gamma_a to a and gamma_b
    to b*, for arrows a into i and b out of i.
    """
    out = []
    for a in gamma.quiver.arrows:
        if a.target == i:
            out.append((a.source, gamma.elem(gamma.dual_letter(a.id)),
                        gamma.elem(gamma.arrow_letter(a.id))))
    for b in gamma.quiver.arrows:
        if b.source == i:
            out.append((b.target, -gamma.elem(gamma.arrow_letter(b.id)),
                        gamma.elem(gamma.dual_letter(b.id))))
    return out


def ideal_plus_block(gamma, i, label=None):
    """Cone(e_i Gamma --f--> R_i): the minimal model of e_i I_i, with its
    inclusion into e_i Gamma (generator -> t_i, a, b*)."""
    nbrs = neighbour_data(gamma, i)
    gens = [Gen(i, 1, 2, label)] + [Gen(v, 0, 1, label) for v, _, _ in nbrs]
    delta = {(k + 1, 0): f for k, (_, f, _) in enumerate(nbrs)}
    incl = [gamma.elem(gamma.loop_letter(i))] + [g for _, _, g in nbrs]
    return TwistedComplex(gamma, gens, delta), incl


def build_simple_resolution(gamma, i):
    """pS_i = e_i Gamma[2] + R_i[1] + e_i Gamma with entries -f, g and t_i."""
    if i not in gamma.vertices:
        raise ComplexError(f"unknown vertex {i!r}")
    L, incl = ideal_plus_block(gamma, i)
    P = TwistedComplex.free(gamma, i)
    phi = {(0, k): x for k, x in enumerate(incl)}
    return cone(L, P, phi)


# ---- finite-dimensional dg modules -----------------------------------------

class FiniteModule:
    """Finite-dimensional right dg module given on a bigraded basis.

    ``basis`` is a list of (vertex, degree, weight); ``action[letter_index]``
    maps a basis index to {basis index: coeff} (right action y . letter);
    ``d`` maps a basis index to {basis index: coeff}.
    """

    def __init__(self, gamma, basis, action=None, d=None, name=""):
        self.gamma = gamma
        self.basis = list(basis)
        self.action = action or {}
        self.d = d or {}
        self.name = name

    @classmethod
    def simple(cls, gamma, i):
        if i not in gamma.vertices:
            raise ComplexError(f"unknown vertex {i!r}")
        return cls(gamma, [(i, 0, 0)], name=f"S_{i}")

    def act(self, vec, path):
        """vec . path for vec = {basis index: coeff} supported at target(path)."""
        F = self.gamma.field
        out = {k: c for k, c in vec.items() if self.basis[k][0] == path[0]}
        for letter in path[2]:
            nxt = {}
            table = self.action.get(letter, {})
            for k, c in out.items():
                for k2, c2 in table.get(k, {}).items():
                    s = F.add(nxt.get(k2, 0), F.mul(c, c2))
                    if s == 0:
                        nxt.pop(k2, None)
                    else:
                        nxt[k2] = s
            out = nxt
            if not out:
                break
        return {k: c for k, c in out.items() if self.basis[k][0] == path[1]}

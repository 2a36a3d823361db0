"""Silting objects of per(Gamma): the braid map, mutation, order and intervals."""

import itertools
from collections import deque
from dataclasses import dataclass, field as dc_field

from .braids import BraidWord
from .complexes import (Gen, TwistedComplex, cone, direct_sum, reduce, shift)
from .homs import HomComplex, positive_hom_vanishes
from .iso import equal_upto_iso, is_certified_indecomposable
from .linalg import complement_basis
from .tensor import WindowInsufficient, tensor_ideal


@dataclass
class SiltingObject:
    complex: TwistedComplex
    provenance: str = ""
    _cert: dict = dc_field(default_factory=dict, repr=False)

    @property
    def gamma(self):
        return self.complex.gamma

    def g_vector(self):
        return self.complex.g_vector()

    def labels(self):
        return self.complex.labels()

    def summand(self, label):
        return self.complex.summand(label)

    def certificate(self, W=8):
        """(True, None) if Hom(M, M[p]) = 0 for all p > 0 in the window, else (False, cell)."""
        hit = self._cert.get(W)
        if hit is None:
            hit = positive_hom_vanishes(self.complex, self.complex, W)
            self._cert[W] = hit
        return hit

    def is_presilting(self, W=8):
        return self.certificate(W)[0]

    def to_json(self):
        return {"provenance": self.provenance, "g_vector": list(self.g_vector()),
                "complex": self.complex.to_json()}


@dataclass
class GeqResult:
    holds: bool
    witness: tuple = None  # (p, w) cell with Hom(M, N[p]) != 0
    W: int = 8

    def __bool__(self):
        return self.holds


def _cx(M):
    return M.complex if isinstance(M, SiltingObject) else M


def gamma_object(gamma):
    return SiltingObject(TwistedComplex.algebra(gamma), "e")


def braid_to_silting(gamma, word):
    """I_a = I_{i_1}^{e_1} (x) ... (x) I_{i_k}^{e_k}, folded left to right from Gamma."""
    w = BraidWord.parse(word, gamma.vertices)
    T = TwistedComplex.algebra(gamma)
    for v, s in w.letters:
        T = tensor_ideal(T, v, s)
    return SiltingObject(T, str(w))


def silting_geq(M, N, W=8):
    """M >= N: Hom(M, N[p]) = 0 for every p > 0, relative to the weight window W."""
    ok, cell = positive_hom_vanishes(_cx(M), _cx(N), W)
    return GeqResult(ok, cell, W)


# ---- approximations ---------------------------------------------------------

def compose(psi, phi):
    """(psi o phi)[r, c] = sum_k psi[r, k] phi[k, c] for degree-0 maps."""
    by_row = {}
    for (k, c), x in phi.items():
        by_row.setdefault(k, []).append((c, x))
    out = {}
    for (r, k), y in psi.items():
        for c, x in by_row.get(k, ()):
            z = y * x
            if z.terms:
                out[(r, c)] = out[(r, c)] + z if (r, c) in out else z
    return {k: v for k, v in out.items() if v.terms}


class _HomCache:
    def __init__(self):
        self._h = {}

    def get(self, A, B, key):
        h = self._h.get(key)
        if h is None:
            h = HomComplex(A, B)
            self._h[key] = h
        return h


def _h0_classes(H, W):
    lo, _ = H.weight_range()
    return {w: H.cohomology_basis(0, w) for w in range(lo, lo + W + 1)}


def _approximation(X, others, W, left=True):
    """Minimal left (or right) add(others)-approximation of X.

    Returns [(j, w, map)]: one closed map of weight w per basis element of
    Hom^0 modulo maps that factor through a radical map between the Y's.
    Left maps go X -> Y_j, right maps Y_j -> X.
    """
    cache = _HomCache()
    G = X.gamma
    F = G.field
    n = len(others)

    def hom(a, b):  # a, b: index into others or "X"
        A = X if a == "X" else others[a]
        B = X if b == "X" else others[b]
        return cache.get(A, B, (a, b))

    base = {}
    for j in range(n):
        H = hom("X", j) if left else hom(j, "X")
        base[j] = (H, _h0_classes(H, W))
    rad = {}
    for j in range(n):
        for k in range(n):
            Hk = hom(k, j) if left else hom(j, k)
            rad[(k, j)] = _h0_classes(Hk, W)
    items = []
    for j in range(n):
        H, classes = base[j]
        lo, _ = H.weight_range()
        for w, cls in classes.items():
            if not cls:
                continue
            span = list(H.coboundaries(0, w))
            for k in range(n):
                Hk_base, k_classes = base[k]
                Hrad = hom(k, j) if left else hom(j, k)
                for w1, phis in k_classes.items():
                    w2 = w - w1
                    psis = rad[(k, j)].get(w2, [])
                    if not phis or not psis:
                        continue
                    for pv in psis:
                        psi = Hrad.as_map(0, w2, pv)
                        if k == j and w2 == 0:
                            psi = _radical_part(psi, others[j], F)
                            if not psi:
                                continue
                        for fv in phis:
                            phi = Hk_base.as_map(0, w1, fv)
                            comp = compose(psi, phi) if left else compose(phi, psi)
                            if comp:
                                span.append(H.from_map(0, w, comp))
            for k in complement_basis(cls, span, F):
                items.append((j, w, H.as_map(0, w, cls[k])))
    return items


def _radical_part(psi, Y, F):
    """psi minus its scalar multiple of the identity (weight-0 endomorphisms)."""
    v0 = Y.gens[0].vertex
    s = psi.get((0, 0))
    lam = s.scalar_at(v0) if s is not None else 0
    if lam == 0:
        return psi
    out = dict(psi)
    G = Y.gamma
    for k, g in enumerate(Y.gens):
        e = G.idem(g.vertex).scale(lam)
        out[(k, k)] = out[(k, k)] - e if (k, k) in out else -e
    return {k: v for k, v in out.items() if v.terms}


def _signature(items):
    return sorted((j, w) for j, w, _ in items)


def mutate(M, label, direction="L", W=10):
    """Left or right mutation of M at the summand with the given label."""
    M = M if isinstance(M, SiltingObject) else SiltingObject(M)
    T = M.complex
    labels = T.labels()
    if label not in labels:
        raise ValueError(f"no summand with label {label!r}")
    left = direction in ("L", "l", "left", 1, "+")
    X = T.summand(label)
    rest_labels = [l for l in labels if l != label]
    others = [T.summand(l) for l in rest_labels]
    items = _approximation(X, others, W, left)
    if W >= 4:
        lower = _approximation(X, others, W - 2, left)
        if _signature(lower) != _signature(items):
            raise WindowInsufficient(
                f"approximation changes between W={W - 2} and W={W}: "
                f"{_signature(lower)} vs {_signature(items)}")
    copies, fmap, off = [], {}, 0
    for j, w, phi in items:
        Y = others[j].with_weight_offset(-w if left else w)
        copies.append(Y)
        for (r, c), x in phi.items():
            if left:
                fmap[(r + off, c)] = x
            else:
                fmap[(r, c + off)] = x
        off += len(Y.gens)
    if copies:
        U = direct_sum(*copies)
    else:
        U = TwistedComplex.empty(T.gamma)
    new = cone(X, U, fmap) if left else shift(cone(U, X, fmap), -1)
    new = reduce(new).with_label(label)
    kept = T.restrict([k for k, g in enumerate(T.gens) if g.label != label])
    out = direct_sum(kept, new)
    step = f"mu^{'L' if left else 'R'}_{label}"
    prov = f"{step}({M.provenance})" if M.provenance else step
    return SiltingObject(out, prov)


def mutate_sequence(M, seq, W=10):
    """Apply mutations given as a braid-style word: i is left, i' is right."""
    for v, s in BraidWord.parse(seq).letters:
        M = mutate(M, v, "L" if s > 0 else "R", W)
    return M


# ---- braid-level comparisons ---------------------------------------------------

def order_reversal_test(gamma, c, b, W=8):
    """For a = c b with c positive: I_b >= I_a, and not conversely when c is nonempty."""
    c = BraidWord.parse(c, gamma.vertices)
    b = BraidWord.parse(b, gamma.vertices)
    if not c.is_positive():
        raise ValueError("the witness c must be a positive word")
    a = c + b
    Ia, Ib = braid_to_silting(gamma, a), braid_to_silting(gamma, b)
    fwd = silting_geq(Ib, Ia, W)
    back = silting_geq(Ia, Ib, W)
    ok = bool(fwd) and (len(c) == 0 or not back)
    return {"a": str(a), "b": str(b), "c": str(c), "W": W,
            "b>=a": bool(fwd), "b>=a witness": fwd.witness,
            "a>=b": bool(back), "a>=b witness": back.witness, "pass": ok}


def word_equality(gamma, w1, w2, seed=0):
    """EqualInBQ / DistinctInBQ / Unknown via the silting objects I_{w1}, I_{w2}."""
    a = BraidWord.parse(w1, gamma.vertices).free_reduce()
    b = BraidWord.parse(w2, gamma.vertices).free_reduce()
    if a == b:
        return "EqualInBQ", "identical after free reduction"
    v = equal_upto_iso(braid_to_silting(gamma, a).complex,
                       braid_to_silting(gamma, b).complex, seed)
    if v.equal:
        return "EqualInBQ", v.witness
    if v.distinct and gamma.quiver.is_dynkin():
        return "DistinctInBQ", v.witness
    return "Unknown", v.witness


# ---- intervals -----------------------------------------------------------------

@dataclass
class SiltingPosetSlice:
    n: int
    W: int
    nodes: list
    edges: list  # (source index, target index, label)

    @property
    def count(self):
        return len(self.nodes)

    def to_json(self):
        return {"n": self.n, "W": self.W, "count": self.count,
                "nodes": [{"id": k, **M.to_json()} for k, M in enumerate(self.nodes)],
                "edges": [{"from": a, "to": b, "label": l} for a, b, l in self.edges]}


class EnumerationAborted(RuntimeError):
    pass


def _fingerprint(T):
    return tuple(sorted(T.generator_multiset().items(), key=repr))


def enumerate_interval(gamma, n, W=10):
    """All silting M with Gamma >= M >= Gamma[n], by left mutation from Gamma."""
    if n < 0:
        raise ValueError("interval parameter must be non-negative")
    G = gamma
    top = gamma_object(G)
    bottom = shift(top.complex, n)
    nodes, edges = [top], []
    registry = {_fingerprint(top.complex): [0]}
    todo = deque([0])
    while todo:
        k = todo.popleft()
        M = nodes[k]
        for label in M.labels():
            N = mutate(M, label, "L", W)
            if not silting_geq(top, N, W) or not silting_geq(N, bottom, W):
                continue
            fp = _fingerprint(N.complex)
            found = None
            for idx in registry.get(fp, []):
                v = equal_upto_iso(nodes[idx].complex, N.complex)
                if v.kind == "Unknown":
                    raise EnumerationAborted(f"cannot compare {N.provenance} with node {idx}: {v}")
                if v.equal:
                    found = idx
                    break
            if found is None:
                found = len(nodes)
                nodes.append(N)
                registry.setdefault(fp, []).append(found)
                todo.append(found)
            edges.append((k, found, label))
    return SiltingPosetSlice(n, W, nodes, sorted(set(edges)))


# ---- independent oracle: two-term complexes -------------------------------------

def _two_term_candidates(gamma, max_weight):
    """Minimal two-term complexes with at most one copy of each e_v Gamma[s], s in {0, 1},
    whose differential entries are single degree-0 paths (or zero)."""
    G = gamma
    vs = G.vertices
    out = []
    for tops in itertools.product((0, 1), repeat=len(vs)):
        for bots in itertools.product((0, 1), repeat=len(vs)):
            cols = [v for v, t in zip(vs, tops) if t]   # shift 1
            rows = [v for v, b in zip(vs, bots) if b]   # shift 0
            if not cols and not rows:
                continue
            choices = []
            for c in cols:
                for r in rows:
                    opts = [None]
                    for w in range(1, max_weight + 1):
                        opts.extend(G.weight_slice(0, w, c, r))
                    choices.append(((r, c), opts))
            for pick in itertools.product(*[o for _, o in choices]):
                ent = {rc: p for (rc, _), p in zip(choices, pick) if p is not None}
                T = _assemble(G, cols, rows, ent)
                if T is not None:
                    out.append(T)
    return out


def _assemble(G, cols, rows, ent):
    """Give the generators weights making every entry homogeneous (None if impossible)."""
    # an entry p from column c to row r forces w_c - w_r = weight(p)
    adj = {}
    for (r, c), p in ent.items():
        rk, ck = ("r", rows.index(r)), ("c", cols.index(c))
        adj.setdefault(rk, []).append((ck, G.weight(p)))
        adj.setdefault(ck, []).append((rk, -G.weight(p)))
    assigned = {}
    for start in [("c", k) for k in range(len(cols))] + [("r", k) for k in range(len(rows))]:
        if start in assigned:
            continue
        assigned[start] = 0
        stack = [start]
        while stack:
            x = stack.pop()
            for y, d in adj.get(x, []):
                want = assigned[x] + d
                if y not in assigned:
                    assigned[y] = want
                    stack.append(y)
                elif assigned[y] != want:
                    return None
    gens = [Gen(c, 1, assigned[("c", k)]) for k, c in enumerate(cols)]
    gens += [Gen(r, 0, assigned[("r", k)]) for k, r in enumerate(rows)]
    nc = len(cols)
    delta = {(nc + rows.index(r), cols.index(c)): G.elem(p) for (r, c), p in ent.items()}
    return TwistedComplex(G, gens, delta)


def two_term_oracle(gamma, max_weight=2, W=8):
    """Count basic two-term silting objects by brute force over small complexes.

    Collects indecomposable presilting two-term complexes up to isomorphism,
    then counts the sets of |Q_0| pairwise compatible ones.
    """
    G = gamma
    indecs = []
    for T in _two_term_candidates(G, max_weight):
        if len(T.components()) != 1 or not T.is_minimal():
            continue
        if not is_certified_indecomposable(T):
            continue
        if not positive_hom_vanishes(T, T, W)[0]:
            continue
        if any(equal_upto_iso(T, U).equal for U in indecs):
            continue
        indecs.append(T)
    n = len(G.vertices)
    compat = {}
    for a, b in itertools.combinations(range(len(indecs)), 2):
        X, Y = indecs[a], indecs[b]
        compat[(a, b)] = (positive_hom_vanishes(X, Y, W)[0] and positive_hom_vanishes(Y, X, W)[0])
    count = 0
    for combo in itertools.combinations(range(len(indecs)), n):
        if all(compat[(a, b)] for a, b in itertools.combinations(combo, 2)):
            count += 1
    return count, indecs

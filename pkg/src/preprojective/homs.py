"""Hom complexes between twisted complexes and their cohomology, cell by cell.

A degree-p, weight-w map phi: T -> S sends the unit of generator c of T to
sum_r 1_r z[r, c] with z[r, c] in e_{v_r} Gamma e_{v_c} of degree
p - n_c + n_r and weight w + w_c - w_r.  Its differential is
d(phi) = D_S phi - (-1)^p phi D_T, i.e.

    d(phi)[s, c] = (-1)^{n_s} d(z[s, c]) + sum_r dS[s, r] z[r, c]
                   - (-1)^p sum_k z[s, k] dT[k, c].

Every (p, w) cell is finite-dimensional, so each cohomology dimension is an
exact rank computation.  The weight window only decides which cells are
computed: a cell (p, w) with w <= w_lo + W involves only paths of weight <= W.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field

from .complexes import FiniteModule, TwistedComplex
from .linalg import Echelon, complement_basis, kernel_of_columns, rank_of_vectors


def _sign(n):
    return -1 if n % 2 else 1


class HomComplex:
    """Hom(T, S) for a twisted complex T and a twisted complex or finite module S."""

    def __init__(self, T, S):
        if not T.is_filtered():
            raise ValueError("source complex has no filtration witness")
        self.T, self.S = T, S
        self.gamma = T.gamma
        self.field = T.gamma.field
        self.finite = isinstance(S, FiniteModule)
        self._bases = {}
        self._index = {}
        self._t_out = {}
        for (k, c), x in T.delta.items():
            self._t_out.setdefault(k, []).append((c, x))
        if not self.finite:
            self._s_in = {}
            for (s, r), x in S.delta.items():
                self._s_in.setdefault(r, []).append((s, x))

    # ---- cells -------------------------------------------------------------

    def weight_range(self):
        """Smallest weight with possibly nonzero cells, and the largest pair offset."""
        if not self.T.gens:
            return 0, 0
        if self.finite:
            ws = [b[2] - g.weight for g in self.T.gens for b in self.S.basis]
            return (min(ws), max(ws)) if ws else (0, 0)
        offs = [r.weight - c.weight for r in self.S.gens for c in self.T.gens]
        return (min(offs), max(offs)) if offs else (0, 0)

    def basis(self, p, w):
        key = (p, w)
        b = self._bases.get(key)
        if b is not None:
            return b
        G = self.gamma
        b = []
        if self.finite:
            for c, gc in enumerate(self.T.gens):
                for k, (v, deg, wt) in enumerate(self.S.basis):
                    if v == gc.vertex and deg == p - gc.shift and wt == w + gc.weight:
                        b.append((c, k))
        else:
            for c, gc in enumerate(self.T.gens):
                for r, gr in enumerate(self.S.gens):
                    wt = w + gc.weight - gr.weight
                    if wt < 0:
                        continue
                    for path in G.weight_slice(p - gc.shift + gr.shift, wt, gc.vertex, gr.vertex):
                        b.append((r, c, path))
        self._bases[key] = b
        self._index[key] = {x: k for k, x in enumerate(b)}
        return b

    def index(self, p, w):
        self.basis(p, w)
        return self._index[(p, w)]

    def _add(self, out, key, coeff):
        F = self.field
        v = F.add(out.get(key, 0), coeff)
        if v == 0:
            out.pop(key, None)
        else:
            out[key] = v

    def image(self, p, w, elem):
        """d of one basis element of cell (p, w), as {(r, c, path): coeff}."""
        F = self.field
        G = self.gamma
        out = {}
        sgn = F(-_sign(p))
        if self.finite:
            c, k = elem
            S = self.S
            for k2, coeff in S.d.get(k, {}).items():
                self._add(out, (c, k2), coeff)
            for c2, x in self._t_out.get(c, ()):
                for path, a in x.terms.items():
                    for k2, b in S.act({k: 1}, path).items():
                        self._add(out, (c2, k2), F.mul(sgn, F.mul(a, b)))
            return out
        r, c, z = elem
        es = F(_sign(self.S.gens[r].shift))
        for q, a in G.d_path(z).items():
            self._add(out, (r, c, q), F.mul(es, a))
        for s, x in self._s_in.get(r, ()):
            for q, a in x.terms.items():
                if q[1] == z[0]:
                    self._add(out, (s, c, (q[0], z[1], q[2] + z[2])), a)
        for c2, x in self._t_out.get(c, ()):
            for q, a in x.terms.items():
                if z[1] == q[0]:
                    self._add(out, (r, c2, (z[0], q[1], z[2] + q[2])), F.mul(sgn, a))
        return out

    def differential_columns(self, p, w):
        """Columns of d: C^{p,w} -> C^{p+1,w} in the target cell's basis."""
        target = self.index(p + 1, w)
        cols = []
        for elem in self.basis(p, w):
            img = self.image(p, w, elem)
            cols.append({target[k]: v for k, v in img.items()})
        return cols

    def rank_d(self, p, w):
        if not self.basis(p, w) or not self.basis(p + 1, w):
            return 0
        return rank_of_vectors(self.differential_columns(p, w), self.field)

    def h_dim(self, p, w):
        n = len(self.basis(p, w))
        if n == 0:
            return 0
        return n - self.rank_d(p, w) - self.rank_d(p - 1, w)

    def cocycles(self, p, w):
        """Basis of closed maps in cell (p, w), as coefficient dicts over basis indices."""
        if not self.basis(p, w):
            return []
        if not self.basis(p + 1, w):
            return [{k: self.field(1)} for k in range(len(self.basis(p, w)))]
        return kernel_of_columns(self.differential_columns(p, w), self.field)

    def coboundaries(self, p, w):
        if not self.basis(p - 1, w) or not self.basis(p, w):
            return []
        return [c for c in self.differential_columns(p - 1, w) if c]

    def cohomology_basis(self, p, w):
        """Cocycles whose classes form a basis of H^{p,w}."""
        Z = self.cocycles(p, w)
        B = self.coboundaries(p, w)
        return [Z[k] for k in complement_basis(Z, B, self.field)]

    def as_map(self, p, w, vec):
        """Coefficient vector -> map {(r, c): Element} (twisted targets only)."""
        G = self.gamma
        basis = self.basis(p, w)
        out = {}
        for k, a in vec.items():
            r, c, path = basis[k]
            out.setdefault((r, c), {})[path] = a
        from .algebra import Element
        return {key: Element(G, terms) for key, terms in out.items()}

    def from_map(self, p, w, phi):
        """Map {(r, c): Element} -> coefficient vector in cell (p, w)."""
        idx = self.index(p, w)
        out = {}
        for (r, c), x in phi.items():
            for path, a in x.terms.items():
                out[idx[(r, c, path)]] = a
        return out


@dataclass
class HomTable:
    """dim H^p Hom(M, N) in weight w for every computed cell (p, w).

    Cells outside ``degrees`` x ``weights`` were not computed and are absent,
    never implicitly zero.
    """

    dims: dict
    weight_bound: int
    degrees: tuple
    weights: tuple
    field: str = "Q"
    meta: dict = dc_field(default_factory=dict)

    def nonzero(self):
        return {k: v for k, v in self.dims.items() if v}

    def by_degree(self):
        out = {}
        for (p, _), v in self.dims.items():
            out[p] = out.get(p, 0) + v
        return out

    def get(self, p, w=None):
        if w is None:
            return self.by_degree().get(p)
        return self.dims.get((p, w))

    def vanishes_above(self, p0=0):
        return all(v == 0 for (p, _), v in self.dims.items() if p > p0)

    def to_json(self):
        return {
            "weight_bound": self.weight_bound,
            "degrees": list(self.degrees),
            "weights": list(self.weights),
            "field": self.field,
            "cells": [{"p": p, "w": w, "dim": v} for (p, w), v in sorted(self.dims.items())],
            **self.meta,
        }

    def to_text(self):
        ps = list(range(self.degrees[0], self.degrees[1] + 1))
        ws = list(range(self.weights[0], self.weights[1] + 1))
        head = "w\\p " + " ".join(f"{p:>3}" for p in ps)
        lines = [head]
        for w in ws:
            row = [self.dims.get((p, w)) for p in ps]
            if all(not v for v in row):
                continue
            lines.append(f"{w:>3} " + " ".join(f"{v if v is not None else '.':>3}" for v in row))
        lines.append(f"(weight bound W={self.weight_bound}, field {self.field})")
        return "\n".join(lines)


def _cell_job(args):
    T, S, p, w = args
    return (p, w), HomComplex(T, S).h_dim(p, w)


def hom_cohomology(M, N, weight_bound=10, degrees=(-4, 4), jobs=1):
    """HomTable of H^p Hom(M, N) for p in ``degrees`` and all cells within the window."""
    H = HomComplex(M, N)
    lo, hi = H.weight_range()
    if H.finite:
        w_top = hi
    else:
        w_top = lo + weight_bound
    cells = [(p, w) for p in range(degrees[0], degrees[1] + 1) for w in range(lo, w_top + 1)]
    if jobs > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            dims = dict(ex.map(_cell_job, [(M, N, p, w) for p, w in cells], chunksize=4))
    else:
        dims = {(p, w): H.h_dim(p, w) for p, w in cells}
    return HomTable(dims, weight_bound, tuple(degrees), (lo, w_top), M.gamma.field.name)


def simples_table(T, weight_bound=10, degrees=(-4, 4)):
    """Hom tables of T against every simple S_j, keyed by vertex."""
    G = T.gamma
    return {j: hom_cohomology(T, FiniteModule.simple(G, j), weight_bound, degrees)
            for j in G.vertices}


def positive_hom_vanishes(M, N, weight_bound=10, max_degree=None):
    """Whether Hom(M, N[p]) = 0 for all p > 0 in the window; returns (bool, witness cell)."""
    H = HomComplex(M, N)
    lo, _ = H.weight_range()
    if not M.gens or not N.gens:
        return True, None
    top = max(c.shift for c in M.gens) - min(r.shift for r in N.gens)
    if max_degree is not None:
        top = min(top, max_degree)
    for p in range(1, top + 1):
        for w in range(lo, lo + weight_bound + 1):
            if H.h_dim(p, w):
                return False, (p, w)
    return True, None

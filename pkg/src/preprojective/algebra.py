"""The derived preprojective algebra as a dg path algebra.

Conventions (used by every other module):

* A path is a tuple ``(target, source, letters)`` where ``letters`` is
  written as a product: the rightmost letter is traversed first, so
  ``p * q`` is defined when ``source(p) == target(q)``.
* ``e_i * p == p`` iff ``target(p) == i``; hence ``e_i Gamma`` consists of
  the paths ending at ``i``.
* Letters of the graded double quiver: each arrow ``a`` (degree 0,
  weight 1), its reverse ``a*`` (degree 0, weight 1) and a loop ``t_i`` at
  every vertex (degree -1, weight 2).  The differential preserves weight.
"""

from dataclasses import dataclass
from threading import Lock

from .field import QQ, Field
from .quiver import Quiver, parse_quiver


@dataclass(frozen=True)
class Letter:
    name: str
    source: object
    target: object
    degree: int
    weight: int
    kind: str  # "arrow", "dual" or "loop"
    base: object  # arrow id, or vertex for loops


class Gamma:
    """Derived preprojective algebra of an acyclic quiver over an exact field."""

    def __init__(self, quiver, field=QQ):
        if not isinstance(quiver, Quiver):
            quiver = parse_quiver(quiver)
        if isinstance(field, str):
            field = Field.parse(field)
        self.quiver = quiver
        self.field = field
        self.vertices = quiver.vertices
        self._vpos = {v: k for k, v in enumerate(self.vertices)}
        letters = []
        for a in quiver.arrows:
            letters.append(Letter(a.id, a.source, a.target, 0, 1, "arrow", a.id))
        for a in quiver.arrows:
            letters.append(Letter(a.id + "*", a.target, a.source, 0, 1, "dual", a.id))
        for v in quiver.vertices:
            letters.append(Letter(f"t{v}", v, v, -1, 2, "loop", v))
        self.letters = tuple(letters)
        self.letter_index = {l.name: k for k, l in enumerate(letters)}
        self._deg = [l.degree for l in letters]
        self._wt = [l.weight for l in letters]
        self._out = {v: [] for v in self.vertices}
        for k, l in enumerate(letters):
            self._out[l.source].append(k)
        self._lock = Lock()
        self._by_source = {v: [[self.e(v)]] for v in self.vertices}
        self._cells = {}
        self._dcache = {}

    def __repr__(self):
        return f"Gamma({self.quiver}, {self.field.name})"

    # ---- letters and paths -------------------------------------------------

    def e(self, v):
        return (v, v, ())

    def letter(self, name):
        k = self.letter_index[name]
        l = self.letters[k]
        return (l.target, l.source, (k,))

    def arrow_letter(self, arrow_id):
        return self.letter(arrow_id)

    def dual_letter(self, arrow_id):
        return self.letter(arrow_id + "*")

    def loop_letter(self, v):
        return self.letter(f"t{v}")

    def degree(self, path):
        return -sum(1 for k in path[2] if self._deg[k])

    def weight(self, path):
        wt = self._wt
        return sum(wt[k] for k in path[2])

    def path_key(self, path):
        """Canonical total order: (weight, degree, source, target, letters)."""
        return (self.weight(path), self.degree(path), self._vpos[path[1]],
                self._vpos[path[0]], path[2])

    def vkey(self, v):
        return self._vpos[v]

    @staticmethod
    def concat(p, q):
        if p[1] != q[0]:
            return None
        return (p[0], q[1], p[2] + q[2])

    def path_str(self, path):
        if not path[2]:
            return f"e{path[0]}"
        return "".join(self.letters[k].name if len(self.letters[k].name) == 1
                       else f"({self.letters[k].name})" for k in path[2])

    def parse_path(self, names, vertex=None):
        """Path from a list of letter names (product order); ``[]`` needs ``vertex``."""
        if not names:
            if vertex is None:
                raise ValueError("trivial path needs a vertex")
            return self.e(vertex)
        p = None
        for n in names:
            q = self.letter(n)
            p = q if p is None else self.concat(p, q)
            if p is None:
                raise ValueError(f"letters {names} do not compose")
        return p

    # ---- enumeration -------------------------------------------------------

    def _paths_from(self, s, w):
        table = self._by_source[s]
        while len(table) <= w:
            n = len(table)
            new = []
            for k_prev, step in ((n - 1, 1), (n - 2, 2)):
                if k_prev < 0:
                    continue
                for q in table[k_prev]:
                    for k in self._out[q[0]]:
                        if self._wt[k] == step:
                            l = self.letters[k]
                            new.append((l.target, s, (k,) + q[2]))
            table.append(new)
        return table[w]

    def weight_slice(self, degree, weight, source, target):
        """All paths source -> target of the given bidegree, in canonical order."""
        key = (degree, weight, source, target)
        cell = self._cells.get(key)
        if cell is not None:
            return cell
        if weight < 0:
            return []
        with self._lock:
            cell = self._cells.get(key)
            if cell is None:
                found = [p for p in self._paths_from(source, weight)
                         if p[0] == target and self.degree(p) == degree]
                cell = sorted(found, key=self.path_key)
                self._cells[key] = cell
        return cell

    # ---- differential ------------------------------------------------------

    def d_loop(self, v):
        """d(t_v) = e_v (sum_a a a* - a* a) e_v."""
        terms = {}
        one = self.field(1)
        for a in self.quiver.arrows:
            k, ks = self.letter_index[a.id], self.letter_index[a.id + "*"]
            if a.target == v:
                p = (v, v, (k, ks))
                terms[p] = self.field.add(terms.get(p, 0), one)
            if a.source == v:
                p = (v, v, (ks, k))
                terms[p] = self.field.sub(terms.get(p, 0), one)
        return Element(self, {p: c for p, c in terms.items() if c != 0})

    def d_path(self, path):
        """Differential of a single path, as a dict path -> coeff (cached)."""
        cached = self._dcache.get(path)
        if cached is not None:
            return cached
        F = self.field
        out = {}
        letters = path[2]
        sign = 1
        for pos, k in enumerate(letters):
            l = self.letters[k]
            if l.kind == "loop":
                dl = self.d_loop(l.base).terms
                prefix, suffix = letters[:pos], letters[pos + 1:]
                for p, c in dl.items():
                    q = (path[0], path[1], prefix + p[2] + suffix)
                    v = F.add(out.get(q, 0), F.mul(c, F(sign)))
                    if v == 0:
                        out.pop(q, None)
                    else:
                        out[q] = v
                sign = -sign
        self._dcache[path] = out
        return out

    def d(self, a):
        """Differential of an element: degree +1, weight preserving, graded Leibniz."""
        F = self.field
        out = {}
        for p, c in a.terms.items():
            for q, c2 in self.d_path(p).items():
                v = F.add(out.get(q, 0), F.mul(c, c2))
                if v == 0:
                    out.pop(q, None)
                else:
                    out[q] = v
        return Element(self, out)

    # ---- element constructors ---------------------------------------------

    def elem(self, path, coeff=1):
        c = self.field(coeff)
        return Element(self, {path: c} if c != 0 else {})

    def zero(self):
        return Element(self, {})

    def idem(self, v):
        return self.elem(self.e(v))

    def one(self):
        return Element(self, {self.e(v): self.field(1) for v in self.vertices})

    def parse_element(self, spec):
        """Element from ``[{"path": [letters], "coeff": "..", "vertex": v?}, ...]``."""
        terms = {}
        F = self.field
        for t in spec:
            p = self.parse_path(t.get("path", []), t.get("vertex"))
            terms[p] = F.add(terms.get(p, 0), F(t.get("coeff", 1)))
        return Element(self, {p: c for p, c in terms.items() if c != 0})


class Element:
    """Finite linear combination of paths with nonzero exact coefficients."""

    __slots__ = ("gamma", "terms")

    def __init__(self, gamma, terms):
        self.gamma = gamma
        self.terms = terms

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        return isinstance(other, Element) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def _combine(self, other, sign):
        F = self.gamma.field
        out = dict(self.terms)
        for p, c in other.terms.items():
            v = F.add(out.get(p, 0), c if sign > 0 else F.neg(c))
            if v == 0:
                out.pop(p, None)
            else:
                out[p] = v
        return Element(self.gamma, out)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        F = self.gamma.field
        return Element(self.gamma, {p: F.neg(c) for p, c in self.terms.items()})

    def scale(self, c):
        F = self.gamma.field
        c = F(c)
        if c == 0:
            return Element(self.gamma, {})
        return Element(self.gamma, {p: F.mul(c, v) for p, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Element):
            return self.scale(other)
        return multiply(self, other)

    __rmul__ = scale

    def paths(self):
        return sorted(self.terms, key=self.gamma.path_key)

    def bidegrees(self):
        g = self.gamma
        return {(g.degree(p), g.weight(p)) for p in self.terms}

    def is_homogeneous(self):
        return len(self.bidegrees()) <= 1

    def degree(self):
        bd = self.bidegrees()
        if len(bd) != 1:
            raise ValueError("element is not homogeneous")
        return next(iter(bd))[0]

    def weight(self):
        bd = self.bidegrees()
        if len(bd) != 1:
            raise ValueError("element is not homogeneous")
        return next(iter(bd))[1]

    def component(self, degree, weight):
        g = self.gamma
        return Element(g, {p: c for p, c in self.terms.items()
                           if g.degree(p) == degree and g.weight(p) == weight})

    def scalar_at(self, v):
        """Coefficient of the trivial path e_v."""
        return self.terms.get((v, v, ()), 0)

    def to_json(self):
        g = self.gamma
        out = []
        for p in self.paths():
            t = {"path": [g.letters[k].name for k in p[2]], "coeff": str(self.terms[p])}
            if not p[2]:
                t["vertex"] = p[0]
            out.append(t)
        return out

    def __repr__(self):
        if not self.terms:
            return "0"
        g = self.gamma
        parts = []
        for p in self.paths():
            c = self.terms[p]
            s = g.path_str(p)
            parts.append(s if c == 1 else f"-{s}" if c == -1 else f"{c}*{s}")
        return " + ".join(parts).replace("+ -", "- ")


def multiply(a, b):
    """Bilinear extension of concatenation; mismatched endpoints give 0."""
    F = a.gamma.field
    out = {}
    by_target = {}
    for q, c in b.terms.items():
        by_target.setdefault(q[0], []).append((q, c))
    for p, c1 in a.terms.items():
        for q, c2 in by_target.get(p[1], ()):
            r = (p[0], q[1], p[2] + q[2])
            v = F.add(out.get(r, 0), F.mul(c1, c2))
            if v == 0:
                out.pop(r, None)
            else:
                out[r] = v
    return Element(a.gamma, out)


def differential(a):
    return a.gamma.d(a)

"""Sparse exact linear algebra over a ``Field``.

Vectors are dicts ``index -> nonzero scalar``.  Elimination pivots on the
smallest index, which keeps every basis deterministic.
"""

from .field import QQ


class NoSolution(Exception):
    pass


class SparseMatrix:
    """rows x cols matrix with entries ``{(row, col): scalar}``; zeros are never stored."""

    def __init__(self, rows, cols, entries=None, field=QQ):
        self.rows, self.cols, self.field = rows, cols, field
        self.entries = {}
        for (r, c), v in (entries or {}).items():
            if not (0 <= r < rows and 0 <= c < cols):
                raise IndexError(f"entry ({r}, {c}) outside {rows}x{cols}")
            v = field(v)
            if v != 0:
                self.entries[(r, c)] = v

    @classmethod
    def from_dense(cls, rows, field=QQ):
        nr = len(rows)
        nc = len(rows[0]) if rows else 0
        return cls(nr, nc, {(r, c): v for r, row in enumerate(rows)
                            for c, v in enumerate(row) if v}, field)

    @classmethod
    def from_columns(cls, rows, columns, field=QQ):
        m = cls(rows, len(columns), None, field)
        for c, col in enumerate(columns):
            for r, v in col.items():
                if v != 0:
                    m.entries[(r, c)] = v
        return m

    def columns(self):
        cols = [dict() for _ in range(self.cols)]
        for (r, c), v in self.entries.items():
            cols[c][r] = v
        return cols

    def row_dicts(self):
        rows = [dict() for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            rows[r][c] = v
        return rows

    def apply(self, x):
        F = self.field
        out = {}
        for (r, c), v in self.entries.items():
            xc = x.get(c, 0) if isinstance(x, dict) else x[c]
            if xc:
                s = F.add(out.get(r, 0), F.mul(v, xc))
                if s == 0:
                    out.pop(r, None)
                else:
                    out[r] = s
        return out

    def to_dense(self):
        out = [[0] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out


class Echelon:
    """Incrementally maintained echelon basis of a subspace.

    Each stored vector is normalized to leading coefficient 1 at its pivot
    (its smallest index).  With ``track=True`` every stored vector carries the
    combination of inserted vectors it came from, which is how kernels are read off.
    """

    def __init__(self, field=QQ, track=False):
        self.field = field
        self.pivots = {}
        self.track = track
        self.combos = {}
        self.count = 0

    def __len__(self):
        return len(self.pivots)

    def reduce(self, v, combo=None):
        """Reduce ``v`` against the basis; returns (remainder, combination)."""
        F = self.field
        v = dict(v)
        combo = dict(combo) if combo is not None else None
        while v:
            c = min(v)
            row = self.pivots.get(c)
            if row is None:
                break
            f = v[c]
            _axpy(F, v, F.neg(f), row)
            if combo is not None:
                _axpy(F, combo, F.neg(f), self.combos[c])
        return v, combo

    def residual(self, v):
        """Fully reduced remainder (zero iff v lies in the span)."""
        F = self.field
        v = dict(v)
        done = {}
        while v:
            c = min(v)
            row = self.pivots.get(c)
            if row is None:
                done[c] = v.pop(c)
                continue
            _axpy(F, v, F.neg(v[c]), row)
        return done

    def add(self, v):
        """Insert v; returns the kernel combination if v was dependent, else None."""
        F = self.field
        combo = {self.count: F(1)} if self.track else None
        self.count += 1
        v, combo = self.reduce(v, combo)
        if not v:
            return combo if self.track else {}
        c = min(v)
        inv = F.inv(v[c])
        v = {k: F.mul(inv, x) for k, x in v.items()}
        self.pivots[c] = v
        if self.track:
            self.combos[c] = {k: F.mul(inv, x) for k, x in combo.items()}
        return None

    def contains(self, v):
        return not self.residual(v)

    def basis(self):
        return [self.pivots[c] for c in sorted(self.pivots)]


def _axpy(F, y, a, x):
    for k, xv in x.items():
        s = F.add(y.get(k, 0), F.mul(a, xv))
        if s == 0:
            y.pop(k, None)
        else:
            y[k] = s


def rank_of_vectors(vectors, field=QQ):
    ech = Echelon(field)
    for v in vectors:
        ech.add(v)
    return len(ech)


def rank(m):
    """Exact rank."""
    if m.rows <= m.cols:
        return rank_of_vectors(m.row_dicts(), m.field)
    return rank_of_vectors(m.columns(), m.field)


def kernel_of_columns(columns, field=QQ):
    """Basis of {x : sum_c x_c * columns[c] = 0}, returned as dict vectors."""
    ech = Echelon(field, track=True)
    out = []
    for col in columns:
        combo = ech.add(col)
        if combo is not None:
            out.append(combo)
    return out


def kernel_basis(m):
    """Basis of the right kernel of m; its size is cols - rank(m)."""
    return kernel_of_columns(m.columns(), m.field)


def solve(m, b):
    """Some x with m x = b, or raise NoSolution."""
    F = m.field
    if isinstance(b, (list, tuple)):
        if len(b) != m.rows:
            raise ValueError(f"right-hand side has length {len(b)}, expected {m.rows}")
        b = {r: F(v) for r, v in enumerate(b) if v}
    elif any(not 0 <= r < m.rows for r in b):
        raise ValueError("right-hand side index out of range")
    ech = Echelon(F, track=True)
    for col in m.columns():
        ech.add(col)
    rest, combo = ech.reduce(b, {})
    if rest:
        raise NoSolution()
    x = {k: F.neg(v) for k, v in combo.items() if v}
    return x


def solve_list(m, b):
    x = solve(m, b)
    return [x.get(c, 0) for c in range(m.cols)]


def complement_basis(vectors, subspace, field=QQ):
    """Indices into ``vectors`` forming a basis of span(vectors) modulo span(subspace)."""
    ech = Echelon(field)
    for v in subspace:
        ech.add(v)
    picked = []
    for k, v in enumerate(vectors):
        if ech.add(v) is None:
            picked.append(k)
    return picked

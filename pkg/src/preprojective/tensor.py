"""The functors - (x) I_i and - (x) I_i^- on twisted complexes.

Each bimodule B in {I_i, I_i^-} is modelled by

* a twisted complex ``block[v]`` modelling the right module e_v B, and
* for every letter l: u <- v of the double quiver, a matrix ``rho(l)`` of
  algebra elements giving left multiplication e_v B -> e_u B on the models.

For v != i both blocks are e_v Gamma.  For I_i the i-block is
Cone(e_i Gamma -> R_i) whose generators map to t_i, a (a into i) and b*
(b out of i); left multiplication is read off by splitting a path ending at
i at its last-traversed letter.  For I_i^- = Hom(I_i, Gamma) the i-block is
the co-cone of R_i -> e_i Gamma: generators eta_h dual to the first letters
h = a*, b leaving i (weight -1) and zeta dual to t_i (shift -1, weight -2).

Tensoring T with B replaces each generator c of T by block[v_c] shifted by
n_c, and each entry delta[r, c] by rho(delta[r, c]).
"""

from .algebra import Element
from .complexes import (ComplexError, Gen, TwistedComplex, build_simple_resolution, cone,
                        hom_defect, ideal_plus_block, neighbour_data, reduce, shift,
                        FiniteModule)
from .homs import HomComplex


def _mat_mul(A, B):
    cols_of = {}
    for (k, c), y in B.items():
        cols_of.setdefault(k, []).append((c, y))
    out = {}
    for (r, k), x in A.items():
        for c, y in cols_of.get(k, ()):
            prod = x * y
            if prod.terms:
                cur = out.get((r, c))
                out[(r, c)] = prod if cur is None else cur + prod
    return {k: v for k, v in out.items() if v.terms}


def _mat_add(A, B):
    out = dict(A)
    for k, v in B.items():
        out[k] = out[k] + v if k in out else v
    return {k: v for k, v in out.items() if v.terms}


class BimoduleModel:
    def __init__(self, gamma, blocks, letter_maps, name=""):
        self.gamma = gamma
        self.blocks = blocks
        self.letter_maps = letter_maps
        self.name = name
        self._cache = {}

    def rho_path(self, path):
        cached = self._cache.get(path)
        if cached is not None:
            return cached
        G = self.gamma
        if not path[2]:
            blk = self.blocks[path[0]]
            out = {(k, k): G.idem(g.vertex) for k, g in enumerate(blk.gens)}
        else:
            out = self.letter_maps[path[2][-1]]
            for k in reversed(path[2][:-1]):
                out = _mat_mul(self.letter_maps[k], out)
        self._cache[path] = out
        return out

    def rho(self, x):
        out = {}
        for path, a in x.terms.items():
            out = _mat_add(out, {k: v.scale(a) for k, v in self.rho_path(path).items()})
        return out

    def defects(self):
        """Letters l for which rho(l) fails d(rho(l)) = rho(d l), plus block MC failures."""
        G = self.gamma
        bad = []
        for v, blk in self.blocks.items():
            if blk.mc_defect():
                bad.append(("block", v))
        for k, l in enumerate(G.letters):
            X, Y = self.blocks[l.source], self.blocks[l.target]
            lhs = hom_defect(X, Y, self.letter_maps[k], l.degree)
            if l.kind == "loop":
                rhs = self.rho(G.d_loop(l.base))
            else:
                rhs = {}
            diff = _mat_add(lhs, {key: -v for key, v in rhs.items()})
            if diff:
                bad.append(("letter", l.name))
        return bad


def _split_at_last_letter(gamma, i, x):
    """Write x in e_i Gamma (no e_i term) as sum_g incl(g) * rest, keyed by block row."""
    G = gamma
    rows = [G.letter_index[f"t{i}"]]
    for a in G.quiver.arrows:
        if a.target == i:
            rows.append(G.letter_index[a.id])
    for b in G.quiver.arrows:
        if b.source == i:
            rows.append(G.letter_index[b.id + "*"])
    row_of = {k: n for n, k in enumerate(rows)}
    out = {}
    for p, a in x.terms.items():
        if not p[2]:
            raise ComplexError("element has a component on e_i; it is not in I_i")
        first = p[2][0]
        rest_target = G.letters[first].source
        rest = (rest_target, p[1], p[2][1:])
        n = row_of[first]
        out.setdefault(n, {})[rest] = a
    return {n: Element(G, t) for n, t in out.items()}


def plus_model(gamma, i):
    G = gamma
    blocks = {v: TwistedComplex.free(G, v) for v in G.vertices}
    blk, incl = ideal_plus_block(G, i)
    blocks[i] = blk
    incls = {v: [G.idem(v)] for v in G.vertices}
    incls[i] = incl
    maps = {}
    for k, l in enumerate(G.letters):
        lx = G.elem((l.target, l.source, (k,)))
        m = {}
        for col, y in enumerate(incls[l.source]):
            prod = lx * y
            if l.target == i:
                for row, rest in _split_at_last_letter(G, i, prod).items():
                    m[(row, col)] = rest
            elif prod.terms:
                m[(0, col)] = prod
        maps[k] = m
    return BimoduleModel(G, blocks, maps, f"I_{i}")


def minus_model(gamma, i):
    G = gamma
    blocks = {v: TwistedComplex.free(G, v) for v in G.vertices}
    firsts = []  # (letter index of h, vertex of eta_h, c_h) with d(t_i) = sum c_h h
    for a in G.quiver.arrows:
        if a.target == i:
            firsts.append((G.letter_index[a.id + "*"], a.source, G.elem(G.arrow_letter(a.id))))
    for b in G.quiver.arrows:
        if b.source == i:
            firsts.append((G.letter_index[b.id], b.target, -G.elem(G.dual_letter(b.id))))
    z = len(firsts)  # zeta comes last so the block is already filtered
    gens = [Gen(v, 0, -1) for _, v, _ in firsts] + [Gen(i, -1, -2)]
    delta = {(z, n): -c for n, (_, _, c) in enumerate(firsts)}
    blocks[i] = TwistedComplex(G, gens, delta)
    assert blocks[i].gens == gens
    eta_row = {k: n for n, (k, _, _) in enumerate(firsts)}
    ti = G.elem(G.loop_letter(i))
    maps = {}
    for k, l in enumerate(G.letters):
        lx = G.elem((l.target, l.source, (k,)))
        if l.target != i and l.source != i:
            maps[k] = {(0, 0): lx}
        elif l.target == i and l.source != i:
            m = {(z, 0): -(ti * lx)}
            for h, _, _ in firsts:
                prod = G.elem((G.letters[h].target, G.letters[h].source, (h,))) * lx
                if prod.terms:
                    m[(eta_row[h], 0)] = prod
            maps[k] = m
        elif l.source == i and l.target != i:
            maps[k] = {(0, eta_row[k]): G.idem(l.target)}
        else:
            m = {(z, z): ti}
            for h, _, _ in firsts:
                m[(eta_row[h], z)] = -G.elem((G.letters[h].target, i, (h,)))
            maps[k] = m
    return BimoduleModel(G, blocks, maps, f"I_{i}^-")


_MODELS = {}


def ideal_model(gamma, i, sign):
    if i not in gamma.vertices:
        raise ComplexError(f"unknown vertex {i!r}")
    key = (id(gamma), i, sign)
    m = _MODELS.get(key)
    if m is None or m.gamma is not gamma:
        m = plus_model(gamma, i) if sign > 0 else minus_model(gamma, i)
        _MODELS[key] = m
    return m


def tensor(T, model):
    """T (x)_Gamma B for a bimodule model B."""
    G = T.gamma
    gens, offsets = [], []
    delta = {}
    for c, g in enumerate(T.gens):
        blk = model.blocks[g.vertex]
        offsets.append(len(gens))
        for b in blk.gens:
            gens.append(Gen(b.vertex, b.shift + g.shift, b.weight + g.weight, g.label))
        odd = g.shift % 2
        for (r, cc), x in blk.delta.items():
            delta[(offsets[c] + r, offsets[c] + cc)] = -x if odd else x
    for (r, c), x in T.delta.items():
        for (a, b), y in model.rho(x).items():
            key = (offsets[r] + a, offsets[c] + b)
            delta[key] = delta[key] + y if key in delta else y
    return TwistedComplex(G, gens, {k: v for k, v in delta.items() if v.terms}, check=False)


def tensor_ideal(T, i, sign, minimal=True):
    """T (x) I_i (sign=+1) or T (x) I_i^- (sign=-1), reduced to minimal form by default."""
    sign = _sign_arg(sign)
    out = tensor(T, ideal_model(T.gamma, i, sign))
    return reduce(out) if minimal else out


def _sign_arg(sign):
    if sign in (1, "+", "L"):
        return 1
    if sign in (-1, "-", "R"):
        return -1
    raise ValueError(f"bad sign {sign!r}")


def ideal_complex(gamma, i, sign):
    """Right-module model of I_i^{sign}: Gamma (x) I_i^{sign}, one labelled summand per vertex."""
    return tensor_ideal(TwistedComplex.algebra(gamma), i, sign)


class WindowInsufficient(RuntimeError):
    """A computation needed cells outside the weight window it was given."""


def dual_twist_direct(T, i, weight_bound=10, degrees=None):
    """tw^-_{S_i}(T) = Cone(T -> sum_p Hom(T, S_i[p])^* (x) pS_i[p])[-1].

    Each class in Hom(T, S_i[p]) is lifted along pS_i -> S_i to a closed map
    T -> pS_i[p]; the lifts assemble into the coevaluation map.
    """
    G = T.gamma
    S = FiniteModule.simple(G, i)
    P = build_simple_resolution(G, i)
    aug = len(P.gens) - 1  # the e_i Gamma generator of pS_i carries the augmentation
    HS = HomComplex(T, S)
    HP = HomComplex(T, P)
    if degrees is None:
        shifts = [g.shift for g in T.gens] or [0]
        degrees = (min(shifts), max(shifts))
    targets, phis = [], []
    for p in range(degrees[0], degrees[1] + 1):
        for w in sorted({-g.weight for g in T.gens if g.vertex == i}):
            classes = HS.cohomology_basis(p, w)
            if not classes:
                continue
            # lift: cocycles of Hom(T, pS_i) in cell (p, w) mapped to Hom(T, S_i)
            if w - HP.weight_range()[0] > weight_bound:
                raise WindowInsufficient(f"lift of cell {(p, w)} exceeds W={weight_bound}")
            Z = HP.cocycles(p, w)
            basis_p = HP.basis(p, w)
            idx_s = HS.index(p, w)
            images = []
            for z in Z:
                img = {}
                for k, a in z.items():
                    r, c, path = basis_p[k]
                    if r == aug and not path[2]:
                        key = idx_s[(c, 0)]
                        img[key] = G.field.add(img.get(key, 0), a)
                images.append({k: v for k, v in img.items() if v != 0})
            B = HS.coboundaries(p, w)
            for cls in classes:
                combo = _solve_modulo(images, cls, B, G.field)
                if combo is None:
                    raise WindowInsufficient(f"no lift found for a class in cell {(p, w)}")
                vec = {}
                for k, a in combo.items():
                    for j, b in Z[k].items():
                        vec[j] = G.field.add(vec.get(j, 0), G.field.mul(a, b))
                vec = {k: v for k, v in vec.items() if v != 0}
                targets.append((p, w))
                phis.append(HP.as_map(p, w, vec))
    if not targets:
        return T.copy()
    blocks, maps, off = [], {}, 0
    for (p, w), phi in zip(targets, phis):
        blk = shift(P, p).with_weight_offset(-w)
        blocks.append(blk)
        for (r, c), x in phi.items():
            maps[(r + off, c)] = x
        off += len(blk.gens)
    from .complexes import direct_sum
    U = direct_sum(*blocks)
    C = cone(T, U, maps)
    return shift(C, -1)


def _solve_modulo(images, target, boundaries, field):
    """Coefficients a with sum a_k images[k] = target modulo span(boundaries)."""
    from .linalg import Echelon
    ech = Echelon(field, track=True)
    for b in boundaries:
        ech.add(b)
    nb = ech.count
    for v in images:
        ech.add(v)
    rest, combo = ech.reduce(target, {})
    if rest:
        return None
    out = {}
    for k, v in combo.items():
        if k >= nb and v != 0:
            out[k - nb] = field.neg(v)
    return out

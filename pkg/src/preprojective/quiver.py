"""Finite acyclic loop-free quivers, built-in Dynkin/Kronecker families and parsing."""

import json
import os
import re
from dataclasses import dataclass


class QuiverError(ValueError):
    """Invalid quiver input; ``position`` points into the source text when known."""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


@dataclass(frozen=True)
class Arrow:
    id: str
    source: object
    target: object


@dataclass(frozen=True)
class Quiver:
    vertices: tuple
    arrows: tuple
    name: str = ""

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise QuiverError("duplicate vertex id")
        ids = [a.id for a in self.arrows]
        if len(set(ids)) != len(ids):
            raise QuiverError("duplicate arrow id")
        vs = set(self.vertices)
        for a in self.arrows:
            if a.source not in vs or a.target not in vs:
                raise QuiverError(f"arrow {a.id} uses an unknown vertex")
            if a.source == a.target:
                raise QuiverError(f"loop {a.id} at vertex {a.source}")
        if self._has_cycle():
            raise QuiverError("quiver has a directed cycle")

    def _has_cycle(self):
        succ = {v: [] for v in self.vertices}
        for a in self.arrows:
            succ[a.source].append(a.target)
        state = {}

        def visit(v):
            state[v] = 1
            for w in succ[v]:
                if state.get(w) == 1 or (w not in state and visit(w)):
                    return True
            state[v] = 2
            return False

        return any(v not in state and visit(v) for v in self.vertices)

    @classmethod
    def from_arrows(cls, vertices, arrows, name=""):
        """``arrows`` is an iterable of ``(id, source, target)`` triples."""
        return cls(tuple(vertices), tuple(Arrow(*a) for a in arrows), name)

    def index(self, v):
        return self.vertices.index(v)

    def edges_between(self, i, j):
        """Number of arrows joining i and j in either direction."""
        return sum(1 for a in self.arrows if {a.source, a.target} == {i, j})

    def adjacent(self, i, j):
        return self.edges_between(i, j) > 0

    def incoming(self, i):
        return [a for a in self.arrows if a.target == i]

    def outgoing(self, i):
        return [a for a in self.arrows if a.source == i]

    def is_dynkin(self):
        """True for simply-laced Dynkin underlying graphs (A, D, E; disjoint unions allowed)."""
        if any(self.edges_between(a.source, a.target) > 1 for a in self.arrows):
            return False
        nbrs = {v: set() for v in self.vertices}
        for a in self.arrows:
            nbrs[a.source].add(a.target)
            nbrs[a.target].add(a.source)
        seen = set()
        for start in self.vertices:
            if start in seen:
                continue
            comp, stack = [], [start]
            seen.add(start)
            while stack:
                v = stack.pop()
                comp.append(v)
                for w in nbrs[v] - seen:
                    seen.add(w)
                    stack.append(w)
            n_edges = sum(len(nbrs[v]) for v in comp) // 2
            if n_edges != len(comp) - 1:
                return False
            degs = sorted(len(nbrs[v]) for v in comp)
            if degs and degs[-1] > 3:
                return False
            branch = [v for v in comp if len(nbrs[v]) == 3]
            if len(branch) > 1:
                return False
            if branch:
                legs = sorted(_leg_length(nbrs, branch[0], w) for w in nbrs[branch[0]])
                if not (legs[0] == 1 and (legs[1] == 1 or (legs[1] == 2 and legs[2] <= 4))):
                    return False
        return True

    def to_json(self):
        return {
            "vertices": list(self.vertices),
            "arrows": [{"id": a.id, "from": a.source, "to": a.target} for a in self.arrows],
        }

    def __str__(self):
        if self.name:
            return self.name
        return ", ".join(f"{a.source}->{a.target}" for a in self.arrows) or ",".join(map(str, self.vertices))


def _leg_length(nbrs, root, first):
    prev, cur, n = root, first, 1
    while True:
        nxt = [w for w in nbrs[cur] if w != prev]
        if not nxt:
            return n
        prev, cur, n = cur, nxt[0], n + 1


def type_a(n):
    return Quiver.from_arrows(range(1, n + 1), [(f"a{k}", k, k + 1) for k in range(1, n)], f"A{n}")


def type_d(n):
    if n < 4:
        raise QuiverError("D_n needs n >= 4")
    arrows = [(f"a{k}", k, k + 1) for k in range(1, n - 1)]
    arrows.append((f"a{n - 1}", n - 2, n))
    return Quiver.from_arrows(range(1, n + 1), arrows, f"D{n}")


def type_e(n):
    if n not in (6, 7, 8):
        raise QuiverError("E_n needs n in {6, 7, 8}")
    arrows = [(f"a{k}", k, k + 1) for k in range(1, n - 1)]
    arrows.append((f"a{n - 1}", 3, n))
    return Quiver.from_arrows(range(1, n + 1), arrows, f"E{n}")


def kronecker(m):
    return Quiver.from_arrows([1, 2], [(f"a{k}", 1, 2) for k in range(1, m + 1)], f"Kronecker{m}")


_BUILTIN = re.compile(r"^\s*(A|D|E|Kronecker)\s*[_(]?\s*(\d+)\s*\)?\s*$")


def builtin(name):
    m = _BUILTIN.match(name)
    if not m:
        raise QuiverError(f"unknown built-in quiver {name!r}")
    kind, n = m.group(1), int(m.group(2))
    if kind == "A":
        if n < 1:
            raise QuiverError("A_n needs n >= 1")
        return type_a(n)
    if kind == "D":
        return type_d(n)
    if kind == "E":
        return type_e(n)
    return kronecker(n)


def _vertex(token):
    token = token.strip()
    return int(token) if re.fullmatch(r"-?\d+", token) else token


def parse_arrow_list(text):
    """Parse ``"1->2, 2->3"``; chains like ``"1->2->3"`` are accepted too."""
    vertices, arrows = [], []
    pos = 0
    for chunk in text.split(","):
        start = pos
        pos += len(chunk) + 1
        if not chunk.strip():
            raise QuiverError("empty arrow", start)
        parts = chunk.split("->")
        if len(parts) < 2 or any(not p.strip() for p in parts):
            raise QuiverError(f"expected 'u->v', got {chunk.strip()!r}", start)
        for p in parts:
            if not re.fullmatch(r"\s*[\w]+\s*", p):
                raise QuiverError(f"bad vertex name {p.strip()!r}", start)
        vs = [_vertex(p) for p in parts]
        for v in vs:
            if v not in vertices:
                vertices.append(v)
        for u, v in zip(vs, vs[1:]):
            arrows.append((f"a{len(arrows) + 1}", u, v))
    return Quiver.from_arrows(vertices, arrows, text.strip())


def parse_json(data):
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as e:
            raise QuiverError(f"invalid JSON: {e.msg}", e.pos) from None
    try:
        vertices = list(data["vertices"])
        arrows = [(str(a["id"]), a["from"], a["to"]) for a in data["arrows"]]
    except (KeyError, TypeError) as e:
        raise QuiverError(f"malformed quiver JSON: missing {e}") from None
    return Quiver.from_arrows(vertices, arrows, data.get("name", ""))


def parse_quiver(source):
    """Quiver from a built-in name, arrow-list text, JSON text, or a path to a JSON file."""
    if isinstance(source, Quiver):
        return source
    if isinstance(source, dict):
        return parse_json(source)
    text = source.strip()
    if not text:
        raise QuiverError("empty quiver description", 0)
    if text.startswith("{"):
        return parse_json(text)
    if "->" in text:
        return parse_arrow_list(text)
    if os.path.exists(text):
        with open(text) as fh:
            return parse_quiver(fh.read())
    return builtin(text)

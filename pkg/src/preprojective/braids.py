"""Braid words over the vertices of a quiver, and a rewriting oracle.

A word is a tuple of (vertex, sign) with sign +1 for a_i and -1 for a_i^-.
Text syntax: whitespace- or comma-separated vertices, a trailing ``'``
marks an inverse letter (``"1 2 1'"``).
"""

from collections import deque
from dataclasses import dataclass


class WordError(ValueError):
    pass


@dataclass(frozen=True)
class BraidWord:
    letters: tuple = ()

    @classmethod
    def parse(cls, text, vertices=None):
        if isinstance(text, BraidWord):
            return text
        if not isinstance(text, str):
            return cls(tuple((v, s) for v, s in text))
        out = []
        for tok in text.replace(",", " ").split():
            sign = 1
            while tok.endswith("'"):
                tok, sign = tok[:-1], -sign
            if tok.startswith("-"):
                tok, sign = tok[1:], -sign
            if not tok:
                raise WordError(f"empty letter in {text!r}")
            v = int(tok) if tok.lstrip("-").isdigit() else tok
            if vertices is not None and v not in vertices:
                raise WordError(f"unknown vertex {v!r} in {text!r}")
            out.append((v, sign))
        return cls(tuple(out))

    @classmethod
    def positive(cls, vertices):
        return cls(tuple((v, 1) for v in vertices))

    def __str__(self):
        if not self.letters:
            return "e"
        return " ".join(f"{v}" + ("'" if s < 0 else "") for v, s in self.letters)

    def __len__(self):
        return len(self.letters)

    def __add__(self, other):
        return BraidWord(self.letters + other.letters)

    def inverse(self):
        return BraidWord(tuple((v, -s) for v, s in reversed(self.letters)))

    def is_positive(self):
        return all(s > 0 for _, s in self.letters)

    def length(self):
        """l(a); only defined for positive words."""
        if not self.is_positive():
            raise WordError("length is defined for positive words only")
        return len(self.letters)

    def free_reduce(self):
        return BraidWord(free_reduce(self.letters))


def free_reduce(letters):
    out = []
    for v, s in letters:
        if out and out[-1] == (v, -s):
            out.pop()
        else:
            out.append((v, s))
    return tuple(out)


def _relations(quiver):
    """Pairs (u, v) of equal positive words: ij = ji or iji = jij."""
    rels = []
    vs = quiver.vertices
    for a, i in enumerate(vs):
        for j in vs[a + 1:]:
            m = quiver.edges_between(i, j)
            if m == 0:
                rels.append(((i, j), (j, i)))
            elif m == 1:
                rels.append(((i, j, i), (j, i, j)))
            # two or more edges: no relation (free in the Artin presentation)
    return rels


def _rewrites(word, rels):
    n = len(word)
    for u, v in rels:
        for a, b in ((u, v), (v, u)):
            m = len(a)
            for k in range(n - m + 1):
                if word[k:k + m] == a:
                    yield word[:k] + b + word[k + m:]


def positive_class(word, quiver):
    """All positive words equal to ``word`` in the Artin monoid (length preserving)."""
    w = tuple(v for v, s in BraidWord.parse(word).letters)
    if any(s < 0 for _, s in BraidWord.parse(word).letters):
        raise WordError("positive_class needs a positive word")
    rels = _relations(quiver)
    seen = {w}
    todo = deque([w])
    while todo:
        x = todo.popleft()
        for y in _rewrites(x, rels):
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return frozenset(seen)


def positive_partition(words, quiver):
    """Group positive words into Artin-monoid classes; returns a list of sets of indices."""
    classes = {}
    for k, w in enumerate(words):
        key = min(positive_class(w, quiver))
        classes.setdefault(key, []).append(k)
    return sorted(classes.values())


def bounded_equal(w1, w2, quiver, budget=None, max_states=200000):
    """Search for a rewriting from w1 to w2 (True when found, None when not found).

    Moves: the relations and their inverted forms on subwords, insertion of a
    cancelling pair, free reduction; words never exceed ``budget`` letters.
    Not finding a path says nothing.
    """
    a = free_reduce(BraidWord.parse(w1).letters)
    b = free_reduce(BraidWord.parse(w2).letters)
    if a == b:
        return True
    if budget is None:
        budget = max(len(a), len(b)) + 2
    rels = []
    for u, v in _relations(quiver):
        rels.append((tuple((x, 1) for x in u), tuple((x, 1) for x in v)))
        rels.append((tuple((x, -1) for x in reversed(u)), tuple((x, -1) for x in reversed(v))))
    letters = [(v, s) for v in quiver.vertices for s in (1, -1)]
    seen = {a}
    todo = deque([a])
    while todo and len(seen) < max_states:
        x = todo.popleft()
        nxt = list(_rewrites(x, rels))
        if len(x) + 2 <= budget:
            for k in range(len(x) + 1):
                for v, s in letters:
                    nxt.append(x[:k] + ((v, s), (v, -s)) + x[k:])
        for y in nxt:
            r = free_reduce(y)
            if r == b:
                return True
            if r != y:
                # keep both: the reduced word, and the raw one so inserted pairs survive
                if r not in seen:
                    seen.add(r)
                    todo.append(r)
            if y not in seen and len(y) <= budget:
                seen.add(y)
                todo.append(y)
    return None


def all_positive_words(vertices, max_len):
    out = [()]
    frontier = [()]
    for _ in range(max_len):
        frontier = [w + (v,) for w in frontier for v in vertices]
        out.extend(frontier)
    return [BraidWord(tuple((v, 1) for v in w)) for w in out]

"""Constructs of a connected atomic hypergraph and their face poset.

A construct of H is a rooted tree whose vertices carry disjoint nonempty
subsets of the vertices of H (decorations) with total union all of H,
subject to the recursion: if the root decoration Y is everything the
tree is a single vertex, otherwise the subtrees correspond one to one
with the connected components of H minus Y and each subtree is a
construct of its component.  Decorations themselves need not induce
connected restrictions.

Constructs of H form an abstract polytope of dimension |vertices| - 1:
rank(C) = |vertices(H)| - (number of decorations of C), constructions
(all decorations singletons) are the rank-0 elements, and the covering
relation is contraction of a single tree edge.
"""

import itertools
from functools import lru_cache

from .errors import DomainError, UsageError
from . import hypergraph as hg


class Construct:
    """Immutable decorated tree.  Children are kept in canonical order,
    sorted by least vertex of their total decoration."""

    __slots__ = ("vertex", "children", "_support")

    def __init__(self, vertex, children=()):
        vertex = frozenset(vertex)
        if not vertex:
            raise DomainError("empty decoration")
        children = tuple(sorted(children, key=lambda c: min(c.support())))
        object.__setattr__(self, "vertex", vertex)
        object.__setattr__(self, "children", children)
        object.__setattr__(self, "_support", None)

    def __setattr__(self, name, value):
        raise AttributeError("Construct is immutable")

    def support(self):
        if self._support is None:
            s = set(self.vertex)
            for c in self.children:
                s |= c.support()
            object.__setattr__(self, "_support", frozenset(s))
        return self._support

    def decorations(self):
        """All decorations, root first, depth first."""
        out = [self.vertex]
        for c in self.children:
            out.extend(c.decorations())
        return out

    def edges(self):
        """Tree edges, identified by the decoration of the lower (child)
        endpoint; decorations are disjoint so this is unambiguous."""
        out = []
        for c in self.children:
            out.append(c.vertex)
            out.extend(c.edges())
        return out

    def key(self):
        return (tuple(sorted(self.vertex)),
                tuple(c.key() for c in self.children))

    def __eq__(self, other):
        return isinstance(other, Construct) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return "Construct(%s)" % pretty(self)


def pretty(c):
    """Brace notation: singleton decorations print bare, children inside
    braces, e.g. x{y,{u,v}}."""
    if len(c.vertex) == 1:
        head = next(iter(c.vertex))
    else:
        head = "{%s}" % ",".join(sorted(c.vertex))
    if not c.children:
        return head
    return "%s{%s}" % (head, ",".join(pretty(ch) for ch in c.children))


def rank(h, c):
    return len(h.vertices) - len(c.decorations())


def is_construct(h, c):
    """Validity of c as a construct of h.  Raises DomainError when h is
    disconnected (no polytope in that case); returns a bool otherwise."""
    if not hg.is_connected(h):
        raise DomainError("constructs require a connected hypergraph")
    decs = c.decorations()
    total = set()
    for d in decs:
        if not d or total & d:
            return False
        total |= d
    if total != h.vertices:
        return False
    return _valid(h, c)


def _valid(h, c):
    if not c.vertex <= h.vertices:
        return False
    if c.vertex == h.vertices:
        return not c.children
    comps = hg.connected_components(hg.delete(h, c.vertex))
    by_support = {comp.vertices: comp for comp in comps}
    if len(c.children) != len(comps):
        return False
    for child in c.children:
        comp = by_support.get(child.support())
        if comp is None or not _valid(comp, child):
            return False
    return True


@lru_cache(maxsize=None)
def _enumerate(h):
    if not hg.is_connected(h):
        raise DomainError("constructs require a connected hypergraph")
    verts = sorted(h.vertices)
    out = []
    # Root decorations run over all nonempty vertex subsets.
    for r in range(1, len(verts) + 1):
        for ys in itertools.combinations(verts, r):
            y = frozenset(ys)
            rest = hg.delete(h, y)
            if not rest.vertices:
                out.append(Construct(y))
                continue
            comps = hg.connected_components(rest)
            pools = [_enumerate(comp) for comp in comps]
            for combo in itertools.product(*pools):
                out.append(Construct(y, combo))
    return tuple(out)


def enumerate_constructs(h):
    """All constructs of h grouped by rank: a dict rank -> sorted list."""
    grouped = {}
    for c in _enumerate(h):
        grouped.setdefault(rank(h, c), []).append(c)
    for v in grouped.values():
        v.sort(key=Construct.key)
    return grouped


def constructions(h):
    """Rank-0 constructs: every decoration a singleton."""
    return enumerate_constructs(h).get(0, [])


def f_vector(h):
    """Face counts by rank 0 .. |vertices|-1."""
    grouped = enumerate_constructs(h)
    return [len(grouped.get(i, [])) for i in range(len(h.vertices))]


def euler_check(h):
    """Euler relation: the alternating rank-count sum including the top
    cell equals 1, i.e. over proper faces it equals 1 - (-1)^d."""
    f = f_vector(h)
    return sum((-1) ** i * fi for i, fi in enumerate(f)) == 1


def contract_edge(c, e):
    """Contract the tree edge whose lower endpoint carries decoration e:
    the child merges into its parent."""
    e = frozenset(e)

    def go(node):
        kids = []
        hit = False
        for ch in node.children:
            if ch.vertex == e:
                hit = True
                kids.extend(ch.children)
            else:
                kids.append(go(ch))
        if hit:
            return Construct(node.vertex | e, kids)
        return Construct(node.vertex, kids)

    if e not in set(map(frozenset, c.edges())):
        raise DomainError("no edge with lower decoration %r" % sorted(e))
    return go(c)


def contract_edges_with_map(c, ids):
    """Contract a set of tree edges simultaneously (identified by their
    lower decorations).  Returns (construct, id map) where the map sends
    each surviving edge's old lower decoration to its new one: an edge
    above a contracted chain absorbs the merged decorations below it."""
    ids = set(map(frozenset, ids))
    found = set()
    idmap = {}

    def go(node):
        dec = set(node.vertex)
        kids = []
        for ch in node.children:
            cdec, ckids = go(ch)
            if ch.vertex in ids:
                found.add(ch.vertex)
                dec |= cdec
                kids.extend(ckids)
            else:
                idmap[ch.vertex] = frozenset(cdec)
                kids.append(Construct(cdec, ckids))
        return frozenset(dec), kids

    dec, kids = go(c)
    if found != ids:
        raise DomainError("unknown edge in contraction set")
    return Construct(dec, kids), idmap


def leq(c1, c2):
    """Face order: c1 <= c2 when c2 arises from c1 by contracting edges."""
    if c1 == c2:
        return True
    n1, n2 = len(c1.decorations()), len(c2.decorations())
    if n1 <= n2:
        return False
    seen = {c1}
    level = [c1]
    for _ in range(n1 - n2):
        nxt = set()
        for c in level:
            for e in c.edges():
                nxt.add(contract_edge(c, e))
        if c2 in nxt:
            return True
        seen |= nxt
        level = list(nxt)
    return False


class FaceLattice:
    """Face lattice of the construct polytope: all constructs plus a
    distinguished empty face below the constructions."""

    def __init__(self, h):
        self.hypergraph = h
        self.by_rank = enumerate_constructs(h)
        self.dim = len(h.vertices) - 1
        self.elements = [None]  # empty face, rank -1
        for r in range(self.dim + 1):
            self.elements.extend(self.by_rank.get(r, []))

    def rank(self, c):
        return -1 if c is None else rank(self.hypergraph, c)

    def covers(self):
        """Covering pairs (lower, upper)."""
        out = [(None, c) for c in self.by_rank.get(0, [])]
        for r in range(self.dim):
            for c in self.by_rank.get(r, []):
                for e in set(map(frozenset, c.edges())):
                    out.append((c, contract_edge(c, e)))
        return out

    def to_json(self):
        names = {None: "empty"}
        for c in self.elements[1:]:
            names[c] = pretty(c)
        return {
            "hypergraph": hg.to_json(self.hypergraph),
            "faces": [
                {"name": names[c], "rank": self.rank(c)}
                for c in self.elements
            ],
            "covers": [[names[a], names[b]] for a, b in self.covers()],
        }

    def to_dot(self):
        data = self.to_json()
        lines = ["digraph face_lattice {", "  rankdir=BT;"]
        for face in data["faces"]:
            lines.append('  "%s" [label="%s", rank_level=%d];'
                         % (face["name"], face["name"], face["rank"]))
        for a, b in data["covers"]:
            lines.append('  "%s" -> "%s";' % (a, b))
        lines.append("}")
        return "\n".join(lines)


def to_json(c):
    return {"vertex": sorted(c.vertex),
            "children": [to_json(ch) for ch in c.children]}


def from_json(data, path="$"):
    if not isinstance(data, dict):
        raise UsageError("construct must be an object", path)
    extra = set(data) - {"vertex", "children"}
    if extra:
        raise UsageError("unknown key %r" % sorted(extra)[0], path)
    vertex = data.get("vertex")
    if (not isinstance(vertex, list) or not vertex
            or not all(isinstance(v, str) for v in vertex)):
        raise UsageError("'vertex' must be a nonempty list of strings",
                         path + ".vertex")
    children = data.get("children", [])
    if not isinstance(children, list):
        raise UsageError("'children' must be a list", path + ".children")
    kids = [from_json(ch, "%s.children[%d]" % (path, i))
            for i, ch in enumerate(children)]
    return Construct(vertex, kids)

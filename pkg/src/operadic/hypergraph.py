"""Finite atomic hypergraphs.

A hypergraph here is a finite vertex set together with a set of nonempty
hyperedges whose union is the whole vertex set and which contains every
singleton.  Vertices are strings and are ordered lexicographically
whenever a canonical order is needed.

The key derived notion is saturation: the saturation of H is the set of
all nonempty vertex subsets X such that the restriction H_X is
connected.  Saturated hypergraphs are exactly the possible saturations.
"""

from .errors import DomainError, UsageError


class Hypergraph:
    """Immutable atomic hypergraph."""

    __slots__ = ("vertices", "hyperedges")

    def __init__(self, vertices, hyperedges=(), atomic=True):
        vertices = frozenset(vertices)
        edges = set(frozenset(e) for e in hyperedges)
        for e in edges:
            if not e:
                raise DomainError("empty hyperedge")
            if not e <= vertices:
                raise DomainError("hyperedge %r not contained in vertex set"
                                  % sorted(e))
        if atomic:
            edges.update(frozenset((v,)) for v in vertices)
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "hyperedges", frozenset(edges))

    def __setattr__(self, name, value):
        raise AttributeError("Hypergraph is immutable")

    def __eq__(self, other):
        return (isinstance(other, Hypergraph)
                and self.vertices == other.vertices
                and self.hyperedges == other.hyperedges)

    def __hash__(self):
        return hash((self.vertices, self.hyperedges))

    def __repr__(self):
        es = sorted(sorted(e) for e in self.hyperedges)
        return "Hypergraph(%r, %r)" % (sorted(self.vertices), es)

    def __len__(self):
        return len(self.hyperedges)


def restrict(h, x):
    """Restriction H_X: keep the hyperedges contained in x."""
    x = frozenset(x)
    if not x <= h.vertices:
        raise DomainError("restriction set is not a vertex subset")
    return Hypergraph(x, (e for e in h.hyperedges if e <= x), atomic=False)


def delete(h, x):
    """Deletion H minus x: restriction to the complement of x."""
    x = frozenset(x)
    if not x <= h.vertices:
        raise DomainError("deletion set is not a vertex subset")
    return restrict(h, h.vertices - x)


def connected_components(h):
    """Components of h as restrictions, ordered by least vertex label.

    Two vertices are linked when some hyperedge contains both.
    """
    parent = {v: v for v in h.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for e in h.hyperedges:
        it = iter(e)
        root = find(next(it))
        for v in it:
            parent[find(v)] = root
    classes = {}
    for v in h.vertices:
        classes.setdefault(find(v), set()).add(v)
    parts = sorted(classes.values(), key=min)
    return [restrict(h, part) for part in parts]


def is_connected(h):
    """True when h has at most one component; the empty hypergraph counts
    as connected."""
    return len(connected_components(h)) <= 1


def saturate(h):
    """Saturation of h: all nonempty X with H_X connected.

    Computed as the closure of the hyperedge set under unions of
    overlapping members, which agrees with the definition for atomic
    hypergraphs: any connected restriction is assembled from overlapping
    hyperedges, and unions of overlapping connected sets stay connected.
    """
    closed = set(h.hyperedges)
    frontier = set(closed)
    while frontier:
        fresh = set()
        for a in frontier:
            for b in closed:
                if a & b and not (a <= b or b <= a):
                    u = a | b
                    if u not in closed and u not in fresh:
                        fresh.add(u)
        closed.update(fresh)
        frontier = fresh
    return Hypergraph(h.vertices, closed, atomic=False)


def is_saturated(h):
    return h.hyperedges == saturate(h).hyperedges


def to_json(h):
    """Plain-data form: sorted vertex list, sorted hyperedge lists.

    Singletons are always present in the output.
    """
    return {
        "vertices": sorted(h.vertices),
        "hyperedges": sorted((sorted(e) for e in h.hyperedges),
                             key=lambda e: (len(e), e)),
    }


def from_json(data, path="$"):
    """Parse the plain-data form.  Singletons may be omitted on input."""
    if not isinstance(data, dict):
        raise UsageError("hypergraph must be an object", path)
    extra = set(data) - {"vertices", "hyperedges"}
    if extra:
        raise UsageError("unknown key %r" % sorted(extra)[0], path)
    verts = data.get("vertices")
    if not isinstance(verts, list) or not all(isinstance(v, str) for v in verts):
        raise UsageError("'vertices' must be a list of strings",
                         path + ".vertices")
    if len(set(verts)) != len(verts):
        raise UsageError("duplicate vertex", path + ".vertices")
    edges = data.get("hyperedges", [])
    if not isinstance(edges, list):
        raise UsageError("'hyperedges' must be a list", path + ".hyperedges")
    parsed = []
    for i, e in enumerate(edges):
        epath = "%s.hyperedges[%d]" % (path, i)
        if not isinstance(e, list) or not all(isinstance(v, str) for v in e):
            raise UsageError("hyperedge must be a list of strings", epath)
        if not e:
            raise UsageError("hyperedge must be nonempty", epath)
        if not set(e) <= set(verts):
            raise UsageError("hyperedge mentions unknown vertex", epath)
        parsed.append(frozenset(e))
    return Hypergraph(verts, parsed)

"""The cubical resolution: basis operations with a two-colouring of the
construct edges.

A circled operation is a basis operation together with a set of
"connecting" construct edges; the remaining edges are "circled" and
group the decorations into circles.  The degree is the number of
circled edges.  The differential has two parts:

- promote one circled edge to connecting; the sign is a product of
  three parities: the tree edges at or below the edge's child
  decoration, the total number of construct edges, and the connecting
  edges preceding it.  All three are invariant under contracting any
  other edge, which is what makes the cross terms of the square cancel;
- contract one circled edge; the sign is the coefficient the construct
  carries in the differential of the contraction, and the whole
  contracting part enters with a global minus.  The square of this part
  vanishes because each two-step contraction interval is a diamond and
  the operadic differential squares to zero.

Composition marks the new separating edge connecting and carries the
usual sign computed from counts that skip circled edges.
"""

import itertools

from .errors import DomainError, UsageError
from . import polytope as pt
from . import trees as tr
from . import oinf
from .oinf import BasisOp, Element


def _edge_set(construct):
    return frozenset(construct.edges())


class CircledOp:
    """A basis operation with a distinguished set of connecting edges;
    edges are identified by the decoration of their lower endpoint."""

    __slots__ = ("base", "connecting")

    def __init__(self, base, connecting=frozenset()):
        if base.construct is None:
            raise DomainError("unit operations have no circled form")
        connecting = frozenset(map(frozenset, connecting))
        if not connecting <= _edge_set(base.construct):
            raise DomainError("connecting set contains a non-edge")
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "connecting", connecting)

    def __setattr__(self, name, value):
        raise AttributeError("CircledOp is immutable")

    def circled(self):
        return _edge_set(self.base.construct) - self.connecting

    def degree(self):
        return len(self.circled())

    def circles(self):
        """Partition of the decorations into components under circled
        edges."""
        decs = self.base.construct.decorations()
        parent = {d: d for d in decs}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        circ = self.circled()

        def link(node):
            for ch in node.children:
                if ch.vertex in circ:
                    parent[find(ch.vertex)] = find(node.vertex)
                link(ch)

        link(self.base.construct)
        groups = {}
        for d in decs:
            groups.setdefault(find(d), set()).add(d)
        return [frozenset(g) for g in groups.values()]

    def key(self):
        return (self.base.key(),
                tuple(sorted(tuple(sorted(e)) for e in self.connecting)))

    def __eq__(self, other):
        return isinstance(other, CircledOp) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        conn = sorted(tuple(sorted(e)) for e in self.connecting)
        return "CircledOp(%r, connecting=%r)" % (self.base, conn)


def enumerate_circled(op):
    """All 2^edges colourings of one basis operation."""
    edges = sorted(_edge_set(op.construct), key=sorted)
    out = []
    for r in range(len(edges) + 1):
        for sub in itertools.combinations(edges, r):
            out.append(CircledOp(op, frozenset(sub)))
    return out


def compose_w(a, i, b):
    """Signed composition of circled operations: the separating edge of
    the composite construct is connecting, and the sign counts only
    connecting edges and leaves in each factor."""
    comp_tree, construct, rename = oinf.compose_constructs_ex(
        a.base.tree, i, a.base.construct, b.base.tree, b.base.construct)
    sep = frozenset(rename.get(x, x) for x in b.base.construct.vertex)
    conn = set(a.connecting)
    conn |= {frozenset(rename.get(x, x) for x in e) for e in b.connecting}
    conn.add(sep)
    # move into the canonical names of the composite
    canon = comp_tree.relabel_canonical()[1]
    conn = {frozenset(canon[x] for x in e) for e in conn}
    out = CircledOp(BasisOp(comp_tree, construct), conn)

    in_a = lambda dec: frozenset(dec) in a.connecting
    in_b = lambda dec: frozenset(dec) in b.connecting
    eps = (oinf.count_E(a.base, leaf=i, counts_edge=in_a)
           * (oinf.total_count(b.base, counts_edge=in_b) - 1))
    return Element({out: (-1) ** eps})


def _below_content(c):
    """For each construct edge (keyed by its child decoration), the
    union of the decorations at and below the child endpoint.  The
    content survives contraction of any other edge, unlike the child
    decoration itself, so it also serves as the edge's sort key."""
    out = {}

    def gather(node):
        acc = set(node.vertex)
        for ch in node.children:
            acc |= gather(ch)
        return acc

    def walk(node):
        for ch in node.children:
            out[ch.vertex] = frozenset(gather(ch))
            walk(ch)

    walk(c)
    return out


def w_differential(a):
    """Promote-minus-contract differential on circled operations."""
    out = Element()
    c = a.base.construct
    below = _below_content(c)
    n_edges = len(below)
    key = lambda e: tuple(sorted(below[e]))
    circ = a.circled()

    for e in sorted(circ, key=sorted):
        ahead = sum(1 for f in a.connecting if key(f) < key(e))
        sign = (-1) ** (len(below[e]) + n_edges + ahead)
        out = out + Element({CircledOp(a.base, a.connecting | {e}): sign})

    for e in sorted(circ, key=sorted):
        dsign = oinf.split_sign(a.base, e)
        contracted, idmap = pt.contract_edges_with_map(c, {e})
        conn = frozenset(idmap[x] for x in a.connecting)
        term = CircledOp(BasisOp(a.base.tree, contracted), conn)
        out = out + Element({term: -dsign})
    return out


def w_differential_element(e):
    out = Element()
    for op, coeff in e.terms.items():
        out = out + w_differential(op).scale(coeff)
    return out


# ---------------------------------------------------------------------------
# JSON forms.

def circled_to_json(a):
    data = oinf.op_to_json(a.base)
    data["connecting"] = sorted(sorted(e) for e in a.connecting)
    return data


def circled_from_json(data, path="$"):
    if not isinstance(data, dict):
        raise UsageError("circled operation must be an object", path)
    extra = set(data) - {"tree", "construct", "connecting"}
    if extra:
        raise UsageError("unknown key %r" % sorted(extra)[0], path)
    base = oinf.op_from_json({k: v for k, v in data.items()
                              if k != "connecting"}, path)
    conn_data = data.get("connecting", [])
    cpath = path + ".connecting"
    if not isinstance(conn_data, list):
        raise UsageError("'connecting' must be a list", cpath)
    conn = []
    for i, e in enumerate(conn_data):
        if (not isinstance(e, list) or not e
                or not all(isinstance(v, str) for v in e)):
            raise UsageError("edge must be a nonempty list of strings",
                             "%s[%d]" % (cpath, i))
        conn.append(frozenset(e))
    try:
        return CircledOp(base, frozenset(conn))
    except DomainError as exc:
        raise UsageError(str(exc), cpath)


def element_to_json(e):
    items = sorted(e.terms.items(), key=lambda kv: kv[0].key())
    return [{"coeff": c, **circled_to_json(op)} for op, c in items]

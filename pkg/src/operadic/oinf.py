"""The minimal-model operad on operadic trees with constructs.

A basis operation is a triple: an operadic tree (T, sigma) together
with a construct C of the graph of internal edges of T.  Its degree is
(number of edges of T) - (number of decorations of C).  One-vertex
trees carry the empty construct (represented by None) in degree 0 and
act as units.

Signs are governed by a boxed-tree encoding of a basis operation:
a planar tree of boxes, one per decoration, where the box of a
decoration X collapses everything below the child decorations into
single slots.  Box slots host either a child box (one per construct
edge) or a free leaf labelled by the index of the corresponding tree
vertex.  All signs are edge/leaf counts on this boxed tree:

- composition o_i carries (-1) to the count of edges and leaves right
  of the leaf labelled i in the first factor, times the total count in
  the second factor minus one;
- the differential of a maximal construct splits its single decoration
  in all admissible ways; the relative signs of the summands are forced
  by the vanishing of the squared differential (the two routes into any
  three-decoration construct must cancel) and each remaining free
  parity class is seeded by the planar position of the vertex the lower
  part collapses into;
- on every other construct the differential is extended by the graded
  product rule along the factorization of the operation into maximal
  pieces.
"""

import itertools
from fractions import Fraction

from .errors import DomainError, UsageError
from . import hypergraph as hg
from . import polytope as pt
from . import trees as tr


def rename_construct(c, mapping):
    return pt.Construct(
        frozenset(mapping.get(x, x) for x in c.vertex),
        [rename_construct(ch, mapping) for ch in c.children])


class BasisOp:
    """Canonical basis operation (T, sigma, C).

    Stored with canonical vertex names (root 'r', edges e1, e2, ... in
    left-recursive order) so that equality and hashing see only the
    shape, the indexing, and the construct.
    """

    __slots__ = ("tree", "construct", "_key")

    def __init__(self, tree, construct, check=False):
        ctree, rename = tree.relabel_canonical()
        if construct is not None:
            construct = rename_construct(construct, rename)
        if ctree.size() == 1:
            if construct is not None:
                raise DomainError("a one-vertex tree carries the empty "
                                  "construct")
        elif construct is None:
            raise DomainError("missing construct")
        elif check and not pt.is_construct(tr.edge_graph(ctree), construct):
            raise DomainError("invalid construct for this tree")
        object.__setattr__(self, "tree", ctree)
        object.__setattr__(self, "construct", construct)
        key = (ctree.key(),
               None if construct is None else construct.key())
        object.__setattr__(self, "_key", key)

    def __setattr__(self, name, value):
        raise AttributeError("BasisOp is immutable")

    def key(self):
        return self._key

    def degree(self):
        nedges = self.tree.size() - 1
        ndec = 0 if self.construct is None else len(self.construct.decorations())
        return nedges - ndec

    def __eq__(self, other):
        return isinstance(other, BasisOp) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        c = "1" if self.construct is None else pt.pretty(self.construct)
        return "BasisOp(%r, %s)" % (self.tree.key(), c)


class Element:
    """Finite formal sum of basis operations with integer or rational
    coefficients."""

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for op, coeff in (terms.items() if isinstance(terms, dict)
                              else terms):
                self._add(op, coeff)

    def _add(self, op, coeff):
        c = self.terms.get(op, 0) + coeff
        if c:
            self.terms[op] = c
        else:
            self.terms.pop(op, None)

    def __add__(self, other):
        out = Element(dict(self.terms))
        for op, c in other.terms.items():
            out._add(op, c)
        return out

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, k):
        return Element({op: k * c for op, c in self.terms.items()} if k
                       else {})

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, Element) and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "Element(0)"
        bits = ["%+d*%r" % (c, op) for op, c in self.terms.items()]
        return "Element(%s)" % " ".join(bits)


# ---------------------------------------------------------------------------
# The boxed-tree encoding.

class ABox:
    """One box: slots in the left-recursive order of the collapsed
    subtree.  Each slot is ("leaf", index) or ("edge", child decoration,
    ABox)."""

    __slots__ = ("slots",)

    def __init__(self, slots):
        self.slots = tuple(slots)

    def total_items(self):
        return _span(self, lambda dec: True)


def _span(box, counts_edge):
    """Edges plus leaves in the box subtree, counting only the edges
    accepted by the predicate (leaves always count)."""
    n = 0
    for entry in box.slots:
        if entry[0] == "leaf":
            n += 1
        else:
            n += (1 if counts_edge(entry[1]) else 0) + _span(entry[2],
                                                             counts_edge)
    return n


def alpha(op):
    """The boxed tree of a basis operation."""
    if op.construct is None:
        return ABox([("leaf", 1)])

    def build(snode, c):
        supports = {}
        for child in c.children:
            sub = tr.subtree(snode, child.support())
            supports[sub.name] = (child, sub)
        collapsed = tr.collapse_edges(
            snode, set().union(*(ch.support() for ch in c.children))
            if c.children else set())
        slots = []
        for v in tr.preorder_vertices(collapsed.root):
            if v.name in supports:
                child, sub = supports[v.name]
                slots.append(("edge", child.vertex, build(sub, child)))
            else:
                slots.append(("leaf", op.tree.index(v.name)))
        return ABox(slots)

    return build(op.tree.root, op.construct)


def _find_path(box, pred):
    """Path of (box, slot index) leading to the first entry matching
    pred, descending into child boxes."""
    for idx, entry in enumerate(box.slots):
        if pred(entry):
            return [(box, idx)]
        if entry[0] == "edge":
            sub = _find_path(entry[2], pred)
            if sub is not None:
                return [(box, idx)] + sub
    return None


def count_E(op, edge=None, leaf=None, counts_edge=None):
    """Edge/leaf counts against the boxed tree.

    With edge=decoration: the count of items left of the path to that
    construct edge plus the number of edges below it.  With leaf=index:
    the count of items strictly right of the path to that leaf.
    """
    if counts_edge is None:
        counts_edge = lambda dec: True
    box = alpha(op)
    if (edge is None) == (leaf is None):
        raise DomainError("specify exactly one of edge, leaf")
    if edge is not None:
        target = frozenset(edge)
        path = _find_path(
            box, lambda e: e[0] == "edge" and e[1] == target)
        if path is None:
            raise DomainError("no construct edge with lower decoration %r"
                              % sorted(target))
        below = sum(1 for b, i in path[:-1] if counts_edge(b.slots[i][1]))
        left = 0
        for b, i in path:
            for entry in b.slots[:i]:
                if entry[0] == "leaf":
                    left += 1
                else:
                    left += ((1 if counts_edge(entry[1]) else 0)
                             + _span(entry[2], counts_edge))
        return left + below
    path = _find_path(box, lambda e: e[0] == "leaf" and e[1] == leaf)
    if path is None:
        raise DomainError("no leaf labelled %d" % leaf)
    right = 0
    for b, i in path:
        for entry in b.slots[i + 1:]:
            if entry[0] == "leaf":
                right += 1
            else:
                right += ((1 if counts_edge(entry[1]) else 0)
                          + _span(entry[2], counts_edge))
    return right


def total_count(op, counts_edge=None):
    """Edges plus leaves plus one of the boxed tree."""
    if counts_edge is None:
        counts_edge = lambda dec: True
    return _span(alpha(op), counts_edge) + 1


# ---------------------------------------------------------------------------
# Composition.

def compose_constructs_ex(t1, i, c1, t2, c2):
    """Unsigned composition: substitute t2 at the vertex of index i in t1
    and merge the constructs.  Returns (tree, construct, rename) where
    rename maps t2 vertex names into the composite."""
    composite, rename = tr.substitute(t1, i, t2)
    if c1 is None:
        c2p = None if c2 is None else rename_construct(c2, rename)
        return composite, c2p, rename
    if c2 is None:
        return composite, c1, rename
    c2p = rename_construct(c2, rename)
    vname = t1.vertex(i).name

    def go(snode, c):
        if not c.children:
            return pt.Construct(c.vertex, [c2p])
        for cc in c.children:
            sub = tr.subtree(snode, cc.support())
            names = {w.name for w in tr.preorder_vertices(sub)}
            if vname in names:
                others = [o for o in c.children if o is not cc]
                return pt.Construct(c.vertex, others + [go(sub, cc)])
        return pt.Construct(c.vertex, list(c.children) + [c2p])

    return composite, go(t1.root, c1), rename


def compose_constructs(t1, i, c1, t2, c2):
    tree, construct, _ = compose_constructs_ex(t1, i, c1, t2, c2)
    return tree, construct


def compose_sign_exponent(op1, i, op2, counts_edge1=None, counts_edge2=None):
    return (count_E(op1, leaf=i, counts_edge=counts_edge1)
            * (total_count(op2, counts_edge=counts_edge2) - 1))


def compose(op1, i, op2):
    """Signed partial composition; an Element with a single term.
    Compositions with one-vertex (unit) operations carry no sign."""
    tree, construct = compose_constructs(op1.tree, i, op1.construct,
                                         op2.tree, op2.construct)
    out = BasisOp(tree, construct)
    if op1.construct is None or op2.construct is None:
        return Element({out: 1})
    eps = compose_sign_exponent(op1, i, op2)
    return Element({out: (-1) ** eps})


def compose_elements(e1, i, e2):
    out = Element()
    for a, ca in e1.terms.items():
        for b, cb in e2.terms.items():
            out = out + compose(a, i, b).scale(ca * cb)
    return out


# ---------------------------------------------------------------------------
# Vertex splitting and the differential.

def _adjacent(h, a, b):
    """Two disjoint vertex sets linked by a 2-element hyperedge."""
    for e in h.hyperedges:
        if len(e) == 2:
            x, y = tuple(e)
            if (x in a and y in b) or (x in b and y in a):
                return True
    return False


def split_valid(op, V, X, Y):
    """Whether splitting decoration V into X below Y is admissible: in
    the tree obtained by collapsing all edges outside V, the restriction
    of the edge graph to Y must be connected."""
    V, X, Y = frozenset(V), frozenset(X), frozenset(Y)
    if not X or not Y or (X | Y) != V or (X & Y):
        raise DomainError("X, Y must partition V")
    edges = set(op.tree.edge_names())
    tv = tr.collapse_edges(op.tree, edges - V)
    hv = tr.edge_graph(tv)
    return hg.is_connected(hg.restrict(hv, Y))


def split_vertex(op, V, X, Y):
    """The construct with decoration V replaced by X carrying Y: children
    of V adjacent to Y move under Y, the rest stay under X."""
    V, X, Y = frozenset(V), frozenset(X), frozenset(Y)
    if op.construct is None:
        raise DomainError("cannot split the empty construct")
    if V not in set(map(frozenset, op.construct.decorations())):
        raise DomainError("no decoration %r" % sorted(V))
    if not split_valid(op, V, X, Y):
        raise DomainError("inadmissible split")
    h = tr.edge_graph(op.tree)

    def split_here(c):
        under_y, under_x = [], []
        for cc in c.children:
            (under_y if _adjacent(h, cc.support(), Y) else under_x).append(cc)
        return pt.Construct(X, under_x + [pt.Construct(Y, under_y)])

    def go(c):
        if c.vertex == V:
            return split_here(c)
        return pt.Construct(
            c.vertex,
            [go(cc) if V <= cc.support() else cc for cc in c.children])

    return go(op.construct)


_GEN_SIGNS = {}
_DIFF_MEMO = {}


def _split_parts(tree):
    """Lower parts Y of the admissible splits of the full edge set: the
    proper nonempty subsets inducing a connected edge graph."""
    h = tr.edge_graph(tree)
    names = sorted(tree.edge_names())
    out = []
    for r in range(1, len(names)):
        for ys in itertools.combinations(names, r):
            Y = frozenset(ys)
            if hg.is_connected(hg.restrict(h, Y)):
                out.append(Y)
    return frozenset(names), out


def _attachment_position(tree, Y):
    """0-based left-recursive position, in the tree with the edges of Y
    collapsed, of the vertex they collapse into."""
    parents = tr.parent_map(tree.root)
    top = next(y for y in Y if parents[y][0].name not in Y)
    rho = parents[top][0].name
    return tr.collapse_edges(tree, Y).index(rho) - 1


def _generator_signs(tree):
    """Sign of each differential summand of the maximal construct, keyed
    by the lower part Y of the split.  Shared by all indexings of the
    tree shape.

    Relative signs within a parity class are forced by cancellation:
    every three-decoration construct is reached by exactly two split
    routes, and the squared differential vanishes only when they carry
    opposite products.  The classes are joined by a union-find over
    these diamonds; each class is seeded at its least member by the
    parity of the attachment position.

    Two-edge shapes have no diamonds of their own, so the union-find
    leaves both splits free; squared differentials of every larger
    shape containing them force the two signs to be opposite.  They are
    pinned directly: the lower part that is the later edge takes the
    minus.  Shapes with three or more edges form a single parity class
    (their facets are connected through ridges), so the seed there only
    fixes an overall orientation."""
    shape = tr.with_left_recursive_sigma(tree.root).relabel_canonical()[0]
    skey = shape.key()
    if skey in _GEN_SIGNS:
        return _GEN_SIGNS[skey]
    E, parts = _split_parts(shape)
    if len(E) == 2:
        signs = {frozenset(["e1"]): 1, frozenset(["e2"]): -1}
        _GEN_SIGNS[skey] = signs
        return signs
    parent = {Y: Y for Y in parts}
    offset = {Y: 0 for Y in parts}

    def find(y):
        if parent[y] == y:
            return y, 0
        root, par = find(parent[y])
        parent[y] = root
        offset[y] ^= par
        return root, offset[y]

    def union(a, b, rel):
        ra, pa = find(a)
        rb, pb = find(b)
        need = rel ^ pa ^ pb
        if ra == rb:
            if need:
                raise DomainError("no consistent orientation of the "
                                  "split diamonds")
            return
        parent[rb] = ra
        offset[rb] = need

    routes = {}
    for Y in parts:
        op2 = BasisOp(shape, pt.Construct(E - Y, [pt.Construct(Y)]))
        for w, lam in differential(op2).terms.items():
            routes.setdefault(w, []).append((Y, lam))
    for w, pair in routes.items():
        if len(pair) != 2:
            raise DomainError("split diamond with %d routes" % len(pair))
        (y1, l1), (y2, l2) = pair
        union(y1, y2, 1 if l1 == l2 else 0)

    classes = {}
    for Y in parts:
        root, par = find(Y)
        classes.setdefault(root, []).append((tuple(sorted(Y)), Y, par))
    signs = {}
    for members in classes.values():
        members.sort()
        _, least, par0 = members[0]
        seed = (_attachment_position(shape, least) & 1) ^ par0
        for _, Y, par in members:
            signs[Y] = -1 if (seed ^ par) else 1
    _GEN_SIGNS[skey] = signs
    return signs


def _generator_differential(op):
    """All splits of the single decoration of a maximal construct, with
    the solved signs."""
    signs = _generator_signs(op.tree)
    out = Element()
    E = frozenset(op.tree.edge_names())
    for Y, s in signs.items():
        c2 = pt.Construct(E - Y, [pt.Construct(Y)])
        out._add(BasisOp(op.tree, c2), s)
    return out


def _product_rule_differential(op):
    """Differential through the factorization at the root decoration:
    the operation is the signed composite of the maximal construct on
    the collapsed tree with the child constructs on their subtrees, and
    the differential of a composite is the graded sum of the factor
    differentials."""
    c = op.construct
    tree = op.tree
    union = frozenset().union(*(ch.support() for ch in c.children))
    tx = tr.collapse_edges(tree, union)
    gen = BasisOp(tx, pt.Construct(c.vertex))
    items = []
    for ch in c.children:
        sub = tr.subtree(tree, ch.support())
        child_op = BasisOp(tr.with_left_recursive_sigma(sub), ch)
        items.append((tx.index(sub.name), child_op))
    items.sort(key=lambda kv: kv[0])

    B = Element({gen: 1})
    DB = differential(gen)
    deg = gen.degree()
    shift = 0
    for m, child_op in items:
        slot = m + shift
        child_elt = Element({child_op: 1})
        DB = (compose_elements(DB, slot, child_elt)
              + compose_elements(B, slot, differential(child_op))
              .scale((-1) ** deg))
        B = compose_elements(B, slot, child_elt)
        deg += child_op.degree()
        shift += child_op.tree.size() - 1

    (bop, s), = B.terms.items()
    kappa = [bop.tree.index(name) for name in op.tree.sigma]
    if symmetric_action(bop, kappa) != op:
        raise DomainError("internal factorization mismatch")
    out = Element()
    for term, coeff in DB.terms.items():
        out._add(symmetric_action(term, kappa), coeff * s)
    return out


def differential(op):
    """The vertex-splitting differential.

    A maximal construct maps to the signed sum of its splits; every
    other construct factors as a composite of maximal pieces and the
    differential follows the graded product rule, so squaring it gives
    zero by construction."""
    if op.construct is None:
        return Element()
    key = op.key()
    if key in _DIFF_MEMO:
        return _DIFF_MEMO[key]
    if not op.construct.children:
        out = _generator_differential(op)
    else:
        out = _product_rule_differential(op)
    _DIFF_MEMO[key] = out
    return out


def split_sign(op, e):
    """Coefficient of op among the differential summands of the
    operation whose construct contracts the construct edge at e (a
    lower decoration of op's construct)."""
    contracted, _ = pt.contract_edges_with_map(op.construct,
                                               {frozenset(e)})
    coeff = differential(BasisOp(op.tree, contracted)).terms.get(op, 0)
    if coeff not in (1, -1):
        raise DomainError("not a split of the contracted construct")
    return coeff


def differential_element(e):
    out = Element()
    for op, c in e.terms.items():
        out = out + differential(op).scale(c)
    return out


def classify_edge(op):
    """For a degree-1 operation whose construct has a unique 2-element
    decoration: 'A1' when the two tree edges are vertically related
    (one lies on the path from the other to the root), else 'A2'."""
    if op.construct is None:
        raise DomainError("unit operation")
    doubles = [d for d in op.construct.decorations() if len(d) == 2]
    if op.degree() != 1 or len(doubles) != 1 or any(
            len(d) > 2 for d in op.construct.decorations()):
        raise DomainError("expected a degree-1 operation with one "
                          "2-element decoration")
    a, b = sorted(doubles[0])
    return "A1" if tr.is_vertical(op.tree, a, b) else "A2"


def symmetric_action(op, kappa):
    """Right action on indexings: sigma becomes sigma after kappa, where
    kappa is a permutation of 1..k given as a list with kappa[i-1] =
    kappa(i)."""
    k = op.tree.size()
    if sorted(kappa) != list(range(1, k + 1)):
        raise DomainError("kappa is not a permutation of 1..%d" % k)
    sigma = [op.tree.sigma[kappa[i] - 1] for i in range(k)]
    return BasisOp(tr.OperadicTree(op.tree.root, sigma), op.construct)


def enumerate_basis(tree):
    """All basis operations on a given operadic tree, grouped by degree."""
    if tree.size() == 1:
        return {0: [BasisOp(tree, None)]}
    h = tr.edge_graph(tree)
    grouped = {}
    for cs in pt.enumerate_constructs(h).values():
        for c in cs:
            b = BasisOp(tree, c)
            grouped.setdefault(b.degree(), []).append(b)
    return grouped


# ---------------------------------------------------------------------------
# JSON forms.

def op_to_json(op):
    if op.construct is None:
        cjson = {"vertex": [], "children": []}
    else:
        cjson = pt.to_json(op.construct)
    return {"tree": tr.to_json(op.tree), "construct": cjson}


def op_from_json(data, path="$"):
    if not isinstance(data, dict):
        raise UsageError("operation must be an object", path)
    extra = set(data) - {"tree", "construct"}
    if extra:
        raise UsageError("unknown key %r" % sorted(extra)[0], path)
    if "tree" not in data:
        raise UsageError("missing 'tree'", path)
    tree = tr.from_json(data["tree"], path + ".tree")
    cdata = data.get("construct")
    if cdata is None:
        raise UsageError("missing 'construct'", path)
    if tree.size() == 1:
        if isinstance(cdata, dict) and not cdata.get("vertex") \
                and not cdata.get("children"):
            return BasisOp(tree, None)
        raise UsageError("a one-vertex tree takes the empty construct "
                         '{"vertex": [], "children": []}',
                         path + ".construct")
    construct = pt.from_json(cdata, path + ".construct")
    try:
        return BasisOp(tree, construct, check=True)
    except DomainError as exc:
        raise DomainError("%s (at %s)" % (exc, path + ".construct"))


def element_to_json(e):
    items = sorted(e.terms.items(), key=lambda kv: kv[0].key())
    return [{"coeff": int(c) if isinstance(c, (int, Fraction)) and
             Fraction(c).denominator == 1 else str(c),
             **op_to_json(op)} for op, c in items]
